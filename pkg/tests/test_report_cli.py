import json
from fractions import Fraction

import pytest
from hypothesis import given

from kohncoerce import AnalysisReport, ExponentSet, parse_gamma
from kohncoerce.cli import MAX_RES, cmd_grid, grid_values, main
from kohncoerce.errors import DuplicatePoint, EmptySet, NegativeExponent, ParseError
from kohncoerce.report import SCHEMA, analyze, format_gamma, q_str

from conftest import GAMMA_FIG, gammas


def _gamma_file(tmp_path, gamma, name="g.json"):
    path = tmp_path / name
    path.write_text(format_gamma(gamma), encoding="utf-8")
    return str(path)


def _csv_rows(path):
    lines = open(path, encoding="utf-8").read().splitlines()
    meta = [l for l in lines if l.startswith("# meta:")]
    body = [l for l in lines if not l.startswith("#")]
    return meta, body[0], [l.split(",") for l in body[1:]]


# -- parsing -----------------------------------------------------------------

def test_parse_examples():
    assert parse_gamma("[[16,0],[12,3],[8,6],[4,9],[0,12]]") == GAMMA_FIG
    assert parse_gamma("1,0 0,1") == ExponentSet([(1, 0), (0, 1)])
    assert parse_gamma("1,0\n\t0,1\n") == ExponentSet([(1, 0), (0, 1)])


def test_parse_errors():
    with pytest.raises(DuplicatePoint) as exc:
        parse_gamma("[[1,0],[1,0]]")
    assert exc.value.indices == (0, 1)
    with pytest.raises(NegativeExponent):
        parse_gamma("1,0 -1,2")
    with pytest.raises(EmptySet):
        parse_gamma("[]")
    with pytest.raises(EmptySet):
        parse_gamma("   ")


def test_parse_error_positions():
    with pytest.raises(ParseError) as exc:
        parse_gamma("1,0\n0,1 2;3")
    assert (exc.value.line, exc.value.column) == (2, 5)
    with pytest.raises(ParseError) as exc:
        parse_gamma("[[1,0],\n [0,1.5]]")
    assert (exc.value.line, exc.value.column) == (2, 2)
    with pytest.raises(ParseError) as exc:
        parse_gamma("[[1,0], [0,1]")
    assert exc.value.line == 1


@given(gammas)
def test_parse_round_trip(gamma):
    assert parse_gamma(format_gamma(gamma)) == gamma
    tokens = " ".join(f"{a},{b}" for a, b in gamma)
    assert parse_gamma(tokens) == gamma


# -- report ------------------------------------------------------------------

def test_report_for_figure_weight():
    d = json.loads(analyze(GAMMA_FIG).to_json())
    assert d["schema"] == SCHEMA
    prof = d["profile"]
    assert (prof["sigma"], prof["tau"], prof["nu"]) == ("4/1", "9/4", "2/3")
    assert prof["tau_float"] == 2.25
    assert prof["homogeneous"] == [16, 12]
    assert d["spectrum"]["kind"] == "Discrete"
    assert d["delta"]["value"] == "9/4"
    assert d["coercivity"]["multiplier"]["exponent_w"] == "9/4"


def test_rationals_are_strings():
    assert q_str(Fraction(9, 4)) == "9/4"
    assert q_str(4) == "4/1"


@given(gammas)
def test_report_round_trip(gamma):
    rep = analyze(gamma, config={"seed": 0})
    back = AnalysisReport.from_json(rep.to_json())
    assert back == rep
    assert back.to_json() == rep.to_json()


def test_report_schema_is_checked():
    d = analyze(GAMMA_FIG).to_dict()
    d["schema"] = "other/9"
    with pytest.raises(ValueError):
        AnalysisReport.from_dict(d)


# -- exit codes --------------------------------------------------------------

def test_analyze_exit_codes(tmp_path):
    out = tmp_path / "r.json"
    assert main(["analyze", "--gamma", _gamma_file(tmp_path, GAMMA_FIG), "--out", str(out)]) == 0
    assert json.loads(out.read_text())["spectrum"]["kind"] == "Discrete"
    g = _gamma_file(tmp_path, {(2, 0), (0, 2)}, "nd.json")
    assert main(["analyze", "--gamma", g, "--out", str(out)]) == 0
    assert json.loads(out.read_text())["spectrum"]["kind"] == "NotDiscrete"
    g = _gamma_file(tmp_path, {(1, 1)}, "mixed.json")
    assert main(["analyze", "--gamma", g, "--out", str(out)]) == 2
    d = json.loads(out.read_text())
    assert d["spectrum"]["kind"] == "Inconclusive"
    assert d["coercivity"]["error"].startswith("Unsupported")


def test_error_exit_codes(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("[[1,0],[1,0]]")
    assert main(["analyze", "--gamma", str(bad)]) == 1
    assert "DuplicatePoint" in capsys.readouterr().err
    assert main(["analyze", "--gamma", str(tmp_path / "missing.json")]) == 1
    assert main(["grid", "lambda", "--gamma", str(bad)]) == 1
    with pytest.raises(SystemExit) as exc:
        main(["grid", "volume", "--gamma", str(bad)])
    assert exc.value.code == 1


def test_failed_verification_exits_one(tmp_path, monkeypatch):
    from kohncoerce import verify

    def failing(**_):
        return [verify.Check("forced", False, {})]

    monkeypatch.setitem(verify._SUITE_FUNCS, "uncertainty", failing)
    assert main(["verify", "--suite", "uncertainty", "--out", str(tmp_path / "v.json")]) == 1


# -- grids -------------------------------------------------------------------

def test_lambda_grid_is_constant_one(tmp_path):
    out = tmp_path / "l.csv"
    g = _gamma_file(tmp_path, {(1, 0), (0, 1)})
    assert main(["grid", "lambda", "--gamma", g, "--out", str(out), "--res", "7"]) == 0
    meta, header, rows = _csv_rows(out)
    assert header == "x,y,value"
    assert len(rows) == 49
    assert {float(r[2]) for r in rows} == {1.0}
    assert any(m.startswith("# meta: gamma=") for m in meta)
    assert any(m.startswith("# meta: bounds=") for m in meta)
    assert "# meta: resolution=7" in meta


def test_grid_rows_are_y_major(tmp_path):
    out = tmp_path / "g.csv"
    cmd_grid(_gamma_file(tmp_path, GAMMA_FIG), "lambda_approx", "0,1,0,2", 3, str(out))
    _, _, rows = _csv_rows(out)
    coords = [(float(x), float(y)) for x, y, _ in rows]
    assert coords == [(x, y) for y in (0.0, 1.0, 2.0) for x in (0.0, 0.5, 1.0)]


def test_rho_grid_at_origin(tmp_path):
    out = tmp_path / "rho.csv"
    g = _gamma_file(tmp_path, {(2, 0), (0, 2)})
    assert main(["grid", "rho", "--gamma", g, "--out", str(out), "--res", "5", "--bounds", "0,1,0,1"]) == 0
    _, _, rows = _csv_rows(out)
    assert rows[0][:2] == ["0.0", "0.0"]
    assert float(rows[0][2]) == pytest.approx(0.5, rel=1e-9)


def test_region_grid_labels():
    xs, ys, vals = grid_values(GAMMA_FIG, "region", (0, 3, 0, 3), 61)
    labels = set(vals.ravel())
    assert {"E1", "E2", "E3", "U0", "Ur", "Uu"} <= labels
    assert vals[0, -1] == "Ur"      # (|z|, |w|) = (3, 0)
    assert vals[-1, 0] == "Uu"      # (0, 3)


def test_grid_limits(tmp_path):
    with pytest.raises(ValueError):
        grid_values(GAMMA_FIG, "lambda", (0, 1, 0, 1), MAX_RES + 1)
    with pytest.raises(ValueError):
        grid_values(GAMMA_FIG, "volume", (0, 1, 0, 1), 4)
    g = _gamma_file(tmp_path, GAMMA_FIG)
    assert main(["grid", "lambda", "--gamma", g, "--bounds", "1,0,0,1"]) == 1
    assert main(["grid", "lambda", "--gamma", g, "--bounds", "0,1,0"]) == 1


# -- verify ------------------------------------------------------------------

def test_verify_uncertainty(tmp_path):
    out = tmp_path / "u.json"
    assert main(["verify", "--suite", "uncertainty", "--out", str(out)]) == 0
    names = [c["name"] for c in json.loads(out.read_text())["suites"]["uncertainty"]]
    assert names == ["false_inequality_decay", "cauchy_annulus_bound", "projection_idempotent"]


def test_verify_delta_on_figure_weight(tmp_path):
    out = tmp_path / "d.json"
    assert main(["verify", "--suite", "delta", "--gamma", _gamma_file(tmp_path, GAMMA_FIG),
                 "--out", str(out)]) == 0
    checks = {c["name"]: c for c in json.loads(out.read_text())["suites"]["delta"]}
    assert checks["optimal_delta"]["measured"]["delta"] == "9/4"
    assert checks["optimal_delta"]["measured"]["ray"] == [-9, 4]
    assert all(c["passed"] for c in checks.values())


def test_verify_hessian_needs_no_gamma(tmp_path):
    out = tmp_path / "h.json"
    assert main(["verify", "--suite", "hessian", "--out", str(out)]) == 0
    assert main(["verify", "--suite", "delta", "--out", str(out)]) == 1


def test_outputs_are_byte_identical(tmp_path):
    g = _gamma_file(tmp_path, GAMMA_FIG)
    paths = [tmp_path / f"{k}" for k in "abcd"]
    main(["analyze", "--gamma", g, "--out", str(paths[0])])
    main(["analyze", "--gamma", g, "--out", str(paths[1])])
    main(["grid", "region", "--gamma", g, "--out", str(paths[2]), "--res", "33"])
    main(["grid", "region", "--gamma", g, "--out", str(paths[3]), "--res", "33"])
    assert paths[0].read_bytes() == paths[1].read_bytes()
    assert paths[2].read_bytes() == paths[3].read_bytes()


def test_stdin_input(monkeypatch, capsys):
    import io
    monkeypatch.setattr("sys.stdin", io.StringIO("16,0 12,3 8,6 4,9 0,12"))
    assert main(["analyze", "--gamma", "-"]) == 0
    assert json.loads(capsys.readouterr().out)["profile"]["sigma"] == "4/1"
