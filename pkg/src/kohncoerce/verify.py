"""Self-checks grouped into suites, shared by the CLI and the test-suite.

Every check returns a :class:`Check` with the measured constants, so a
report records what was observed and not only whether it passed.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional

import numpy as np

from .admissibility import (comparability_band, doubling_cap, doubling_constant,
                            kappa_radius_check, local_lower_bound, rho_by_definition)
from .disc import (DiscFunction, bergman_project, cauchy_annulus_ratio,
                   false_inequality_ratio)
from .energy import (QuadratureSpec, TestFunction, coercivity_certificate,
                     standard_family, weighted_energy)
from .errors import KohnCoerceError
from .exponents import ExponentSet, as_exponent_set, classify, derived_sets
from .support import (RegionLabel, classify_region, coercivity_multiplier,
                      delta_analysis, power_layout, predicted_lambda, regions_containing,
                      sufficient_delta)
from .weight import det_trace_closed_form, hessian_at, lambda_min_xy, weight_value

POWER_REGIONS = frozenset({RegionLabel.E1, RegionLabel.E2, RegionLabel.E3})
SUITES = ("hessian", "regions", "delta", "uncertainty", "energy", "admissibility")


@dataclass
class Check:
    name: str
    passed: bool
    measured: Dict[str, object] = field(default_factory=dict)

    def to_dict(self):
        return {"name": self.name, "passed": bool(self.passed), "measured": _jsonable(self.measured)}


def _jsonable(v):
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}"
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, (np.floating, np.integer)):
        return v.item()
    if isinstance(v, float) and not math.isfinite(v):
        return repr(v)
    return v


# -- hessian -------------------------------------------------------------

def _second_directional(f, x0, e, h):
    # fourth-order central stencil
    vals = [f(x0 + k * h * e) for k in (-2, -1, 0, 1, 2)]
    return (-vals[0] + 16 * vals[1] - 30 * vals[2] + 16 * vals[3] - vals[4]) / (12 * h * h)


def fd_hessian(gamma, p, h=2e-3):
    """Complex Hessian of ``φ_Γ`` from real finite differences of :func:`weight_value`.

    With ``z = a + ib`` and ``w = c + id``: ``∂z∂z̄ = ¼(∂aa + ∂bb)`` and
    ``∂z∂w̄ = ¼(∂ac + ∂bd + i(∂ad - ∂bc))``.
    """
    gamma = as_exponent_set(gamma)
    z, w = complex(p[0]), complex(p[1])
    x0 = np.array([z.real, z.imag, w.real, w.imag])

    def f(v):
        return weight_value(gamma, (complex(v[0], v[1]), complex(v[2], v[3])))

    eye = np.eye(4)
    d2 = {}
    for i in range(4):
        d2[i, i] = _second_directional(f, x0, eye[i], h)
    for i in range(4):
        for j in range(i + 1, 4):
            plus = _second_directional(f, x0, eye[i] + eye[j], h)
            minus = _second_directional(f, x0, eye[i] - eye[j], h)
            d2[i, j] = d2[j, i] = 0.25 * (plus - minus)
    h_zz = 0.25 * (d2[0, 0] + d2[1, 1])
    h_ww = 0.25 * (d2[2, 2] + d2[3, 3])
    h_zw = 0.25 * complex(d2[0, 2] + d2[1, 3], d2[0, 3] - d2[1, 2])
    return np.array([[h_zz, h_zw], [h_zw.conjugate(), h_ww]])


def fuzz_gammas(rng, count, max_deg=6, max_points=5):
    out = []
    while len(out) < count:
        k = int(rng.integers(1, max_points + 1))
        pts = {(int(a), int(b)) for a, b in rng.integers(0, max_deg + 1, size=(k, 2)) if a + b > 0}
        if pts:
            out.append(ExponentSet(pts))
    return out


def fuzz_point(rng, lo=0.2, hi=1.5):
    r = rng.uniform(lo, hi, 2)
    th = rng.uniform(0, 2 * math.pi, 2)
    return complex(r[0] * math.cos(th[0]), r[0] * math.sin(th[0])), \
        complex(r[1] * math.cos(th[1]), r[1] * math.sin(th[1]))


def hessian_suite(gamma=None, tol=1e-5, seed=0, count=200, **_):
    rng = np.random.default_rng(seed)
    gammas = fuzz_gammas(rng, count)
    if gamma is not None:
        gammas[0] = as_exponent_set(gamma)
    worst_closed = worst_fd = 0.0
    fd_ok = closed_ok = 0
    for g in gammas:
        p = fuzz_point(rng)
        hz = hessian_at(g, p)
        det, tr = det_trace_closed_form(g, p)
        rel_c = max(abs(det - hz.det) / max(abs(hz.det), 1e-300),
                    abs(tr - hz.trace) / max(abs(hz.trace), 1e-300))
        if hz.det == 0 and det == 0:
            rel_c = abs(tr - hz.trace) / max(abs(hz.trace), 1e-300)
        worst_closed = max(worst_closed, rel_c)
        closed_ok += rel_c <= 1e-10
        H = hz.matrix()
        rel_f = np.linalg.norm(fd_hessian(g, p) - H) / max(np.linalg.norm(H), 1e-300)
        worst_fd = max(worst_fd, float(rel_f))
        fd_ok += rel_f <= tol
    n = len(gammas)
    return [
        Check("closed_form_agreement", closed_ok == n,
              {"rate": closed_ok / n, "worst_relative": worst_closed, "pairs": n}),
        Check("finite_difference_agreement", fd_ok == n,
              {"rate": fd_ok / n, "worst_relative": worst_fd, "pairs": n}),
    ]


# -- regions ---------------------------------------------------------------

def power_law_band(gamma, res=64, lo=1.0, hi=100.0):
    """``(min, max)`` of ``λ_min / predicted_lambda`` on each of E1, E2, E3 over a log grid.

    Regions are closed: a boundary point counts for every region containing
    it, each with its own law, so corners like ``(1, 1)`` enter every band.
    """
    gamma = as_exponent_set(gamma)
    profile = classify(gamma)
    grid = np.geomspace(lo, hi, res)
    bands = {}
    for rz in grid:
        for rw in grid:
            labels = regions_containing(profile, (rz, rw)) & POWER_REGIONS
            if not labels:
                continue
            lam = float(lambda_min_xy(gamma, rz * rz, rw * rw))
            for lab in labels:
                ratio = lam / predicted_lambda(profile, (rz, rw), lab)
                b = bands.setdefault(lab, [math.inf, -math.inf])
                b[0], b[1] = min(b[0], ratio), max(b[1], ratio)
    return {lab: tuple(b) for lab, b in bands.items()}


def _band_width(b):
    return b[1] / b[0]


def regions_suite(gamma, tol=0.05, res=48, **_):
    gamma = as_exponent_set(gamma)
    profile = classify(gamma)
    grid = np.linspace(0.0, 4.0, res)
    missing = sum(
        1 for rz in grid for rw in grid
        if not (regions_containing(profile, (rz, rw)) & {RegionLabel.U0, RegionLabel.Ur,
                                                         RegionLabel.Uu, RegionLabel.E})
    )
    checks = [Check("cover", missing == 0, {"uncovered_points": missing, "grid": res * res})]
    try:
        power_layout(profile)
    except KohnCoerceError as exc:
        checks.append(Check("power_law_band", True, {"skipped": str(exc)}))
        return checks
    coarse, fine = power_law_band(gamma, res), power_law_band(gamma, 2 * res)
    stable = set(coarse) == set(fine) and all(
        abs(_band_width(fine[k]) / _band_width(coarse[k]) - 1) <= tol for k in coarse)
    positive = all(b[0] > 0 and math.isfinite(b[1]) for b in fine.values())
    checks.append(Check("power_law_band", stable and positive, {
        lab.value: {"coarse": list(coarse[lab]), "fine": list(fine.get(lab, (None, None)))}
        for lab in coarse
    }))
    return checks


# -- delta -----------------------------------------------------------------

def dense_ray_minimum(gamma, count=10_000):
    """Independent oracle: min of the cone ratio over ``count`` rational rays.

    Rays are ``(cos t, sin t)`` rounded to a denominator of 10⁶ for ``t``
    evenly spaced over the union of both cones; supports are recomputed
    from scratch with :class:`Fraction` arithmetic.
    """
    gamma = as_exponent_set(gamma)
    prof = classify(gamma)
    ds = derived_sets(gamma)
    g1, g2 = ds.gamma_1.points, ds.gamma_2.points
    t_lo = math.atan2(-float(prof.sigma), 1.0)
    t_hi = math.atan2(1.0, -float(prof.tau))
    best = None
    for t in np.linspace(t_lo, t_hi, count):
        u = Fraction(round(math.cos(t) * 10**6), 10**6)
        v = Fraction(round(math.sin(t) * 10**6), 10**6)
        in1 = u >= 0 and v >= -prof.sigma * u
        in2 = v >= 0 and u >= -prof.tau * v
        if not (in1 or in2) or max(u, v) <= 0:
            continue
        m1 = max(u * a + v * b for a, b in g1)
        m2 = max(u * a + v * b for a, b in g2)
        r = (m1 - m2) / max(u, v)
        best = r if best is None or r < best else best
    return best


def delta_suite(gamma, rays=10_000, **_):
    gamma = as_exponent_set(gamma)
    da = delta_analysis(gamma)
    dense = dense_ray_minimum(gamma, rays)
    suff = sufficient_delta(gamma)
    ray_ratio = dict(da.rays)[da.ray]
    return [
        Check("optimal_delta", ray_ratio == da.delta,
              {"delta": da.delta, "delta_float": float(da.delta), "ray": list(da.ray)}),
        Check("dense_ray_oracle", da.delta <= dense,
              {"dense_min": dense, "dense_min_float": float(dense), "rays": rays}),
        Check("sufficient_bound", suff <= da.delta, {"sufficient": suff}),
    ]


# -- uncertainty -------------------------------------------------------------

def uncertainty_suite(tol=1e-8, **_):
    ratios = [false_inequality_ratio(m) for m in range(11)]
    decay = [ratios[m + 1] / ratios[m] for m in range(10)]
    closed = max(abs(r * math.pi * 4**m - 1) for m, r in enumerate(ratios))
    cauchy = [cauchy_annulus_ratio(DiscFunction.from_monomials({(k, 0): 1.0}, K=max(32, k + 1)))
              for k in range(51)]
    cauchy_err = max(abs(c * (1 - 4.0 ** -(k + 1)) - 1) for k, c in enumerate(cauchy))
    f = DiscFunction.from_monomials({(2, 0): 1.0, (1, 1): 0.5, (0, 3): -0.25, (0, 0): 1.0})
    pf = bergman_project(f)
    idem = (bergman_project(pf) - pf).norm2() ** 0.5 / max(pf.norm2() ** 0.5, 1e-300)
    pyth = abs(f.norm2() - pf.norm2() - (f - pf).norm2()) / f.norm2()
    return [
        Check("false_inequality_decay", closed <= tol and max(abs(d - 0.25) for d in decay) <= tol,
              {"max_closed_form_error": closed, "decay_factors": decay}),
        Check("cauchy_annulus_bound", cauchy_err <= tol and max(cauchy) <= 4 / 3 + tol,
              {"max_closed_form_error": cauchy_err, "max_ratio": max(cauchy)}),
        Check("projection_idempotent", idem <= 1e-10 and pyth <= 1e-10,
              {"idempotence": idem, "pythagoras": pyth}),
    ]


# -- energy --------------------------------------------------------------------

def energy_suite(gamma, tol=1e-6, **_):
    gamma = as_exponent_set(gamma)
    u = TestFunction("gaussian_radial")
    cal = weighted_energy({(1, 0), (0, 1)}, u)
    f_exact = 2 * (math.pi / 16) * (math.pi / 4) + 2 * (math.pi / 4) ** 2
    ratio_exact = f_exact / (9 * (math.pi / 4) ** 2)
    cal_err = max(abs(cal.f_value / f_exact - 1), abs(cal.ratio / ratio_exact - 1))
    checks = [Check("gaussian_calibration", cal_err <= 1e-8, {"relative_error": cal_err})]
    try:
        coercivity_multiplier(gamma)
    except KohnCoerceError as exc:
        checks.append(Check("certificate", True, {"skipped": str(exc)}))
        return checks
    fam = standard_family(20)
    c1 = coercivity_certificate(gamma, fam)
    c2 = coercivity_certificate(gamma, fam, QuadratureSpec().refined())
    drift = abs(c2 / c1 - 1)
    checks.append(Check("certificate", c1 > 0 and drift <= tol,
                        {"certificate": c1, "refined": c2, "relative_drift": drift, "family": 20}))
    return checks


# -- admissibility ---------------------------------------------------------

def admissibility_suite(gamma, tol=0.05, res=64, **_):
    gamma = as_exponent_set(gamma)
    g1 = np.geomspace(1e-2, 1.0, res)
    g2 = np.geomspace(1e-2, 1.0, 2 * res)
    b1 = comparability_band(gamma, *np.meshgrid(g1, g1), samples=128)
    b2 = comparability_band(gamma, *np.meshgrid(g2, g2), samples=128)
    band_ok = b2[0] > 0 and math.isfinite(b2[1]) and abs((b2[1] / b2[0]) / (b1[1] / b1[0]) - 1) <= 2 * tol
    d1, d2 = doubling_constant(gamma, 256), doubling_constant(gamma, 1024)
    cap = doubling_cap(gamma)
    lower = local_lower_bound(gamma)
    checks = [
        Check("rho_comparability", band_ok, {"coarse": list(b1), "fine": list(b2)}),
        Check("doubling", d2 <= cap and abs(d2 / d1 - 1) <= tol,
              {"D": d1, "D_dense": d2, "chebyshev_cap": cap}),
        Check("lower_bound", lower > 0, {"inf_sup_laplacian": lower}),
    ]
    try:
        mult = coercivity_multiplier(gamma)
        k1 = kappa_radius_check(mult.exponent_z, mult.exponent_w, 256)
        k2 = kappa_radius_check(mult.exponent_z, mult.exponent_w, 1024)
        checks.append(Check("kappa_radius", math.isfinite(k2) and abs(k2 / k1 - 1) <= tol,
                            {"C": k1, "C_dense": k2}))
    except KohnCoerceError as exc:
        checks.append(Check("kappa_radius", True, {"skipped": str(exc)}))
    return checks


_SUITE_FUNCS: Dict[str, Callable[..., List[Check]]] = {
    "hessian": hessian_suite,
    "regions": regions_suite,
    "delta": delta_suite,
    "uncertainty": uncertainty_suite,
    "energy": energy_suite,
    "admissibility": admissibility_suite,
}


def run_suite(name, gamma=None, tol: Optional[float] = None, seed: int = 0, threads: int = 1):
    """Run one suite (or ``"all"``); returns ``{suite: [Check, ...]}`` in fixed order."""
    names = SUITES if name == "all" else (name,)
    for n in names:
        if n not in _SUITE_FUNCS:
            raise ValueError(f"unknown suite {n!r}; choose from {', '.join(SUITES)} or all")

    def one(n):
        kwargs = {"gamma": gamma, "seed": seed}
        if tol is not None:
            kwargs["tol"] = tol
        if gamma is None and n not in ("uncertainty", "hessian"):
            raise ValueError(f"suite {n!r} needs an exponent set")
        return _SUITE_FUNCS[n](**kwargs)

    if threads > 1 and len(names) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(one, names))
    else:
        results = [one(n) for n in names]
    return dict(zip(names, results))


def summarize(results) -> dict:
    return {
        "passed": all(c.passed for checks in results.values() for c in checks),
        "suites": {name: [c.to_dict() for c in checks] for name, checks in results.items()},
    }
