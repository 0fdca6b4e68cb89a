"""Exponent-set parsing and the JSON analysis report.

Exact rationals are written as ``"p/q"`` strings with a ``*_float`` mirror,
so ``σ = 9/4`` never silently turns into ``2.25``.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, Optional, Tuple

from . import __version__
from .errors import (DegenerateWeight, DuplicatePoint, EmptySet, NegativeExponent,
                     ParseError, PreconditionFailed, Unsupported)
from .exponents import DerivedSets, ExponentSet, WeightProfile, classify, derived_sets
from .support import CoercivityMultiplier, SpectrumDecision, coercivity_multiplier, \
    delta_analysis, spectrum_decision

SCHEMA = "kohn-coerce/1"

_TOKEN = re.compile(r"(-?\d+),(-?\d+)")
_INNER = re.compile(r"\[[^\[\]]*\]")


def _line_col(text, offset):
    line = text.count("\n", 0, offset) + 1
    col = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, col


def _check_points(points, offsets, text) -> ExponentSet:
    if not points:
        raise EmptySet("exponent set is empty")
    seen: Dict[Tuple[int, int], list] = {}
    for i, (p, off) in enumerate(zip(points, offsets)):
        if p[0] < 0 or p[1] < 0:
            line, col = _line_col(text, off)
            raise NegativeExponent(f"negative exponent in {p} at line {line}, column {col}")
        seen.setdefault(p, []).append(i)
    for p, idx in seen.items():
        if len(idx) > 1:
            raise DuplicatePoint(p, idx)
    return ExponentSet(points)


def _parse_json(text):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    inner = [m.start() for m in _INNER.finditer(text)]
    if not isinstance(data, list):
        raise ParseError("expected a JSON array of [α, β] pairs", 1, 1)
    points = []
    for i, item in enumerate(data):
        off = inner[i] if i < len(inner) else 0
        ok = (isinstance(item, list) and len(item) == 2
              and all(isinstance(v, int) and not isinstance(v, bool) for v in item))
        if not ok:
            line, col = _line_col(text, off)
            raise ParseError(f"element {i} is not an integer pair: {item!r}", line, col)
        points.append((item[0], item[1]))
    return points, inner[:len(points)] + [0] * (len(points) - len(inner))


def _parse_tokens(text):
    points, offsets = [], []
    for m in re.finditer(r"\S+", text):
        tok = _TOKEN.fullmatch(m.group())
        if tok is None:
            line, col = _line_col(text, m.start())
            raise ParseError(f"bad token {m.group()!r}, expected 'α,β'", line, col)
        points.append((int(tok.group(1)), int(tok.group(2))))
        offsets.append(m.start())
    return points, offsets


def parse_gamma(text: str) -> ExponentSet:
    """Parse ``[[α,β], ...]`` JSON or whitespace-separated ``α,β`` tokens."""
    if text.lstrip().startswith("["):
        points, offsets = _parse_json(text)
    else:
        points, offsets = _parse_tokens(text)
    return _check_points(points, offsets, text)


def format_gamma(gamma) -> str:
    return json.dumps([list(p) for p in gamma])


def q_str(q) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def q_parse(s) -> Fraction:
    return Fraction(s)


def _q_fields(name, q):
    if q is None:
        return {name: None, name + "_float": None}
    return {name: q_str(q), name + "_float": float(q)}


def _points(s):
    return [list(p) for p in s]


def _pt(p):
    return None if p is None else tuple(p)


@dataclass(frozen=True)
class AnalysisReport:
    gamma: ExponentSet
    profile: WeightProfile
    derived: DerivedSets
    multiplier: Optional[CoercivityMultiplier]
    multiplier_error: Optional[str]
    spectrum: SpectrumDecision
    delta: Optional[Fraction]
    delta_ray: Optional[Tuple[int, int]]
    delta_error: Optional[str]
    verification: Dict[str, Any] = field(default_factory=dict)
    version: str = __version__
    config: Dict[str, Any] = field(default_factory=dict)

    @property
    def exit_code(self) -> int:
        return 2 if self.spectrum.kind == SpectrumDecision.INCONCLUSIVE else 0

    def to_dict(self) -> dict:
        prof = self.profile
        mult = None
        if self.multiplier is not None:
            mult = {
                **_q_fields("exponent_z", self.multiplier.exponent_z),
                **_q_fields("exponent_w", self.multiplier.exponent_w),
                "constant_hint": self.multiplier.constant_hint,
                "source": self.multiplier.source,
            }
        return {
            "schema": SCHEMA,
            "version": self.version,
            "gamma": _points(self.gamma),
            "profile": {
                "decoupled": prof.decoupled,
                "homogeneous": list(prof.homogeneous) if prof.homogeneous else None,
                **_q_fields("sigma", prof.sigma),
                **_q_fields("tau", prof.tau),
                **_q_fields("nu", prof.nu),
                "witness1": list(prof.witness1) if prof.witness1 else None,
                "witness2": list(prof.witness2) if prof.witness2 else None,
            },
            "derived": {k: _points(v) for k, v in self.derived._asdict().items()},
            "coercivity": {"multiplier": mult, "error": self.multiplier_error},
            "spectrum": {"kind": self.spectrum.kind, "reason": self.spectrum.reason},
            "delta": {
                **_q_fields("value", self.delta),
                "ray": list(self.delta_ray) if self.delta_ray else None,
                "error": self.delta_error,
            },
            "verification": self.verification,
            "config": self.config,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, ensure_ascii=False) + "\n"

    @classmethod
    def from_dict(cls, d) -> "AnalysisReport":
        if d.get("schema") != SCHEMA:
            raise ValueError(f"unsupported report schema {d.get('schema')!r}")
        gamma = ExponentSet(map(tuple, d["gamma"]))
        p = d["profile"]
        nu = p["nu"]
        profile = WeightProfile(
            gamma, p["decoupled"], _pt(p["homogeneous"]), q_parse(p["sigma"]),
            q_parse(p["tau"]), None if nu is None else q_parse(nu),
            _pt(p["witness1"]), _pt(p["witness2"]),
        )
        derived = DerivedSets(**{k: ExponentSet(map(tuple, v)) for k, v in d["derived"].items()})
        m = d["coercivity"]["multiplier"]
        mult = None if m is None else CoercivityMultiplier(
            q_parse(m["exponent_z"]), q_parse(m["exponent_w"]), m["constant_hint"], m["source"])
        dl = d["delta"]
        return cls(
            gamma, profile, derived, mult, d["coercivity"]["error"],
            SpectrumDecision(d["spectrum"]["kind"], d["spectrum"]["reason"]),
            None if dl["value"] is None else q_parse(dl["value"]),
            _pt(dl["ray"]), dl["error"], d["verification"], d["version"], d["config"],
        )

    @classmethod
    def from_json(cls, text) -> "AnalysisReport":
        return cls.from_dict(json.loads(text))


def analyze(gamma, config=None, verification=None) -> AnalysisReport:
    """Classification, derived sets, multiplier, spectrum decision and δ* for Γ."""
    gamma = ExponentSet(gamma) if not isinstance(gamma, ExponentSet) else gamma
    profile = classify(gamma)
    mult, mult_err = None, None
    try:
        mult = coercivity_multiplier(gamma)
    except Unsupported as exc:
        mult_err = f"Unsupported: {exc}"
    delta = ray = delta_err = None
    try:
        da = delta_analysis(gamma)
        delta, ray = da.delta, tuple(da.ray)
    except (PreconditionFailed, DegenerateWeight) as exc:
        delta_err = f"{type(exc).__name__}: {exc}"
    return AnalysisReport(
        gamma, profile, derived_sets(gamma), mult, mult_err, spectrum_decision(gamma),
        delta, ray, delta_err, dict(verification or {}), __version__, dict(config or {}),
    )
