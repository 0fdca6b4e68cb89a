"""Exact linear optimization over exponent sets.

Along the curve ``t -> (t^u, t^v)`` in ``(|z|^2, |w|^2)`` space a model
weight ``p_A`` grows like ``t^{m_{u,v}(A)}`` where ``m_{u,v}(A)`` is the
maximum of ``uξ + vη`` over ``A``.  The minimal Hessian eigenvalue then
grows like ``t`` to the power ``m_{u,v}(Γ⁽¹⁾) - m_{u,v}(Γ⁽²⁾)``.  This module
computes those exponents exactly, the region picture for homogeneous
weights, the best exponent ``δ*`` certified by the cone bound, and the
coercivity / spectrum decisions built on them.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple

from .errors import (
    DegenerateWeight,
    EmptyPointSet,
    OutOfRegion,
    PreconditionFailed,
    Unsupported,
)
from .exponents import (
    ExponentSet,
    WeightProfile,
    as_exponent_set,
    classify,
    derived_sets,
    discreteness_hypotheses,
)
from .weight import as_point


def _q(v) -> Fraction:
    return v if isinstance(v, Fraction) else Fraction(v)


@dataclass(frozen=True)
class Direction:
    u: Fraction
    v: Fraction

    def __post_init__(self):
        u, v = _q(self.u), _q(self.v)
        if u == 0 and v == 0:
            raise ValueError("direction (0, 0) is not allowed")
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "v", v)

    def scaled(self, s) -> "Direction":
        return Direction(self.u * s, self.v * s)

    def primitive(self) -> Tuple[int, int]:
        """Integer representative with coprime entries."""
        den = math.lcm(self.u.denominator, self.v.denominator)
        a, b = int(self.u * den), int(self.v * den)
        g = math.gcd(a, b)
        return a // g, b // g

    def angle(self) -> float:
        return math.atan2(self.v, self.u)

    def __iter__(self):
        return iter((self.u, self.v))


def as_direction(d) -> Direction:
    return d if isinstance(d, Direction) else Direction(*d)


class RegionLabel(enum.Enum):
    E1 = "E1"
    E2 = "E2"
    E3 = "E3"
    E = "E"
    U0 = "U0"
    Ur = "Ur"
    Uu = "Uu"
    Outside = "Outside"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class CoercivityMultiplier:
    """``μ(z, w) = c (1 + |z|^a + |w|^b)`` with ``a = exponent_z``, ``b = exponent_w``."""

    exponent_z: Fraction
    exponent_w: Fraction
    constant_hint: Optional[float] = None
    source: str = "homogeneous"

    def __call__(self, rz, rw):
        # 0**0 == 1, matching |z|^0 = 1
        return 1.0 + rz ** float(self.exponent_z) + rw ** float(self.exponent_w)


@dataclass(frozen=True)
class SpectrumDecision:
    kind: str  # "Discrete" | "NotDiscrete" | "Inconclusive"
    reason: Optional[str] = None

    DISCRETE = "Discrete"
    NOT_DISCRETE = "NotDiscrete"
    INCONCLUSIVE = "Inconclusive"

    def __str__(self):
        return self.kind if self.reason is None else f"{self.kind}({self.reason})"


# -- support function ----------------------------------------------------

def support_max(a, d) -> Tuple[Fraction, frozenset]:
    """Maximum of ``uξ + vη`` over ``a`` and the set of maximizers."""
    a = as_exponent_set(a)
    u, v = as_direction(d)
    if not len(a):
        raise EmptyPointSet("m_{u,v} of an empty set is undefined")
    values = [(u * p[0] + v * p[1], p) for p in a]
    best = max(val for val, _ in values)
    return best, frozenset(p for val, p in values if val == best)


def _support_int(points, u: int, v: int) -> int:
    return max(u * a + v * b for a, b in points)


def lambda_exponent(gamma, d) -> Fraction:
    """Growth exponent of the minimal eigenvalue along ``C_{u,v}``."""
    ds = derived_sets(gamma)
    if not len(ds.gamma_1):
        raise DegenerateWeight("Γ⁽¹⁾ is empty: the minimal eigenvalue vanishes identically")
    return support_max(ds.gamma_1, d)[0] - support_max(ds.gamma_2, d)[0]


# -- regions -------------------------------------------------------------

_COVER_ORDER = (RegionLabel.U0, RegionLabel.Ur, RegionLabel.Uu, RegionLabel.E)


def _in_cover_region(label, sigma, tau, rz, rw):
    if label is RegionLabel.U0:
        return rz <= 2 and rw <= 2
    if label is RegionLabel.Ur:
        return rz > 1 and rw <= 2 * rz ** -sigma
    if label is RegionLabel.Uu:
        return rw > 1 and rz <= 2 * rw ** -tau
    if label is RegionLabel.E:
        return (rz >= 1 and rw >= rz ** -sigma) or (rw >= 1 and rz >= rw ** -tau)
    raise ValueError(label)


@dataclass(frozen=True)
class PowerLayout:
    """Data for the three power-law regions, in the frame where ``m >= n``.

    ``swapped`` records that the coordinates were exchanged to reach that
    frame; points must be swapped the same way before use.
    """

    swapped: bool
    m: int
    n: int
    alpha1: int
    beta1: int
    alpha2: int
    beta2: int
    nu: Optional[Fraction]


def power_layout(profile: WeightProfile) -> PowerLayout:
    if profile.homogeneous is None or profile.decoupled:
        raise PreconditionFailed("power-law regions need a homogeneous, non-decoupled weight")
    m, n = profile.homogeneous
    swapped = m < n
    if swapped:
        profile = classify(profile.gamma.swapped())
        m, n = profile.homogeneous
    (a1, b1), (a2, b2) = profile.witness1, profile.witness2
    return PowerLayout(swapped, m, n, a1, b1, a2, b2, profile.nu)


def _power_region(layout: PowerLayout, rz, rw):
    if layout.swapped:
        rz, rw = rw, rz
    m, n = layout.m, layout.n
    if rz >= 1 and rw <= rz ** (m / n):
        return RegionLabel.E1
    if rw >= 1:
        # nu None: the E3 law holds on the whole range (α₂ = 1)
        lower = math.inf if layout.nu is None else rw ** float(layout.nu)
        if rz <= lower:
            return RegionLabel.E3
        if rz <= rw ** (n / m):
            return RegionLabel.E2
    return RegionLabel.Outside


def regions_containing(profile: WeightProfile, p) -> frozenset:
    """Every region label whose defining inequalities hold at ``p``."""
    p = as_point(p)
    rz, rw = abs(p.z), abs(p.w)
    sigma, tau = float(profile.sigma), float(profile.tau)
    labels = {lab for lab in _COVER_ORDER if _in_cover_region(lab, sigma, tau, rz, rw)}
    if profile.homogeneous is not None and not profile.decoupled:
        layout = power_layout(profile)
        r1, r2 = (rw, rz) if layout.swapped else (rz, rw)
        m, n = layout.m, layout.n
        nu = math.inf if layout.nu is None else float(layout.nu)
        if r1 >= 1 and r2 <= r1 ** (m / n):
            labels.add(RegionLabel.E1)
        if r2 >= 1 and r2 ** nu <= r1 <= r2 ** (n / m):
            labels.add(RegionLabel.E2)
        if r2 >= 1 and r1 <= r2 ** nu:
            labels.add(RegionLabel.E3)
    return frozenset(labels)


def classify_region(profile: WeightProfile, p, scheme: str = "cover") -> RegionLabel:
    """Label a point.

    ``scheme="cover"`` returns the first of U0, Ur, Uu, E containing ``p``
    (the four sets cover C^2 and overlap).  ``scheme="power"`` returns E1, E2,
    E3 or Outside for homogeneous weights (after the ``m >= n`` swap, see
    :func:`power_layout`).  ``scheme="combined"`` prefers an uncertainty
    region and otherwise falls back to the power label, or E.
    ``scheme="figure"`` does the opposite: points of E get their power label
    (E1 ∪ E2 ∪ E3 contains E) and only the rest get U0, Ur or Uu, which is
    the picture with boundary curves ``|w| = |z|^{-σ}`` and ``|z| = |w|^{-τ}``.
    """
    p = as_point(p)
    rz, rw = abs(p.z), abs(p.w)
    sigma, tau = float(profile.sigma), float(profile.tau)
    if scheme == "power":
        return _power_region(power_layout(profile), rz, rw)
    if scheme == "figure":
        if _in_cover_region(RegionLabel.E, sigma, tau, rz, rw):
            if profile.homogeneous and not profile.decoupled:
                return _power_region(power_layout(profile), rz, rw)
            return RegionLabel.E
        scheme = "cover"
    for lab in _COVER_ORDER:
        if _in_cover_region(lab, sigma, tau, rz, rw):
            if scheme == "combined" and lab is RegionLabel.E and profile.homogeneous and not profile.decoupled:
                return _power_region(power_layout(profile), rz, rw)
            if scheme in ("cover", "combined"):
                return lab
            raise ValueError(f"unknown scheme {scheme!r}")
    raise AssertionError(f"cover regions miss point {p}")  # pragma: no cover


def predicted_lambda(profile: WeightProfile, p, label: Optional[RegionLabel] = None) -> float:
    """Monomial the minimal eigenvalue is comparable to on E1, E2 or E3.

    By default the region is the one :func:`classify_region` reports with
    ``scheme="power"``.  On shared boundaries ``label`` selects which law to
    use; it must be one of the regions containing ``p``.
    """
    layout = power_layout(profile)
    p = as_point(p)
    rz, rw = abs(p.z), abs(p.w)
    if label is None:
        label = _power_region(layout, rz, rw)
    elif label not in regions_containing(profile, p):
        raise OutOfRegion(f"{p} is not in {label.value}")
    if layout.swapped:
        rz, rw = rw, rz
    if label is RegionLabel.E1:
        return rz ** (2 * layout.alpha1) * rw ** (2 * (layout.beta1 - 1))
    if label is RegionLabel.E2:
        return rw ** (2 * (layout.n - 1))
    if label is RegionLabel.E3:
        return rz ** (2 * (layout.alpha2 - 1)) * rw ** (2 * layout.beta2)
    raise OutOfRegion(f"{p} lies in none of E1, E2, E3")


# -- optimal delta ---------------------------------------------------------

@dataclass(frozen=True)
class DeltaAnalysis:
    """Result of the exact ray enumeration.

    ``ray`` is a minimizing critical ray (integer, primitive) and ``rays``
    every critical ray examined, each with its exact ratio.
    """

    delta: Fraction
    ray: Tuple[int, int]
    rays: Tuple[Tuple[Tuple[int, int], Fraction], ...] = field(repr=False)


def _primitive(a: int, b: int) -> Tuple[int, int]:
    g = math.gcd(a, b)
    return a // g, b // g


def _frac_ray(u: Fraction, v: Fraction) -> Tuple[int, int]:
    return Direction(u, v).primitive()


def _in_cone(ray, cone, sigma, tau) -> bool:
    u, v = ray
    if cone == 1:
        return u >= 0 and v >= -sigma * u
    return v >= 0 and u >= -tau * v


def delta_ratio(gamma1, gamma2, ray) -> Fraction:
    """``(m_{u,v}(Γ⁽¹⁾) - m_{u,v}(Γ⁽²⁾)) / max(u, v)`` for an integer ray."""
    u, v = ray
    top = max(u, v)
    assert top > 0, f"max(u, v) must be positive on the cones, got ray {ray}"
    return Fraction(_support_int(gamma1, u, v) - _support_int(gamma2, u, v), top)


def critical_rays(gamma, profile: Optional[WeightProfile] = None):
    """Rays on which the cone ratio can attain its minimum.

    On each sector between consecutive rays of this list both support
    functions and ``max(u, v)`` are linear, so the ratio is monotone there.
    """
    gamma = as_exponent_set(gamma)
    profile = profile or classify(gamma)
    sigma, tau = profile.sigma, profile.tau
    ds = derived_sets(gamma)
    candidates = {
        _frac_ray(Fraction(1), -sigma),
        _frac_ray(-tau, Fraction(1)),
        (1, 0),
        (0, 1),
        (1, 1),
    }
    for pts in (ds.gamma_1.points, ds.gamma_2.points):
        for i, p in enumerate(pts):
            for q in pts[i + 1:]:
                da, db = q[0] - p[0], q[1] - p[1]
                if da or db:
                    candidates.add(_primitive(-db, da))
                    candidates.add(_primitive(db, -da))
    rays = [r for r in candidates if _in_cone(r, 1, sigma, tau) or _in_cone(r, 2, sigma, tau)]
    return sorted(rays, key=lambda r: math.atan2(r[1], r[0]))


def delta_analysis(gamma) -> DeltaAnalysis:
    gamma = as_exponent_set(gamma)
    reason = discreteness_hypotheses(gamma)
    profile = classify(gamma)
    if reason is not None:
        raise PreconditionFailed(reason)
    if profile.decoupled:
        raise PreconditionFailed("requires a non-decoupled weight")
    ds = derived_sets(gamma)
    if not len(ds.gamma_1):
        raise DegenerateWeight("Γ⁽¹⁾ is empty")
    g1, g2 = ds.gamma_1.points, ds.gamma_2.points
    scored = tuple((r, delta_ratio(g1, g2, r)) for r in critical_rays(gamma, profile))
    ray, best = min(scored, key=lambda item: item[1])
    return DeltaAnalysis(best, ray, scored)


def optimal_delta(gamma) -> Fraction:
    """Largest ``δ`` with ``m(Γ⁽¹⁾) - m(Γ⁽²⁾) >= δ max(u, v)`` on both cones."""
    return delta_analysis(gamma).delta


def sufficient_delta(gamma) -> Fraction:
    """The explicit (generally non-optimal) choice of ``δ`` from the case analysis."""
    gamma = as_exponent_set(gamma)
    profile = classify(gamma)
    xs, ys = gamma.axis_points()
    m, n = Fraction(max(xs)), Fraction(max(ys))
    return min(
        Fraction(1), profile.sigma, profile.tau, n - 1, m - 1,
        n * (m - 1) / m, m * (n - 1) / n, min(m, n) - 1,
    )


# -- decisions ---------------------------------------------------------------

def coercivity_multiplier(gamma) -> CoercivityMultiplier:
    """Exponents ``(a, b)`` of the coercivity multiplier.

    Homogeneous weights (decoupled ones included, with ``σ = τ = 0``) get
    ``(σ, τ)``; other weights meeting the axis hypotheses get ``(δ*, δ*)``.
    """
    gamma = as_exponent_set(gamma)
    profile = classify(gamma)
    if profile.homogeneous is not None:
        return CoercivityMultiplier(profile.sigma, profile.tau, source="homogeneous")
    reason = discreteness_hypotheses(gamma)
    if reason is not None or profile.decoupled:
        raise Unsupported(reason or "decoupled, non-homogeneous weight")
    delta = optimal_delta(gamma)
    return CoercivityMultiplier(delta, delta, source="delta")


def spectrum_decision(gamma) -> SpectrumDecision:
    gamma = as_exponent_set(gamma)
    reason = discreteness_hypotheses(gamma)
    if reason is not None:
        return SpectrumDecision(SpectrumDecision.INCONCLUSIVE, reason)
    if classify(gamma).decoupled:
        return SpectrumDecision(SpectrumDecision.NOT_DISCRETE)
    return SpectrumDecision(SpectrumDecision.DISCRETE)
