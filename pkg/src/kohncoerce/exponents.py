"""Exact combinatorics of finite exponent sets in N^2.

An exponent set ``Γ`` determines the model weight
``φ_Γ(z, w) = Σ_{(α, β) ∈ Γ} |z^α w^β|^2``.  This module builds the derived
sets used to approximate the determinant and trace of its complex Hessian
and computes the classification record (:class:`WeightProfile`).  All
arithmetic is on integers and :class:`fractions.Fraction`.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import NamedTuple, Optional, Tuple

Point = Tuple[int, int]


class ExponentSet:
    """Immutable finite subset of N^2.

    Iteration order is lexicographic, which makes every downstream
    computation deterministic.  Repeated points collapse (set semantics);
    the text parser is where duplicates are reported as errors.
    """

    __slots__ = ("_points", "_set")

    def __init__(self, points=()):
        pts = set()
        for p in points:
            a, b = p
            if int(a) != a or int(b) != b:
                raise ValueError(f"exponents must be integers, got {p!r}")
            a, b = int(a), int(b)
            if a < 0 or b < 0:
                raise ValueError(f"exponents must be non-negative, got {p!r}")
            pts.add((a, b))
        self._set = frozenset(pts)
        self._points = tuple(sorted(pts))

    @property
    def points(self):
        return self._points

    def __iter__(self):
        return iter(self._points)

    def __len__(self):
        return len(self._points)

    def __contains__(self, p):
        return tuple(p) in self._set

    def __eq__(self, other):
        if isinstance(other, ExponentSet):
            return self._set == other._set
        return NotImplemented

    def __hash__(self):
        return hash(self._set)

    def __repr__(self):
        return f"ExponentSet({list(self._points)})"

    def swapped(self):
        """The set with the roles of the two coordinates exchanged."""
        return ExponentSet((b, a) for a, b in self._points)

    def axis_points(self):
        """Return the exponents ``m`` with ``(m, 0) ∈ Γ`` and ``n`` with ``(0, n) ∈ Γ``."""
        xs = sorted(a for a, b in self._points if b == 0 and a > 0)
        ys = sorted(b for a, b in self._points if a == 0 and b > 0)
        return xs, ys

    def mixed_points(self):
        return [(a, b) for a, b in self._points if a != 0 and b != 0]


def as_exponent_set(gamma) -> ExponentSet:
    return gamma if isinstance(gamma, ExponentSet) else ExponentSet(gamma)


class DerivedSets(NamedTuple):
    gamma_r: ExponentSet
    gamma_u: ExponentSet
    gamma_1: ExponentSet
    gamma_2: ExponentSet


def linearly_independent(p: Point, q: Point) -> bool:
    return p[0] * q[1] - p[1] * q[0] != 0


def derived_sets(gamma) -> DerivedSets:
    """Compute ``Γ_r``, ``Γ_u``, ``Γ⁽¹⁾`` and ``Γ⁽²⁾``.

    ``Γ⁽¹⁾`` collects ``p + q - (1, 1)`` over linearly independent pairs and
    controls the Hessian determinant; ``Γ⁽²⁾ = (Γ_r - (1, 0)) ∪ (Γ_u - (0, 1))``
    controls the trace.
    """
    gamma = as_exponent_set(gamma)
    gamma_r = ExponentSet(p for p in gamma if p[0] != 0)
    gamma_u = ExponentSet(p for p in gamma if p[1] != 0)
    gamma_1 = ExponentSet(
        (p[0] + q[0] - 1, p[1] + q[1] - 1)
        for p, q in product(gamma, gamma)
        if linearly_independent(p, q)
    )
    gamma_2 = ExponentSet(
        [(a - 1, b) for a, b in gamma_r] + [(a, b - 1) for a, b in gamma_u]
    )
    return DerivedSets(gamma_r, gamma_u, gamma_1, gamma_2)


def gamma_uv(gamma, maximizer: Point) -> ExponentSet:
    """Points of ``Γ`` that are not multiples of ``maximizer``."""
    return ExponentSet(p for p in as_exponent_set(gamma) if linearly_independent(p, maximizer))


@dataclass(frozen=True)
class WeightProfile:
    """Classification of a model monomial weight.

    ``homogeneous`` holds ``(m, n)`` when all of Γ lies on the segment from
    ``(m, 0)`` to ``(0, n)``.  ``nu`` is ``(n - 1 - β₂)/(α₂ - 1)``; it is
    ``None`` unless the weight is homogeneous and not decoupled, and also
    when ``α₂ = 1`` (then the formula is 0/0 or the E₃ law covers every
    direction with ``u <= (n/m) v``).
    """

    gamma: ExponentSet
    decoupled: bool
    homogeneous: Optional[Tuple[int, int]]
    sigma: Fraction
    tau: Fraction
    nu: Optional[Fraction]
    witness1: Optional[Point]
    witness2: Optional[Point]

    @property
    def m(self):
        return self.homogeneous[0] if self.homogeneous else None

    @property
    def n(self):
        return self.homogeneous[1] if self.homogeneous else None


def _homogeneity(gamma: ExponentSet):
    xs, ys = gamma.axis_points()
    if len(xs) != 1 or len(ys) != 1:
        return None
    m, n = xs[0], ys[0]
    if all(n * a + m * b == n * m for a, b in gamma):
        return (m, n)
    return None


def classify(gamma) -> WeightProfile:
    gamma = as_exponent_set(gamma)
    if not len(gamma):
        raise ValueError("classify needs a non-empty exponent set")
    mixed = gamma.mixed_points()
    homogeneous = _homogeneity(gamma)
    if not mixed:
        return WeightProfile(gamma, True, homogeneous, Fraction(0), Fraction(0), None, None, None)

    sigma = max(Fraction(a, b) for a, b in mixed)
    tau = max(Fraction(b, a) for a, b in mixed)
    # ties: lexicographically smallest point, `mixed` is already sorted
    witness1 = next(p for p in mixed if Fraction(p[0], p[1]) == sigma)
    witness2 = next(p for p in mixed if Fraction(p[1], p[0]) == tau)

    nu = None
    if homogeneous is not None:
        n = homogeneous[1]
        a2, b2 = witness2
        if a2 != 1:
            nu = Fraction(n - 1 - b2, a2 - 1)
    return WeightProfile(gamma, False, homogeneous, sigma, tau, nu, witness1, witness2)


def discreteness_hypotheses(gamma) -> Optional[str]:
    """Return ``None`` when some ``(m,0), (0,n)`` with ``m, n >= 2`` lie in Γ, else the reason."""
    xs, ys = as_exponent_set(gamma).axis_points()
    if not xs or not ys:
        return "requires axis points (m,0) and (0,n) in Γ"
    if max(xs) < 2 or max(ys) < 2:
        return "requires m,n≥2"
    return None
