"""Admissibility data of model weights: Laplacian, ball sups, radius function.

``Δφ = 4 tr H_φ`` is a polynomial in ``x = |z|²`` and ``y = |w|²`` with
nonnegative coefficients, hence nondecreasing in ``|z|`` and ``|w|``.  Over a
ball ``B(p, r) ⊂ C²`` the moduli ``(|z|, |w|)`` reach exactly the quarter disc
around ``(|z₀|, |w₀|)`` clipped to the positive quadrant, so the sup is
attained on the outer arc ``(|z₀| + r cos θ, |w₀| + r sin θ)``.  Ball sups
sample that arc (plus the centre) and are reported as sampled sups.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Tuple

import numpy as np
from scipy.stats import qmc

from .errors import NotAdmissible
from .exponents import ExponentSet, as_exponent_set
from .weight import Point2C, as_point, hessian_polys

RHO_BRACKET = (1e-8, 1e8)
DEFAULT_SAMPLES = 512


def _moduli(p):
    if isinstance(p, Point2C):
        return abs(p.z), abs(p.w)
    p = as_point(p)
    return abs(p.z), abs(p.w)


def _laplacian_st(gamma, s, t):
    polys = hessian_polys(gamma)
    s = np.asarray(s, dtype=float)
    t = np.asarray(t, dtype=float)
    return 4.0 * np.asarray(polys.trace(s * s, t * t))


def laplacian(gamma, p) -> float:
    """``Δφ`` at ``p`` (the Euclidean Laplacian on ``R⁴``), ``4 (h_zz + h_ww)``."""
    gamma = as_exponent_set(gamma)
    if not len(gamma):
        raise ValueError("Laplacian of an empty exponent set")
    return float(_laplacian_st(gamma, *_moduli(p)))


def _arc(m):
    theta = np.linspace(0.0, 0.5 * math.pi, m)
    return np.cos(theta), np.sin(theta)


def _ball_sup_st(gamma, s0, t0, r, samples=DEFAULT_SAMPLES):
    """Sampled sup of ``Δφ`` over ``B(p, r)``; ``s0, t0, r`` broadcast together."""
    c, sn = _arc(samples)
    s0, t0, r = (np.asarray(v, dtype=float)[..., None] for v in (s0, t0, r))
    vals = _laplacian_st(gamma, s0 + r * c, t0 + r * sn)
    centre = _laplacian_st(gamma, s0[..., 0], t0[..., 0])
    return np.maximum(vals.max(axis=-1), centre)


def ball_sup(gamma, p, r, samples: int = DEFAULT_SAMPLES) -> float:
    gamma = as_exponent_set(gamma)
    s0, t0 = _moduli(p)
    return float(_ball_sup_st(gamma, s0, t0, r, samples))


def _rho_vec(gamma, s0, t0, tol, samples):
    """Bisection in ``log r`` for every centre at once."""
    s0, t0 = np.broadcast_arrays(np.asarray(s0, float), np.asarray(t0, float))
    lo = np.full(s0.shape, math.log(RHO_BRACKET[0]))
    hi = np.full(s0.shape, math.log(RHO_BRACKET[1]))

    def sup(logr):
        return _ball_sup_st(gamma, s0, t0, np.exp(logr), samples)

    sup_lo, sup_hi = sup(lo), sup(hi)
    if np.any(sup_lo > np.exp(-2 * lo)):
        raise NotAdmissible(
            f"sup of the Laplacian exceeds r^-2 already at r = {RHO_BRACKET[0]:g}"
        )
    if np.any(sup_hi <= np.exp(-2 * hi)):
        raise NotAdmissible(
            f"sup of the Laplacian stays below r^-2 up to r = {RHO_BRACKET[1]:g}"
        )
    steps = math.ceil(math.log2((hi.flat[0] - lo.flat[0]) / math.log1p(tol))) if s0.size else 0
    for _ in range(steps):
        mid = 0.5 * (lo + hi)
        val = sup(mid)
        ok = val <= np.exp(-2 * mid)
        lo = np.where(ok, mid, lo)
        hi = np.where(ok, hi, mid)
        sup_lo = np.where(ok, val, sup_lo)
        sup_hi = np.where(ok, sup_hi, val)
    if np.any(sup_lo > sup_hi):
        raise AssertionError("ball sup of the Laplacian is not monotone in the radius")
    return np.exp(0.5 * (lo + hi))


def _rho_st(gamma, s0, t0, tol, samples):
    return float(_rho_vec(gamma, s0, t0, tol, samples))


def rho_by_definition(gamma, p, tol: float = 1e-12, samples: int = DEFAULT_SAMPLES) -> float:
    """``ρ(p) = sup{r > 0 : sup_{B(p,r)} Δφ ≤ r⁻²}`` by bisection in ``log r``."""
    gamma = as_exponent_set(gamma)
    s0, t0 = _moduli(p)
    return _rho_st(gamma, s0, t0, tol, samples)


def _falling(n, k):
    return math.perm(n, k) if 0 <= k <= n else 0


@lru_cache(maxsize=64)
def _derivative_table(gamma: ExponentSet):
    """Every nonzero Wirtinger derivative of ``Δφ`` as a polynomial in ``|z|, |w|``.

    ``Δφ = Σ c_ij z^i z̄^i w^j w̄^j``.  All monomials share the phase of
    ``∂^{α₁}_z ∂^{β₁}_z̄ ∂^{α₂}_w ∂^{β₂}_w̄``, so the modulus of the derivative is
    ``Σ c_ij (i)_{α₁} (i)_{β₁} (j)_{α₂} (j)_{β₂} |z|^{2i-α₁-β₁} |w|^{2j-α₂-β₂}``.
    Swapping ``α₁ ↔ β₁`` or ``α₂ ↔ β₂`` gives the same modulus, so only
    ``α ≤ β`` is enumerated.  Returns a list of ``(order, coefs, ez, ew)``.
    """
    trace = hessian_polys(gamma).trace
    coef = {k: 4 * c for k, c in trace.terms.items()}
    imax = max((i for i, _ in coef), default=0)
    jmax = max((j for _, j in coef), default=0)
    table = []
    for a1 in range(imax + 1):
        for b1 in range(a1, imax + 1):
            for a2 in range(jmax + 1):
                for b2 in range(a2, jmax + 1):
                    cs, ez, ew = [], [], []
                    for (i, j), c in coef.items():
                        f = c * _falling(i, a1) * _falling(i, b1) * _falling(j, a2) * _falling(j, b2)
                        if f:
                            cs.append(float(f))
                            ez.append(2 * i - a1 - b1)
                            ew.append(2 * j - a2 - b2)
                    if cs:
                        table.append((a1 + b1 + a2 + b2, np.array(cs), np.array(ez), np.array(ew)))
    return table


def _rho_poly_st(gamma, s, t):
    gamma = as_exponent_set(gamma)
    s = np.asarray(s, dtype=float)
    t = np.asarray(t, dtype=float)
    best = np.full(np.broadcast(s, t).shape, np.inf)
    with np.errstate(divide="ignore", over="ignore"):
        for order, cs, ez, ew in _derivative_table(gamma):
            val = np.sum(cs * s[..., None] ** ez * t[..., None] ** ew, axis=-1)
            cand = np.where(val > 0, val ** (-1.0 / (order + 2)), np.inf)
            best = np.minimum(best, cand)
    return best


def rho_by_poly_formula(gamma, p) -> float:
    """``min |∂^{α+β} Δφ(p) / ∂z^α ∂z̄^β|^{-1/(|α|+|β|+2)}`` over nonzero derivatives."""
    gamma = as_exponent_set(gamma)
    if not len(gamma):
        raise ValueError("radius of an empty exponent set")
    val = float(_rho_poly_st(gamma, *_moduli(p)))
    if not math.isfinite(val):
        raise NotAdmissible("Laplacian of the weight vanishes identically")
    return val


@dataclass(frozen=True)
class RadiusEstimate:
    by_definition: float
    by_poly_formula: float
    at: Point2C

    @property
    def ratio(self):
        return self.by_definition / self.by_poly_formula


def radius_estimate(gamma, p, tol: float = 1e-12) -> RadiusEstimate:
    p = as_point(p)
    return RadiusEstimate(rho_by_definition(gamma, p, tol), rho_by_poly_formula(gamma, p), p)


def rho_grid(gamma, s, t, tol: float = 1e-10, samples: int = DEFAULT_SAMPLES):
    """``rho_by_definition`` over arrays of moduli ``s = |z|``, ``t = |w|``."""
    return _rho_vec(as_exponent_set(gamma), s, t, tol, samples)


def comparability_band(gamma, s, t, tol: float = 1e-8,
                       samples: int = DEFAULT_SAMPLES) -> Tuple[float, float]:
    """``(min, max)`` of ``rho_by_definition / rho_by_poly_formula`` over the moduli grid."""
    gamma = as_exponent_set(gamma)
    ratio = rho_grid(gamma, s, t, tol, samples) / _rho_poly_st(gamma, s, t)
    return float(ratio.min()), float(ratio.max())


def _halton(n, dim, seed):
    # unscrambled Halton starts at the origin, which is where doubling is worst
    sampler = qmc.Halton(d=dim, scramble=seed is not None, seed=seed)
    return sampler.random(n)


def doubling_constant(gamma, samples: int = 256, extent: float = 4.0,
                      log_radius: Tuple[float, float] = (-2.0, 2.0),
                      ball_samples: int = DEFAULT_SAMPLES, seed=None) -> float:
    """Largest sampled ``sup_{B(p,2r)} Δφ / sup_{B(p,r)} Δφ``.

    Centres (moduli) fill ``[0, extent]²`` and ``log₁₀ r`` fills ``log_radius``
    with a Halton pattern; the origin is always included.
    """
    gamma = as_exponent_set(gamma)
    pts = _halton(samples, 3, seed)
    s0 = np.concatenate([[0.0], extent * pts[:, 0]])
    t0 = np.concatenate([[0.0], extent * pts[:, 1]])
    lo, hi = log_radius
    r = 10.0 ** np.concatenate([[lo], lo + (hi - lo) * pts[:, 2]])
    inner = _ball_sup_st(gamma, s0, t0, r, ball_samples)
    outer = _ball_sup_st(gamma, s0, t0, 2 * r, ball_samples)
    if np.any(inner <= 0):
        raise NotAdmissible("Laplacian vanishes on a sampled ball")
    return float(np.max(outer / inner))


def doubling_cap(gamma) -> float:
    """``T_d(2)`` for ``d`` the real degree of ``Δφ``.

    On each line through the centre, a degree ``d`` polynomial bounded by
    ``S`` on ``[-r, r]`` is bounded by ``T_d(2) S`` on ``[-2r, 2r]``
    (Chebyshev's extremal property), so this caps every doubling ratio.
    """
    d = 2 * hessian_polys(gamma).trace.degree()
    return math.cosh(d * math.acosh(2.0))


def local_lower_bound(gamma, c: float = 1.0, extent: float = 50.0, res: int = 64) -> float:
    """Sampled ``inf_p sup_{B(p,c)} Δφ`` over centres with moduli in ``[0, extent]²``."""
    gamma = as_exponent_set(gamma)
    grid = np.linspace(0.0, extent, res)
    s0, t0 = np.meshgrid(grid, grid, indexing="ij")
    return float(np.min(_ball_sup_st(gamma, s0, t0, c)))


def kappa_radius_check(a, b, samples: int = 256, extent: float = 20.0,
                       arc_samples: int = DEFAULT_SAMPLES, seed=None) -> float:
    """Sampled max of ``κ(p)⁻¹ / κ(p₀)⁻¹`` for ``p ∈ B(p₀, 1)``, ``κ⁻¹ = 1 + |z|^a + |w|^b``.

    The numerator is increasing in the moduli, so for each centre only the
    unit arc around ``(|z₀|, |w₀|)`` is sampled.
    """
    a, b = float(Fraction(a)), float(Fraction(b))
    if a < 0 or b < 0:
        raise ValueError("exponents must be nonnegative")
    # squaring clusters centres near the origin, where the ratio peaks
    pts = _halton(samples, 2, seed) ** 2
    s0 = np.concatenate([[0.0], extent * pts[:, 0]])[:, None]
    t0 = np.concatenate([[0.0], extent * pts[:, 1]])[:, None]
    c, sn = _arc(arc_samples)
    num = 1.0 + (s0 + c) ** a + (t0 + sn) ** b
    den = 1.0 + s0 ** a + t0 ** b
    return float(np.max(num / den))


def radius_function_constant(gamma, samples: int = 64, extent: float = 1.5,
                             offsets: int = 8, tol: float = 1e-8, seed=None) -> float:
    """Sampled smallest ``C`` with ``C⁻¹ ρ(p) ≤ ρ(p') ≤ C ρ(p)`` for ``p' ∈ B(p, ρ(p))``."""
    gamma = as_exponent_set(gamma)
    pts = _halton(samples, 2, seed)
    theta = 2 * math.pi * np.arange(offsets) / offsets
    s0, t0 = extent * pts[:, 0, None, None], extent * pts[:, 1, None, None]
    rho = _rho_vec(gamma, s0, t0, tol, DEFAULT_SAMPLES)
    frac = np.array([0.5, 1.0])[None, :, None]
    s1 = np.abs(s0 + frac * rho * np.cos(theta))
    t1 = np.abs(t0 + frac * rho * np.sin(theta))
    rho1 = _rho_vec(gamma, s1, t1, tol, DEFAULT_SAMPLES)
    return float(max(1.0, np.max(rho1 / rho), np.max(rho / rho1)))
