"""Quadrature of the weighted scalar energy.

For a test function ``u`` and a region ``Ω`` the energy is

    F_Ω(u) = ∫_Ω |∂u/∂z̄|² e^{-2φ} + ∫_Ω |∂u/∂w̄|² e^{-2φ} + 2 ∫_Ω λ_Γ |u|² e^{-2φ}

and it is compared with the multiplier mass ``∫_Ω μ² |u|² e^{-2φ}``,
``μ = 1 + |z|^a + |w|^b``.  Test functions are bi-radial,
``u = g(|z|², |w|²)`` with ``g = g₁(x) g₂(y)``, so ``∂u/∂z̄ = z ∂ₓg`` and
all integrals reduce to two radial variables with a ``(2π)²`` factor.

A test function may be *weight adapted*: then ``u = e^{φ} g``, so that
``|u|² e^{-2φ} = g²`` and the probe can sit anywhere in ``C²`` without the
weight flushing every integrand to zero.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from functools import lru_cache
from typing import Dict, Optional, Sequence

import numpy as np
from scipy import integrate

from ._poly import BiPoly
from .errors import TailBoundViolated, ZeroMass
from .exponents import as_exponent_set
from .support import CoercivityMultiplier, RegionLabel, classify, coercivity_multiplier
from .weight import lambda_min_xy

KINDS = ("gaussian_radial", "bump_radial", "polynomial_times_gaussian")


@dataclass(frozen=True)
class TestFunction:
    """Bi-radial probe ``g₁(|z|²) g₂(|w|²)``, optionally multiplied by ``e^{φ}``.

    * ``gaussian_radial``: ``exp(-a x - b y)`` with ``(a, b) = rate``
    * ``polynomial_times_gaussian``: ``x^p y^q exp(-a x - b y)``, ``(p, q) = power``
    * ``bump_radial``: Gaussian in ``x`` (and ``y``) centred at ``|z| = center[0]``
      (``|w| = center[1]``) with modulus widths ``width``
    """

    __test__ = False  # not a pytest class

    kind: str
    rate: tuple = (1.0, 1.0)
    center: tuple = (0.0, 0.0)
    width: tuple = (1.0, 1.0)
    power: tuple = (0, 0)
    adapted: bool = False

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown test function kind {self.kind!r}")
        if self.kind == "bump_radial" and min(self.width) <= 0:
            raise ValueError("bump widths must be positive")
        if self.kind != "bump_radial" and min(self.rate) <= 0:
            raise ValueError("Gaussian rates must be positive")

    def _axis(self, i):
        """``(log g_i, g_i'/g_i, scale)`` callables for coordinate ``i``."""
        if self.kind == "bump_radial":
            c, s = self.center[i], self.width[i]
            x0, sx = c * c, s * (2 * c + s)
            return (lambda x: -(x - x0) ** 2 / (2 * sx * sx),
                    lambda x: -(x - x0) / (sx * sx),
                    (c, s))
        a = self.rate[i]
        p = self.power[i] if self.kind == "polynomial_times_gaussian" else 0
        if p:
            with np.errstate(divide="ignore"):
                return (lambda x: p * np.log(x) - a * x,
                        lambda x: p / x - a,
                        (0.0, 1.0 / math.sqrt(a)))
        return (lambda x: -a * x, lambda x: -a + 0 * x, (0.0, 1.0 / math.sqrt(a)))

    def values(self, x, y):
        """``(g, ∂ₓg, ∂_y g)`` at arrays ``x, y`` (broadcast)."""
        lz, dz, _ = self._axis(0)
        lw, dw, _ = self._axis(1)
        with np.errstate(divide="ignore", invalid="ignore", under="ignore"):
            g1, g2 = np.exp(lz(x)), np.exp(lw(y))
            d1 = np.where(g1 > 0, dz(x) * g1, 0.0)
            d2 = np.where(g2 > 0, dw(y) * g2, 0.0)
        return g1 * g2, d1 * g2, g1 * d2


@dataclass(frozen=True)
class QuadratureSpec:
    """Tensor Gauss-Legendre rule on the two radii.

    ``order`` nodes per panel; radii default to values chosen so the
    estimated truncation tail is below ``tol`` (relative).
    """

    order: int = 24
    radius_z: Optional[float] = None
    radius_w: Optional[float] = None
    region: Optional[RegionLabel] = None
    tol: float = 1e-12

    def refined(self) -> "QuadratureSpec":
        return replace(self, order=2 * self.order)

    def restricted(self, region) -> "QuadratureSpec":
        return replace(self, region=region)


@dataclass(frozen=True)
class EnergyReport:
    f_value: float
    mu_mass: float
    ratio: float
    region: Optional[RegionLabel]
    kinetic_z: float
    kinetic_w: float
    potential: float
    l2_mass: float


@lru_cache(maxsize=64)
def _gl(n):
    return np.polynomial.legendre.leggauss(n)


def _panel_rule(breaks, order):
    x, w = _gl(order)
    nodes, weights = [], []
    for lo, hi in zip(breaks, breaks[1:]):
        half = 0.5 * (hi - lo)
        nodes.append(lo + half * (x + 1.0))
        weights.append(half * w)
    return np.concatenate(nodes), np.concatenate(weights)


def _breakpoints(radius, scale):
    c, s = scale
    pts = {0.0, radius}
    pts.update(radius * k / 8 for k in range(1, 8))
    pts.update(radius * 2.0 ** -k for k in range(1, 7))
    pts.update(0.25 * k for k in range(1, 9))       # weight scale |z| ~ 1
    pts.update(c + j * s for j in range(-10, 11))
    pts.update(s * 2.0 ** -k for k in range(0, 4))
    pts = sorted(p for p in pts if 0.0 <= p <= radius)
    out = [pts[0]]
    for p in pts[1:]:
        if p - out[-1] > 1e-12 * radius:
            out.append(p)
    if out[-1] != radius:
        out[-1] = radius
    return out


def _axis_weight_poly(gamma, i):
    """Pure-axis part of φ in coordinate ``i``; a lower bound for φ along that axis."""
    if i == 0:
        return {a: 1 for a, b in gamma if b == 0}
    return {b: 1 for a, b in gamma if a == 0}


def _poly_growth(gamma, mult):
    deg = max(a + b for a, b in gamma)
    return 4 * deg + 2 * math.ceil(max(float(mult.exponent_z), float(mult.exponent_w))) + 4


def _tail_fraction(u, gamma, mult, i, radius):
    """Fraction of the envelope integral beyond ``radius`` in coordinate ``i``."""
    logg, _, (c, s) = u._axis(i)
    axis = _axis_weight_poly(gamma, i)
    D = _poly_growth(gamma, mult)

    def log_env(r):
        x = r * r
        val = math.log(r) + D * math.log1p(r) + 2 * float(logg(x))
        if not u.adapted:
            val -= 2 * sum(x ** k for k in axis)
        return val

    probe = np.linspace(1e-6, max(4 * (c + 10 * s), 4.0, 2 * radius), 400)
    shift = max(log_env(r) for r in probe)

    def env(r):
        if r <= 0:
            return 0.0
        return math.exp(min(log_env(r) - shift, 700.0))

    kw = dict(limit=200, epsabs=0.0, epsrel=1e-6)
    total = integrate.quad(env, 0.0, radius, points=[c] if 0 < c < radius else None, **kw)[0]
    total += integrate.quad(env, radius, np.inf, **kw)[0]
    tail = integrate.quad(env, radius, np.inf, **kw)[0]
    return tail / total if total > 0 else 0.0


def _choose_radius(u, gamma, mult, i, tol, given):
    if given is not None:
        frac = _tail_fraction(u, gamma, mult, i, given)
        if frac > tol:
            raise TailBoundViolated(
                f"truncation radius {given} leaves tail fraction {frac:.2e} > {tol:.1e}"
            )
        return float(given)
    _, _, (c, s) = u._axis(i)
    radius = max(c + 6 * s, 2.0)
    while _tail_fraction(u, gamma, mult, i, radius) > tol:
        radius *= 1.25
        if radius > 1e4:
            raise TailBoundViolated("no truncation radius below 1e4 meets the tail tolerance")
    return radius


def _region_mask(label, sigma, tau, rz, rw):
    if label is None:
        return np.ones(np.broadcast(rz, rw).shape, dtype=bool)
    with np.errstate(divide="ignore", over="ignore"):
        if label is RegionLabel.U0:
            return (rz <= 2) & (rw <= 2)
        if label is RegionLabel.Ur:
            return (rz > 1) & (rw <= 2 * np.where(rz > 0, rz, 1.0) ** -sigma)
        if label is RegionLabel.Uu:
            return (rw > 1) & (rz <= 2 * np.where(rw > 0, rw, 1.0) ** -tau)
        if label is RegionLabel.E:
            safe_z = np.where(rz > 0, rz, 1.0)
            safe_w = np.where(rw > 0, rw, 1.0)
            return ((rz >= 1) & (rw >= safe_z ** -sigma)) | ((rw >= 1) & (rz >= safe_w ** -tau))
    raise ValueError(f"energy regions are U0, Ur, Uu, E or None; got {label}")


def _as_multiplier(gamma, multiplier):
    if multiplier is None:
        return coercivity_multiplier(gamma)
    if isinstance(multiplier, CoercivityMultiplier):
        return multiplier
    a, b = multiplier
    return CoercivityMultiplier(a, b, source="given")


def weighted_energy(gamma, u: TestFunction, spec: QuadratureSpec = QuadratureSpec(),
                    multiplier=None, chunk: int = 256) -> EnergyReport:
    """Energy ``F_Ω(u)`` and multiplier mass ``∫_Ω μ²|u|²e^{-2φ}`` by tensor quadrature.

    ``multiplier`` defaults to :func:`coercivity_multiplier` of ``gamma``;
    a pair ``(a, b)`` or a :class:`CoercivityMultiplier` may be given.
    """
    gamma = as_exponent_set(gamma)
    mult = _as_multiplier(gamma, multiplier)
    profile = classify(gamma)
    sigma, tau = float(profile.sigma), float(profile.tau)
    a, b = float(mult.exponent_z), float(mult.exponent_w)

    rad_z = _choose_radius(u, gamma, mult, 0, spec.tol, spec.radius_z)
    rad_w = _choose_radius(u, gamma, mult, 1, spec.tol, spec.radius_w)
    rz, wz = _panel_rule(_breakpoints(rad_z, u._axis(0)[2]), spec.order)
    rw, ww = _panel_rule(_breakpoints(rad_w, u._axis(1)[2]), spec.order)
    y = rw * rw
    col = (2 * math.pi) * rw * ww

    phi = BiPoly.from_points(gamma)
    phi_x, phi_y = phi.dx(), phi.dy()

    sums = np.zeros(5)
    for start in range(0, len(rz), chunk):
        r1 = rz[start:start + chunk, None]
        row = (2 * math.pi) * r1 * wz[start:start + chunk, None]
        x = r1 * r1
        g, gx, gy = u.values(x, y[None, :])
        with np.errstate(over="ignore", invalid="ignore", under="ignore"):
            if u.adapted:
                weight = 1.0
                dz = gx + g * phi_x(x, y[None, :])
                dw = gy + g * phi_y(x, y[None, :])
            else:
                weight = np.exp(-2.0 * phi(x, y[None, :]))
                dz, dw = gx, gy
            lam = lambda_min_xy(gamma, x, y[None, :])
            mu = 1.0 + r1 ** a + rw[None, :] ** b
            g2w = np.where(g == 0, 0.0, g * g * weight)
            terms = (
                np.where(dz == 0, 0.0, x * dz * dz * weight),
                np.where(dw == 0, 0.0, y[None, :] * dw * dw * weight),
                2.0 * np.where(g2w == 0, 0.0, lam * g2w),
                mu * mu * g2w,
                g2w,
            )
        mask = _region_mask(spec.region, sigma, tau, r1, rw[None, :])
        meas = row * col[None, :]
        for k, t in enumerate(terms):
            t = np.broadcast_to(t, meas.shape)
            sums[k] += np.sum(np.where(mask, t * meas, 0.0))
    kin_z, kin_w, pot, mass, l2 = (float(s) for s in sums)
    if not l2 > 0 or not mass > 0:
        raise ZeroMass(f"test function carries no weighted mass on {spec.region or 'C^2'}")
    f_value = kin_z + kin_w + pot
    return EnergyReport(f_value, mass, f_value / mass, spec.region, kin_z, kin_w, pot, l2)


def coercivity_certificate(gamma, family: Sequence[TestFunction],
                           spec: QuadratureSpec = QuadratureSpec(), multiplier=None) -> float:
    """Smallest ``F(u) / ∫μ₀²|u|²e^{-2φ}`` over the family: an empirical lower bound for ``c²``."""
    if not family:
        raise ValueError("empty test-function family")
    ratios = [weighted_energy(gamma, u, spec, multiplier).ratio for u in family]
    return min(ratios)


DECOMPOSITION_REGIONS = (RegionLabel.E, RegionLabel.U0, RegionLabel.Ur, RegionLabel.Uu)


def region_decomposition_check(gamma, u: TestFunction, spec: QuadratureSpec = QuadratureSpec(),
                               multiplier=None) -> Dict[RegionLabel, Optional[EnergyReport]]:
    """Energy reports on E, U0, Ur and Uu; regions carrying no mass map to ``None``."""
    out = {}
    for label in DECOMPOSITION_REGIONS:
        try:
            out[label] = weighted_energy(gamma, u, spec.restricted(label), multiplier)
        except ZeroMass:
            out[label] = None
    return out


def standard_family(n: int = 20, adapted: bool = True, seed: int = 0):
    """Bi-radial bumps with centres spread over ``[0, 3]²``.

    The first 20 sit on a 5 x 4 grid with width 0.5; larger families add
    seeded random centres and widths in ``[0.25, 0.75]``.
    """
    base = [
        TestFunction("bump_radial", center=(float(cz), float(cw)), width=(0.5, 0.5), adapted=adapted)
        for cz in np.linspace(0.0, 3.0, 5)
        for cw in np.linspace(0.0, 3.0, 4)
    ]
    if n <= len(base):
        return base[:n]
    rng = np.random.default_rng(seed)
    extra = [
        TestFunction(
            "bump_radial",
            center=tuple(float(c) for c in rng.uniform(0.0, 3.0, 2)),
            width=tuple(float(s) for s in rng.uniform(0.25, 0.75, 2)),
            adapted=adapted,
        )
        for _ in range(n - len(base))
    ]
    return base + extra
