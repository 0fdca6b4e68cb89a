"""Functions on a disc in a polar monomial basis.

A :class:`DiscFunction` on ``D(center, radius)`` is stored through the
normalised variable ``ζ = (z - center)/radius`` as

    f = Σ_{|k| <= K, 0 <= j <= J}  c[k, j] · e^{ikθ} s^{|k| + 2j},   ζ = s e^{iθ},

i.e. in the monomials ``ζ^k |ζ|^{2j}`` (``k >= 0``) and ``ζ̄^{|k|} |ζ|^{2j}``
(``k < 0``).  The space is closed under ``∂/∂z̄``, the holomorphic functions
are exactly the modes ``(k >= 0, j = 0)``, and every radial integral of a
product of two such functions is a polynomial integral that Gauss-Legendre
quadrature of order ``2J + 2K + 4`` evaluates exactly.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

import numpy as np

from .errors import NotHolomorphic, TruncationTooSmall, ZeroDenominator

DEFAULT_TRUNCATION = 32


@lru_cache(maxsize=64)
def _gauss_legendre(n: int):
    x, w = np.polynomial.legendre.leggauss(n)
    return x, w


def _radial_nodes(lo: float, hi: float, n: int):
    x, w = _gauss_legendre(n)
    half = 0.5 * (hi - lo)
    return lo + half * (x + 1.0), half * w


class DiscFunction:
    """Truncated polar expansion of a function on ``D(center, radius)``."""

    def __init__(self, coefficients, center=0.0, radius=1.0):
        coeffs = np.array(coefficients, dtype=complex)
        if coeffs.ndim != 2 or coeffs.shape[0] % 2 != 1:
            raise ValueError("coefficients must have shape (2K+1, J+1)")
        if not radius > 0:
            raise ValueError("radius must be positive")
        self.coeffs = coeffs
        self.center = complex(center)
        self.radius = float(radius)

    # -- construction ------------------------------------------------------

    @property
    def K(self) -> int:
        return (self.coeffs.shape[0] - 1) // 2

    @property
    def J(self) -> int:
        return self.coeffs.shape[1] - 1

    @classmethod
    def zeros(cls, K=DEFAULT_TRUNCATION, J=DEFAULT_TRUNCATION, center=0.0, radius=1.0):
        return cls(np.zeros((2 * K + 1, J + 1), dtype=complex), center, radius)

    @classmethod
    def from_modes(cls, modes, K=DEFAULT_TRUNCATION, J=DEFAULT_TRUNCATION, center=0.0, radius=1.0):
        """Build from ``{(k, j): amplitude}``."""
        f = cls.zeros(K, J, center, radius)
        for (k, j), c in modes.items():
            if abs(k) > K or not 0 <= j <= J:
                raise TruncationTooSmall(f"mode ({k}, {j}) exceeds truncation K={K}, J={J}")
            f.coeffs[k + K, j] += c
        return f

    @classmethod
    def from_monomials(cls, monomials, K=DEFAULT_TRUNCATION, J=DEFAULT_TRUNCATION, center=0.0, radius=1.0):
        """Build from ``{(p, q): c}`` meaning ``Σ c ζ^p ζ̄^q``."""
        return cls.from_modes(
            {(p - q, min(p, q)): c for (p, q), c in monomials.items()}, K, J, center, radius
        )

    @classmethod
    def from_taylor(cls, coefficient, K=DEFAULT_TRUNCATION, J=DEFAULT_TRUNCATION, center=0.0, radius=1.0):
        """Truncate ``Σ coefficient(p, q) ζ^p ζ̄^q`` to the ``(K, J)`` box."""
        f = cls.zeros(K, J, center, radius)
        for k in range(-K, K + 1):
            for j in range(J + 1):
                p, q = j + max(k, 0), j + max(-k, 0)
                f.coeffs[k + K, j] = coefficient(p, q)
        return f

    @classmethod
    def exponential(cls, a, b, c=0.0, K=DEFAULT_TRUNCATION, J=DEFAULT_TRUNCATION, center=0.0, radius=1.0):
        """``exp(aζ + bζ̄ + c|ζ|²)`` truncated to the ``(K, J)`` box."""
        def coefficient(p, q):
            return sum(
                a ** (p - s) * b ** (q - s) * c ** s
                / (math.factorial(p - s) * math.factorial(q - s) * math.factorial(s))
                for s in range(min(p, q) + 1)
            )
        return cls.from_taylor(coefficient, K, J, center, radius)

    def with_truncation(self, K, J) -> "DiscFunction":
        f = DiscFunction.zeros(K, J, self.center, self.radius)
        for (k, j), c in self.modes().items():
            if abs(k) > K or j > J:
                raise TruncationTooSmall(f"mode ({k}, {j}) exceeds truncation K={K}, J={J}")
            f.coeffs[k + K, j] = c
        return f

    def rescaled(self, radius, center=None) -> "DiscFunction":
        """Same profile in ``ζ`` carried to another disc."""
        return DiscFunction(self.coeffs.copy(), self.center if center is None else center, radius)

    def modes(self):
        K = self.K
        ks, js = np.nonzero(self.coeffs)
        return {(int(k) - K, int(j)): self.coeffs[k, j] for k, j in zip(ks, js)}

    # -- arithmetic ----------------------------------------------------------

    def _check_compatible(self, other):
        if self.coeffs.shape != other.coeffs.shape or self.center != other.center or self.radius != other.radius:
            raise ValueError("functions live on different discs or truncations")

    def __add__(self, other):
        self._check_compatible(other)
        return DiscFunction(self.coeffs + other.coeffs, self.center, self.radius)

    def __sub__(self, other):
        self._check_compatible(other)
        return DiscFunction(self.coeffs - other.coeffs, self.center, self.radius)

    def __mul__(self, scalar):
        return DiscFunction(self.coeffs * scalar, self.center, self.radius)

    __rmul__ = __mul__

    def __call__(self, z):
        """Pointwise value; ``z`` in the original (unnormalised) coordinate."""
        zeta = (np.asarray(z, dtype=complex) - self.center) / self.radius
        s, theta = np.abs(zeta), np.angle(zeta)
        out = np.zeros_like(zeta)
        for (k, j), c in self.modes().items():
            out = out + c * np.exp(1j * k * theta) * s ** (abs(k) + 2 * j)
        return out

    # -- integrals -------------------------------------------------------------

    @property
    def quadrature_order(self) -> int:
        return 2 * self.J + 2 * self.K + 4

    def _profiles(self, s):
        """Radial profiles ``R_k(s)`` for every k at the nodes ``s``; shape (2K+1, len(s))."""
        K, J = self.K, self.J
        ks = np.abs(np.arange(-K, K + 1))[:, None, None]
        js = np.arange(J + 1)[None, :, None]
        powers = s[None, None, :] ** (ks + 2 * js)
        return np.einsum("kj,kjn->kn", self.coeffs, powers)

    def inner(self, other, lo=0.0, hi=1.0) -> complex:
        """``∫ f ḡ`` over the annulus ``lo <= |ζ| < hi`` of the disc."""
        self._check_compatible(other)
        s, w = _radial_nodes(lo, hi, self.quadrature_order)
        prod = self._profiles(s) * np.conj(other._profiles(s))
        return 2.0 * math.pi * self.radius ** 2 * np.sum(prod @ (w * s))

    def norm2(self, lo=0.0, hi=1.0) -> float:
        """``∫ |f|²`` over the annulus ``lo <= |ζ| < hi`` of the disc."""
        s, w = _radial_nodes(lo, hi, self.quadrature_order)
        prof = self._profiles(s)
        return float(2.0 * math.pi * self.radius ** 2 * np.sum((np.abs(prof) ** 2) @ (w * s)))

    def dbar(self) -> "DiscFunction":
        """``∂f/∂z̄``, exact in the basis (one more angular mode)."""
        K, J = self.K, self.J
        out = np.zeros((2 * K + 3, J + 1), dtype=complex)
        for k in range(-K, K + 1):
            for j in range(J + 1):
                c = self.coeffs[k + K, j]
                if c == 0:
                    continue
                # ∂ζ̄ (e^{ikθ} s^{|k|+2j}) = (|k| + 2j - k)/2 · e^{i(k+1)θ} s^{|k|+2j-1}
                factor = (abs(k) + 2 * j - k) / 2
                if factor == 0:
                    continue
                jj = j - 1 if k >= 0 else j
                out[k + 1 + K + 1, jj] += factor * c
        return DiscFunction(out / self.radius, self.center, self.radius)


def bergman_project(f: DiscFunction) -> DiscFunction:
    """Orthogonal projection onto the holomorphic functions of ``L²`` of the disc.

    Each angular mode ``k >= 0`` is projected onto the orthonormal monomial
    ``sqrt((k+1)/π) ζ^k``; negative modes have no holomorphic component.
    """
    K, J = f.K, f.J
    s, w = _radial_nodes(0.0, 1.0, f.quadrature_order)
    prof = f._profiles(s)
    out = np.zeros_like(f.coeffs)
    for k in range(K + 1):
        basis = s ** k
        # <f_k, s^k> / <s^k, s^k> with the 2π and radius factors cancelling
        num = np.sum(prof[k + K] * basis * w * s)
        den = np.sum(basis * basis * w * s)
        out[k + K, 0] = num / den
    return DiscFunction(out, f.center, f.radius)


def dbar_energy(f: DiscFunction) -> float:
    return f.dbar().norm2()


def poincare_defect(f: DiscFunction):
    """``(∫|f - B f|², ∫|∂f/∂z̄|²)``."""
    return (f - bergman_project(f)).norm2(), dbar_energy(f)


def cauchy_annulus_ratio(h: DiscFunction, tol=1e-10) -> float:
    """``∫_D |h|² / ∫_{D∖½D} |h|²`` for holomorphic ``h``."""
    total = h.norm2()
    defect = (h - bergman_project(h)).norm2()
    if defect > tol * max(total, 1.0):
        raise NotHolomorphic(f"projection defect {defect:.3e} exceeds {tol:.1e}")
    return total / h.norm2(0.5, 1.0)


@dataclass(frozen=True)
class RadialPotential:
    """Potential that is constant on annuli of the disc.

    ``breaks`` are normalised radii ``0 = s_0 < s_1 < ... < s_m = 1`` and
    ``values[i]`` is the value on ``s_i <= |ζ| < s_{i+1}``.
    """

    breaks: Sequence[float]
    values: Sequence[float]
    radius: float = 1.0
    annulus_inf: float = field(init=False)

    def __post_init__(self):
        breaks = tuple(float(b) for b in self.breaks)
        values = tuple(float(v) for v in self.values)
        if len(breaks) != len(values) + 1 or breaks[0] != 0.0 or breaks[-1] != 1.0:
            raise ValueError("breaks must run from 0 to 1 with one more entry than values")
        if any(b1 <= b0 for b0, b1 in zip(breaks, breaks[1:])):
            raise ValueError("breaks must be increasing")
        if any(v < 0 for v in values):
            raise ValueError("potential must be non-negative")
        object.__setattr__(self, "breaks", breaks)
        object.__setattr__(self, "values", values)
        inf = min(v for v, b0, b1 in zip(values, breaks, breaks[1:]) if b1 > 0.5)
        object.__setattr__(self, "annulus_inf", inf)

    @classmethod
    def constant(cls, c, radius=1.0):
        return cls((0.0, 1.0), (c,), radius)

    @classmethod
    def annulus_indicator(cls, c=1.0, radius=1.0):
        """``c`` on ``D∖½D``, zero on ``½D``."""
        return cls((0.0, 0.5, 1.0), (0.0, c), radius)

    @classmethod
    def inner_indicator(cls, c=1.0, radius=1.0):
        """``c`` on ``½D``, zero on the outer annulus."""
        return cls((0.0, 0.5, 1.0), (c, 0.0), radius)

    def rescaled(self, radius) -> "RadialPotential":
        """``V_r(z) = V(z/r) / r²`` carried to a disc of the given radius."""
        scale = (self.radius / radius) ** 2
        return RadialPotential(self.breaks, tuple(v * scale for v in self.values), radius)

    def integral(self) -> float:
        return sum(
            v * math.pi * (b1 ** 2 - b0 ** 2) * self.radius ** 2
            for v, b0, b1 in zip(self.values, self.breaks, self.breaks[1:])
        )

    def weighted_norm2(self, f: DiscFunction) -> float:
        """``∫ V |f|²``."""
        if not math.isclose(f.radius, self.radius):
            raise ValueError("function and potential live on discs of different radius")
        return sum(
            v * f.norm2(b0, b1)
            for v, b0, b1 in zip(self.values, self.breaks, self.breaks[1:])
            if v
        )


def uncertainty_ratio(f: DiscFunction, pot: RadialPotential) -> float:
    """``[∫|∂f/∂z̄|² + ∫V|f|²] / [min(c, 1/r²) ∫|f|²]`` with ``c`` the annulus infimum of V."""
    mass = f.norm2()
    if not mass > 0:
        raise ValueError("f must have positive L² norm")
    scale = min(pot.annulus_inf, 1.0 / f.radius ** 2)
    if scale == 0:
        raise ZeroDenominator("potential vanishes somewhere on the outer annulus")
    return (dbar_energy(f) + pot.weighted_norm2(f)) / (scale * mass)


def false_inequality_ratio(m: int, K=DEFAULT_TRUNCATION, J=DEFAULT_TRUNCATION) -> float:
    """Ratio of the two sides of the would-be inequality with ``min(∫V, 1)``, tested on ``z^m``.

    Uses ``V = 1`` on ``½D`` and ``0`` on the annulus; the value is
    ``4^{-m}/π`` and decays geometrically.
    """
    if m < 0:
        raise ValueError("m must be non-negative")
    f = DiscFunction.from_modes({(m, 0): 1.0}, max(K, m), J)
    pot = RadialPotential.inner_indicator(1.0)
    lhs = dbar_energy(f) + pot.weighted_norm2(f)
    return lhs / (min(pot.integral(), 1.0) * f.norm2())


POTENTIAL_LEVELS = (0.01, 0.1, 1.0, 10.0, 100.0)


def standard_potentials(radius=1.0):
    """``c · 1_{D∖½D}`` for each ``c`` in :data:`POTENTIAL_LEVELS`."""
    return [RadialPotential.annulus_indicator(c, radius) for c in POTENTIAL_LEVELS]


def random_disc_function(rng, K=8, J=8, radius=1.0, decay=2.0) -> DiscFunction:
    """Random complex modes with amplitude ``~ (1 + |k| + j)^-decay``, unit ``L²`` norm."""
    k = np.arange(-K, K + 1)[:, None]
    j = np.arange(J + 1)[None, :]
    amp = (1.0 + np.abs(k) + j) ** -decay
    coeffs = amp * (rng.standard_normal((2 * K + 1, J + 1)) + 1j * rng.standard_normal((2 * K + 1, J + 1)))
    f = DiscFunction(coeffs, 0.0, radius)
    return f * (1.0 / math.sqrt(f.norm2()))


def standard_family(n=100, seed=0, K=8, J=8, radius=1.0):
    rng = np.random.default_rng(seed)
    return [random_disc_function(rng, K, J, radius) for _ in range(n)]
