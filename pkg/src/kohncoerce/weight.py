"""Pointwise evaluation of model weights and their complex Hessians.

Everything is expressed through ``x = |z|^2`` and ``y = |w|^2``.  For
``h = z^α w^β`` the Hessian entries of ``|h|^2`` are

* ``∂z∂z̄``: ``α² x^(α-1) y^β``
* ``∂w∂w̄``: ``β² x^α y^(β-1)``
* ``∂z∂w̄``: ``z̄ w · αβ x^(α-1) y^(β-1)``

so the Hessian of ``φ_Γ`` is assembled from three integer-coefficient
polynomials.  The ``*_xy`` functions are vectorised over numpy arrays of
``x`` and ``y`` and are what grid sweeps and quadrature use.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple, Optional

import numpy as np

from ._poly import BiPoly
from .exponents import ExponentSet, as_exponent_set, derived_sets

__all__ = [
    "Point2C",
    "HessianEval",
    "weight_value",
    "hessian_at",
    "det_trace_closed_form",
    "lambda_approx",
    "hessian_polys",
    "phi_xy",
    "hessian_xy",
    "lambda_min_xy",
    "lambda_approx_xy",
]


@dataclass(frozen=True)
class Point2C:
    z: complex
    w: complex

    def __post_init__(self):
        z, w = complex(self.z), complex(self.w)
        if not (cmath.isfinite(z) and cmath.isfinite(w)):
            raise ValueError(f"point must be finite, got ({self.z}, {self.w})")
        object.__setattr__(self, "z", z)
        object.__setattr__(self, "w", w)

    @property
    def x(self):
        return abs(self.z) ** 2

    @property
    def y(self):
        return abs(self.w) ** 2


def as_point(p) -> Point2C:
    if isinstance(p, Point2C):
        return p
    z, w = p
    return Point2C(z, w)


@dataclass(frozen=True)
class HessianEval:
    h_zz: float
    h_ww: float
    h_zw: complex
    det: float
    trace: float
    lambda_min: float

    def matrix(self):
        return np.array([[self.h_zz, self.h_zw], [self.h_zw.conjugate(), self.h_ww]])


class HessianPolys(NamedTuple):
    h_zz: BiPoly
    h_ww: BiPoly
    mixed: BiPoly     # h_zw = conj(z) * w * mixed(x, y)
    det: BiPoly
    trace: BiPoly


@lru_cache(maxsize=256)
def _hessian_polys(gamma: ExponentSet) -> HessianPolys:
    h_zz = BiPoly({(a - 1, b): a * a for a, b in gamma if a})
    h_ww = BiPoly({(a, b - 1): b * b for a, b in gamma if b})
    mixed = BiPoly({(a - 1, b - 1): a * b for a, b in gamma if a and b})
    # |h_zw|^2 = x y mixed^2; the subtraction cancels exactly in integers
    det = h_zz * h_ww - (mixed * mixed).shift(1, 1)
    if not det.coefficients_nonnegative():
        raise AssertionError(f"determinant polynomial has a negative coefficient: {det}")
    return HessianPolys(h_zz, h_ww, mixed, det, h_zz + h_ww)


def hessian_polys(gamma) -> HessianPolys:
    return _hessian_polys(as_exponent_set(gamma))


@lru_cache(maxsize=256)
def _weight_poly(gamma: ExponentSet) -> BiPoly:
    return BiPoly.from_points(gamma)


def phi_xy(gamma, x, y):
    """``p_Γ(x, y)``; equals ``φ_Γ`` at ``x = |z|^2``, ``y = |w|^2``."""
    return _weight_poly(as_exponent_set(gamma))(x, y)


def weight_value(gamma, p) -> float:
    gamma = as_exponent_set(gamma)
    if not len(gamma):
        raise ValueError("weight of an empty exponent set")
    p = as_point(p)
    x, y = p.x, p.y
    return math.fsum(x ** a * y ** b for a, b in gamma)


def _min_eigenvalue(h_zz, h_ww, abs_hzw, det, trace):
    # 2 det / (tr + sqrt(disc)) avoids cancelling tr against sqrt(tr^2 - 4 det)
    disc = (h_zz - h_ww) ** 2 + 4.0 * abs_hzw ** 2
    denom = trace + np.sqrt(disc)
    with np.errstate(invalid="ignore", divide="ignore"):
        lam = np.where(denom > 0, 2.0 * det / np.where(denom > 0, denom, 1.0), 0.0)
    return np.maximum(lam, 0.0)


def hessian_xy(gamma, x, y):
    """Vectorised Hessian data at moduli-squared ``x, y``.

    Returns ``(h_zz, h_ww, |h_zw|, det, trace, lambda_min)`` as arrays.
    """
    polys = hessian_polys(gamma)
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    h_zz = np.asarray(polys.h_zz(x, y))
    h_ww = np.asarray(polys.h_ww(x, y))
    abs_hzw = np.sqrt(x * y) * np.asarray(polys.mixed(x, y))
    det = np.asarray(polys.det(x, y))
    trace = h_zz + h_ww
    lam = _min_eigenvalue(h_zz, h_ww, abs_hzw, det, trace)
    return h_zz, h_ww, abs_hzw, det, trace, lam


def lambda_min_xy(gamma, x, y):
    return hessian_xy(gamma, x, y)[5]


def hessian_at(gamma, p) -> HessianEval:
    gamma = as_exponent_set(gamma)
    if not len(gamma):
        raise ValueError("Hessian of an empty exponent set")
    p = as_point(p)
    polys = hessian_polys(gamma)
    x, y = p.x, p.y
    h_zz = float(polys.h_zz(x, y))
    h_ww = float(polys.h_ww(x, y))
    h_zw = p.z.conjugate() * p.w * float(polys.mixed(x, y))
    det = float(polys.det(x, y))
    trace = h_zz + h_ww
    lam = float(_min_eigenvalue(h_zz, h_ww, abs(h_zw), det, trace))
    return HessianEval(h_zz, h_ww, h_zw, det, trace, lam)


def det_trace_closed_form(gamma, p):
    """Determinant and trace from the sum-of-squares identities.

    ``det = ½ Σ_{(α,β),(γ,δ)} (αδ - βγ)² x^(α+γ-1) y^(β+δ-1)`` over ordered
    pairs and ``tr = Σ α² x^(α-1) y^β + β² x^α y^(β-1)``.
    """
    gamma = as_exponent_set(gamma)
    p = as_point(p)
    x, y = p.x, p.y
    det_terms = []
    for a, b in gamma:
        for c, d in gamma:
            k = a * d - b * c
            if k:
                det_terms.append(k * k * x ** (a + c - 1) * y ** (b + d - 1))
    tr_terms = []
    for a, b in gamma:
        if a:
            tr_terms.append(a * a * x ** (a - 1) * y ** b)
        if b:
            tr_terms.append(b * b * x ** a * y ** (b - 1))
    return 0.5 * math.fsum(det_terms), math.fsum(tr_terms)


def lambda_approx_xy(gamma, x, y):
    """``φ_Γ⁽¹⁾ / φ_Γ⁽²⁾`` with NaN where the denominator vanishes."""
    ds = derived_sets(gamma)
    num = np.asarray(BiPoly.from_points(ds.gamma_1)(x, y))
    den = np.asarray(BiPoly.from_points(ds.gamma_2)(x, y))
    with np.errstate(invalid="ignore", divide="ignore"):
        return np.where(den > 0, num / np.where(den > 0, den, 1.0), np.nan)


def lambda_approx(gamma, p) -> Optional[float]:
    """Rational approximation of the minimal eigenvalue, ``None`` at 0/0 points."""
    p = as_point(p)
    val = float(lambda_approx_xy(gamma, p.x, p.y))
    return None if math.isnan(val) else val
