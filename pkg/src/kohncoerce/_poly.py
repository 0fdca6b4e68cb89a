"""Sparse bivariate polynomials with exact integer coefficients.

Model weights and every quantity derived from their complex Hessian are
polynomials in ``x = |z|**2`` and ``y = |w|**2``.  Keeping the coefficients
as Python integers lets cancellations (e.g. in ``h_zz*h_ww - |h_zw|**2``)
happen exactly before anything is converted to floating point.
"""
from __future__ import annotations

from collections import defaultdict

import numpy as np


class BiPoly:
    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for (a, b), c in dict(terms or {}).items():
            if c:
                if a < 0 or b < 0:
                    raise ValueError(f"negative exponent ({a}, {b}) with coefficient {c}")
                clean[(int(a), int(b))] = c
        self.terms = clean

    @classmethod
    def from_points(cls, points):
        return cls({p: 1 for p in points})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, BiPoly) and self.terms == other.terms

    def __repr__(self):
        inner = " + ".join(f"{c}*x^{a}*y^{b}" for (a, b), c in sorted(self.terms.items()))
        return f"BiPoly({inner or '0'})"

    def __add__(self, other):
        out = defaultdict(int, self.terms)
        for k, c in other.terms.items():
            out[k] += c
        return BiPoly(out)

    def __sub__(self, other):
        out = defaultdict(int, self.terms)
        for k, c in other.terms.items():
            out[k] -= c
        return BiPoly(out)

    def __mul__(self, other):
        out = defaultdict(int)
        for (a, b), c in self.terms.items():
            for (p, q), d in other.terms.items():
                out[(a + p, b + q)] += c * d
        return BiPoly(out)

    def shift(self, da, db):
        """Multiply by ``x**da * y**db``."""
        return BiPoly({(a + da, b + db): c for (a, b), c in self.terms.items()})

    def dx(self):
        return BiPoly({(a - 1, b): a * c for (a, b), c in self.terms.items() if a})

    def dy(self):
        return BiPoly({(a, b - 1): b * c for (a, b), c in self.terms.items() if b})

    def degree(self):
        return max((a + b for a, b in self.terms), default=0)

    def coefficients_nonnegative(self):
        return all(c >= 0 for c in self.terms.values())

    def __call__(self, x, y):
        """Evaluate at scalar or array arguments (broadcast together)."""
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        out = np.zeros(np.broadcast(x, y).shape)
        # exponent 0 must give 1 even at x == 0
        with np.errstate(over="ignore", invalid="ignore"):
            for (a, b), c in sorted(self.terms.items()):
                out = out + float(c) * (x ** a) * (y ** b)
        return out if out.ndim else float(out)
