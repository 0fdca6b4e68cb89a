"""
Radius function and doubling of Δφ
==================================

ρ(p) is the largest r with sup_{B(p,r)} Δφ ≤ r⁻².  It is computed by
bisection and compared with the derivative formula; the doubling constant
of Δφ and the κ radius-function property are sampled.
"""

import numpy as np

from kohncoerce import (GAMMA_FIG, doubling_constant, kappa_radius_check, rho_by_definition,
                        rho_by_poly_formula)
from kohncoerce.admissibility import comparability_band, doubling_cap

print("ρ(0) for |z|⁴+|w|⁴:", rho_by_definition({(2, 0), (0, 2)}, (0, 0)))

for p in [(0.0, 0.0), (0.5, 0.2), (1.0, 1.0), (2.0, 0.0)]:
    a, b = rho_by_definition(GAMMA_FIG, p), rho_by_poly_formula(GAMMA_FIG, p)
    print(f"  {p}: definition {a:.5g}  formula {b:.5g}  ratio {a / b:.3f}")

s = np.geomspace(1e-2, 1.0, 48)
lo, hi = comparability_band(GAMMA_FIG, *np.meshgrid(s, s), samples=128)
print(f"ratio band on [0.01, 1]²: [{lo:.3f}, {hi:.3f}]")

###############################################################################
# Doubling of Δφ, against the Chebyshev cap T_d(2)

for gamma in ({(1, 0), (0, 1)}, {(2, 0), (0, 2)}, GAMMA_FIG):
    print(f"  {sorted(gamma)}: D = {doubling_constant(gamma):.4g}  cap {doubling_cap(gamma):.3g}")

###############################################################################
# κ(p)⁻¹ = 1 + |z|^4 + |w|^{9/4} changes by a bounded factor on unit balls

print("κ constant:", kappa_radius_check(4, "9/4"))
