"""
Weighted energy and the coercivity certificate
==============================================

The scalar energy F(u) = ‖∂u/∂z̄‖² + ‖∂u/∂w̄‖² + 2∫λ|u|² (weighted by
e^{-2φ}) is compared with ∫μ²|u|²e^{-2φ}.  The smallest ratio over a probe
family is an empirical lower bound for the coercivity constant.
"""

import math

from kohncoerce import (GAMMA_FIG, QuadratureSpec, TestFunction, coercivity_certificate,
                        region_decomposition_check, standard_family, weighted_energy)

# calibration: φ = |z|²+|w|², u = e^{-|z|²-|w|²}; the default multiplier is (0, 0), so μ = 3
r = weighted_energy({(1, 0), (0, 1)}, TestFunction("gaussian_radial"))
exact = 2 * (math.pi / 16) * (math.pi / 4) + 2 * (math.pi / 4) ** 2
print(f"Gaussian calibration: F = {r.f_value:.15f}  exact {exact:.15f}")

###############################################################################
# Certificates on the standard 20-probe family, two quadrature orders

fam = standard_family(20)
for gamma in (GAMMA_FIG, {(2, 0), (0, 2), (1, 1)}):
    c1 = coercivity_certificate(gamma, fam)
    c2 = coercivity_certificate(gamma, fam, QuadratureSpec().refined())
    print(f"  {sorted(gamma)}: certificate {c1:.8f}, refined {c2:.8f}")

###############################################################################
# Where does a probe live?  Masses on E, U0, Ur, Uu (regions overlap)

probes = {
    "near origin": TestFunction("gaussian_radial", rate=(8.0, 8.0)),
    "along z-axis": TestFunction("bump_radial", center=(10.0, 1e-4), width=(0.05, 1e-5), adapted=True),
    "diagonal": TestFunction("bump_radial", center=(2.0, 2.0), width=(0.3, 0.3), adapted=True),
}
for name, u in probes.items():
    total = weighted_energy(GAMMA_FIG, u).mu_mass
    parts = region_decomposition_check(GAMMA_FIG, u)
    shares = ", ".join(f"{k}: {(v.mu_mass / total if v else 0.0):.3f}" for k, v in parts.items())
    print(f"  {name:13s} {shares}")
