"""
The figure weight, end to end
=============================

Classification, coercivity exponents, the λ power laws on the three pieces
of the elliptic region, and the optimal discreteness exponent δ* for
Γ = {(16,0), (12,3), (8,6), (4,9), (0,12)}.
"""

import numpy as np

from kohncoerce import (GAMMA_FIG, classify, coercivity_multiplier, delta_analysis,
                        derived_sets, hessian_at, lambda_approx, spectrum_decision)
from kohncoerce.support import classify_region, power_layout
from kohncoerce.verify import power_law_band

gamma = GAMMA_FIG
prof = classify(gamma)
print("Γ =", sorted(gamma))
print("σ =", prof.sigma, " τ =", prof.tau, " (m, n) =", prof.homogeneous, " ν =", prof.nu)

# the derived sets control det and trace of the complex Hessian
ds = derived_sets(gamma)
print("|Γ(1)| =", len(ds.gamma_1), " |Γ(2)| =", len(ds.gamma_2))

###############################################################################
# λ_min against its rational approximation φ_Γ(1) / φ_Γ(2)

for p in [(0.5, 0.5), (2.0, 0.1), (0.1, 2.0), (3.0, 3.0)]:
    h = hessian_at(gamma, p)
    print(f"  |z|,|w| = {p}:  λ_min = {h.lambda_min:.4g}   approx = {lambda_approx(gamma, p):.4g}")

###############################################################################
# Coercivity multiplier and the spectrum decision

mult = coercivity_multiplier(gamma)
print("μ = 1 + |z|^%s + |w|^%s" % (mult.exponent_z, mult.exponent_w))
print("spectrum:", spectrum_decision(gamma))

###############################################################################
# Regions over [0, 3]²: a coarse character map (rows are |w|, top is large)

glyph = {"E1": "1", "E2": "2", "E3": "3", "U0": ".", "Ur": "r", "Uu": "u", "E": "E"}
axis = np.linspace(0.0, 3.0, 31)
for rw in axis[::-3]:
    row = "".join(glyph[classify_region(prof, (rz, rw), scheme="figure").value] for rz in axis)
    print(f"  {rw:4.1f} {row}")
lay = power_layout(prof)
print("power layout: α1=%s β1=%s α2=%s β2=%s" % (lay.alpha1, lay.beta1, lay.alpha2, lay.beta2))

# sup/inf of λ_min / predicted over log grids on each piece
for lab, (lo, hi) in sorted(power_law_band(gamma, 64).items(), key=lambda kv: str(kv[0])):
    print(f"  {lab}: ratio in [{lo:.3g}, {hi:.3g}]")

###############################################################################
# δ*: exact minimum of the λ exponent over the cone of directions

da = delta_analysis(gamma)
print("δ* =", da.delta, "attained on the ray", tuple(da.ray))
