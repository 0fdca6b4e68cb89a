"""
Holomorphic uncertainty on the unit disc
========================================

A function cannot hide in a small disc without paying either ∂̄-energy or
potential mass on the outer annulus.  The lab checks this on a random
family, shows the Cauchy-type annulus bound for holomorphic functions and
exhibits the failure of the naive variant with ∫V in place of the annulus
infimum.
"""

import numpy as np

from kohncoerce import (DiscFunction, bergman_project, cauchy_annulus_ratio,
                        false_inequality_ratio, uncertainty_ratio)
from kohncoerce.disc import standard_family, standard_potentials

# Bergman projection of |z|² is the constant ½
p = bergman_project(DiscFunction.from_monomials({(1, 1): 1.0}))
print("P(|z|²) constant term:", p.modes()[(0, 0)])

###############################################################################
# Holomorphic mass on the disc vs the annulus ½ < |z| < 1

for k in (0, 1, 2, 5, 10):
    h = DiscFunction.from_monomials({(k, 0): 1.0}, K=max(32, k + 1))
    print(f"  z^{k:<2}  ratio {cauchy_annulus_ratio(h):.12f}  closed form {1 / (1 - 4.0 ** -(k + 1)):.12f}")

###############################################################################
# The uncertainty ratio over 100 random functions and five potential levels

fam = standard_family(100)
pots = standard_potentials()
table = np.array([[uncertainty_ratio(f, v) for v in pots] for f in fam])
for v, col in zip(pots, table.T):
    print(f"  V = {v.annulus_inf:>6g} on the annulus: min ratio {col.min():.4f}")

###############################################################################
# The naive inequality: z^m concentrates near the boundary, the ratio decays like 4^-m

for m in range(0, 11, 2):
    print(f"  m = {m:2d}: {false_inequality_ratio(m):.3e}   (4^-m/π = {4.0 ** -m / np.pi:.3e})")
