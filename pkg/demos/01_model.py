"""
Squeezing-picture parameters
============================

Build the operating point, inspect the quantities derived from the pump and
the drive, and look at the drift and diffusion matrices.
"""

import numpy as np

from optosqueeze import PhysicalParams, build_diffusion, build_drift, derive_params, rwa_validity

p = PhysicalParams(
    kappa1=0.6, kappa2=0.6, gamma_m=1e-5, J=1.0, g=8.5e-5, E=3.7e5,
    delta2=0.52, delta=0.2975, Omega_p=0.5,
)
d = derive_params(p)
print(f"r = {d.r:.5f}, delta2_s = {d.delta2_s:.5f}, Js = {d.Js:.5f}, Delta2 = {d.Delta2:.5f}")
print(f"|a1s| = {abs(d.a1s):.4e}, G = {d.G:.4f}")

####################################################################
# The effective coupling exceeds the squeezed hopping, so the hybrid
# Bogoliubov mode is defined.

print(f"eta = {d.eta:.4f}, lambda = {d.lam:.4f}")

####################################################################
# Drift matrix in the ordering (X_a1, Y_a1, X_a2, Y_a2, X_b, Y_b).

np.set_printoptions(precision=4, suppress=True, linewidth=100)
m = build_drift(p, d)
print(m)
print("eigenvalue real parts:", np.sort(np.linalg.eigvals(m).real))

####################################################################
# The squeezed bath only touches the a2 block; its determinant is fixed
# by kappa2 whatever the pump phase.

for theta in (0.0, np.pi / 3, np.pi):
    q = p.replace(theta=theta, Omega_p=0.5)
    block = build_diffusion(q, derive_params(q))[2:4, 2:4]
    print(f"theta={theta:.3f}  D2 =", block.round(4).tolist(), f" det={np.linalg.det(block):.6f}")

####################################################################
# The dropped counter-rotating term is not small at this operating point.

rwa = rwa_validity(p, d)
print(f"RWA ratio {rwa.ratio:.3f} (warning={rwa.warning})")
