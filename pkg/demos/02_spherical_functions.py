"""Spherical functions on complex matrices.

phi_omega(xi) multiplies Pi(omega, s_j) over the singular values s_j of xi, so
it is unchanged by xi -> u xi v* with u, v unitary and by zero padding.
"""

import numpy as np

from lkmatrix import (
    MatrixPoint,
    OmegaParam,
    haar_unitary,
    remainder,
    remainder_bound,
    singular_values,
    small_omega_linear_bound,
    spherical_eval,
)

rng = np.random.default_rng(1)
omega = OmegaParam([0.3, 0.2], gamma=0.1)
xi = MatrixPoint(rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3)))
print("singular values of xi:", np.round(singular_values(xi).values, 6))
print(f"phi(xi)              = {spherical_eval(omega, xi):.15f}")

u, v = haar_unitary(3, rng), haar_unitary(3, rng)
print(f"phi(u xi v*)         = {spherical_eval(omega, MatrixPoint(u @ xi.entries @ v.conj().T)):.15f}")
print(f"phi(xi padded to 6)  = {spherical_eval(omega, xi.padded(6)):.15f}")

# For small omega, phi(xi) = 1 - ||omega|| tr(xi^2) + R with R of order ||omega||^2.
point = MatrixPoint.diag([0.8, 0.5])
print("\n   t       R(t omega)       bound        R / t")
for t in (1e-1, 1e-2, 1e-3, 1e-4):
    small = omega.scaled(t)
    r = remainder(small, point)
    print(f"{t:6.0e}  {r:.6e}  {remainder_bound(small, point):.6e}  {r / t:.3e}")

c = small_omega_linear_bound(rho=1.0, eps=0.1)
print(f"\nfor ||omega|| <= 0.1 and |||xi||| <= 1:  |1 - phi| <= {c:.4f} ||omega||")
