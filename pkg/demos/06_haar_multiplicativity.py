"""Spherical functions become multiplicative under Haar averaging as n grows.

For xi and eta embedded in n x n matrices, the average of
phi(xi + k1 eta k2*) over Haar unitaries k1, k2 approaches phi(xi) phi(eta).
"""

from lkmatrix import MatrixPoint, OmegaParam, multiplicativity_ladder

omega = OmegaParam([0.5], gamma=0.5)
xi = MatrixPoint.diag([1.0])
rows = multiplicativity_ladder(omega, xi, xi, ns=[2, 5, 10, 20], n_samples=2000, seeds=[0, 1])
print(f"target phi(xi) phi(eta) = {rows[0]['target']:.6f}\n")
print("  n      mean      stderr     |mean - target|")
for r in rows:
    print(f"{r['n']:3d}   {r['mean']:.6f}   {r['stderr']:.2e}   {r['abs_dev']:.2e}")
