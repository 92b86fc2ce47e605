"""Building a Levy-Khinchin function and reading its drift back off.

psi(s xi0) / s^2 tends to A tr(xi0^2) as s grows because each
(1 - phi_omega)(s xi0) stays below 1. recover_A extrapolates that limit.
"""

from lkmatrix import (
    LevyTriple,
    MatrixPoint,
    OmegaParam,
    integrability_functional,
    lk_forward,
    lk_kernel,
    recover_A,
)
from lkmatrix.levy import drift_sweep

triple = LevyTriple(psi0=0.2, A=0.75, nu=[(OmegaParam([1.0]), 3.0), (OmegaParam([0.1], 0.05), 1.0)])
print("triple:", triple.to_json())
print(f"integral of ||omega|| / (1 + ||omega||) d nu = {integrability_functional(triple.nu):.6f}")
for d in ([0.0], [1.0], [1.0, 2.0]):
    print(f"psi(diag{d}) = {lk_forward(triple, MatrixPoint.diag(d)):.10f}")

psi = lk_kernel(triple)
s, g = drift_sweep(psi, 1, [10, 30, 100, 300, 1000])
print("\n     s    psi(s xi0) / s^2")
for a, b in zip(s, g):
    print(f"{a:6.0f}    {b:.10f}")
print(f"\nrecovered A = {recover_A(psi, 1, [10, 30, 100]):.8f}  (true {triple.A})")
