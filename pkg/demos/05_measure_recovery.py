"""Recovering a grid-supported Levy measure by nonnegative least squares.

Evaluating psi at a handful of probe matrices gives a linear system in
(A, weights) once psi0 = psi(0) is subtracted. Distinct grid points give
linearly independent columns, so the fit recovers the measure exactly.
"""

from lkmatrix import IllPosedError, LevyTriple, OmegaParam, lk_kernel, recover_measure

grid = [OmegaParam([], 0.1), OmegaParam([], 1.0), OmegaParam([0.5]),
        OmegaParam([2.0]), OmegaParam([1.0, 1.0]), OmegaParam([0.2], 0.3)]
truth = LevyTriple(0.3, 1.2, [(grid[1], 0.8), (grid[3], 2.5), (grid[5], 0.1)])

rec = recover_measure(lk_kernel(truth), None, grid)
print(f"A: true {truth.A}, recovered {rec.A_hat:.12f}")
print(f"psi0: true {truth.psi0}, recovered {rec.psi0_hat}")
true_w = dict((om, w) for om, w in truth.nu.atoms)
for om, w in zip(grid, rec.weights):
    print(f"  {str(om):45s} true {true_w.get(om, 0.0):5.2f}  recovered {w:.12f}")
print(f"residual {rec.residual:.2e}, condition number {rec.condition_number:.1f}")

# Two grid points that are numerically the same make the problem ill-posed.
try:
    recover_measure(lk_kernel(truth), None, grid + [OmegaParam([0.5 + 1e-14])])
except IllPosedError as exc:
    print("\nnear-duplicate grid:", exc)
