"""Tensor-network patches reproduce the grown lattice elements.

A bond-dimension-4 tensor with a product boundary contracts exactly to the
marked-symbol elements on every patch up to 3 x 3.  The bond-dimension-2
tensor needs a correlated boundary; solving for it succeeds on strips but
is provably impossible once a full plaquette is required, and the solver
emits the two-grid certificate.
"""

import json

from hopf2d import boxplus, make_pivot
from hopf2d import peps
from hopf2d.grids import sums_equal

pivot = make_pivot(theta=0.0)

print("== bond dimension 4, product boundary ==")
inst = peps.d4_instance()
for (n, m) in [(1, 1), (1, 2), (2, 2)]:
    got = peps.contract(inst, n, m)
    print(f"{n}x{m}: {got}")
report = peps.check_peps_vs_boxplus(inst, pivot, "v",
                                    [(1, 1), (1, 2), (2, 1), (2, 2), (2, 3), (3, 2), (3, 3)])
print("matches the grown elements at all patches up to 3x3:", report.ok)

print("\n== a mutation is visible immediately ==")
mutated = peps.mutate_drop(inst, 0)  # drop the mark component
print("1x1 after dropping the mark component:", peps.contract(mutated, 1, 1))

print("\n== bond dimension 2: boundary completion ==")
d2 = peps.d2_instance()
strip_sizes = [(1, 1), (1, 2), (2, 1), (1, 3), (3, 1)]
targets = {s: boxplus(pivot, "v", *s) for s in strip_sizes}
solved = peps.solve_boundary(d2, targets, strip_sizes)
print(f"strips only: feasible={solved.feasible}, "
      f"solution space dimension {solved.solution_space_dim}")
completed = peps.PepsInstance(d2.tensor, solved.boundary)
print("completed boundary reproduces the 1x2 coproduct:",
      sums_equal(peps.contract(completed, 1, 2), targets[(1, 2)]))

all_sizes = strip_sizes + [(2, 2), (3, 3)]
targets = {s: boxplus(pivot, "v", *s) for s in all_sizes}
refuted = peps.solve_boundary(d2, targets, all_sizes)
print(f"\nwith the 2x2 plaquette included: feasible={refuted.feasible}")
print("certificate (two grids with proportional constraint rows but")
print("incompatible targets, so no boundary weighting can match both):")
print(json.dumps(refuted.certificate, indent=2))
