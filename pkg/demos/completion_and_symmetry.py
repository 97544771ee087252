"""Cauchy completion through presingletons, and where symmetry is lost.

A single point of type b over D(Q2) completes to a copy of the terminal
category, and every presingleton there is a singleton.  Over the cyclic
quantale Q5 the discrete two-point category already has presingletons whose
two halves are not involutes of each other.
"""

from qloid.diagonal import dq_from_quantale
from qloid.fixtures import named_quantales
from qloid.presheaf import enumerate_presingletons, presingleton_space
from qloid.qcat import discrete_qcategory, find_isomorphism, terminal_qcategory
from qloid.symmetry import (
    bounded_preservation_search,
    completion_symmetric_for,
    is_singleton,
    quantale_symmetry_criteria,
)

quantales = named_quantales()

D = dq_from_quantale(quantales["Q2"])
X = discrete_qcategory(D, {"s": "b"})
for mu in enumerate_presingletons(X):
    print(f"presingleton {mu.label():<14} singleton={is_singleton(mu, D)}")
Xhat, xi = presingleton_space(X)
print("completion matches the terminal category:",
      find_isomorphism(Xhat, terminal_qcategory(D)) is not None)

D5 = dq_from_quantale(quantales["Q5"])
pair = discrete_qcategory(D5, {"x": "e", "y": "e"})
verdict = completion_symmetric_for(pair)
print(f"\nQ5 discrete pair: completion symmetric={verdict.holds}, "
      f"{len(verdict.witnesses)} non-singleton presingletons")
for mu in verdict.witnesses[:4]:
    print("  ", mu.label())

crit = quantale_symmetry_criteria(quantales["Q5"])
print(f"sufficient criterion: integral={crit.integral} commutative={crit.commutative} "
      f"square bound={crit.square_bound}")
res = bounded_preservation_search(quantales["Q5"], max_points=2)
X0, mu0 = res.counterexample
print(f"smallest counterexample found has {len(X0)} point(s): {mu0.label()}")

for name in ("Two", "Frame3", "Luk3"):
    print(f"{name}: no counterexample up to 2 points:",
          bool(bounded_preservation_search(quantales[name], max_points=2)))
