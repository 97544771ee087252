"""The weak subobject classifier at an object r of a stable base.

Over D(Diamond) at r = a the classifier is the category of right-sided
arrows out of a.  Its sups agree with a closed meet formula, the true arrow
is a point, and the characteristic map of the diagonal is the meet.
"""

from qloid.classifier import (
    build_classifier,
    chi_meet,
    classifier_squared,
    classify_point,
    is_point,
    meet_failures,
    sup_formula,
    true_arrow,
)
from qloid.diagonal import dq_from_quantale
from qloid.fixtures import named_quantales

K = dq_from_quantale(named_quantales()["Diamond"])
C = build_classifier(K, "a")
members = list(C.category.elements)
print("right-sided arrows out of a:", ", ".join(f"{u.value}:a->{u.cod}" for u in members))

agree = all(sup_formula(K, members, g) == u for g, u in C.sup.items())
print(f"{len(C.sup)} presheaves, sup equals the meet formula for all of them: {agree}")

true_a = true_arrow(K, "a", C)
print("true_a:", {q: true_a(q).value for q in true_a.source.elements}, " point:", is_point(true_a))

res = classify_point(true_a, "a", test_cones=[true_a], classifier=C)
print("classifying map of true_a is the identity:",
      all(res.chi(u) == u for u in members), f"({res.summary})")

sq = classifier_squared(C)
chi = chi_meet(sq, check=True)
print(f"pairs of equal type: {len(sq.category)}; chi of the diagonal is the meet:",
      not meet_failures(sq, chi))
