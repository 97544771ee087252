"""Walk through the diagonal quantaloid of a small non-commutative quantale.

Objects are the hermitian elements that divide themselves on both sides;
an arrow a -> b is an element divisible by a on the right and by b on the
left.  Run with ``python3 demos/diagonal_quantaloid.py``.
"""

from qloid.diagonal import check_embedding, dq_from_quantale
from qloid.fixtures import named_quantales
from qloid.quantaloid import Morphism, is_p_stable

Q = named_quantales()["Q2"]
D = dq_from_quantale(Q)

print(f"{Q.name} has {len(Q.elements)} elements: {' '.join(Q.elements)}")
print("objects of D:", " ".join(D.objects))
for p in D.objects:
    for q in D.objects:
        if len(D.hom(p, q)) > 1:
            print(f"  hom({p}, {q}) = {{{', '.join(D.hom(p, q).elements)}}}")

# b and top are isomorphic objects: ar and al compose to identities both ways
ar, al = Morphism("top", "b", "ar"), Morphism("b", "top", "al")
print("al∘ar =", D.compose(al, ar).value, " ar∘al =", D.compose(ar, al).value)

print("stable at every non-bottom object:",
      all(is_p_stable(D, p) for p in D.objects if p != "bot"))

# only unital quantales embed as the endo-hom of their unit
for name in ("Q5", "Absorb3"):
    res = check_embedding(named_quantales()[name], dq_from_quantale(named_quantales()[name]))
    print(f"{name}: embedding applicable={res.applicable} holds={bool(res)}")
