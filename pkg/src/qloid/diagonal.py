"""Diagonal-arrow quantaloids.

From an involutive quantale Q: objects are the hermitian self-divisible
elements, and ``hom(a, b)`` holds the elements l with ``l = (l↙a)*a`` and
``l = b*(b↘l)``.  Composition of ``l: a -> b`` and ``m: b -> c`` is
``m*(b↘l)``, which always equals ``(m↙b)*l``; the construction checks this.

From a quantaloid K the same recipe runs one level up: objects are the
morphisms of K (hermitian endomorphisms when an involution is used).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InternalInconsistency, NoInvolution
from .order_algebra import Quantale, _involution_for, dq_object_candidates
from .quantaloid import Morphism, Quantaloid, validate_quantaloid


def diagonal_members(quantale: Quantale, a, b):
    """Elements l with l = (l↙a)*a and l = b*(b↘l), in element order."""
    Q = quantale
    return [l for l in Q.elements
            if Q.mul(Q.lres(l, a), a) == l and Q.mul(b, Q.rres(b, l)) == l]


def _check_join_closed(lattice, members, where):
    ms = set(members)
    if lattice.bottom not in ms:
        raise InternalInconsistency(f"{where}: bottom missing from a diagonal hom")
    for x in members:
        for y in members:
            if lattice.join2(x, y) not in ms:
                raise InternalInconsistency(f"{where}: {x} ∨ {y} escapes the diagonal hom")


def dq_from_quantale(quantale: Quantale, name=None) -> Quantaloid:
    """The involutive quantaloid of diagonal arrows of ``quantale``.

    A commutative quantale without an involution is read with the identity
    involution; a non-commutative one raises :class:`NoInvolution`.
    """
    Q = _involution_for(quantale)
    objs = dq_object_candidates(Q)
    homs = {}
    for a in objs:
        for b in objs:
            members = diagonal_members(Q, a, b)
            _check_join_closed(Q.lattice, members, f"hom({a},{b})")
            homs[(a, b)] = Q.lattice.restrict(members)
    compose = {}
    for a in objs:
        for b in objs:
            for c in objs:
                entries = []
                for lam in homs[(a, b)].elements:
                    after = Q.rres(b, lam)
                    for mu in homs[(b, c)].elements:
                        v1 = Q.mul(mu, after)
                        v2 = Q.mul(Q.lres(mu, b), lam)
                        if v1 != v2:
                            raise InternalInconsistency(
                                f"composites disagree for {mu} after {lam} at {b}: {v1} vs {v2}")
                        entries.append((mu, lam, v1))
                compose[(a, b, c)] = entries
    involution = {(a, b): {lam: Q.involute(lam) for lam in homs[(a, b)].elements}
                  for a in objs for b in objs}
    label = name or (f"D({Q.name})" if Q.name else None)
    return validate_quantaloid(objs, homs, compose, {a: a for a in objs}, involution,
                               name=label, origin=("dq", Q))


def _object_name(K: Quantaloid, u: Morphism):
    return u.value if len(K.objects) == 1 else str(u)


def dq_from_quantaloid(quantaloid: Quantaloid, involutive=False, name=None) -> Quantaloid:
    """Diagonal arrows of a quantaloid.

    With ``involutive=True`` the objects are the hermitian endomorphisms and
    the involution is carried along.  Objects are named by the morphism value
    when K has one object, otherwise by ``"value:dom->cod"``.
    """
    K = quantaloid
    if involutive and not K.has_involution:
        raise NoInvolution("the quantaloid has no involution")
    if involutive:
        carriers = [u for p in K.objects for u in K.morphisms(p, p) if K.involute(u) == u]
    else:
        carriers = K.all_morphisms()
    names = {u: _object_name(K, u) for u in carriers}
    by_name = {names[u]: u for u in carriers}
    objs = [names[u] for u in carriers]

    homs, members_of = {}, {}
    for u in carriers:
        for v in carriers:
            L = K.hom(u.dom, v.cod)
            members = [k for k in K.morphisms(u.dom, v.cod)
                       if K.compose(K.lres(k, u), u) == k and K.compose(v, K.rres(v, k)) == k]
            _check_join_closed(L, [k.value for k in members], f"hom({names[u]},{names[v]})")
            homs[(names[u], names[v])] = L.restrict([k.value for k in members])
            members_of[(u, v)] = members
    compose = {}
    for u in carriers:
        for v in carriers:
            for w in carriers:
                entries = []
                for k in members_of[(u, v)]:
                    after = K.rres(v, k)
                    for l in members_of[(v, w)]:
                        entries.append((l.value, k.value, K.compose(l, after).value))
                compose[(names[u], names[v], names[w])] = entries
    inv = None
    if involutive:
        inv = {(names[u], names[v]): {k.value: K.involute(k).value for k in members_of[(u, v)]}
               for u in carriers for v in carriers}
    label = name or (f"D({K.name})" if K.name else None)
    return validate_quantaloid(objs, homs, compose, {names[u]: u.value for u in carriers}, inv,
                               name=label, origin=("dq_of", K, by_name))


@dataclass(frozen=True)
class EmbeddingCheck:
    ok: bool
    applicable: bool = True
    witness: object = None
    reason: str = ""

    def __bool__(self):
        return self.ok


def check_embedding(source, dq: Quantaloid) -> EmbeddingCheck:
    """Check that the source sits inside ``dq`` via p ↦ 1_p (or e ↦ e).

    For a quantale without a unit the check does not apply; the result is then
    false with ``applicable=False``.
    """
    if isinstance(source, Quantale):
        return _check_quantale_embedding(source, dq)
    return _check_quantaloid_embedding(source, dq)


def _check_quantale_embedding(Q: Quantale, dq: Quantaloid) -> EmbeddingCheck:
    e = Q.unit
    if e is None:
        return EmbeddingCheck(False, applicable=False, reason="not applicable: the quantale has no unit")
    if e not in dq.objects:
        return EmbeddingCheck(False, witness=e, reason="unit is not an object")
    H = dq.hom(e, e)
    if set(H.elements) != set(Q.elements):
        missing = sorted(set(Q.elements) - set(H.elements))
        return EmbeddingCheck(False, witness=missing, reason="hom(e,e) is not all of Q")
    for x in Q.elements:
        for y in Q.elements:
            if H.leq(x, y) != Q.leq(x, y):
                return EmbeddingCheck(False, witness=(x, y), reason="order differs")
            if dq.compose(Morphism(e, e, y), Morphism(e, e, x)).value != Q.mul(y, x):
                return EmbeddingCheck(False, witness=(y, x), reason="composition differs")
    return EmbeddingCheck(True)


def _check_quantaloid_embedding(K: Quantaloid, dq: Quantaloid) -> EmbeddingCheck:
    image = {p: _object_name(K, K.identity(p)) for p in K.objects}
    if len(set(image.values())) != len(image):
        return EmbeddingCheck(False, witness=image, reason="object map is not injective")
    for p, name in image.items():
        if name not in dq.objects:
            return EmbeddingCheck(False, witness=p, reason="identity is not an object")
    for p in K.objects:
        for q in K.objects:
            H, L = dq.hom(image[p], image[q]), K.hom(p, q)
            if H != L:
                return EmbeddingCheck(False, witness=(p, q), reason="hom-lattices differ")
    for p in K.objects:
        for q in K.objects:
            for r in K.objects:
                for f in K.morphisms(p, q):
                    for g in K.morphisms(q, r):
                        d = dq.compose(Morphism(image[q], image[r], g.value),
                                       Morphism(image[p], image[q], f.value))
                        if d.value != K.compose(g, f).value:
                            return EmbeddingCheck(False, witness=(g, f), reason="composition differs")
    return EmbeddingCheck(True)
