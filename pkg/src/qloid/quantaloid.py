"""Finite quantaloids.

Composition is written ``compose(g, f)`` and means "g after f": for
``f: p -> q`` and ``g: q -> r`` the result lies in ``hom(p, r)``.  A unital
quantale seen as a one-object quantaloid therefore has ``compose(g, f) = g*f``.

Residuals between morphisms:

* ``lres(u, v)`` is u↙v for ``u: p -> q``, ``v: p -> r`` (shared domain); it is
  the largest ``h: r -> q`` with ``h∘v <= u``.
* ``rres(v, u)`` is v↘u for ``u: p -> q``, ``v: r -> q`` (shared codomain); it
  is the largest ``h: p -> r`` with ``v∘h <= u``.
"""

from __future__ import annotations

from itertools import product
from typing import Hashable, Mapping, NamedTuple

from .errors import (
    MAX_WITNESSES,
    BadIdentity,
    BadInvolution,
    IncompleteTable,
    InternalInconsistency,
    NoInvolution,
    NotAssociative,
    NotComposable,
    NotJoinPreserving,
    NotUnital,
    TypeMismatch,
    UnknownElement,
    UnknownObject,
    ValidationError,
)
from .order_algebra import CompleteLattice, Quantale


class Morphism(NamedTuple):
    dom: Hashable
    cod: Hashable
    value: str

    def __str__(self):
        return f"{self.value}:{self.dom}->{self.cod}"


class Quantaloid:
    """Objects, hom-lattices and composition tables.

    Construct through :func:`validate_quantaloid` (or the helpers in this
    module and :mod:`qloid.diagonal`); the constructor itself trusts its input.
    """

    def __init__(self, objects, homs, comp, identities, involution=None,
                 name=None, origin=None):
        self.objects = tuple(objects)
        self._object_set = set(self.objects)
        self._homs = dict(homs)
        self._comp = comp
        self._ids = dict(identities)
        self._inv = involution
        self.name = name
        # where the quantaloid came from, e.g. ("dq", quantale); informational
        self.origin = origin
        self._lres_cache = {}
        self._rres_cache = {}
        self._key = None

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"<Quantaloid{label} objects={list(self.objects)}>"

    def _structure_key(self):
        if self._key is None:
            homs = tuple((pq, self._homs[pq].elements, tuple(self._homs[pq].leq_pairs()))
                         for pq in sorted(self._homs, key=repr))
            comp = tuple((k, tuple(sorted(v.items()))) for k, v in sorted(self._comp.items(), key=repr))
            inv = None if self._inv is None else tuple(
                (k, tuple(sorted(v.items()))) for k, v in sorted(self._inv.items(), key=repr))
            self._key = (self.objects, homs, comp, tuple(sorted(self._ids.items(), key=repr)), inv)
        return self._key

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Quantaloid):
            return NotImplemented
        return self._structure_key() == other._structure_key()

    def __hash__(self):
        return hash(self._structure_key())

    # lookups
    def _check_object(self, p):
        if p not in self._object_set:
            raise UnknownObject(f"{p!r} is not an object of {self.name or 'the quantaloid'}")

    def hom(self, p, q) -> CompleteLattice:
        try:
            return self._homs[(p, q)]
        except KeyError:
            self._check_object(p)
            self._check_object(q)
            raise

    def morphisms(self, p, q):
        return [Morphism(p, q, v) for v in self.hom(p, q).elements]

    def all_morphisms(self):
        return [m for p in self.objects for q in self.objects for m in self.morphisms(p, q)]

    def mor(self, p, q, value) -> Morphism:
        """The morphism ``value: p -> q``, checking membership."""
        if value not in self.hom(p, q):
            raise UnknownElement(f"{value!r} is not in hom({p!r}, {q!r})")
        return Morphism(p, q, value)

    def identity(self, p) -> Morphism:
        self._check_object(p)
        return Morphism(p, p, self._ids[p])

    def bottom(self, p, q) -> Morphism:
        return Morphism(p, q, self.hom(p, q).bottom)

    def top(self, p, q) -> Morphism:
        return Morphism(p, q, self.hom(p, q).top)

    def tau(self, p, q) -> Morphism:
        """Top of hom(q, p): the terminal hom-arrow from q to p."""
        return self.top(q, p)

    @property
    def has_involution(self):
        return self._inv is not None

    # algebra
    def compose(self, g: Morphism, f: Morphism) -> Morphism:
        if f.cod != g.dom:
            raise NotComposable(f"cannot compose {g} after {f}")
        try:
            return Morphism(f.dom, g.cod, self._comp[(f.dom, f.cod, g.cod)][(g.value, f.value)])
        except KeyError:
            self.mor(*f)
            self.mor(*g)
            raise

    def compose_all(self, *ms: Morphism) -> Morphism:
        """``compose_all(a, b, c) = a∘b∘c``."""
        acc = ms[-1]
        for m in reversed(ms[:-1]):
            acc = self.compose(m, acc)
        return acc

    def _same_hom(self, u, v):
        if (u.dom, u.cod) != (v.dom, v.cod):
            raise TypeMismatch(f"{u} and {v} live in different hom-lattices", [(u, v)])

    def leq(self, u: Morphism, v: Morphism) -> bool:
        self._same_hom(u, v)
        return self.hom(u.dom, u.cod).leq(u.value, v.value)

    def join(self, p, q, ms=()) -> Morphism:
        L = self.hom(p, q)
        vals = []
        for m in ms:
            if (m.dom, m.cod) != (p, q):
                raise TypeMismatch(f"{m} is not in hom({p!r}, {q!r})", [m])
            vals.append(m.value)
        return Morphism(p, q, L.join(vals))

    def meet(self, p, q, ms=()) -> Morphism:
        """Meet computed inside hom(p, q)."""
        L = self.hom(p, q)
        vals = []
        for m in ms:
            if (m.dom, m.cod) != (p, q):
                raise TypeMismatch(f"{m} is not in hom({p!r}, {q!r})", [m])
            vals.append(m.value)
        return Morphism(p, q, L.meet(vals))

    def lres(self, u: Morphism, v: Morphism) -> Morphism:
        """u↙v: the largest h with h∘v <= u (u, v share their domain)."""
        key = (u, v)
        hit = self._lres_cache.get(key)
        if hit is not None:
            return hit
        if u.dom != v.dom:
            raise NotComposable(f"{u} ↙ {v}: domains differ")
        L = self.hom(v.cod, u.cod)
        Lu = self.hom(u.dom, u.cod)
        table = self._comp[(v.dom, v.cod, u.cod)]
        good = [h for h in L.elements if Lu.leq(table[(h, v.value)], u.value)]
        res = Morphism(v.cod, u.cod, L.join(good))
        self._lres_cache[key] = res
        return res

    def rres(self, v: Morphism, u: Morphism) -> Morphism:
        """v↘u: the largest h with v∘h <= u (u, v share their codomain)."""
        key = (v, u)
        hit = self._rres_cache.get(key)
        if hit is not None:
            return hit
        if u.cod != v.cod:
            raise NotComposable(f"{v} ↘ {u}: codomains differ")
        L = self.hom(u.dom, v.dom)
        Lu = self.hom(u.dom, u.cod)
        table = self._comp[(u.dom, v.dom, v.cod)]
        good = [h for h in L.elements if Lu.leq(table[(v.value, h)], u.value)]
        res = Morphism(u.dom, v.dom, L.join(good))
        self._rres_cache[key] = res
        return res

    def involute(self, u: Morphism) -> Morphism:
        if self._inv is None:
            raise NoInvolution(f"{self.name or 'quantaloid'} has no involution")
        return Morphism(u.cod, u.dom, self._inv[(u.dom, u.cod)][u.value])

    # serialization helpers
    def compose_entries(self, p, q, r):
        """Non-bottom composition entries ``(g, f, g∘f)`` for f in hom(p,q), g in hom(q,r)."""
        bq = self.hom(p, q).bottom
        br = self.hom(q, r).bottom
        return [(g, f, h) for (g, f), h in self._comp[(p, q, r)].items()
                if g != br and f != bq]

    def involution_entries(self, p, q):
        if self._inv is None:
            return []
        return list(self._inv[(p, q)].items())


def _entry_list(entries):
    if isinstance(entries, Mapping):
        return [(g, f, h) for (g, f), h in entries.items()]
    return [tuple(t) for t in entries]


def validate_quantaloid(objects, homs, compose, identities, involution=None,
                        name=None, origin=None) -> Quantaloid:
    """Check and assemble a quantaloid.

    ``homs[(p, q)]`` is the lattice hom(p, q).  ``compose[(p, q, r)]`` gives
    ``g∘f`` for ``f`` in hom(p,q) and ``g`` in hom(q,r), either as a dict
    ``{(g, f): h}`` or as ``(g, f, h)`` triples; pairs involving a bottom may be
    omitted and are filled in as bottom.  ``identities[p]`` names 1_p.
    ``involution[(p, q)]`` maps hom(p,q) into hom(q,p); entries for (q, p) are
    inferred from those for (p, q) and unlisted endomorphisms are fixed.
    """
    objects = list(objects)
    if len(set(objects)) != len(objects):
        raise ValidationError("duplicate object names", objects)
    missing = [(p, q) for p in objects for q in objects if (p, q) not in homs]
    if missing:
        raise IncompleteTable("missing hom-lattices", missing[:MAX_WITNESSES])
    H = {(p, q): homs[(p, q)] for p in objects for q in objects}

    comp = {}
    bad_bottom, bad_member, missing, conflicts = [], [], [], []
    for p, q, r in product(objects, repeat=3):
        Lf, Lg, Lh = H[(p, q)], H[(q, r)], H[(p, r)]
        table = {}
        for g, f, h in _entry_list(compose.get((p, q, r), ())):
            if f not in Lf or g not in Lg:
                raise UnknownElement(f"composition entry {(g, f, h)} over {(p, q, r)} "
                                     f"uses unknown arguments")
            if h not in Lh:
                bad_member.append((p, q, r, g, f, h))
                continue
            if (f == Lf.bottom or g == Lg.bottom) and h != Lh.bottom:
                bad_bottom.append((p, q, r, g, f, h))
                continue
            if (g, f) in table and table[(g, f)] != h:
                conflicts.append((p, q, r, g, f, table[(g, f)], h))
            table[(g, f)] = h
        for g in Lg.elements:
            for f in Lf.elements:
                if (g, f) in table:
                    continue
                if f == Lf.bottom or g == Lg.bottom:
                    table[(g, f)] = Lh.bottom
                else:
                    missing.append((p, q, r, g, f))
        comp[(p, q, r)] = table
    if bad_member:
        raise TypeMismatch("composites outside their hom-lattice", bad_member[:MAX_WITNESSES])
    if bad_bottom:
        raise NotJoinPreserving("composites with a bottom must be bottom", bad_bottom[:MAX_WITNESSES])
    if conflicts:
        raise ValidationError("conflicting composition entries", conflicts[:MAX_WITNESSES])
    if missing:
        raise IncompleteTable("composition table is missing entries", missing[:MAX_WITNESSES])

    ids = {}
    for p in objects:
        if p not in identities:
            raise BadIdentity("missing identity", [p])
        if identities[p] not in H[(p, p)]:
            raise BadIdentity("identity is not an endomorphism", [(p, identities[p])])
        ids[p] = identities[p]
    bad = []
    for p, q in product(objects, repeat=2):
        tq, tp = comp[(p, q, q)], comp[(p, p, q)]
        for f in H[(p, q)].elements:
            if tq[(ids[q], f)] != f or tp[(f, ids[p])] != f:
                bad.append((p, q, f))
    if bad:
        raise BadIdentity("identities are not neutral", bad[:MAX_WITNESSES])

    # joins in each variable: binary joins suffice, bottoms were derived above
    bad = []
    for p, q, r in product(objects, repeat=3):
        Lf, Lg, Lh = H[(p, q)], H[(q, r)], H[(p, r)]
        t = comp[(p, q, r)]
        for g in Lg.elements:
            for f1 in Lf.elements:
                for f2 in Lf.elements:
                    if t[(g, Lf.join2(f1, f2))] != Lh.join2(t[(g, f1)], t[(g, f2)]):
                        bad.append(("right", p, q, r, g, f1, f2))
        for f in Lf.elements:
            for g1 in Lg.elements:
                for g2 in Lg.elements:
                    if t[(Lg.join2(g1, g2), f)] != Lh.join2(t[(g1, f)], t[(g2, f)]):
                        bad.append(("left", p, q, r, g1, g2, f))
        if len(bad) >= MAX_WITNESSES:
            break
    if bad:
        raise NotJoinPreserving("composition does not preserve binary joins", bad[:MAX_WITNESSES])

    bad = []
    for p, q, r, s in product(objects, repeat=4):
        t_pqr, t_prs = comp[(p, q, r)], comp[(p, r, s)]
        t_qrs, t_pqs = comp[(q, r, s)], comp[(p, q, s)]
        for f in H[(p, q)].elements:
            for g in H[(q, r)].elements:
                gf = t_pqr[(g, f)]
                for h in H[(r, s)].elements:
                    if t_prs[(h, gf)] != t_pqs[(t_qrs[(h, g)], f)]:
                        bad.append((p, q, r, s, h, g, f))
        if len(bad) >= MAX_WITNESSES:
            break
    if bad:
        raise NotAssociative("composition is not associative", bad[:MAX_WITNESSES])

    inv = None
    if involution is not None:
        inv = _complete_involution(objects, H, involution)
        _check_involution(objects, H, comp, inv)
    return Quantaloid(objects, H, comp, ids, inv, name=name, origin=origin)


def _complete_involution(objects, H, involution):
    inv = {(p, q): {} for p in objects for q in objects}
    clash = []
    for (p, q), mapping in involution.items():
        pairs = mapping.items() if isinstance(mapping, Mapping) else mapping
        for a, b in pairs:
            if a not in H[(p, q)] or b not in H[(q, p)]:
                raise BadInvolution("involution entry outside the hom-lattices", [(p, q, a, b)])
            for (s, t), x, y in (((p, q), a, b), ((q, p), b, a)):
                if inv[(s, t)].get(x, y) != y:
                    clash.append((s, t, x, inv[(s, t)][x], y))
                inv[(s, t)][x] = y
    if clash:
        raise BadInvolution("involution entries conflict", clash[:MAX_WITNESSES])
    missing = []
    for p, q in product(objects, repeat=2):
        for a in H[(p, q)].elements:
            if a in inv[(p, q)]:
                continue
            if p == q:
                inv[(p, q)][a] = a
            elif a == H[(p, q)].bottom and H[(q, p)].bottom not in inv[(q, p)]:
                inv[(p, q)][a] = H[(q, p)].bottom
                inv[(q, p)][H[(q, p)].bottom] = a
            else:
                missing.append((p, q, a))
    if missing:
        raise BadInvolution("involution is not defined everywhere", missing[:MAX_WITNESSES])
    return inv


def _check_involution(objects, H, comp, inv):
    bad = []
    for p, q in product(objects, repeat=2):
        L, Lop = H[(p, q)], H[(q, p)]
        j, jop = inv[(p, q)], inv[(q, p)]
        for a in L.elements:
            if jop[j[a]] != a:
                bad.append(("period", p, q, a))
            for b in L.elements:
                if j[L.join2(a, b)] != Lop.join2(j[a], j[b]):
                    bad.append(("join", p, q, a, b))
    if bad:
        raise BadInvolution("involution is not a join-preserving period-two map", bad[:MAX_WITNESSES])
    for p, q, r in product(objects, repeat=3):
        t, top = comp[(p, q, r)], comp[(r, q, p)]
        for g in H[(q, r)].elements:
            for f in H[(p, q)].elements:
                lhs = inv[(p, r)][t[(g, f)]]
                rhs = top[(inv[(p, q)][f], inv[(q, r)][g])]
                if lhs != rhs:
                    bad.append(("reverse", p, q, r, g, f))
    if bad:
        raise BadInvolution("involution does not reverse composition", bad[:MAX_WITNESSES])


def one_object_quantaloid(quantale: Quantale, obj="*", name=None) -> Quantaloid:
    """A unital quantale as a quantaloid with the single object ``obj``."""
    Q = quantale
    if Q.unit is None:
        raise NotUnital("only unital quantales give one-object quantaloids")
    entries = [(g, f, Q.mul(g, f)) for g in Q.elements for f in Q.elements]
    inv = None
    if Q.has_involution:
        inv = {(obj, obj): {a: Q.involute(a) for a in Q.elements}}
    return validate_quantaloid([obj], {(obj, obj): Q.lattice}, {(obj, obj, obj): entries},
                               {obj: Q.unit}, inv, name=name or Q.name, origin=("one", Q))


def full_subquantaloid(K: Quantaloid, objects, name=None) -> Quantaloid:
    objects = [p for p in K.objects if p in set(objects)]
    homs = {(p, q): K.hom(p, q) for p in objects for q in objects}
    comp = {(p, q, r): K._comp[(p, q, r)] for p in objects for q in objects for r in objects}
    inv = None
    if K._inv is not None:
        inv = {(p, q): K._inv[(p, q)] for p in objects for q in objects}
    return Quantaloid(objects, homs, comp, {p: K._ids[p] for p in objects}, inv,
                      name=name, origin=K.origin)


def m_residual(quantaloid: Quantaloid, u: Morphism, v: Morphism, side: str) -> Morphism:
    """``side='left'`` gives u↙v, ``side='right'`` gives v↘u.

    The Galois law is re-checked over the whole target hom before returning.
    """
    K = quantaloid
    if side == "left":
        res = K.lres(u, v)
        for h in K.morphisms(res.dom, res.cod):
            if K.leq(K.compose(h, v), u) != K.leq(h, res):
                raise InternalInconsistency(f"Galois law fails for {u} ↙ {v} at {h}")
    elif side == "right":
        res = K.rres(v, u)
        for h in K.morphisms(res.dom, res.cod):
            if K.leq(K.compose(v, h), u) != K.leq(h, res):
                raise InternalInconsistency(f"Galois law fails for {v} ↘ {u} at {h}")
    else:
        raise ValueError("side must be 'left' or 'right'")
    return res


def hom_top(quantaloid: Quantaloid, p, q) -> Morphism:
    """τ(p, q): the top of hom(q, p)."""
    return quantaloid.tau(p, q)


def is_p_stable(quantaloid: Quantaloid, p) -> bool:
    """1_q <= (⋁hom(p,q)) ∘ (⋁hom(q,p)) for every object q."""
    K = quantaloid
    K._check_object(p)
    for q in K.objects:
        loop = K.compose(K.top(p, q), K.top(q, p))
        if not K.leq(K.identity(q), loop):
            return False
    return True


def stable_objects(quantaloid: Quantaloid):
    return [p for p in quantaloid.objects if is_p_stable(quantaloid, p)]


def right_sided_morphisms(quantaloid: Quantaloid, r):
    """Morphisms u out of r with u∘τ(r,r) <= u, grouped by codomain in object order."""
    K = quantaloid
    K._check_object(r)
    t = K.tau(r, r)
    out = [u for q in K.objects for u in K.morphisms(r, q) if K.leq(K.compose(u, t), u)]
    if t == K.identity(r):
        everything = [u for q in K.objects for u in K.morphisms(r, q)]
        if out != everything:
            raise InternalInconsistency("τ(r,r) = 1_r but some morphism is not right-sided")
    return out
