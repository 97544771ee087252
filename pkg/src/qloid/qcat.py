"""Quantaloid-enriched categories and functors.

A Q-category is a set of elements, each with a type (an object of the base),
and a hom-arrow ``alpha(x, y)`` in ``hom(|y|, |x|)`` for every pair, such that

* ``alpha(x, y)∘alpha(y, z) <= alpha(x, z)`` and
* ``1_|x| <= alpha(x, x)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations, product
from typing import Mapping

from .budget import check_budget
from .errors import (
    IncompleteTable,
    InternalInconsistency,
    NoIdentity,
    NoInvolution,
    NotEnriched,
    NotTransitive,
    TypeMismatch,
    UnknownObject,
)
from .quantaloid import Morphism, Quantaloid


@dataclass(frozen=True)
class TypedSet:
    elements: tuple
    types: Mapping = field(hash=False)

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))
        object.__setattr__(self, "types", dict(self.types))

    def type_of(self, x):
        return self.types[x]


class QCategory:
    """Validated Q-category; build with :func:`validate_qcategory`."""

    def __init__(self, base: Quantaloid, elements, types, alpha, name=None):
        self.base = base
        self.elements = tuple(elements)
        self.types = dict(types)
        self._alpha = dict(alpha)
        self.name = name
        self._key = None

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"<QCategory{label} on {len(self.elements)} elements>"

    def __len__(self):
        return len(self.elements)

    def _structure_key(self):
        if self._key is None:
            self._key = (self.elements, tuple(self.types[x] for x in self.elements),
                         tuple(self._alpha[(x, y)].value
                               for x in self.elements for y in self.elements))
        return self._key

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, QCategory):
            return NotImplemented
        return self._structure_key() == other._structure_key() and self.base == other.base

    def __hash__(self):
        return hash(self._structure_key())

    def type_of(self, x):
        return self.types[x]

    def alpha(self, x, y) -> Morphism:
        return self._alpha[(x, y)]

    @property
    def carrier(self) -> TypedSet:
        return TypedSet(self.elements, self.types)

    def restrict(self, subset, name=None) -> "QCategory":
        """Full subcategory on ``subset`` (kept in element order)."""
        keep = [x for x in self.elements if x in set(subset)]
        return QCategory(self.base, keep, {x: self.types[x] for x in keep},
                         {(x, y): self._alpha[(x, y)] for x in keep for y in keep}, name)

    def relabel(self, mapping, name=None) -> "QCategory":
        """Same structure with element x renamed to ``mapping[x]``."""
        m = dict(mapping)
        if len(set(m.values())) != len(m):
            raise ValueError("relabelling must be injective")
        return QCategory(self.base, [m[x] for x in self.elements],
                         {m[x]: self.types[x] for x in self.elements},
                         {(m[x], m[y]): a for (x, y), a in self._alpha.items()}, name)

    def values_table(self):
        """``{(x, y): value}`` with plain element names of the hom-lattices."""
        return {k: a.value for k, a in self._alpha.items()}


def _category_failures(base, elements, types, alpha):
    bad_type, bad_id, bad_trans = [], [], []
    for x in elements:
        for y in elements:
            a = alpha[(x, y)]
            if (a.dom, a.cod) != (types[y], types[x]) or a.value not in base.hom(a.dom, a.cod):
                bad_type.append((x, y, a))
    if bad_type:
        return bad_type, bad_id, bad_trans
    for x in elements:
        if not base.leq(base.identity(types[x]), alpha[(x, x)]):
            bad_id.append((x, alpha[(x, x)]))
    for x in elements:
        for y in elements:
            axy = alpha[(x, y)]
            for z in elements:
                if not base.leq(base.compose(axy, alpha[(y, z)]), alpha[(x, z)]):
                    bad_trans.append((x, y, z))
    return bad_type, bad_id, bad_trans


def _as_morphism(base, dom, cod, v):
    if isinstance(v, Morphism):
        return v
    return Morphism(dom, cod, v)


def validate_qcategory(base: Quantaloid, carrier, alpha_entries, name=None) -> QCategory:
    """``carrier`` is a :class:`TypedSet` or a ``{element: type}`` dict.

    ``alpha_entries[(x, y)]`` is a :class:`Morphism` or a bare value name of
    ``hom(|y|, |x|)``; every pair must be present.
    """
    if not isinstance(carrier, TypedSet):
        carrier = TypedSet(tuple(carrier), carrier)
    elements, types = carrier.elements, carrier.types
    for x in elements:
        if types[x] not in base._object_set:
            raise UnknownObject(f"type {types[x]!r} of {x!r} is not a base object")
    missing = [(x, y) for x in elements for y in elements if (x, y) not in alpha_entries]
    if missing:
        raise IncompleteTable("hom-arrow entries missing", missing)
    alpha = {(x, y): _as_morphism(base, types[y], types[x], alpha_entries[(x, y)])
             for x in elements for y in elements}
    bad_type, bad_id, bad_trans = _category_failures(base, elements, types, alpha)
    if bad_type:
        raise TypeMismatch("hom-arrows outside hom(|y|,|x|)", bad_type)
    if bad_id:
        raise NoIdentity("diagonal arrows below the identity", bad_id)
    if bad_trans:
        raise NotTransitive("alpha(x,y)∘alpha(y,z) exceeds alpha(x,z)", bad_trans)
    for x in elements:
        for y in elements:
            a = alpha[(x, y)]
            if base.compose(alpha[(x, x)], a) != a or base.compose(a, alpha[(y, y)]) != a:
                raise InternalInconsistency(f"diagonal arrows are not neutral at {(x, y)}")
    return QCategory(base, elements, types, alpha, name)


def discrete_qcategory(base: Quantaloid, typed_set, name=None) -> QCategory:
    if not isinstance(typed_set, TypedSet):
        typed_set = TypedSet(tuple(typed_set), typed_set)
    T = typed_set.types
    alpha = {(x, y): base.identity(T[x]) if x == y else base.bottom(T[y], T[x])
             for x in typed_set.elements for y in typed_set.elements}
    return validate_qcategory(base, typed_set, alpha, name)


def terminal_qcategory(base: Quantaloid, name=None) -> QCategory:
    """Objects of the base typed by themselves, with ``tau(p, q)`` the top of hom(q, p)."""
    objs = base.objects
    alpha = {(p, q): base.tau(p, q) for p in objs for q in objs}
    return validate_qcategory(base, {p: p for p in objs}, alpha, name)


@dataclass(frozen=True, eq=False)
class QFunctor:
    source: QCategory
    target: QCategory
    mapping: Mapping

    def __call__(self, x):
        return self.mapping[x]

    def __eq__(self, other):
        if not isinstance(other, QFunctor):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and all(self.mapping[x] == other.mapping[x] for x in self.source.elements))

    def __hash__(self):
        return hash(tuple(self.mapping[x] for x in self.source.elements))


def validate_functor(source: QCategory, target: QCategory, mapping, name=None) -> QFunctor:
    base = source.base
    m = dict(mapping)
    missing = [x for x in source.elements if x not in m]
    if missing:
        raise IncompleteTable("functor undefined on some elements", missing)
    bad = [(x, m[x]) for x in source.elements
           if m[x] not in target.types or target.types[m[x]] != source.types[x]]
    if bad:
        raise TypeMismatch("functor does not preserve types", bad)
    bad = [(x1, x2) for x1 in source.elements for x2 in source.elements
           if not base.leq(source.alpha(x1, x2), target.alpha(m[x1], m[x2]))]
    if bad:
        raise NotEnriched("alpha(x1,x2) exceeds beta(f x1, f x2)", bad)
    return QFunctor(source, target, {x: m[x] for x in source.elements})


def identity_functor(X: QCategory) -> QFunctor:
    return QFunctor(X, X, {x: x for x in X.elements})


def type_functor(X: QCategory, terminal: QCategory | None = None) -> QFunctor:
    """The type map as a functor into the terminal category."""
    T = terminal or terminal_qcategory(X.base)
    return validate_functor(X, T, {x: X.types[x] for x in X.elements})


def is_separated(X: QCategory) -> bool:
    """No two distinct same-type elements dominate each other."""
    base = X.base
    for i, x in enumerate(X.elements):
        for y in X.elements[i + 1:]:
            if X.types[x] != X.types[y]:
                continue
            one = base.identity(X.types[x])
            if base.leq(one, X.alpha(x, y)) and base.leq(one, X.alpha(y, x)):
                return False
    return True


def separation_witnesses(X: QCategory):
    """Pairs of distinct same-type elements with alpha(x,x)=alpha(x,y), alpha(y,y)=alpha(y,x)."""
    out = []
    for i, x in enumerate(X.elements):
        for y in X.elements[i + 1:]:
            if X.types[x] == X.types[y] and X.alpha(x, x) == X.alpha(x, y) \
                    and X.alpha(y, y) == X.alpha(y, x):
                out.append((x, y))
    return out


def _require_involution(base):
    if not base.has_involution:
        raise NoInvolution("symmetry needs an involutive base")


def is_symmetric(X: QCategory) -> bool:
    base = X.base
    _require_involution(base)
    return all(X.alpha(x, y) == base.involute(X.alpha(y, x))
               for x in X.elements for y in X.elements)


def symmetrize(X: QCategory, name=None) -> QCategory:
    """alpha(x,y) ∧ j(alpha(y,x)), meets taken in the hom-lattices."""
    base = X.base
    _require_involution(base)
    alpha = {}
    for x in X.elements:
        for y in X.elements:
            a = X.alpha(x, y)
            alpha[(x, y)] = base.meet(a.dom, a.cod, [a, base.involute(X.alpha(y, x))])
    return validate_qcategory(base, X.carrier, alpha, name or X.name)


def find_isomorphism(X: QCategory, Y: QCategory):
    """A type- and arrow-preserving bijection X -> Y, or None (brute force)."""
    if len(X) != len(Y) or sorted(map(repr, X.types.values())) != sorted(map(repr, Y.types.values())):
        return None
    for perm in permutations(Y.elements):
        m = dict(zip(X.elements, perm))
        if all(X.types[x] == Y.types[m[x]] for x in X.elements) and all(
                X.alpha(x, y) == Y.alpha(m[x], m[y]) for x in X.elements for y in X.elements):
            return m
    return None


# enumeration -------------------------------------------------------------

def _pair_order(n):
    pairs = [(i, j) for i in range(n) for j in range(n)]
    return sorted(pairs, key=lambda ij: (max(ij), min(ij), ij[0] > ij[1]))


def _type_tuples(objects, n):
    idx = range(len(objects))
    for combo in product(idx, repeat=n):
        if list(combo) == sorted(combo):
            yield tuple(objects[i] for i in combo)


def enumerate_qcategories(base: Quantaloid, n_points: int, types=None, symmetric=False,
                          names=None, budget=None):
    """All Q-categories on ``n_points`` elements, one per isomorphism class.

    ``types`` fixes the type tuple; by default every multiset of types is
    tried.  With ``symmetric=True`` only categories with
    ``alpha(y,x) = j(alpha(x,y))`` are produced.  Elements are named
    ``x1 .. xn`` unless ``names`` is given.
    """
    if symmetric:
        _require_involution(base)
    names = list(names or [f"x{i + 1}" for i in range(n_points)])
    type_choices = [tuple(types)] if types is not None else list(_type_tuples(base.objects, n_points))
    out = []
    for tt in type_choices:
        out.extend(_enumerate_for_types(base, names, tt, symmetric, budget))
    return out


def _enumerate_for_types(base, names, tt, symmetric, budget):
    n = len(names)
    order = _pair_order(n)
    slot = {ij: k for k, ij in enumerate(order)}
    size = 1
    for (i, j) in order:
        size *= len(base.hom(tt[j], tt[i]))
    check_budget(size, "Q-category enumeration", budget)
    # transitivity constraints, attached to the slot assigned last
    triples = [[] for _ in order]
    for i, j, k in product(range(n), repeat=3):
        s = (slot[(i, j)], slot[(j, k)], slot[(i, k)])
        triples[max(s)].append(s)
    cands = []
    for (i, j) in order:
        ms = base.morphisms(tt[j], tt[i])
        if i == j:
            one = base.identity(tt[i])
            ms = [m for m in ms if base.leq(one, m)]
        cands.append(ms)
    found = []
    seen = set()
    assign = [None] * len(order)

    def rec(k):
        if k == len(order):
            key = _canonical_key(tt, assign, slot, n)
            if key not in seen:
                seen.add(key)
                found.append(list(assign))
            return
        i, j = order[k]
        if symmetric and i > j:
            options = [base.involute(assign[slot[(j, i)]])]
        elif symmetric and i == j:
            options = [m for m in cands[k] if base.involute(m) == m]
        else:
            options = cands[k]
        for m in options:
            assign[k] = m
            if all(base.leq(base.compose(assign[a], assign[b]), assign[c]) for a, b, c in triples[k]):
                rec(k + 1)
        assign[k] = None

    rec(0)
    cats = []
    types = dict(zip(names, tt))
    for a in found:
        alpha = {(names[i], names[j]): a[slot[(i, j)]] for (i, j) in order}
        cats.append(QCategory(base, names, types, alpha))
    return cats


def _canonical_key(tt, assign, slot, n):
    best = None
    for perm in permutations(range(n)):
        if any(tt[perm[i]] != tt[i] for i in range(n)):
            continue
        key = tuple(repr(assign[slot[(perm[i], perm[j])]].value) for i in range(n) for j in range(n))
        if best is None or key < best:
            best = key
    return best


def closure(base: Quantaloid, elements, types, alpha, name=None) -> QCategory:
    """Smallest Q-category above the given arrows (raise until transitive).

    Missing entries start at bottom; diagonals are raised to the identity.
    """
    alpha = {(x, y): alpha.get((x, y), base.bottom(types[y], types[x]))
             for x in elements for y in elements}
    for x in elements:
        a = alpha[(x, x)]
        alpha[(x, x)] = base.join(a.dom, a.cod, [a, base.identity(types[x])])
    changed = True
    while changed:
        changed = False
        for x in elements:
            for y in elements:
                for z in elements:
                    comp = base.compose(alpha[(x, y)], alpha[(y, z)])
                    cur = alpha[(x, z)]
                    if not base.leq(comp, cur):
                        alpha[(x, z)] = base.join(cur.dom, cur.cod, [cur, comp])
                        changed = True
    return validate_qcategory(base, {x: types[x] for x in elements}, alpha, name)


def full_table(X: QCategory):
    """Rows of ``(x, y, value)`` in element order, for printing."""
    return [(x, y, X.alpha(x, y).value) for x in X.elements for y in X.elements]


def element_label(x) -> str:
    return x if isinstance(x, str) else getattr(x, "label", lambda: repr(x))()

