"""Finite complete lattices and finite quantales.

Elements are opaque string names.  Internally every structure keeps integer
tables (numpy arrays) indexed by the position of an element in
``lattice.elements``; the public API speaks names.

Residual notation follows the usual arrow convention:

* ``a↘b`` (``Quantale.rres(a, b)``) is the largest ``h`` with ``a*h <= b``;
* ``b↙a`` (``Quantale.lres(b, a)``) is the largest ``h`` with ``h*a <= b``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

from .errors import (
    MAX_WITNESSES,
    BadInvolution,
    BadUnit,
    CycleError,
    IncompleteTable,
    InternalInconsistency,
    NoInvolution,
    NotALattice,
    NotAssociative,
    NotJoinPreserving,
    UnknownElement,
    ValidationError,
)


class CompleteLattice:
    """A finite lattice; build it with :func:`validate_complete_lattice`."""

    def __init__(self, elements, leq, join, meet):
        self.elements = tuple(elements)
        self.index = {e: i for i, e in enumerate(self.elements)}
        self._leq = leq
        self._join = join
        self._meet = meet
        for arr in (leq, join, meet):
            arr.setflags(write=False)
        n = len(self.elements)
        self._bot = next(i for i in range(n) if leq[i].all())
        self._top = next(i for i in range(n) if leq[:, i].all())

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, a):
        return a in self.index

    def __repr__(self):
        return f"CompleteLattice({list(self.elements)})"

    def __eq__(self, other):
        if not isinstance(other, CompleteLattice):
            return NotImplemented
        return self.elements == other.elements and np.array_equal(self._leq, other._leq)

    def __hash__(self):
        return hash((self.elements, self._leq.tobytes()))

    def idx(self, a) -> int:
        try:
            return self.index[a]
        except (KeyError, TypeError):
            raise UnknownElement(f"{a!r} is not an element of {list(self.elements)}") from None

    @property
    def bottom(self):
        return self.elements[self._bot]

    @property
    def top(self):
        return self.elements[self._top]

    def leq(self, a, b) -> bool:
        return bool(self._leq[self.idx(a), self.idx(b)])

    def join2(self, a, b):
        return self.elements[self._join[self.idx(a), self.idx(b)]]

    def meet2(self, a, b):
        return self.elements[self._meet[self.idx(a), self.idx(b)]]

    def join(self, subset: Iterable = ()):
        return self.elements[self._join_idx(self.idx(a) for a in subset)]

    def meet(self, subset: Iterable = ()):
        return self.elements[self._meet_idx(self.idx(a) for a in subset)]

    def _join_idx(self, idxs):
        acc = self._bot
        for i in idxs:
            acc = self._join[acc, i]
        return int(acc)

    def _meet_idx(self, idxs):
        acc = self._top
        for i in idxs:
            acc = self._meet[acc, i]
        return int(acc)

    def leq_pairs(self):
        """All strict relations a < b, in element order."""
        n = len(self)
        return [(self.elements[i], self.elements[j])
                for i in range(n) for j in range(n) if i != j and self._leq[i, j]]

    def covers(self):
        """Hasse diagram edges (a, b) with a covered by b."""
        out = []
        n = len(self)
        for i, j in ((i, j) for i in range(n) for j in range(n)):
            if i == j or not self._leq[i, j]:
                continue
            between = self._leq[i] & self._leq[:, j]
            if between.sum() == 2:
                out.append((self.elements[i], self.elements[j]))
        return out

    def restrict(self, subset) -> "CompleteLattice":
        """The induced suborder on ``subset``, validated as a complete lattice.

        Meets of the result are meets in the suborder, which can differ from
        the ambient meets.
        """
        keep = [a for a in self.elements if a in set(subset)]
        idx = [self.idx(a) for a in keep]
        return _lattice_from_matrix(keep, self._leq[np.ix_(idx, idx)].copy())


def _closure(leq):
    n = leq.shape[0]
    leq = leq | np.eye(n, dtype=bool)
    for k in range(n):
        leq = leq | (leq[:, k:k + 1] & leq[k:k + 1, :])
    return leq


def _lattice_from_matrix(elements, leq):
    elements = list(elements)
    n = len(elements)
    leq = _closure(leq)
    cyc = [(elements[i], elements[j]) for i in range(n) for j in range(i + 1, n)
           if leq[i, j] and leq[j, i]]
    if cyc:
        raise CycleError("order relation is not antisymmetric", cyc[:MAX_WITNESSES])
    if n == 0:
        raise NotALattice("a complete lattice needs at least the empty join", [()])
    join = np.zeros((n, n), dtype=np.int64)
    meet = np.zeros((n, n), dtype=np.int64)
    bad = []
    for i in range(n):
        for j in range(i, n):
            ub = leq[i] & leq[j]
            least = [c for c in np.flatnonzero(ub) if leq[c][ub].all()]
            lb = leq[:, i] & leq[:, j]
            greatest = [c for c in np.flatnonzero(lb) if leq[:, c][lb].all()]
            if len(least) != 1:
                bad.append(("join", elements[i], elements[j]))
            else:
                join[i, j] = join[j, i] = least[0]
            if len(greatest) != 1:
                bad.append(("meet", elements[i], elements[j]))
            else:
                meet[i, j] = meet[j, i] = greatest[0]
    if not any(leq[i].all() for i in range(n)):
        bad.append(("join", ))
    if not any(leq[:, i].all() for i in range(n)):
        bad.append(("meet", ))
    if bad:
        raise NotALattice("missing joins or meets", bad[:MAX_WITNESSES])
    return CompleteLattice(elements, leq, join, meet)


def validate_complete_lattice(elements, leq_pairs) -> CompleteLattice:
    """Build a lattice from generating pairs ``(a, b)`` meaning ``a <= b``.

    The order is the reflexive-transitive closure of the pairs.
    """
    elements = list(elements)
    if len(set(elements)) != len(elements):
        dups = sorted({e for e in elements if elements.count(e) > 1})
        raise ValidationError("duplicate element names", dups)
    index = {e: i for i, e in enumerate(elements)}
    leq = np.zeros((len(elements), len(elements)), dtype=bool)
    for a, b in leq_pairs:
        for e in (a, b):
            if e not in index:
                raise UnknownElement(f"{e!r} is not an element of {elements}")
        leq[index[a], index[b]] = True
    return _lattice_from_matrix(elements, leq)


def chain(elements) -> CompleteLattice:
    """Linear order in the given sequence, smallest first."""
    elements = list(elements)
    return validate_complete_lattice(elements, zip(elements, elements[1:]))


def lat_join(lattice: CompleteLattice, subset=()):
    return lattice.join(subset)


def lat_meet(lattice: CompleteLattice, subset=()):
    return lattice.meet(subset)


class Quantale:
    """A finite quantale with optional unit and involution.

    Build it with :func:`validate_quantale`.  ``mul(a, b)`` is ``a*b``.
    """

    def __init__(self, lattice, mult, unit=None, involution=None, name=None):
        self.lattice = lattice
        self.name = name
        self._mult = mult
        self._mult.setflags(write=False)
        self._unit = None if unit is None else lattice.idx(unit)
        self._inv = involution
        if involution is not None:
            involution.setflags(write=False)

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"<Quantale{label} on {list(self.elements)}>"

    def __eq__(self, other):
        if not isinstance(other, Quantale):
            return NotImplemented
        return (self.lattice == other.lattice
                and np.array_equal(self._mult, other._mult)
                and self._unit == other._unit
                and _same_optional(self._inv, other._inv))

    def __hash__(self):
        return hash((self.lattice, self._mult.tobytes(), self._unit))

    @property
    def elements(self):
        return self.lattice.elements

    @property
    def bottom(self):
        return self.lattice.bottom

    @property
    def top(self):
        return self.lattice.top

    @property
    def unit(self):
        return None if self._unit is None else self.elements[self._unit]

    @property
    def has_involution(self):
        return self._inv is not None

    def leq(self, a, b):
        return self.lattice.leq(a, b)

    def mul(self, *factors):
        """Product of the factors, left to right; the empty product is not defined."""
        if not factors:
            raise ValueError("empty product")
        acc = self.lattice.idx(factors[0])
        for f in factors[1:]:
            acc = self._mult[acc, self.lattice.idx(f)]
        return self.elements[acc]

    def involute(self, a):
        if self._inv is None:
            raise NoInvolution(f"quantale {self.name or ''} has no involution")
        return self.elements[self._inv[self.lattice.idx(a)]]

    def rres(self, a, b):
        """a↘b: the largest h with a*h <= b."""
        i, j = self.lattice.idx(a), self.lattice.idx(b)
        ok = self.lattice._leq[self._mult[i, :], j]
        return self.elements[self.lattice._join_idx(np.flatnonzero(ok))]

    def lres(self, b, a):
        """b↙a: the largest h with h*a <= b."""
        i, j = self.lattice.idx(a), self.lattice.idx(b)
        ok = self.lattice._leq[self._mult[:, i], j]
        return self.elements[self.lattice._join_idx(np.flatnonzero(ok))]

    def table(self):
        """Full multiplication table as a dict ``{(a, b): a*b}``."""
        e = self.elements
        return {(e[i], e[j]): e[self._mult[i, j]]
                for i in range(len(e)) for j in range(len(e))}

    def mult_entries(self):
        """The non-bottom part of the table as ``(a, b, a*b)`` triples."""
        bot = self.bottom
        return [(a, b, c) for (a, b), c in self.table().items() if a != bot and b != bot]

    def involution_entries(self):
        """Non-fixed points of the involution, each pair listed once."""
        if self._inv is None:
            return []
        out = []
        for i, k in enumerate(self._inv):
            if i < k:
                out.append((self.elements[i], self.elements[k]))
        return out

    def is_commutative(self):
        return bool(np.array_equal(self._mult, self._mult.T))

    def with_identity_involution(self) -> "Quantale":
        """Same quantale with the identity as involution (commutative only)."""
        if not self.is_commutative():
            raise NoInvolution("the identity is an involution only on commutative quantales")
        inv = np.arange(len(self.elements))
        return Quantale(self.lattice, self._mult.copy(), self.unit, inv, self.name)

    def involutive(self) -> "Quantale":
        """This quantale if it has an involution, else the identity-involution copy."""
        return self if self.has_involution else self.with_identity_involution()


def _same_optional(a, b):
    if a is None or b is None:
        return a is None and b is None
    return np.array_equal(a, b)


def _entries(entries):
    if isinstance(entries, Mapping):
        return [(a, b, c) for (a, b), c in entries.items()]
    return [tuple(t) for t in entries]


def validate_quantale(lattice: CompleteLattice, mult_entries, unit=None,
                      involution_entries=None, name=None) -> Quantale:
    """Check and assemble a quantale.

    ``mult_entries`` maps ``(a, b)`` to ``a*b`` (a dict or ``(a, b, c)``
    triples) and must cover every pair of non-bottom elements; products with
    bottom are filled in as bottom.  ``involution_entries`` lists pairs
    ``(a, a')``; unlisted elements are fixed.
    """
    L = lattice
    n = len(L)
    bot = L._bot
    mult = np.full((n, n), bot, dtype=np.int64)
    seen = np.zeros((n, n), dtype=bool)
    seen[bot, :] = True
    seen[:, bot] = True
    bad_bottom, conflicts = [], []
    for a, b, c in _entries(mult_entries):
        i, j, k = L.idx(a), L.idx(b), L.idx(c)
        if i == bot or j == bot:
            if k != bot:
                bad_bottom.append((a, b, c))
            continue
        if seen[i, j] and mult[i, j] != k:
            conflicts.append((a, b, L.elements[mult[i, j]], c))
        mult[i, j] = k
        seen[i, j] = True
    if bad_bottom:
        raise NotJoinPreserving("products with bottom must be bottom", bad_bottom)
    if conflicts:
        raise ValidationError("conflicting multiplication entries", conflicts)
    if not seen.all():
        missing = [(L.elements[i], L.elements[j]) for i, j in zip(*np.nonzero(~seen))]
        raise IncompleteTable("multiplication table is missing entries", missing[:MAX_WITNESSES])

    inv = None
    if involution_entries is not None:
        inv = np.arange(n)
        pairs = involution_entries.items() if isinstance(involution_entries, Mapping) \
            else involution_entries
        clash = []
        fixed = set()
        for a, b in pairs:
            i, k = L.idx(a), L.idx(b)
            for s, t in ((i, k), (k, i)):
                if s in fixed and inv[s] != t:
                    clash.append((L.elements[s], L.elements[inv[s]], L.elements[t]))
                inv[s] = t
                fixed.add(s)
        if clash:
            raise BadInvolution("involution entries conflict", clash)
    unit_idx = None if unit is None else L.idx(unit)
    check_quantale_tables(L, mult, unit_idx, inv)
    return Quantale(L, mult, unit, inv, name)


def check_quantale_tables(L, mult, unit_idx=None, inv=None):
    """Raise on the first violated quantale law; witnesses are name tuples."""
    n = len(L)
    e = L.elements
    ar = np.arange(n)
    # (a*b)*c against a*(b*c)
    left = mult[mult[:, :, None], ar[None, None, :]]
    right = mult[ar[:, None, None], mult[None, :, :]]
    bad = np.argwhere(left != right)
    if len(bad):
        raise NotAssociative("multiplication is not associative",
                             [(e[a], e[b], e[c]) for a, b, c in bad[:MAX_WITNESSES]])
    J = L._join
    lhs = mult[:, J]                                   # a*(x∨y)
    rhs = J[mult[:, :, None], mult[:, None, :]]        # a*x ∨ a*y
    bad = np.argwhere(lhs != rhs)
    if len(bad):
        raise NotJoinPreserving("a*(x∨y) differs from a*x ∨ a*y",
                                [(e[a], e[x], e[y]) for a, x, y in bad[:MAX_WITNESSES]])
    lhs = mult[J]                                      # (x∨y)*a
    rhs = J[mult[:, None, :], mult[None, :, :]]        # x*a ∨ y*a
    bad = np.argwhere(lhs != rhs)
    if len(bad):
        raise NotJoinPreserving("(x∨y)*a differs from x*a ∨ y*a",
                                [(e[x], e[y], e[a]) for x, y, a in bad[:MAX_WITNESSES]])
    if unit_idx is not None:
        bad = [e[a] for a in range(n)
               if mult[unit_idx, a] != a or mult[a, unit_idx] != a]
        if bad:
            raise BadUnit(f"{e[unit_idx]!r} is not a two-sided unit", bad[:MAX_WITNESSES])
    if inv is not None:
        bad = [(e[a], e[inv[a]]) for a in range(n) if inv[inv[a]] != a]
        if bad:
            raise BadInvolution("involution is not of period two", bad)
        leq = L._leq
        bad = [(e[a], e[b]) for a in range(n) for b in range(n)
               if leq[a, b] and not leq[inv[a], inv[b]]]
        if bad:
            raise BadInvolution("involution is not order-preserving", bad[:MAX_WITNESSES])
        bad = [(e[a], e[b]) for a in range(n) for b in range(n)
               if inv[mult[a, b]] != mult[inv[b], inv[a]]]
        if bad:
            raise BadInvolution("(a*b)' differs from b'*a'", bad[:MAX_WITNESSES])
        bad = [(e[a], e[b]) for a in range(n) for b in range(n)
               if inv[J[a, b]] != J[inv[a], inv[b]]]
        if bad:
            raise BadInvolution("involution does not preserve joins", bad[:MAX_WITNESSES])


def q_residual(quantale: Quantale, a, b, side: str):
    """``side='right'`` gives a↘b, ``side='left'`` gives b↙a.

    The Galois law is re-checked against every element before returning.
    """
    Q = quantale
    if side == "right":
        h_star = Q.rres(a, b)
        law = lambda h: Q.leq(Q.mul(a, h), b)  # noqa: E731
    elif side == "left":
        h_star = Q.lres(b, a)
        law = lambda h: Q.leq(Q.mul(h, a), b)  # noqa: E731
    else:
        raise ValueError("side must be 'left' or 'right'")
    for h in Q.elements:
        if law(h) != Q.leq(h, h_star):
            raise InternalInconsistency(f"Galois law fails at h={h!r} for {side} residual")
    return h_star


@dataclass(frozen=True)
class QuantaleProperties:
    unital: bool
    unit: str | None
    commutative: bool
    integral: bool
    idempotent: bool
    divisible: bool
    # a = c*b instead of a = b*c; only differs from ``divisible`` when
    # the quantale is not commutative
    divisible_other_side: bool
    product_below_squares: bool
    involutive: bool


def quantale_properties(quantale: Quantale) -> QuantaleProperties:
    Q = quantale
    M = Q._mult
    leq = Q.lattice._leq
    n = len(Q.elements)
    J = Q.lattice._join
    commutative = Q.is_commutative()
    # divisible: for every a <= b there is c with a = b*c
    divisible = all(a in M[b, :] for a in range(n) for b in range(n) if leq[a, b])
    divisible_other = all(a in M[:, b] for a in range(n) for b in range(n) if leq[a, b])
    squares = np.diag(M)
    below_squares = all(leq[M[a, b], J[squares[a], squares[b]]]
                        for a in range(n) for b in range(n))
    return QuantaleProperties(
        unital=Q.unit is not None,
        unit=Q.unit,
        commutative=commutative,
        integral=Q.unit is not None and Q.unit == Q.top,
        idempotent=bool(np.array_equal(squares, np.arange(n))),
        divisible=divisible,
        divisible_other_side=divisible_other,
        product_below_squares=below_squares,
        involutive=Q.has_involution,
    )


def _involution_for(Q: Quantale) -> Quantale:
    if Q.has_involution:
        return Q
    if Q.is_commutative():
        return Q.with_identity_involution()
    raise NoInvolution("non-commutative quantale given without an involution")


def is_self_divisible(quantale: Quantale, a) -> bool:
    """a = (a↙a)*a = a*(a↘a)."""
    Q = quantale
    return Q.mul(Q.lres(a, a), a) == a and Q.mul(a, Q.rres(a, a)) == a


def dq_object_candidates(quantale: Quantale):
    """Hermitian self-divisible elements, in element order.

    A commutative quantale without an involution is read with the identity.
    """
    Q = _involution_for(quantale)
    return [a for a in Q.elements if Q.involute(a) == a and is_self_divisible(Q, a)]


def quantale_from_function(lattice, op, unit=None, involution=None, name=None) -> Quantale:
    """Validate the quantale whose product is ``op(a, b)`` on element names."""
    entries = [(a, b, op(a, b)) for a in lattice.elements for b in lattice.elements
               if a != lattice.bottom and b != lattice.bottom]
    return validate_quantale(lattice, entries, unit, involution, name)


def frame(lattice: CompleteLattice, name=None) -> Quantale:
    """The quantale with meet as product (a frame when distributive)."""
    return quantale_from_function(lattice, lattice.meet2, unit=lattice.top,
                                  involution=[], name=name)
