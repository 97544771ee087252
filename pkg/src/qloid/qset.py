"""Quantale-valued preorders and Q-valued sets.

A map ``psi: X x X -> Q`` is a Q-preorder when

* ``psi(x,x)∗(psi(x,x)↘psi(x,y)) = psi(x,y) = (psi(x,y)↙psi(y,y))∗psi(y,y)`` and
* ``psi(x,y)∗(psi(y,y)↘psi(y,z)) <= psi(x,z)``;

a Q-valued set additionally has ``eps(x,y) = eps(y,x)'``.  Such a set is the
same thing as a symmetric category over the diagonal quantaloid, with
``eps(x,x)`` as the type of x.
"""

from __future__ import annotations

from dataclasses import dataclass

from .diagonal import dq_from_quantale
from .distributor import AdjointPair, Distributor, assert_dominance_uniqueness, is_adjoint_pair
from .errors import (
    DivisibilityFails,
    IncompleteTable,
    InternalInconsistency,
    MembershipFails,
    NotSymmetric,
    NotUnital,
    SymmetryFails,
    TransitivityFails,
    UnknownElement,
    WrongBase,
)
from .order_algebra import Quantale, _involution_for
from .presheaf import is_cauchy_complete
from .qcat import QCategory, is_separated, is_symmetric, validate_qcategory
from .quantaloid import Morphism, Quantaloid


@dataclass(frozen=True, eq=False)
class QValuedRelation:
    quantale: Quantale
    carrier: tuple
    psi: dict

    def __call__(self, x, y):
        return self.psi[(x, y)]

    def __eq__(self, other):
        if not isinstance(other, QValuedRelation):
            return NotImplemented
        return self.carrier == other.carrier and self.psi == other.psi

    def __hash__(self):
        return hash((self.carrier, tuple(self.psi[(x, y)] for x in self.carrier for y in self.carrier)))


def _preorder_failures(Q: Quantale, carrier, psi):
    div, trans = [], []
    for x in carrier:
        for y in carrier:
            v, a, b = psi[(x, y)], psi[(x, x)], psi[(y, y)]
            if Q.mul(a, Q.rres(a, v)) != v or Q.mul(Q.lres(v, b), b) != v:
                div.append((x, y))
    for x in carrier:
        for y in carrier:
            for z in carrier:
                lhs = Q.mul(psi[(x, y)], Q.rres(psi[(y, y)], psi[(y, z)]))
                if not Q.leq(lhs, psi[(x, z)]):
                    trans.append((x, y, z))
    return div, trans


def _read_table(Q, carrier, psi):
    carrier = tuple(carrier)
    missing = [(x, y) for x in carrier for y in carrier if (x, y) not in psi]
    if missing:
        raise IncompleteTable("relation entries missing", missing)
    known = set(Q.elements)
    bad = [(x, y, psi[(x, y)]) for x in carrier for y in carrier if psi[(x, y)] not in known]
    if bad:
        raise UnknownElement(f"values outside the quantale: {bad[:3]}")
    return carrier, {(x, y): psi[(x, y)] for x in carrier for y in carrier}


def validate_qpreorder(quantale: Quantale, carrier, psi) -> QValuedRelation:
    Q = quantale
    carrier, psi = _read_table(Q, carrier, psi)
    div, trans = _preorder_failures(Q, carrier, psi)
    if div:
        raise DivisibilityFails("diagonal values do not divide the relation", div)
    if trans:
        raise TransitivityFails("transitivity fails", trans)
    return QValuedRelation(Q, carrier, psi)


def validate_qvalued_set(quantale: Quantale, carrier, eps) -> QValuedRelation:
    Q = _involution_for(quantale)
    S = validate_qpreorder(Q, carrier, eps)
    bad = [(x, y) for x in S.carrier for y in S.carrier
           if S(x, y) != Q.involute(S(y, x))]
    if bad:
        raise SymmetryFails("eps(x,y) differs from eps(y,x)'", bad)
    return S


def strictness_holds(S: QValuedRelation) -> bool:
    """psi(x,y) <= psi(x,x) ∧ psi(y,y) for all x, y."""
    Q = S.quantale
    return all(Q.leq(S(x, y), Q.lattice.meet2(S(x, x), S(y, y)))
               for x in S.carrier for y in S.carrier)


def _dq_for(S: QValuedRelation, dq):
    return dq if dq is not None else dq_from_quantale(S.quantale)


def qset_to_category(S: QValuedRelation, dq: Quantaloid | None = None, name=None) -> QCategory:
    """Type eps(x,x); arrow eps(x,y): eps(y,y) -> eps(x,x)."""
    D = _dq_for(S, dq)
    objs = set(D.objects)
    odd = [x for x in S.carrier if S(x, x) not in objs]
    if odd:
        raise InternalInconsistency(f"diagonal values are not diagonal objects: {odd}")
    bad = [(x, y, S(x, y)) for x in S.carrier for y in S.carrier
           if S(x, y) not in D.hom(S(y, y), S(x, x))]
    if bad:
        raise MembershipFails("eps(x,y) is not an arrow eps(y,y) -> eps(x,x)", bad)
    alpha = {(x, y): Morphism(S(y, y), S(x, x), S(x, y)) for x in S.carrier for y in S.carrier}
    X = validate_qcategory(D, {x: S(x, x) for x in S.carrier}, alpha, name)
    if D.has_involution and not is_symmetric(X):
        raise InternalInconsistency("category of a Q-valued set is not symmetric")
    return X


def _source_quantale(X: QCategory) -> Quantale:
    origin = X.base.origin
    if not origin or origin[0] != "dq":
        raise WrongBase("the base is not a diagonal quantaloid of a quantale")
    return origin[1]


def category_to_qset(X: QCategory) -> QValuedRelation:
    """psi(x, y) = value of alpha(x, y); the input must be symmetric."""
    Q = _source_quantale(X)
    if not is_symmetric(X):
        raise NotSymmetric("the category is not symmetric")
    psi = {k: m.value for k, m in X._alpha.items()}
    try:
        return validate_qvalued_set(Q, X.elements, psi)
    except (DivisibilityFails, TransitivityFails, SymmetryFails) as exc:
        raise InternalInconsistency(f"derived relation is not a Q-valued set: {exc}") from exc


def omega_terminal(dq: Quantaloid) -> QValuedRelation:
    """omega(a, b) = ⋁ hom(b, a) on the objects of the diagonal quantaloid."""
    if isinstance(dq, Quantale):
        dq = dq_from_quantale(dq)
    Q = dq.origin[1] if dq.origin and dq.origin[0] == "dq" else None
    if Q is None:
        raise WrongBase("omega needs a diagonal quantaloid of a quantale")
    objs = dq.objects
    w = {(a, b): dq.tau(a, b).value for a in objs for b in objs}
    for a in objs:
        for b in objs:
            if w[(a, b)] != Q.involute(w[(b, a)]):
                raise InternalInconsistency(f"omega is not symmetric at {(a, b)}")
            wa, wb = w[(a, a)], w[(b, b)]
            if not (w[(a, b)] == w[(a, wb)] == w[(wa, b)] == w[(wa, wb)]):
                raise InternalInconsistency(f"omega is not stable under diagonal values at {(a, b)}")
    return validate_qvalued_set(Q, objs, w)


def terminal_morphism(S: QValuedRelation, dq: Quantaloid | None = None,
                      competitors=()) -> AdjointPair:
    """Phi(a, x) = tau(omega(a,a), eps(x,x)) and Psi(x, a) = tau(eps(x,x), omega(a,a))."""
    D = _dq_for(S, dq)
    X = qset_to_category(S, D)
    W = omega_terminal(D)
    T = qset_to_category(W, D)
    phi = Distributor(X, T, {(a, x): D.tau(W(a, a), S(x, x)) for a in T.elements for x in X.elements})
    psi = Distributor(T, X, {(x, a): D.tau(S(x, x), W(a, a)) for x in X.elements for a in T.elements})
    if not is_adjoint_pair(phi, psi):
        raise InternalInconsistency("terminal distributors are not adjoint")
    pair = AdjointPair(phi, psi)
    for other in competitors:
        assert_dominance_uniqueness(pair, other)
    return pair


@dataclass(frozen=True)
class TerminalSetReport:
    integral: bool
    separated: bool
    cauchy_complete: bool

    @property
    def equivalent(self) -> bool:
        return self.integral == self.separated == self.cauchy_complete


def _qset_separated(S: QValuedRelation) -> bool:
    for i, x in enumerate(S.carrier):
        for y in S.carrier[i + 1:]:
            if S(x, x) == S(x, y) == S(y, x) == S(y, y):
                return False
    return True


def terminal_set_properties(quantale: Quantale, budget=None) -> TerminalSetReport:
    """Integrality, separation and Cauchy completeness of the terminal Q-valued set."""
    if quantale.unit is None:
        raise NotUnital("the quantale has no unit")
    Q = _involution_for(quantale)
    D = dq_from_quantale(Q)
    W = omega_terminal(D)
    X = qset_to_category(W, D)
    integral = Q.unit == Q.top
    separated = is_separated(X)
    if separated != _qset_separated(W):
        raise InternalInconsistency("the two separation readings disagree")
    complete = is_cauchy_complete(X, budget)
    rep = TerminalSetReport(integral, separated, complete)
    if not rep.equivalent:
        raise InternalInconsistency(f"the three properties disagree: {rep}")
    return rep
