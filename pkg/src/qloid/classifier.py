"""Weak subobject classifiers among separated cocomplete categories.

For an object r the classifier lives on the right-sided morphisms out of r
(``u∘tau(r,r) <= u``), typed by codomain, with ``rho(u, v) = u↙v``.  The arrow
``true_r`` sends an object q to the top of ``hom(r, q)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ConeFails, InternalInconsistency, NotACone, NotSeparated, NotStable
from .presheaf import (
    apply_P,
    cocontinuity_failures,
    presheaf_category,
    right_representable,
    sup_map,
)
from .qcat import QCategory, QFunctor, terminal_qcategory, validate_functor, validate_qcategory
from .quantaloid import Morphism, Quantaloid, is_p_stable, right_sided_morphisms


@dataclass(frozen=True, eq=False)
class Classifier:
    r: object
    category: QCategory
    sup: dict = field(repr=False)

    @property
    def base(self) -> Quantaloid:
        return self.category.base


def sup_formula(base: Quantaloid, members, g) -> Morphism:
    """⋀_u g(u)↘u, an arrow out of r into the type of g."""
    r = members[0].dom
    return base.meet(r, g.p, [base.rres(g(u), u) for u in members])


def build_classifier(base: Quantaloid, r, budget=None) -> Classifier:
    members = right_sided_morphisms(base, r)
    C = right_representable(base, r, members)
    s = sup_map(C, budget=budget)
    if s is None:
        raise InternalInconsistency("classifier is not cocomplete")
    allowed = set(members)
    for g, u in s.items():
        if sup_formula(base, members, g) != u:
            raise InternalInconsistency(f"sup of {g.label()} disagrees with the meet formula")
        if u not in allowed:
            raise InternalInconsistency(f"sup of {g.label()} is not right-sided")
    return Classifier(r, C, s)


def true_arrow(base: Quantaloid, r, classifier: Classifier | None = None,
               terminal: QCategory | None = None) -> QFunctor:
    """q ↦ tau(q, r)."""
    C = classifier or build_classifier(base, r)
    T = terminal or terminal_qcategory(base)
    phi = validate_functor(T, C.category, {q: base.tau(q, r) for q in T.elements})
    for q in T.elements:
        for u in C.category.elements:
            if C.category.alpha(phi(q), u) != base.tau(q, u.cod):
                raise InternalInconsistency(f"true arrow fails the point condition at {(q, u)}")
    return phi


def point_failures(phi: QFunctor):
    """Pairs (r', x) with alpha(phi(r'), x) != tau(r', |x|)."""
    X = phi.target
    base = X.base
    return [(q, x) for q in phi.source.elements for x in X.elements
            if X.alpha(phi(q), x) != base.tau(q, X.types[x])]


def is_point(phi: QFunctor) -> bool:
    return not point_failures(phi)


@dataclass(frozen=True)
class PointClassification:
    chi: QFunctor
    cones_checked: int
    summary: str


def classify_point(phi: QFunctor, r, test_cones=(), classifier: Classifier | None = None,
                   budget=None) -> PointClassification:
    """chi = alpha(-, phi(r)) and a check of the pullback property on the given cones.

    Each cone is a cocontinuous functor psi: Y -> X with
    alpha(psi y, phi r) = tau(|y|, r); it must equal phi∘|-|.
    """
    X = phi.target
    base = X.base
    if not is_p_stable(base, r):
        raise NotStable(f"the base is not {r}-stable")
    if sup_map(X, budget=budget) is None:
        raise NotSeparated("the target is not cocomplete")
    C = classifier or build_classifier(base, r, budget)
    top = phi(r)
    chi = validate_functor(X, C.category, {x: X.alpha(x, top) for x in X.elements})
    if cocontinuity_failures(chi, budget):
        raise InternalInconsistency("characteristic functor is not cocontinuous")
    for q in phi.source.elements:
        if chi(phi(q)) != base.tau(q, r):
            raise InternalInconsistency(f"square does not commute at {q}")
    for psi in test_cones:
        if psi.target != X:
            raise NotACone("cone does not land in the point's category")
        bad = [y for y in psi.source.elements
               if X.alpha(psi(y), top) != base.tau(psi.source.types[y], r)]
        if bad:
            raise NotACone("cone condition fails", bad)
        if cocontinuity_failures(psi, budget):
            raise NotACone("cone is not cocontinuous")
        bad = [(y, psi(y), phi(psi.source.types[y])) for y in psi.source.elements
               if psi(y) != phi(psi.source.types[y])]
        if bad:
            raise ConeFails("cone does not factor through the type map", bad)
    n = len(test_cones)
    return PointClassification(chi, n, f"verified on {n} cones")


def characteristic_form(phi: QFunctor, r, classifier: Classifier | None = None,
                        check=True, budget=None) -> QFunctor:
    """x ↦ ⋁_y alpha(x, phi y)∘tau(|y|, r)."""
    Y, X = phi.source, phi.target
    base = X.base
    C = classifier or build_classifier(base, r, budget)
    m = {}
    for x in X.elements:
        terms = [base.compose(X.alpha(x, phi(y)), base.tau(Y.types[y], r)) for y in Y.elements]
        m[x] = base.join(r, X.types[x], terms)
    chi = validate_functor(X, C.category, m)
    if check and cocontinuity_failures(chi, budget):
        raise InternalInconsistency("characteristic form is not cocontinuous")
    return chi


# classifier squared ------------------------------------------------------

@dataclass(frozen=True, eq=False)
class ClassifierSquare:
    classifier: Classifier
    category: QCategory
    first: QFunctor
    second: QFunctor


def classifier_squared(C: Classifier) -> ClassifierSquare:
    """Pairs of equal type with (l1↙m1) ∧ (l2↙m2)."""
    base = C.base
    R = C.category
    els = [(a, b) for a in R.elements for b in R.elements if a.cod == b.cod]
    alpha = {}
    for s in els:
        for t in els:
            u, v = base.lres(s[0], t[0]), base.lres(s[1], t[1])
            alpha[(s, t)] = base.meet(u.dom, u.cod, [u, v])
    S = validate_qcategory(base, {s: s[0].cod for s in els}, alpha)
    p1 = validate_functor(S, R, {s: s[0] for s in els})
    p2 = validate_functor(S, R, {s: s[1] for s in els})
    return ClassifierSquare(C, S, p1, p2)


def product_sup_failures(sq: ClassifierSquare, budget=None):
    """Presheaves where the product's sup differs from the componentwise formula."""
    S = sq.category
    PS = presheaf_category(S, budget=budget, validate=False)
    s = sup_map(S, PS, budget)
    if s is None:
        raise InternalInconsistency("classifier square is not cocomplete")
    R = sq.classifier.category
    PR = presheaf_category(R, budget=budget, validate=False)
    l1 = apply_P(sq.first, PS, PR, budget)
    l2 = apply_P(sq.second, PS, PR, budget)
    sr = sq.classifier.sup
    return [g for g in PS.elements if s[g] != (sr[l1(g)], sr[l2(g)])]


def diagonal_true(sq: ClassifierSquare, terminal=None) -> QFunctor:
    """The point q ↦ (tau(q, r), tau(q, r))."""
    base = sq.category.base
    r = sq.classifier.r
    T = terminal or terminal_qcategory(base)
    return validate_functor(T, sq.category, {q: (base.tau(q, r), base.tau(q, r)) for q in T.elements})


def chi_meet(sq: ClassifierSquare, check=False, budget=None) -> QFunctor:
    """Characteristic functor of the diagonal true point."""
    return characteristic_form(diagonal_true(sq), sq.classifier.r, sq.classifier,
                               check=check, budget=budget)


def meet_failures(sq: ClassifierSquare, chi: QFunctor):
    base = sq.category.base
    out = []
    for s in sq.category.elements:
        m = base.meet(s[0].dom, s[0].cod, [s[0], s[1]])
        if chi(s) != m:
            out.append((s, chi(s), m))
    return out


def largest_presheaf_failures(X: QCategory, r, classifier: Classifier | None = None):
    """True_r∘|-| should be the largest contravariant presheaf of type r on X."""
    from .presheaf import enumerate_presheaves

    base = X.base
    top = {x: base.tau(X.types[x], r) for x in X.elements}
    bad = []
    for g in enumerate_presheaves(X, r):
        if any(not base.leq(g(x), top[x]) for x in X.elements):
            bad.append(g)
    tops = [g for g in enumerate_presheaves(X, r) if all(g(x) == top[x] for x in X.elements)]
    if not tops:
        bad.append(("missing", r))
    return bad

