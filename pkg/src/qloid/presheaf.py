"""Presheaves, presheaf categories, presingletons and sup maps.

A contravariant presheaf ``(p, g)`` on X has ``g(x)`` in ``hom(p, |x|)`` with
``alpha(x1, x2)∘g(x2) <= g(x1)``; a covariant one ``(p, f)`` has ``f(x)`` in
``hom(|x|, p)`` with ``f(x1)∘alpha(x1, x2) <= f(x2)``.  A presingleton is a
pair ``g ⊣ f`` of a common type; ``f`` is then determined by ``g``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .budget import check_budget
from .distributor import Distributor, is_iso, right_adjoint_of
from .errors import InternalInconsistency, NotSeparated
from .qcat import QCategory, QFunctor, element_label, is_separated, validate_functor, validate_qcategory
from .quantaloid import Morphism, Quantaloid

COVARIANT = "covariant"
CONTRAVARIANT = "contravariant"


@dataclass(frozen=True)
class Presheaf:
    variance: str
    p: object
    items: tuple

    def __call__(self, x) -> Morphism:
        for y, m in self.items:
            if y == x:
                return m
        raise KeyError(x)

    def as_dict(self):
        return dict(self.items)

    def values(self):
        return tuple(m.value for _, m in self.items)

    def label(self) -> str:
        body = ",".join(f"{element_label(x)}={m.value}" for x, m in self.items)
        return f"{self.p}[{body}]"

    def __repr__(self):
        return f"Presheaf({self.variance[:3]} {self.label()})"


@dataclass(frozen=True)
class Presingleton:
    f: Presheaf
    p: object
    g: Presheaf

    def label(self) -> str:
        fs = ",".join(str(m.value) for _, m in self.f.items)
        gs = ",".join(str(m.value) for _, m in self.g.items)
        return f"({fs}|{self.p}|{gs})"

    def __repr__(self):
        return f"Presingleton{self.label()}"


def make_presheaf(X: QCategory, p, values, variance=CONTRAVARIANT) -> Presheaf:
    """Wrap ``values[x]`` (Morphisms or value names) in element order; no axiom check."""
    items = []
    for x in X.elements:
        v = values[x]
        if not isinstance(v, Morphism):
            tx = X.types[x]
            v = Morphism(p, tx, v) if variance == CONTRAVARIANT else Morphism(tx, p, v)
        items.append((x, v))
    return Presheaf(variance, p, tuple(items))


def presheaf_failures(X: QCategory, ph: Presheaf):
    base = X.base
    g = ph.as_dict()
    bad = []
    for x in X.elements:
        want = (ph.p, X.types[x]) if ph.variance == CONTRAVARIANT else (X.types[x], ph.p)
        if (g[x].dom, g[x].cod) != want:
            bad.append(("type", x))
    if bad:
        return bad
    for x1 in X.elements:
        for x2 in X.elements:
            a = X.alpha(x1, x2)
            if ph.variance == CONTRAVARIANT:
                ok = base.leq(base.compose(a, g[x2]), g[x1])
            else:
                ok = base.leq(base.compose(g[x1], a), g[x2])
            if not ok:
                bad.append((x1, x2))
    return bad


def _hom_for(X, p, x, variance):
    t = X.types[x]
    return (p, t) if variance == CONTRAVARIANT else (t, p)


def enumerate_presheaves(X: QCategory, p, variance=CONTRAVARIANT, budget=None):
    """All presheaves of type p, in lexicographic order of element and hom order."""
    base = X.base
    els = X.elements
    n = len(els)
    cands = [base.morphisms(*_hom_for(X, p, x, variance)) for x in els]
    size = 1
    for c in cands:
        size *= len(c)
    check_budget(size, f"{variance} presheaves of type {p}", budget)
    alpha = [[X.alpha(a, b) for b in els] for a in els]
    out = []
    cur = [None] * n

    def ok(k):
        m = cur[k]
        for i in range(k + 1):
            if variance == CONTRAVARIANT:
                if not base.leq(base.compose(alpha[i][k], m), cur[i]):
                    return False
                if not base.leq(base.compose(alpha[k][i], cur[i]), m):
                    return False
            else:
                if not base.leq(base.compose(cur[i], alpha[i][k]), m):
                    return False
                if not base.leq(base.compose(m, alpha[k][i]), cur[i]):
                    return False
        return True

    def rec(k):
        if k == n:
            out.append(Presheaf(variance, p, tuple(zip(els, cur))))
            return
        for m in cands[k]:
            cur[k] = m
            if ok(k):
                rec(k + 1)
        cur[k] = None

    rec(0)
    return out


def presheaf_hom(base: Quantaloid, X: QCategory, a: Presheaf, b: Presheaf) -> Morphism:
    """pi(g1, g2) = ⋀_x g1(x)↘g2(x), or upsilon(f1, f2) = ⋀_x f1(x)↙f2(x)."""
    if a.variance == CONTRAVARIANT:
        terms = [base.rres(m1, m2) for (_, m1), (_, m2) in zip(a.items, b.items)]
    else:
        terms = [base.lres(m1, m2) for (_, m1), (_, m2) in zip(a.items, b.items)]
    return base.meet(b.p, a.p, terms)


def presheaf_category(X: QCategory, variance=CONTRAVARIANT, budget=None, validate=True,
                      name=None) -> QCategory:
    """All presheaves of every type, typed by their type, with pi (or upsilon)."""
    base = X.base
    els = []
    for p in base.objects:
        els.extend(enumerate_presheaves(X, p, variance, budget))
    types = {e: e.p for e in els}
    alpha = {(a, b): presheaf_hom(base, X, a, b) for a in els for b in els}
    if validate:
        return validate_qcategory(base, types, alpha, name)
    return QCategory(base, els, types, alpha, name)


def yoneda_image(X: QCategory, x) -> Presheaf:
    return Presheaf(CONTRAVARIANT, X.types[x], tuple((z, X.alpha(z, x)) for z in X.elements))


def yoneda(X: QCategory, PX: QCategory | None = None) -> QFunctor:
    """x ↦ (|x|, alpha(-, x))."""
    PX = PX or presheaf_category(X)
    return validate_functor(X, PX, {x: yoneda_image(X, x) for x in X.elements})


# presingletons -----------------------------------------------------------

def right_part(X: QCategory, p, g) -> Presheaf:
    """f(y) = ⋀_x g(x)↘alpha(x, y), the only candidate right adjoint of g."""
    base = X.base
    gd = g.as_dict() if isinstance(g, Presheaf) else g
    items = []
    for y in X.elements:
        terms = [base.rres(gd[x], X.alpha(x, y)) for x in X.elements]
        items.append((y, base.meet(X.types[y], p, terms)))
    return Presheaf(COVARIANT, p, tuple(items))


def presingleton_from_contravariant(X: QCategory, p, g):
    """The presingleton with left part g, or None when g is not a left adjoint."""
    base = X.base
    gd = g.as_dict() if isinstance(g, Presheaf) else dict(g)
    gp = g if isinstance(g, Presheaf) else Presheaf(
        CONTRAVARIANT, p, tuple((x, gd[x]) for x in X.elements))
    f = right_part(X, p, gp)
    fd = f.as_dict()
    loop = base.join(p, p, [base.compose(fd[x], gd[x]) for x in X.elements])
    if not base.leq(base.identity(p), loop):
        return None
    for x1 in X.elements:
        for x2 in X.elements:
            if not base.leq(base.compose(gd[x1], fd[x2]), X.alpha(x1, x2)):
                raise InternalInconsistency(f"right part violates the counit at {(x1, x2)}")
    if presheaf_failures(X, f):
        raise InternalInconsistency("right part is not a covariant presheaf")
    return Presingleton(f, p, gp)


def enumerate_presingletons(X: QCategory, budget=None):
    """All presingletons, by type and then by left part in enumeration order."""
    out = []
    for p in X.base.objects:
        for g in enumerate_presheaves(X, p, CONTRAVARIANT, budget):
            mu = presingleton_from_contravariant(X, p, g)
            if mu is not None:
                out.append(mu)
    return out


def tilde(X: QCategory, x) -> Presingleton:
    """The presingleton (alpha(x, -), |x|, alpha(-, x)) represented by x."""
    f = Presheaf(COVARIANT, X.types[x], tuple((y, X.alpha(x, y)) for y in X.elements))
    return Presingleton(f, X.types[x], yoneda_image(X, x))


def presingleton_hom(base, X, m1: Presingleton, m2: Presingleton) -> Morphism:
    """⋁_x f1(x)∘g2(x)."""
    terms = [base.compose(a, b) for (_, a), (_, b) in zip(m1.f.items, m2.g.items)]
    return base.join(m2.p, m1.p, terms)


def presingleton_space(X: QCategory, budget=None, check_iso=True):
    """(X^, alpha^) and the comparison distributor Xi(mu, x) = f(x)."""
    base = X.base
    mus = enumerate_presingletons(X, budget)
    types = {m: m.p for m in mus}
    alpha = {(a, b): presingleton_hom(base, X, a, b) for a in mus for b in mus}
    Xhat = validate_qcategory(base, types, alpha)
    xi = Distributor(X, Xhat, {(m, x): m.f(x) for m in mus for x in X.elements})
    if check_iso and not is_iso(xi):
        raise InternalInconsistency("comparison distributor into the presingleton space is not iso")
    return Xhat, xi


def cauchy_failures(X: QCategory, budget=None):
    """Presingletons represented by no element, or by several."""
    reps = {}
    for x in X.elements:
        reps.setdefault(tilde(X, x), []).append(x)
    bad = []
    for mu in enumerate_presingletons(X, budget):
        xs = reps.get(mu, [])
        if len(xs) != 1:
            bad.append((mu, tuple(xs)))
    return bad


def is_cauchy_complete(X: QCategory, budget=None) -> bool:
    return not cauchy_failures(X, budget)


# cocompleteness ----------------------------------------------------------

def _sup_search(X: QCategory, PX: QCategory | None, budget):
    base = X.base
    PX = PX or presheaf_category(X, budget=budget, validate=False)
    by_type = {}
    for x in X.elements:
        by_type.setdefault(X.types[x], []).append(x)
    found, failures = {}, []
    for g in PX.elements:
        want = right_part(X, g.p, g)
        hit = [x for x in by_type.get(g.p, [])
               if all(X.alpha(x, y) == want(y) for y in X.elements)]
        if hit:
            found[g] = hit[0]
        else:
            failures.append(g)
    return PX, found, failures


def sup_failures(X: QCategory, PX=None, budget=None):
    """Contravariant presheaves without a sup in X."""
    return _sup_search(X, PX, budget)[2]


def is_cocomplete(X: QCategory, PX=None, budget=None) -> bool:
    """Every contravariant presheaf has an element x with alpha(x, -) = pi(g, eta(-))."""
    return not sup_failures(X, PX, budget)


def sup_map(X: QCategory, PX=None, budget=None, check=True):
    """``{g: sup g}`` for a separated X, or None when some presheaf has no sup."""
    if not is_separated(X):
        raise NotSeparated("sup maps are only defined here for separated categories")
    PX, found, failures = _sup_search(X, PX, budget)
    if failures:
        return None
    if check:
        validate_functor(PX, X, found)
        eta = {x: yoneda_image(X, x) for x in X.elements}
        for x in X.elements:
            if found[eta[x]] != x:
                raise InternalInconsistency(f"sup∘eta moves {x!r}")
    return found


def apply_P(phi: QFunctor, PX=None, PY=None, budget=None) -> QFunctor:
    """(P phi)(p, g)(y) = ⋁_x beta(y, phi x)∘g(x)."""
    X, Y = phi.source, phi.target
    base = X.base
    PX = PX or presheaf_category(X, budget=budget, validate=False)
    PY = PY or presheaf_category(Y, budget=budget, validate=False)
    index = set(PY.elements)
    m = {}
    for g in PX.elements:
        gd = g.as_dict()
        items = tuple((y, base.join(g.p, Y.types[y],
                                    [base.compose(Y.alpha(y, phi(x)), gd[x]) for x in X.elements]))
                      for y in Y.elements)
        image = Presheaf(CONTRAVARIANT, g.p, items)
        if image not in index:
            raise InternalInconsistency("image is not a presheaf on the target")
        m[g] = image
    return QFunctor(PX, PY, m)


def mu(X: QCategory, PX=None, PPX=None, budget=None) -> QFunctor:
    """(mu(p, G))(x) = ⋁_g g(x)∘G(g), flattening presheaves of presheaves."""
    base = X.base
    PX = PX or presheaf_category(X, budget=budget, validate=False)
    PPX = PPX or presheaf_category(PX, budget=budget, validate=False)
    index = set(PX.elements)
    m = {}
    for G in PPX.elements:
        Gd = G.as_dict()
        items = tuple((x, base.join(G.p, X.types[x],
                                    [base.compose(g(x), Gd[g]) for g in PX.elements]))
                      for x in X.elements)
        image = Presheaf(CONTRAVARIANT, G.p, items)
        if image not in index:
            raise InternalInconsistency("flattened presheaf is not a presheaf")
        m[G] = image
    return QFunctor(PPX, PX, m)


def algebra_square_failures(X: QCategory, budget=None):
    """Presheaves G on P(X) with sup(P(sup)(G)) != sup(mu(G))."""
    PX = presheaf_category(X, budget=budget, validate=False)
    s = sup_map(X, PX, budget)
    if s is None:
        raise NotSeparated("the category is not cocomplete")
    PPX = presheaf_category(PX, budget=budget, validate=False)
    sup_f = QFunctor(PX, X, s)
    lifted = apply_P(sup_f, PPX, PX, budget)
    flat = mu(X, PX, PPX, budget)
    return [G for G in PPX.elements if s[lifted(G)] != s[flat(G)]]


def cocontinuity_failures(phi: QFunctor, budget=None):
    X, Y = phi.source, phi.target
    PX = presheaf_category(X, budget=budget, validate=False)
    PY = presheaf_category(Y, budget=budget, validate=False)
    sx, sy = sup_map(X, PX, budget), sup_map(Y, PY, budget)
    if sx is None or sy is None:
        raise NotSeparated("cocontinuity needs separated cocomplete categories")
    lifted = apply_P(phi, PX, PY, budget)
    return [g for g in PX.elements if sy[lifted(g)] != phi(sx[g])]


def is_cocontinuous(phi: QFunctor, budget=None) -> bool:
    """sup_Y ∘ P(phi) = phi ∘ sup_X."""
    return not cocontinuity_failures(phi, budget)


# representable categories --------------------------------------------------

def right_representable(base: Quantaloid, r, members=None, name=None) -> QCategory:
    """Morphisms with domain r, typed by codomain, with rho(u, v) = u↙v."""
    els = members if members is not None else [
        u for q in base.objects for u in base.morphisms(r, q)]
    alpha = {(u, v): base.lres(u, v) for u in els for v in els}
    return validate_qcategory(base, {u: u.cod for u in els}, alpha, name)


def left_representable(base: Quantaloid, s, name=None) -> QCategory:
    """Morphisms with codomain s, typed by domain, with kappa(u, v) = u↘v."""
    els = [u for q in base.objects for u in base.morphisms(q, s)]
    alpha = {(u, v): base.rres(u, v) for u in els for v in els}
    return validate_qcategory(base, {u: u.dom for u in els}, alpha, name)


# completion on distributors ----------------------------------------------

def completion_functor(phi: Distributor, Xhat=None, Yhat=None, budget=None) -> QFunctor:
    """(sigma, p, tau) ↦ (⋁_x sigma(x)∘psi(x, -), p, ⋁_x phi(-, x)∘tau(x))."""
    X, Y = phi.source, phi.target
    base = X.base
    psi = right_adjoint_of(phi)
    if Xhat is None:
        Xhat, _ = presingleton_space(X, budget, check_iso=False)
    if Yhat is None:
        Yhat, _ = presingleton_space(Y, budget, check_iso=False)
    index = set(Yhat.elements)
    m = {}
    for s in Xhat.elements:
        sd, td = s.f.as_dict(), s.g.as_dict()
        f = Presheaf(COVARIANT, s.p, tuple(
            (y, base.join(Y.types[y], s.p, [base.compose(sd[x], psi.at(x, y)) for x in X.elements]))
            for y in Y.elements))
        g = Presheaf(CONTRAVARIANT, s.p, tuple(
            (y, base.join(s.p, Y.types[y], [base.compose(phi.at(y, x), td[x]) for x in X.elements]))
            for y in Y.elements))
        image = Presingleton(f, s.p, g)
        if image not in index:
            raise InternalInconsistency(f"image of {s.label()} is not a presingleton")
        m[s] = image
    return validate_functor(Xhat, Yhat, m)
