"""Distributors between Q-categories.

A distributor ``Phi: X -> Y`` is a matrix with ``Phi(y, x)`` in
``hom(|x|, |y|)`` that absorbs the hom-arrows of both categories:

* ``beta(y1, y2)∘Phi(y2, x) <= Phi(y1, x)``
* ``Phi(y, x1)∘alpha(x1, x2) <= Phi(y, x2)``

Composition is matrix multiplication with joins and ``∘``.  The hom-arrows of
a category are the identity distributor on it.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    BaseMismatch,
    IncompleteTable,
    InternalInconsistency,
    NotADistributor,
    NotLeftAdjoint,
    TypeMismatch,
)
from .qcat import QCategory, QFunctor, terminal_qcategory
from .quantaloid import Morphism


class Distributor:
    """Validated distributor; build with :func:`validate_distributor`."""

    def __init__(self, source: QCategory, target: QCategory, matrix, name=None):
        self.source = source
        self.target = target
        self._m = dict(matrix)
        self.name = name

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"<Distributor{label} {len(self.source)} -> {len(self.target)}>"

    def at(self, y, x) -> Morphism:
        return self._m[(y, x)]

    __call__ = at

    def _key(self):
        return tuple(self._m[(y, x)].value
                     for y in self.target.elements for x in self.source.elements)

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Distributor):
            return NotImplemented
        return (self._key() == other._key() and self.source == other.source
                and self.target == other.target)

    def __hash__(self):
        return hash(self._key())

    def values_table(self):
        return {k: m.value for k, m in self._m.items()}

    def leq(self, other: "Distributor") -> bool:
        """Pointwise order."""
        base = self.source.base
        return all(base.leq(self._m[k], other._m[k]) for k in self._m)


def _same_category(A: QCategory, B: QCategory) -> bool:
    return A is B or A == B


def _check_base(X: QCategory, Y: QCategory):
    if not (X.base is Y.base or X.base == Y.base):
        raise BaseMismatch("categories live over different quantaloids")


def validate_distributor(X: QCategory, Y: QCategory, entries, name=None,
                         fill_bottom=False) -> Distributor:
    """``entries[(y, x)]`` is a Morphism or a value name of ``hom(|x|, |y|)``.

    With ``fill_bottom=True`` missing entries are taken as bottom.
    """
    _check_base(X, Y)
    base = X.base
    tx, ty = X.types, Y.types
    m = {}
    missing = []
    for y in Y.elements:
        for x in X.elements:
            if (y, x) in entries:
                v = entries[(y, x)]
                m[(y, x)] = v if isinstance(v, Morphism) else Morphism(tx[x], ty[y], v)
            elif fill_bottom:
                m[(y, x)] = base.bottom(tx[x], ty[y])
            else:
                missing.append((y, x))
    if missing:
        raise IncompleteTable("distributor entries missing", missing)
    bad = [(y, x, v) for (y, x), v in m.items()
           if (v.dom, v.cod) != (tx[x], ty[y]) or v.value not in base.hom(v.dom, v.cod)]
    if bad:
        raise TypeMismatch("entries outside hom(|x|,|y|)", bad)
    bad = []
    for y1 in Y.elements:
        for y2 in Y.elements:
            b = Y.alpha(y1, y2)
            for x in X.elements:
                if not base.leq(base.compose(b, m[(y2, x)]), m[(y1, x)]):
                    bad.append(("target", y1, y2, x))
    for y in Y.elements:
        for x1 in X.elements:
            for x2 in X.elements:
                if not base.leq(base.compose(m[(y, x1)], X.alpha(x1, x2)), m[(y, x2)]):
                    bad.append(("source", y, x1, x2))
    if bad:
        raise NotADistributor("distributor axioms fail", bad)
    for (y, x), v in m.items():
        if base.compose(Y.alpha(y, y), v) != v or base.compose(v, X.alpha(x, x)) != v:
            raise InternalInconsistency(f"diagonal arrows do not fix entry {(y, x)}")
    return Distributor(X, Y, m, name)


def identity_distributor(X: QCategory) -> Distributor:
    return Distributor(X, X, {(y, x): X.alpha(y, x) for y in X.elements for x in X.elements})


def compose_distributors(psi: Distributor, phi: Distributor) -> Distributor:
    """(psi ⊗ phi)(z, x) = ⋁_y psi(z, y)∘phi(y, x)."""
    if not _same_category(psi.source, phi.target):
        _check_base(psi.source, phi.target)
        raise BaseMismatch("middle categories differ")
    base = phi.source.base
    X, Y, Z = phi.source, phi.target, psi.target
    m = {}
    for z in Z.elements:
        for x in X.elements:
            terms = [base.compose(psi.at(z, y), phi.at(y, x)) for y in Y.elements]
            m[(z, x)] = base.join(X.types[x], Z.types[z], terms)
    return Distributor(X, Z, m)


def right_adjoint_of(phi: Distributor) -> Distributor:
    """The canonical candidate psi(x, y) = ⋀_{y1} phi(y1, x) ↘ beta(y1, y).

    It is the largest matrix with phi(y1,x)∘psi(x,y) <= beta(y1,y); it is a
    right adjoint exactly when :func:`is_adjoint_pair` accepts it.
    """
    base = phi.source.base
    X, Y = phi.source, phi.target
    m = {}
    for x in X.elements:
        for y in Y.elements:
            terms = [base.rres(phi.at(y1, x), Y.alpha(y1, y)) for y1 in Y.elements]
            m[(x, y)] = base.meet(Y.types[y], X.types[x], terms)
    return Distributor(Y, X, m)


def adjointness_failures(phi: Distributor, psi: Distributor):
    """Witnesses against phi ⊣ psi; empty when the pair is adjoint."""
    base = phi.source.base
    X, Y = phi.source, phi.target
    bad = []
    for x in X.elements:
        p = X.types[x]
        loop = base.join(p, p, [base.compose(psi.at(x, y), phi.at(y, x)) for y in Y.elements])
        if not base.leq(base.identity(p), loop):
            bad.append(("unit", x))
    for y1 in Y.elements:
        for x in X.elements:
            for y2 in Y.elements:
                if not base.leq(base.compose(phi.at(y1, x), psi.at(x, y2)), Y.alpha(y1, y2)):
                    bad.append(("counit", y1, x, y2))
    return bad


def is_adjoint_pair(phi: Distributor, psi: Distributor) -> bool:
    return not adjointness_failures(phi, psi)


def is_left_adjoint(phi: Distributor) -> bool:
    return is_adjoint_pair(phi, right_adjoint_of(phi))


@dataclass(frozen=True)
class AdjointPair:
    left: Distributor
    right: Distributor


def _adjoint_or_raise(phi):
    psi = right_adjoint_of(phi)
    if not is_adjoint_pair(phi, psi):
        raise NotLeftAdjoint("the distributor has no right adjoint")
    return psi


def graph_of_functor(phi: QFunctor) -> AdjointPair:
    """phi_b(y, x) = beta(y, phi x) and phi^b(x, y) = beta(phi x, y)."""
    X, Y = phi.source, phi.target
    left = Distributor(X, Y, {(y, x): Y.alpha(y, phi(x)) for y in Y.elements for x in X.elements})
    right = Distributor(Y, X, {(x, y): Y.alpha(phi(x), y) for x in X.elements for y in Y.elements})
    if not is_adjoint_pair(left, right):
        raise InternalInconsistency("functor graphs are not adjoint")
    return AdjointPair(left, right)


def terminal_distributor(X: QCategory, terminal: QCategory | None = None,
                         competitors=()) -> Distributor:
    """The left adjoint X -> (Q, tau) with entries tau(p, |x|).

    Each supplied competitor left adjoint into the terminal category is
    checked to coincide with it.
    """
    T = terminal or terminal_qcategory(X.base)
    base = X.base
    phi = Distributor(X, T, {(p, x): base.tau(p, X.types[x]) for p in T.elements for x in X.elements})
    psi = _adjoint_or_raise(phi)
    for other in competitors:
        assert_dominance_uniqueness(AdjointPair(phi, psi), other)
    return phi


def assert_dominance_uniqueness(pair: AdjointPair, competitor: Distributor):
    """If competitor ⊣ its adjoint and both are pointwise below ``pair``, they coincide."""
    other_right = _adjoint_or_raise(competitor)
    if competitor.leq(pair.left) and other_right.leq(pair.right):
        if competitor != pair.left:
            raise InternalInconsistency("dominated adjoint pair differs from the original")
        return True
    return False


def is_epi(phi: Distributor) -> bool:
    """beta(y, y) <= ⋁_x phi(y, x)∘psi(x, y) for all y, psi the right adjoint."""
    psi = _adjoint_or_raise(phi)
    base = phi.source.base
    X, Y = phi.source, phi.target
    for y in Y.elements:
        q = Y.types[y]
        loop = base.join(q, q, [base.compose(phi.at(y, x), psi.at(x, y)) for x in X.elements])
        if not base.leq(Y.alpha(y, y), loop):
            return False
    if compose_distributors(phi, psi) != identity_distributor(Y):
        raise InternalInconsistency("epi condition holds but phi ⊗ psi is not beta")
    return True


def is_extremal_mono(phi: Distributor) -> bool:
    """psi(x1, y)∘phi(y, x2) <= alpha(x1, x2) for all x1, y, x2."""
    psi = _adjoint_or_raise(phi)
    base = phi.source.base
    X, Y = phi.source, phi.target
    for x1 in X.elements:
        for x2 in X.elements:
            a = X.alpha(x1, x2)
            for y in Y.elements:
                if not base.leq(base.compose(psi.at(x1, y), phi.at(y, x2)), a):
                    return False
    if compose_distributors(psi, phi) != identity_distributor(X):
        raise InternalInconsistency("extremal mono condition holds but psi ⊗ phi is not alpha")
    return True


def is_iso(phi: Distributor) -> bool:
    psi = right_adjoint_of(phi)
    if not is_adjoint_pair(phi, psi):
        return False
    return (compose_distributors(psi, phi) == identity_distributor(phi.source)
            and compose_distributors(phi, psi) == identity_distributor(phi.target))


@dataclass(frozen=True)
class Factorization:
    """phi = theta ⊗ xi with xi epi and theta an extremal mono."""
    middle: QCategory
    xi: Distributor
    theta: Distributor

    @property
    def upsilon(self) -> Distributor:
        """Right adjoint of xi."""
        return right_adjoint_of(self.xi)


def factorize(phi: Distributor) -> Factorization:
    """(epi, extremal mono) factorization through presingletons of the target.

    The middle category consists of the presingletons mu of Y with
    ``beta^(mu, mu) = ⋁_x beta^(mu, mu_x)∘beta^(mu_x, mu)``, where mu_x is the
    presingleton given by column x of phi and its right adjoint.
    """
    from .presheaf import presingleton_space, presingleton_from_contravariant

    psi = _adjoint_or_raise(phi)
    base = phi.source.base
    X, Y = phi.source, phi.target
    Yhat, _ = presingleton_space(Y)
    hat = Yhat.alpha
    columns = {}
    for x in X.elements:
        g = {y: phi.at(y, x) for y in Y.elements}
        mu_x = presingleton_from_contravariant(Y, X.types[x], g)
        if mu_x is None or mu_x not in Yhat.types:
            raise InternalInconsistency(f"column {x!r} is not a presingleton")
        if any(mu_x.f(y) != psi.at(x, y) for y in Y.elements):
            raise InternalInconsistency(f"column {x!r} disagrees with the right adjoint")
        columns[x] = mu_x
    keep = []
    for mu in Yhat.elements:
        p = Yhat.types[mu]
        through = base.join(p, p, [base.compose(hat(mu, columns[x]), hat(columns[x], mu))
                                   for x in X.elements])
        if hat(mu, mu) == through:
            keep.append(mu)
    Z = Yhat.restrict(keep)
    xi = Distributor(X, Z, {(mu, x): hat(mu, columns[x]) for mu in Z.elements for x in X.elements})
    theta = Distributor(Z, Y, {(y, mu): mu.g(y) for y in Y.elements for mu in Z.elements})
    if compose_distributors(theta, xi) != phi:
        raise InternalInconsistency("theta ⊗ xi differs from phi")
    if not is_epi(xi):
        raise InternalInconsistency("xi is not an epimorphism")
    if not is_extremal_mono(theta):
        raise InternalInconsistency("theta is not an extremal monomorphism")
    return Factorization(Z, xi, theta)


def mediating_distributor(first: Factorization, second: Factorization) -> Distributor:
    """second.xi ⊗ (right adjoint of first.xi): the comparison between the middles."""
    return compose_distributors(second.xi, first.upsilon)
