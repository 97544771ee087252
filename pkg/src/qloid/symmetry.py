"""Does Cauchy completion keep symmetric categories symmetric?

A presingleton ``(f, p, g)`` is a singleton when ``g = j∘f``.  Completion of a
symmetric category is symmetric exactly when all its presingletons are
singletons; over a whole base this reduces to a condition on systems of
arrows ``u_i: p_i -> p0``, ``v_i: p0 -> p_i`` checked by :func:`check_system`.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import InternalInconsistency, NoInvolution, NotApplicable, NotSymmetric, TypeMismatch
from .order_algebra import Quantale, _involution_for
from .presheaf import Presingleton, enumerate_presingletons, is_cauchy_complete
from .qcat import QCategory, enumerate_qcategories, is_symmetric, symmetrize
from .quantaloid import Quantaloid, one_object_quantaloid


def _need_involution(base):
    if not base.has_involution:
        raise NoInvolution("the base has no involution")


def is_singleton(mu: Presingleton, base: Quantaloid) -> bool:
    _need_involution(base)
    return all(m == base.involute(n) for (_, m), (_, n) in zip(mu.g.items, mu.f.items))


@dataclass(frozen=True)
class SystemReport:
    hypothesis_a: bool
    hypothesis_b: bool
    conclusion_u: bool
    conclusion_v: bool
    b_failures: tuple = ()

    @property
    def consistent(self) -> bool:
        """False only when the hypotheses hold but a conclusion fails."""
        return not (self.hypothesis_a and self.hypothesis_b) or (self.conclusion_u and self.conclusion_v)


def check_system(base: Quantaloid, system, p0=None) -> SystemReport:
    """``system`` is a sequence of pairs (u_i: p_i -> p0, v_i: p0 -> p_i)."""
    _need_involution(base)
    system = list(system)
    if p0 is None:
        if not system:
            raise ValueError("an empty system needs p0")
        p0 = system[0][0].cod
    bad = [(i, u, v) for i, (u, v) in enumerate(system)
           if u.cod != p0 or v.dom != p0 or u.dom != v.cod]
    if bad:
        raise TypeMismatch("system arrows do not fit u_i: p_i -> p0, v_i: p0 -> p_i", bad)
    one = base.identity(p0)
    j = base.involute
    c = base.compose_all

    def covers(pairs):
        return base.leq(one, base.join(p0, p0, [c(a, b) for a, b in pairs]))

    hyp_a = covers(system)
    b_fail = []
    for i1, (u1, v1) in enumerate(system):
        for i2, (u2, v2) in enumerate(system):
            checks = [
                (c(u1, v1, u2), u2),
                (c(v1, u2, v2), v1),
                (c(j(v1), v1, u2), j(v2)),
                (c(v1, u2, j(u2)), j(u1)),
            ]
            for k, (lhs, rhs) in enumerate(checks):
                if not base.leq(lhs, rhs):
                    b_fail.append((i1, i2, k + 1))
    con_u = covers([(u, j(u)) for u, _ in system])
    con_v = covers([(j(v), v) for _, v in system])
    return SystemReport(hyp_a, not b_fail, con_u, con_v, tuple(b_fail))


@dataclass(frozen=True)
class SymmetryVerdict:
    holds: bool
    witness: Presingleton | None = None
    witnesses: tuple = ()

    def __bool__(self):
        return self.holds


def completion_symmetric_for(X: QCategory, budget=None) -> SymmetryVerdict:
    """Whether every presingleton of the symmetric category X is a singleton.

    ``witness`` is the first non-singleton in enumeration order and
    ``witnesses`` lists all of them.
    """
    base = X.base
    _need_involution(base)
    if not is_symmetric(X):
        raise NotSymmetric("the category is not symmetric")
    bad = []
    for mu in enumerate_presingletons(X, budget):
        system = [(mu.f(x), mu.g(x)) for x in X.elements]
        if system:
            rep = check_system(base, system, mu.p)
            if not (rep.hypothesis_a and rep.hypothesis_b):
                raise InternalInconsistency("presingleton system misses the hypotheses")
        if not is_singleton(mu, base):
            bad.append(mu)
    if bad:
        return SymmetryVerdict(False, bad[0], tuple(bad))
    return SymmetryVerdict(True)


@dataclass(frozen=True)
class CriteriaReport:
    integral: bool
    commutative: bool
    square_bound: bool
    sufficient: bool
    note: str = "applicable is sufficient for preservation; not applicable is inconclusive"


def quantale_symmetry_criteria(quantale: Quantale) -> CriteriaReport:
    """Integral, commutative and a∗b <= (a∗a)∨(b∗b) together guarantee preservation."""
    Q = quantale
    integral = Q.unit is not None and Q.unit == Q.top
    comm = Q.is_commutative()
    bound = all(Q.leq(Q.mul(a, b), Q.lattice.join2(Q.mul(a, a), Q.mul(b, b)))
                for a in Q.elements for b in Q.elements)
    return CriteriaReport(integral, comm, bound, integral and comm and bound)


@dataclass(frozen=True)
class SearchResult:
    passed: bool
    bound: tuple
    checked: int
    counterexample: tuple | None = None
    counterexamples: list = field(default_factory=list)

    def __bool__(self):
        return self.passed


def _as_quantaloid(base):
    if isinstance(base, Quantale):
        return one_object_quantaloid(_involution_for(base))
    return base


def bounded_preservation_search(base, max_points=2, max_types=None, all_counterexamples=False,
                                budget=None) -> SearchResult:
    """Symmetric categories up to ``max_points`` elements and ``max_types`` distinct types.

    Returns the first counterexample ``(X, presingleton)`` in enumeration order,
    or a pass that holds only at the stated bound.
    """
    K = _as_quantaloid(base)
    _need_involution(K)
    checked = 0
    found = []
    for n in range(1, max_points + 1):
        for X in enumerate_qcategories(K, n, symmetric=True, budget=budget):
            if max_types is not None and len(set(X.types.values())) > max_types:
                continue
            checked += 1
            verdict = completion_symmetric_for(X, budget)
            if not verdict:
                found.append((X, verdict.witness))
                if not all_counterexamples:
                    return SearchResult(False, (max_points, max_types), checked, found[0], found)
    first = found[0] if found else None
    return SearchResult(not found, (max_points, max_types), checked, first, found)


def symmetrization_preserves_completeness(X: QCategory, budget=None) -> bool:
    if not is_cauchy_complete(X, budget):
        raise NotApplicable("the category is not Cauchy complete")
    return is_cauchy_complete(symmetrize(X), budget)

