import pytest

from qloid.errors import NoInvolution, NotApplicable, NotSymmetric, TypeMismatch
from qloid.presheaf import enumerate_presingletons
from qloid.qcat import discrete_qcategory, validate_qcategory
from qloid.quantaloid import Morphism
from qloid.symmetry import (
    bounded_preservation_search,
    check_system,
    completion_symmetric_for,
    is_singleton,
    quantale_symmetry_criteria,
    symmetrization_preserves_completeness,
)


@pytest.fixture(scope="module")
def q5_discrete(dq):
    return discrete_qcategory(dq("Q5"), {"x": "e", "y": "e"})


class TestSingletons:
    def test_quantized_two_all_singletons(self, singleton_b):
        mus = enumerate_presingletons(singleton_b)
        assert all(is_singleton(mu, singleton_b.base) for mu in mus)
        assert completion_symmetric_for(singleton_b)

    def test_cyclic_group_witness(self, q5_discrete):
        mus = {(mu.f.values(), mu.p, mu.g.values()): mu for mu in enumerate_presingletons(q5_discrete)}
        mu = mus[(("a", "bot"), "e", ("b", "bot"))]
        assert not is_singleton(mu, q5_discrete.base)
        verdict = completion_symmetric_for(q5_discrete)
        assert not verdict
        assert not is_singleton(verdict.witness, q5_discrete.base)

    def test_needs_symmetric_input(self, dq):
        D = dq("Two")
        X = validate_qcategory(D, {"x": "top", "y": "top"},
                               {("x", "x"): "top", ("x", "y"): "top",
                                ("y", "x"): "bot", ("y", "y"): "top"})
        with pytest.raises(NotSymmetric):
            completion_symmetric_for(X)


class TestSystems:
    def test_identity_system(self, dq):
        D = dq("Q2")
        one = D.identity("top")
        rep = check_system(D, [(one, one)])
        assert rep.hypothesis_a and rep.hypothesis_b and rep.conclusion_u and rep.conclusion_v
        assert rep.consistent

    def test_quantized_two_through_b(self, dq):
        D = dq("Q2")
        u = Morphism("b", "top", "al")
        v = Morphism("top", "b", "ar")
        rep = check_system(D, [(u, v)])
        assert rep.hypothesis_a == D.leq(D.identity("top"), D.compose(u, v))
        assert rep.consistent

    def test_cyclic_group_system_breaks_conclusion(self, dq):
        D = dq("Q5")
        u = Morphism("e", "e", "a")
        v = Morphism("e", "e", "b")
        rep = check_system(D, [(u, v)])
        assert rep.hypothesis_a and rep.hypothesis_b
        assert not (rep.conclusion_u and rep.conclusion_v)
        assert not rep.consistent

    def test_bad_shape(self, dq):
        D = dq("Q2")
        with pytest.raises(TypeMismatch):
            check_system(D, [(Morphism("b", "top", "al"), Morphism("b", "top", "al"))])

    def test_empty_needs_object(self, dq):
        with pytest.raises(ValueError):
            check_system(dq("Q2"), [])
        rep = check_system(dq("Q2"), [], p0="bot")
        assert rep.hypothesis_a


class TestCriteria:
    @pytest.mark.parametrize("name", ["Two", "Frame3", "Luk3", "Bool4"])
    def test_integral_commutative_examples(self, quantales, name):
        rep = quantale_symmetry_criteria(quantales[name])
        assert rep.integral and rep.commutative and rep.sufficient

    def test_cyclic_group_not_applicable(self, quantales):
        rep = quantale_symmetry_criteria(quantales["Q5"])
        assert not rep.integral and rep.commutative
        # a∗b = e sits below the top, so the square bound holds here
        assert rep.square_bound
        assert not rep.sufficient

    def test_non_commutative(self, quantales):
        assert not quantale_symmetry_criteria(quantales["Q2"]).commutative


class TestSearch:
    @pytest.mark.parametrize("name", ["Two", "Frame3", "Luk3"])
    def test_applicable_bases_pass(self, quantales, name):
        res = bounded_preservation_search(quantales[name], max_points=2)
        assert res and res.checked > 0 and res.counterexample is None

    def test_cyclic_group_fails_on_one_point(self, quantales):
        res = bounded_preservation_search(quantales["Q5"], max_points=2)
        assert not res
        X, mu = res.counterexample
        assert len(X) == 1
        assert mu.label() == "(b|*|a)"

    def test_all_counterexamples(self, quantales):
        res = bounded_preservation_search(quantales["Q5"], max_points=1, all_counterexamples=True)
        assert len(res.counterexamples) >= 1 and res.bound == (1, None)

    def test_quantized_two_diagonal(self, dq):
        assert bounded_preservation_search(dq("Q2"), max_points=2, max_types=1)

    def test_needs_involution(self, quantales):
        from qloid.order_algebra import validate_quantale
        Q = quantales["Q2"]
        bare = validate_quantale(Q.lattice, Q.mult_entries())
        with pytest.raises(NoInvolution):
            bounded_preservation_search(bare)


class TestSymmetrization:
    def test_complete_stays_complete(self, singleton_b):
        from qloid.presheaf import presingleton_space
        Xhat, _ = presingleton_space(singleton_b)
        assert symmetrization_preserves_completeness(Xhat)

    def test_incomplete_input(self, dq):
        X = discrete_qcategory(dq("Two"), {"x": "top", "y": "top"})
        with pytest.raises(NotApplicable):
            symmetrization_preserves_completeness(X)
