import pytest

from qloid.diagonal import check_embedding, dq_from_quantale, dq_from_quantaloid
from qloid.errors import NoInvolution
from qloid.quantaloid import Morphism, one_object_quantaloid


def homs(K):
    return {(p, q): set(K.hom(p, q).elements) for p in K.objects for q in K.objects}


def test_diamond_homs(dq):
    K = dq("Diamond")
    H = homs(K)
    assert H[("a", "a")] == {"bot", "a", "top"}
    assert H[("b", "b")] == {"bot", "b", "top"}
    assert H[("top", "top")] == {"bot", "top"}
    for x in ("a", "b", "top"):
        for y in ("a", "b", "top"):
            if x != y:
                assert H[(x, y)] == {"bot", "top"}


def test_quantized_two_homs(dq):
    K = dq("Q2")
    H = homs(K)
    assert K.objects == ("bot", "b", "top")
    assert H[("top", "top")] == {"bot", "top"}
    assert H[("top", "b")] == {"bot", "ar"}
    assert H[("b", "top")] == {"bot", "al"}
    assert H[("b", "b")] == {"bot", "b"}


def test_extended_quantized_two_homs(dq):
    K = dq("Q2ext")
    H = homs(K)
    assert K.objects == ("bot", "b", "c", "top")
    assert H[("c", "c")] == {"bot", "c", "top"}
    assert H[("c", "b")] == {"bot", "ar"}
    assert H[("b", "c")] == {"bot", "al"}
    assert H[("top", "c")] == {"bot", "top"}


def test_non_commutative_without_involution():
    from qloid.fixtures import quantized_two
    from qloid.order_algebra import validate_quantale
    Q = quantized_two()
    bare = validate_quantale(Q.lattice, Q.mult_entries())
    with pytest.raises(NoInvolution):
        dq_from_quantale(bare)


class TestStructure:
    NAMES = ("Diamond", "Q2", "Q2ext", "Q5", "Luk3", "Two", "Absorb3")

    @pytest.mark.parametrize("name", NAMES)
    def test_bottom_is_zero(self, dq, name):
        K = dq(name)
        for p in K.objects:
            assert len(K.hom("bot", p)) == 1 and len(K.hom(p, "bot")) == 1

    @pytest.mark.parametrize("name", NAMES)
    def test_object_is_unit(self, dq, name):
        K = dq(name)
        for a in K.objects:
            assert K.identity(a).value == a

    @pytest.mark.parametrize("name", NAMES)
    def test_integral_gives_small_homs(self, dq, quantales, name):
        Q = quantales[name]
        if Q.unit != Q.top:
            return
        K = dq(name)
        for a in K.objects:
            assert K.top(a, a).value == a
            for b in K.objects:
                for lam in K.hom(a, b).elements:
                    assert Q.leq(lam, Q.lattice.meet2(a, b))

    def test_idempotent_objects_compose_as_product(self, dq, quantales):
        for name in ("Diamond", "Two", "Frame3", "Bool4"):
            Q, K = quantales[name], dq(name)
            for a in K.objects:
                for b in K.objects:
                    for c in K.objects:
                        for f in K.morphisms(a, b):
                            for g in K.morphisms(b, c):
                                assert K.compose(g, f).value == Q.mul(g.value, f.value)


class TestEmbedding:
    def test_unit_hom_is_whole_quantale(self, dq, quantales):
        assert check_embedding(quantales["Q5"], dq("Q5"))

    def test_non_unital_not_applicable(self, dq, quantales):
        res = check_embedding(quantales["Absorb3"], dq("Absorb3"))
        assert not res and not res.applicable

    def test_two_chain(self, dq, quantales):
        assert check_embedding(quantales["Two"], dq("Two"))


class TestFromQuantaloid:
    def test_matches_quantale_construction(self, quantales):
        Q = quantales["Luk3"].involutive()
        K = one_object_quantaloid(Q)
        D1 = dq_from_quantaloid(K, involutive=True)
        D2 = dq_from_quantale(Q)
        assert D1.objects == D2.objects
        for p in D1.objects:
            for q in D1.objects:
                assert D1.hom(p, q).elements == D2.hom(p, q).elements
                for r in D1.objects:
                    for f in D1.morphisms(p, q):
                        for g in D1.morphisms(q, r):
                            assert D1.compose(g, f) == D2.compose(g, f)

    def test_two_chain_from_quantaloid(self, quantales):
        K = one_object_quantaloid(quantales["Two"])
        D = dq_from_quantaloid(K)
        assert D.objects == ("bot", "top")
        assert D.hom("top", "top").elements == ("bot", "top")

    def test_identities_embed(self, dq):
        K = dq("Q2")
        D = dq_from_quantaloid(K)
        assert check_embedding(K, D)

    def test_needs_involution(self, quantales):
        from qloid.order_algebra import validate_quantale
        Q = quantales["Q5"]
        bare = validate_quantale(Q.lattice, Q.mult_entries(), unit="e")
        with pytest.raises(NoInvolution):
            dq_from_quantaloid(one_object_quantaloid(bare), involutive=True)


def test_composition_alternatives_agree(dq, quantales):
    Q, K = quantales["Q2"], dq("Q2")
    for a in K.objects:
        for b in K.objects:
            for c in K.objects:
                for lam in K.hom(a, b).elements:
                    for mu in K.hom(b, c).elements:
                        got = K.compose(Morphism(b, c, mu), Morphism(a, b, lam)).value
                        assert got == Q.mul(Q.lres(mu, b), lam) == Q.mul(mu, Q.rres(b, lam))
