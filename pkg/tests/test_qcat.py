from itertools import product

import pytest

from qloid.errors import (
    EnumerationBudgetExceeded,
    IncompleteTable,
    NoIdentity,
    NotEnriched,
    NotTransitive,
    TypeMismatch,
    UnknownObject,
)
from qloid.qcat import (
    closure,
    discrete_qcategory,
    enumerate_qcategories,
    find_isomorphism,
    is_separated,
    is_symmetric,
    separation_witnesses,
    symmetrize,
    terminal_qcategory,
    type_functor,
    validate_functor,
    validate_qcategory,
)


def two_point(D, a, b, types=("top", "top")):
    return validate_qcategory(D, {"x": types[0], "y": types[1]},
                              {("x", "x"): types[0], ("y", "y"): types[1],
                               ("x", "y"): a, ("y", "x"): b})


class TestValidation:
    def test_missing_entry(self, dq):
        with pytest.raises(IncompleteTable):
            validate_qcategory(dq("Two"), {"x": "top", "y": "top"}, {("x", "x"): "top"})

    def test_diagonal_below_identity(self, dq):
        with pytest.raises(NoIdentity):
            validate_qcategory(dq("Two"), {"x": "top"}, {("x", "x"): "bot"})

    def test_not_transitive(self, dq):
        D = dq("Two")
        with pytest.raises(NotTransitive):
            validate_qcategory(D, {"x": "top", "y": "top", "z": "top"},
                               {(a, b): "top" if a == b or (a, b) in {("x", "y"), ("y", "z")} else "bot"
                                for a in "xyz" for b in "xyz"})

    def test_value_outside_hom(self, dq):
        # hom(b, top) in D(Q2) has no ar
        with pytest.raises(TypeMismatch):
            validate_qcategory(dq("Q2"), {"u": "top", "v": "b"},
                               {("u", "u"): "top", ("v", "v"): "b", ("u", "v"): "ar", ("v", "u"): "bot"})

    def test_unknown_type(self, dq):
        with pytest.raises(UnknownObject):
            discrete_qcategory(dq("Two"), {"x": "nope"})

    def test_terminal_values(self, dq):
        T = terminal_qcategory(dq("Q2"))
        assert T.alpha("top", "b").value == "al"
        assert T.alpha("b", "top").value == "ar"
        assert T.alpha("b", "b").value == "b"
        assert T.alpha("bot", "top").value == "bot"


class TestSeparationSymmetry:
    def test_chain_pair(self, dq):
        D = dq("Two")
        assert is_separated(two_point(D, "top", "bot"))
        X = two_point(D, "top", "top")
        assert not is_separated(X)
        assert separation_witnesses(X) == [("x", "y")]

    def test_symmetry(self, dq):
        D = dq("Two")
        assert is_symmetric(two_point(D, "top", "top"))
        assert not is_symmetric(two_point(D, "top", "bot"))

    def test_symmetrize_is_symmetric_and_below(self, fixture_categories):
        for X in fixture_categories:
            S = symmetrize(X)
            assert is_symmetric(S)
            assert all(X.base.leq(S.alpha(x, y), X.alpha(x, y)) for x in X.elements for y in X.elements)

    def test_quantized_two_pair(self, dq):
        D = dq("Q2")
        Y = validate_qcategory(D, {"y1": "b", "y2": "top"},
                               {("y1", "y1"): "b", ("y1", "y2"): "ar",
                                ("y2", "y1"): "bot", ("y2", "y2"): "top"})
        assert not is_symmetric(Y)
        S = symmetrize(Y)
        assert S.alpha("y1", "y2").value == "bot"


class TestFunctors:
    def test_type_functor(self, fixture_categories):
        for X in fixture_categories:
            F = type_functor(X)
            assert all(F(x) == X.types[x] for x in X.elements)

    def test_not_enriched(self, dq):
        D = dq("Two")
        X = two_point(D, "top", "bot")
        Y = discrete_qcategory(D, {"a": "top", "b": "top"})
        with pytest.raises(NotEnriched):
            validate_functor(X, Y, {"x": "a", "y": "b"})
        validate_functor(X, Y, {"x": "a", "y": "a"})

    def test_type_must_be_kept(self, dq):
        D = dq("Q2")
        X = discrete_qcategory(D, {"x": "b"})
        Y = discrete_qcategory(D, {"y": "top"})
        with pytest.raises(TypeMismatch):
            validate_functor(X, Y, {"x": "y"})


class TestEnumeration:
    def brute(self, D, types):
        """Every valid alpha for fixed types, counted up to type-preserving relabelling."""
        names = [f"x{i + 1}" for i in range(len(types))]
        pairs = [(a, b) for a in names for b in names]
        T = dict(zip(names, types))
        found = []
        for combo in product(*[D.morphisms(T[b], T[a]) for a, b in pairs]):
            try:
                found.append(validate_qcategory(D, T, dict(zip(pairs, combo))))
            except (NoIdentity, NotTransitive):
                continue
        classes = []
        for X in found:
            if not any(find_isomorphism(X, Y) for Y in classes):
                classes.append(X)
        return classes

    @pytest.mark.parametrize("name,types", [("Two", ("top", "top")), ("Q2", ("b", "top")),
                                            ("Q2", ("top", "top")), ("Luk3", ("top", "m1")),
                                            ("Diamond", ("a", "b"))])
    def test_counts_match_brute_force(self, dq, name, types):
        D = dq(name)
        assert len(enumerate_qcategories(D, 2, types=types)) == len(self.brute(D, types))

    def test_two_chain_preorders(self, dq):
        # preorders on two points up to iso: discrete, chain, indiscrete
        assert len(enumerate_qcategories(dq("Two"), 2, types=("top", "top"))) == 3

    def test_symmetric_only(self, dq):
        cats = enumerate_qcategories(dq("Q2"), 2, symmetric=True)
        assert cats and all(is_symmetric(X) for X in cats)

    def test_budget(self, dq):
        with pytest.raises(EnumerationBudgetExceeded):
            enumerate_qcategories(dq("Diamond"), 3, budget=10)


def test_closure_is_smallest(dq):
    D = dq("Two")
    X = closure(D, ["x", "y", "z"], {"x": "top", "y": "top", "z": "top"},
                {("x", "y"): D.top("top", "top"), ("y", "z"): D.top("top", "top")})
    assert X.alpha("x", "z").value == "top"
    assert X.alpha("z", "x").value == "bot"


def test_isomorphism_search(dq):
    D = dq("Two")
    X = two_point(D, "top", "bot")
    assert find_isomorphism(X, X.relabel({"x": "y", "y": "x"})) == {"x": "y", "y": "x"}
    assert find_isomorphism(X, two_point(D, "top", "top")) is None
