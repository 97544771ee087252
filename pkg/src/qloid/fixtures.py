"""Small named quantales used throughout the tests and demos.

Element names are plain ASCII: ``bot`` and ``top`` for the bounds, ``al``/``ar``
for the left/right pair of the quantized two-chain, ``tal``/``tar`` for their
tilde variants.
"""

from .order_algebra import chain, frame, quantale_from_function, validate_complete_lattice, validate_quantale


def _table(rows, cols):
    return {(r, c): v for r, row in rows.items() for c, v in zip(cols, row)}


def diamond_quantale():
    """Commutative, non-unital: a and b idempotent, every mixed product is top."""
    L = validate_complete_lattice(["bot", "a", "b", "top"],
                                  [("bot", "a"), ("bot", "b"), ("a", "top"), ("b", "top")])
    cols = ["a", "b", "top"]
    rows = {"a": ["a", "top", "top"],
            "b": ["top", "b", "top"],
            "top": ["top", "top", "top"]}
    return validate_quantale(L, _table(rows, cols), involution_entries=[], name="Diamond")


def quantized_two():
    """Six-element non-commutative involutive quantale; al and ar swap under the involution."""
    L = validate_complete_lattice(
        ["bot", "b", "ar", "al", "c", "top"],
        [("bot", "b"), ("b", "ar"), ("b", "al"), ("ar", "c"), ("al", "c"), ("c", "top")])
    cols = ["b", "al", "ar", "c", "top"]
    rows = {"b": ["b", "b", "ar", "ar", "ar"],
            "al": ["al", "al", "top", "top", "top"],
            "ar": ["b", "b", "ar", "ar", "ar"],
            "c": ["al", "al", "top", "top", "top"],
            "top": ["al", "al", "top", "top", "top"]}
    return validate_quantale(L, _table(rows, cols), involution_entries=[("al", "ar")],
                             name="Q2")


def extended_quantized_two():
    """Eight-element extension of :func:`quantized_two` in which c becomes self-divisible."""
    L = validate_complete_lattice(
        ["bot", "b", "al", "ar", "tal", "tar", "c", "top"],
        [("bot", "b"), ("b", "al"), ("al", "tal"), ("tal", "c"),
         ("b", "ar"), ("ar", "tar"), ("tar", "c"), ("c", "top")])
    cols = ["b", "al", "ar", "tal", "tar", "c", "top"]
    rows = {"b": ["b", "b", "ar", "b", "ar", "ar", "ar"],
            "al": ["al", "al", "top", "al", "top", "top", "top"],
            "ar": ["b", "b", "ar", "ar", "ar", "ar", "ar"],
            "tal": ["al", "al", "top", "tal", "top", "top", "top"],
            "tar": ["b", "al", "ar", "c", "tar", "c", "top"],
            "c": ["al", "al", "top", "c", "top", "top", "top"],
            "top": ["al", "al", "top", "top", "top", "top", "top"]}
    return validate_quantale(L, _table(rows, cols),
                             involution_entries=[("al", "ar"), ("tal", "tar")], name="Q2ext")


def top_absorbing_chain(n=3):
    """Chain of length n where every product of non-bottom elements is top."""
    names = ["bot"] + [f"m{i}" for i in range(1, n - 1)] + ["top"]
    L = chain(names)
    return quantale_from_function(L, lambda a, b: "top", involution=[], name=f"Absorb{n}")


def cyclic_group_quantale():
    """The cyclic group {e, a, b} with a bottom and a top added.

    Unital with unit e, commutative, not integral.
    """
    L = validate_complete_lattice(
        ["bot", "e", "a", "b", "top"],
        [("bot", "e"), ("bot", "a"), ("bot", "b"), ("e", "top"), ("a", "top"), ("b", "top")])
    cols = ["e", "a", "b", "top"]
    rows = {"e": ["e", "a", "b", "top"],
            "a": ["a", "b", "e", "top"],
            "b": ["b", "e", "a", "top"],
            "top": ["top", "top", "top", "top"]}
    return validate_quantale(L, _table(rows, cols), unit="e", involution_entries=[],
                             name="Q5")


def two_chain_frame():
    """The two-element Boolean frame {bot, top}."""
    return frame(chain(["bot", "top"]), name="Two")


def chain_frame(n=3):
    names = ["bot"] + [f"m{i}" for i in range(1, n - 1)] + ["top"]
    return frame(chain(names), name=f"Frame{n}")


def lukasiewicz_chain(n=3):
    """Truncated addition on the chain 0 < 1 < ... < n-1 (read as bot ... top).

    Integral; the middle elements are not idempotent.
    """
    names = ["bot"] + [f"m{i}" for i in range(1, n - 1)] + ["top"]
    L = chain(names)
    k = n - 1
    pos = {a: i for i, a in enumerate(names)}
    return quantale_from_function(L, lambda a, b: names[max(0, pos[a] + pos[b] - k)],
                                  unit="top", involution=[], name=f"Luk{n}")


def diamond_frame():
    """The four-element Boolean frame."""
    L = validate_complete_lattice(["bot", "a", "b", "top"],
                                  [("bot", "a"), ("bot", "b"), ("a", "top"), ("b", "top")])
    return frame(L, name="Bool4")


def named_quantales():
    """All fixture quantales keyed by their names."""
    qs = [diamond_quantale(), quantized_two(), extended_quantized_two(), top_absorbing_chain(3),
          cyclic_group_quantale(), two_chain_frame(), chain_frame(3), lukasiewicz_chain(3),
          lukasiewicz_chain(4), diamond_frame()]
    return {q.name: q for q in qs}
