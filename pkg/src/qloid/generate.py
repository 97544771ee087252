"""Small-instance generators for property tests and demos.

Everything is driven by a ``random.Random`` so runs are reproducible from a
seed.  The catalog holds every commutative quantale on the 2-, 3- and 4-chains
and on the four-element diamond lattice.
"""

from __future__ import annotations

import random
from functools import lru_cache
from itertools import combinations, permutations, product

import numpy as np

from .diagonal import dq_from_quantale
from .distributor import Distributor, validate_distributor
from .errors import NotAssociative, NotJoinPreserving, ValidationError
from .order_algebra import Quantale, chain, check_quantale_tables, validate_complete_lattice
from .presheaf import presingleton_space
from .qcat import QCategory, closure, enumerate_qcategories
from .quantaloid import Quantaloid, full_subquantaloid, one_object_quantaloid


def _lattices():
    yield "C2", chain(["bot", "top"])
    yield "C3", chain(["bot", "m", "top"])
    yield "C4", chain(["bot", "m1", "m2", "top"])
    yield "M2", validate_complete_lattice(
        ["bot", "a", "b", "top"], [("bot", "a"), ("bot", "b"), ("a", "top"), ("b", "top")])


def _find_unit(mult):
    n = len(mult)
    for e in range(n):
        if np.array_equal(mult[e], np.arange(n)) and np.array_equal(mult[:, e], np.arange(n)):
            return e
    return None


def commutative_quantales(lattice, prefix="Q"):
    """Every commutative quantale structure on a finite lattice."""
    L = lattice
    n = len(L)
    bot = L._bot
    rest = [i for i in range(n) if i != bot]
    pairs = [(i, j) for k, i in enumerate(rest) for j in rest[k:]]
    out = []
    for values in product(range(n), repeat=len(pairs)):
        mult = np.full((n, n), bot, dtype=np.int64)
        for (i, j), v in zip(pairs, values):
            mult[i, j] = mult[j, i] = v
        try:
            check_quantale_tables(L, mult)
        except (NotAssociative, NotJoinPreserving):
            continue
        unit = _find_unit(mult)
        u = None if unit is None else L.elements[unit]
        q = Quantale(L, mult, u, np.arange(n), f"{prefix}{len(out)}")
        out.append(q)
    return out


@lru_cache(maxsize=None)
def quantale_catalog():
    """Tuple of all commutative quantales on the small catalog lattices."""
    out = []
    for tag, L in _lattices():
        out.extend(commutative_quantales(L, prefix=f"{tag}#"))
    return tuple(out)


def _hom_ok(K: Quantaloid, max_hom):
    return all(len(K.hom(p, q)) <= max_hom for p in K.objects for q in K.objects)


@lru_cache(maxsize=None)
def base_catalog(max_objects=3, max_hom=4):
    """Diagonal subquantaloids and one-object quantaloids within the size bounds."""
    out = []
    for Q in quantale_catalog():
        D = dq_from_quantale(Q)
        for k in range(1, min(max_objects, len(D.objects)) + 1):
            for objs in combinations(D.objects, k):
                K = full_subquantaloid(D, objs, name=f"D({Q.name})|{','.join(objs)}")
                if _hom_ok(K, max_hom):
                    out.append(K)
        if Q.unit is not None and len(Q.elements) <= max_hom:
            out.append(one_object_quantaloid(Q, name=f"one({Q.name})"))
    return tuple(out)


def random_base(rng: random.Random, max_objects=3, max_hom=4) -> Quantaloid:
    return rng.choice(base_catalog(max_objects, max_hom))


def random_qcategory(base: Quantaloid, n_points: int, rng: random.Random, density=0.4,
                     name=None) -> QCategory:
    """Random arrows (bottom with probability 1-density), then closed up."""
    names = [f"x{i + 1}" for i in range(n_points)]
    types = {x: rng.choice(base.objects) for x in names}
    alpha = {}
    for x in names:
        for y in names:
            ms = base.morphisms(types[y], types[x])
            alpha[(x, y)] = rng.choice(ms) if rng.random() < density else ms[0]
    return closure(base, names, types, alpha, name)


def random_left_adjoint(X: QCategory, Y: QCategory, rng: random.Random, tries=50):
    """A left adjoint X -> Y built from a functor into the presingletons of Y, or None.

    Each x picks a presingleton mu_x of type |x| with
    alpha(x1, x2) <= beta^(mu_x1, mu_x2); then Phi(y, x) = g_{mu_x}(y).
    """
    base = X.base
    Yhat, _ = presingleton_space(Y, check_iso=False)
    by_type = {}
    for mu in Yhat.elements:
        by_type.setdefault(mu.p, []).append(mu)
    els = list(X.elements)
    for _ in range(tries):
        pick = {}
        ok = True
        for x in els:
            opts = list(by_type.get(X.types[x], []))
            rng.shuffle(opts)
            for mu in opts:
                if all(base.leq(X.alpha(x, z), Yhat.alpha(mu, pick[z]))
                       and base.leq(X.alpha(z, x), Yhat.alpha(pick[z], mu)) for z in pick) \
                        and base.leq(X.alpha(x, x), Yhat.alpha(mu, mu)):
                    pick[x] = mu
                    break
            else:
                ok = False
                break
        if ok:
            return validate_distributor(
                X, Y, {(y, x): pick[x].g(y) for y in Y.elements for x in X.elements})
    return None


def random_factorization_case(rng: random.Random, max_objects=3, max_hom=4, max_points=3):
    """(base, X, Y, Phi) with Phi a left adjoint; retries until one is found."""
    while True:
        base = random_base(rng, max_objects, max_hom)
        X = random_qcategory(base, rng.randint(1, max_points), rng)
        Y = random_qcategory(base, rng.randint(1, max_points), rng)
        phi = random_left_adjoint(X, Y, rng)
        if phi is not None:
            return base, X, Y, phi


# micro instances -----------------------------------------------------------

@lru_cache(maxsize=None)
def micro_bases(max_hom=3, max_objects=2):
    """Catalog bases whose hom-lattices have at most ``max_hom`` elements, up to iso of tables."""
    seen = set()
    out = []
    for K in base_catalog(max_objects, max_hom):
        key = _base_signature(K)
        if key not in seen:
            seen.add(key)
            out.append(K)
    return tuple(out)


def _base_signature(K: Quantaloid):
    """Composition tables with hom elements replaced by their positions, minimized over object orders.

    Positions are canonical only for chains, which covers every hom-lattice of
    at most three elements.
    """
    best = None
    for objs in permutations(K.objects):
        rows = []
        for p in objs:
            for q in objs:
                H = K.hom(p, q)
                at = {m: k for k, m in enumerate(H.elements)}
                rows.append((len(H.elements), at[K.identity(p).value] if p == q else None))
                for r in objs:
                    Hr = K.hom(p, r)
                    at_r = {m: k for k, m in enumerate(Hr.elements)}
                    at_g = {m: k for k, m in enumerate(K.hom(q, r).elements)}
                    rows.append(tuple(sorted(
                        (at_g[g.value], at[f.value], at_r[K.compose(g, f).value])
                        for f in K.morphisms(p, q) for g in K.morphisms(q, r))))
        key = tuple(rows)
        if best is None or key < best:
            best = key
    return best


def all_distributors(X: QCategory, Y: QCategory):
    """Every distributor X -> Y, by brute force over matrices."""
    base = X.base
    cells = [(y, x) for y in Y.elements for x in X.elements]
    choices = [base.morphisms(X.types[x], Y.types[y]) for y, x in cells]
    out = []
    for combo in product(*choices):
        try:
            out.append(validate_distributor(X, Y, dict(zip(cells, combo))))
        except ValidationError:
            continue
    return out


def micro_instances(max_points=2, max_hom=3):
    """Yield (base, X, Y, Phi) over all micro bases and categories up to ``max_points``."""
    for K in micro_bases(max_hom):
        cats = [X for n in range(1, max_points + 1) for X in enumerate_qcategories(K, n)]
        for X in cats:
            for Y in cats:
                for phi in all_distributors(X, Y):
                    yield K, X, Y, phi


def brute_force_right_adjoint(phi: Distributor):
    """Pointwise largest matrix psi satisfying both adjunction inequalities, or None.

    The counit inequality constrains each cell of psi on its own, so candidates
    are filtered cell by cell before the unit inequality is checked on every
    remaining combination.  Returns ``(largest, count)`` where ``largest`` is
    None when no matrix works or the admissible set has no top element.
    """
    X, Y = phi.source, phi.target
    base = X.base
    cells = [(x, y) for x in X.elements for y in Y.elements]
    choices = []
    for x, y2 in cells:
        ok = [v for v in base.morphisms(Y.types[y2], X.types[x])
              if all(base.leq(base.compose(phi.at(y1, x), v), Y.alpha(y1, y2)) for y1 in Y.elements)]
        choices.append(ok)
    good = []
    for combo in product(*choices):
        m = dict(zip(cells, combo))
        if all(base.leq(base.identity(X.types[x]),
                        base.join(X.types[x], X.types[x],
                                  [base.compose(m[(x, y)], phi.at(y, x)) for y in Y.elements]))
               for x in X.elements):
            good.append(Distributor(Y, X, m))
    if not good:
        return None, 0
    tops = [p for p in good if all(q.leq(p) for q in good)]
    return (tops[0] if tops else None), len(good)
