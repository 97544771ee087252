"""Command line front end: ``qloid <command> [options] FILES...``.

Exit codes: 0 the command succeeded or the property holds, 1 the property
fails (a witness is printed), 2 invalid input, 3 enumeration budget exceeded.
``--format machine`` prints one JSON document carrying ``schema_version``.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass, field

from .budget import DEFAULT_MAX_ENUM, enumeration_budget
from .classifier import build_classifier, classify_point, is_point, sup_formula, true_arrow
from .diagonal import dq_from_quantale
from .distributor import (
    Distributor,
    factorize,
    is_left_adjoint,
    right_adjoint_of,
    terminal_distributor,
)
from .errors import (
    ConeFails,
    EnumerationBudgetExceeded,
    NotACone,
    NotLeftAdjoint,
    NotSeparated,
    NotStable,
    QloidError,
)
from .fileformat import Workspace, base_reference, emit_distributor, emit_qcategory, parse_files
from .order_algebra import quantale_properties
from .presheaf import cauchy_failures, enumerate_presingletons, sup_failures
from .qcat import element_label, is_separated, is_symmetric, terminal_qcategory
from .qset import (
    category_to_qset,
    omega_terminal,
    qset_to_category,
    strictness_holds,
    terminal_set_properties,
)
from .quantaloid import is_p_stable, right_sided_morphisms
from .symmetry import (
    bounded_preservation_search,
    completion_symmetric_for,
    is_singleton,
    quantale_symmetry_criteria,
)

SCHEMA_VERSION = 1

COMMANDS = ("validate", "dq", "residual", "terminal", "presingletons", "cauchy", "cocomplete",
            "factorize", "classify", "symmetry", "qset", "omega", "report")


class InvalidInput(QloidError):
    pass


@dataclass
class Report:
    command: str
    holds: bool = True
    lines: list = field(default_factory=list)
    data: dict = field(default_factory=dict)

    def say(self, *parts):
        self.lines.append(" ".join(str(p) for p in parts))


# selection ------------------------------------------------------------------

def _pick(table: dict, name, what):
    if name is not None:
        if name not in table:
            raise InvalidInput(f"no {what} named {name!r}; have {sorted(table)}")
        return name, table[name]
    if len(table) == 1:
        return next(iter(table.items()))
    raise InvalidInput(f"choose a {what} with --{what} (have {sorted(table)})")


def _base_from(ws: Workspace, args):
    """A quantaloid: D(Q) for a quantale name, or a named quantaloid."""
    name = args.quantale
    if name is not None and name in ws.quantaloids:
        return name, ws.quantaloids[name]
    if name is None and not ws.quantales and len(ws.quantaloids) == 1:
        return next(iter(ws.quantaloids.items()))
    qname, Q = _pick(ws.quantales, name, "quantale")
    return f"D({qname})", dq_from_quantale(Q)


def _hom_text(ms):
    return "{" + ", ".join(str(m) for m in ms) + "}"


def _elements_text(X):
    return ", ".join(f"{element_label(x)}:{X.types[x]}" for x in X.elements)


# commands ---------------------------------------------------------------------

def cmd_validate(ws: Workspace, args, rep: Report):
    labels = {"quantale": "quantales", "quantaloid": "quantaloids", "qcategory": "categories",
              "functor": "functors", "distributor": "distributors", "qset": "qsets"}
    for kind, label in labels.items():
        names = list(ws.table(kind))
        rep.data[kind] = names
        if names:
            rep.say(f"{label:<13}", " ".join(names))
    rep.say("all blocks valid")


def cmd_dq(ws, args, rep):
    qname, Q = _pick(ws.quantales, args.quantale, "quantale")
    D = dq_from_quantale(Q)
    homs = {f"{p},{q}": list(D.hom(p, q).elements) for p in D.objects for q in D.objects
            if len(D.hom(p, q)) > 1}
    rep.data.update(quantale=qname, objects=list(D.objects), nontrivial_homs=homs)
    rep.say(f"D({qname}) objects:", " ".join(D.objects))
    rep.say(f"nontrivial hom-spaces: {len(homs)}")
    for key, es in homs.items():
        p, q = key.split(",")
        rep.say(f"  hom({p}, {q}) = {_hom_text(es)}")


def cmd_residual(ws, args, rep):
    qname, Q = _pick(ws.quantales, args.quantale, "quantale")
    es = list(Q.elements)
    right = {a: {b: Q.rres(a, b) for b in es} for a in es}
    left = {b: {a: Q.lres(b, a) for a in es} for b in es}
    rep.data.update(quantale=qname, right=right, left=left)
    w = max(len(e) for e in es) + 1
    for title, table in (("a↘b (row a, column b)", right), ("b↙a (row b, column a)", left)):
        rep.say(title)
        rep.say(" " * w, *(f"{e:>{w}}" for e in es))
        for r in es:
            rep.say(f"{r:>{w}}", *(f"{table[r][c]:>{w}}" for c in es))


def cmd_terminal(ws, args, rep):
    if args.category is not None or (args.quantale is None and ws.categories and not ws.quantales):
        cname, X = _pick(ws.categories, args.category, "category")
        phi = terminal_distributor(X)
        T = phi.target
        entries = {f"{p},{element_label(x)}": phi.at(p, x).value
                   for p in T.elements for x in X.elements}
        rep.data.update(category=cname, distributor=entries)
        rep.say(f"terminal left adjoint out of {cname}: entry (q, x) = top of hom(|x|, q)")
        for k, v in entries.items():
            rep.say(f"  ({k}) = {v}")
        return
    bname, K = _base_from(ws, args)
    T = terminal_qcategory(K)
    tau = {f"{p},{q}": T.alpha(p, q).value for p in T.elements for q in T.elements}
    rep.data.update(base=bname, objects=list(T.elements), tau=tau)
    rep.say(f"terminal category over {bname}: objects {' '.join(T.elements)}")
    for k, v in tau.items():
        rep.say(f"  tau({k}) = {v}")


def cmd_presingletons(ws, args, rep):
    cname, X = _pick(ws.categories, args.category, "category")
    mus = enumerate_presingletons(X)
    sym = X.base.has_involution
    items = []
    for mu in mus:
        item = {"type": mu.p, "f": list(mu.f.values()), "g": list(mu.g.values()),
                "label": mu.label()}
        if sym:
            item["singleton"] = is_singleton(mu, X.base)
        items.append(item)
    rep.data.update(category=cname, count=len(items), presingletons=items)
    rep.say(f"{cname}: {len(items)} presingletons")
    for it in items:
        mark = ""
        if sym:
            mark = "  singleton" if it["singleton"] else "  not a singleton"
        rep.say(f"  {it['label']}{mark}")


def cmd_cauchy(ws, args, rep):
    cname, X = _pick(ws.categories, args.category, "category")
    bad = cauchy_failures(X)
    rep.holds = not bad
    wit = [{"presingleton": mu.label(), "represented_by": [element_label(x) for x in xs]}
           for mu, xs in bad]
    rep.data.update(category=cname, cauchy_complete=rep.holds, witnesses=wit)
    rep.say(f"{cname} is {'' if rep.holds else 'not '}Cauchy complete")
    for w in wit:
        rep.say(f"  {w['presingleton']} represented by {w['represented_by'] or 'nothing'}")


def cmd_cocomplete(ws, args, rep):
    cname, X = _pick(ws.categories, args.category, "category")
    bad = sup_failures(X)
    rep.holds = not bad
    wit = [g.label() for g in bad]
    rep.data.update(category=cname, cocomplete=rep.holds, separated=is_separated(X),
                    presheaves_without_sup=wit)
    rep.say(f"{cname} is {'' if rep.holds else 'not '}cocomplete")
    for g in wit[:10]:
        rep.say(f"  no sup for {g}")


def cmd_factorize(ws, args, rep):
    dname, phi = _pick(ws.distributors, args.distributor, "distributor")
    src = _name_in(ws.categories, phi.source)
    tgt = _name_in(ws.categories, phi.target)
    try:
        fac = factorize(phi)
    except NotLeftAdjoint:
        rep.holds = False
        rep.data.update(distributor=dname, left_adjoint=False)
        rep.say(f"{dname} is not a left adjoint")
        return
    names = {mu: f"z{i + 1}" for i, mu in enumerate(fac.middle.elements)}
    Z = fac.middle.relabel(names)
    xi = Distributor(phi.source, Z, {(names[m], x): fac.xi.at(m, x)
                                     for m in fac.middle.elements for x in phi.source.elements})
    theta = Distributor(Z, phi.target, {(y, names[m]): fac.theta.at(y, m)
                                        for y in phi.target.elements for m in fac.middle.elements})
    ref = base_reference(phi.source.base, ws) or phi.source.base.name
    zname, xname, tname = f"{dname}_Z", f"{dname}_Xi", f"{dname}_Theta"
    blocks = ["\n".join(f"# {names[m]} = {m.label()}" for m in fac.middle.elements),
              emit_qcategory(Z, zname, ref),
              emit_distributor(xi, xname, src, zname),
              emit_distributor(theta, tname, zname, tgt)]
    rep.data.update(distributor=dname, left_adjoint=True, middle_size=len(Z.elements),
                    middle={names[m]: m.label() for m in fac.middle.elements},
                    blocks="\n\n".join(blocks) + "\n")
    rep.say(f"# {dname} = {tname} ⊗ {xname}; {xname} is epi, {tname} is an extremal mono")
    rep.lines.extend("\n\n".join(blocks).splitlines())


def _name_in(table, obj):
    for n, o in table.items():
        if o is obj or o == obj:
            return n
    return "?"


def cmd_classify(ws, args, rep):
    bname, K = _base_from(ws, args)
    r = args.type
    if r is None:
        raise InvalidInput("classify needs --type R")
    if r not in K.objects:
        raise InvalidInput(f"{r!r} is not an object of {bname}")
    C = build_classifier(K, r)
    members = right_sided_morphisms(K, r)
    chi_top = true_arrow(K, r, C)
    formula_ok = all(sup_formula(K, members, g) == u for g, u in C.sup.items())
    rep.data.update(base=bname, type=r, stable=is_p_stable(K, r),
                    classifier=[str(u) for u in C.category.elements],
                    sup_matches_formula=formula_ok, true_is_point=is_point(chi_top))
    rep.say(f"classifier over {bname} at {r}: {len(C.category.elements)} right-sided arrows")
    rep.say("  " + ", ".join(str(u) for u in C.category.elements))
    rep.say(f"  sup agrees with the meet formula: {formula_ok}")
    rep.say(f"  true_{r} is a point: {is_point(chi_top)}")
    rep.say(f"  base is {r}-stable: {is_p_stable(K, r)}")
    if args.functor is not None:
        fname, phi = _pick(ws.functors, args.functor, "functor")
        try:
            res = classify_point(phi, r, classifier=C)
        except (NotStable, NotSeparated, NotACone, ConeFails) as exc:
            rep.holds = False
            rep.data["point"] = {"functor": fname, "error": str(exc)}
            rep.say(f"{fname} cannot be classified: {exc}")
            return
        chi = {element_label(x): str(res.chi(x)) for x in phi.target.elements}
        rep.data["point"] = {"functor": fname, "chi": chi}
        rep.say(f"characteristic functor of {fname}:")
        for x, u in chi.items():
            rep.say(f"  {x} -> {u}")


def cmd_symmetry(ws, args, rep):
    if args.category is not None or (args.quantale is None and ws.categories and not ws.quantales):
        cname, X = _pick(ws.categories, args.category, "category")
        v = completion_symmetric_for(X)
        rep.holds = v.holds
        rep.data.update(category=cname, completion_symmetric=v.holds,
                        witness=v.witness.label() if v.witness else None)
        rep.say(f"completion of {cname} is {'' if v.holds else 'not '}symmetric")
        if v.witness:
            rep.say(f"  presingleton {v.witness.label()} is not a singleton")
        return
    qname, Q = _pick(ws.quantales, args.quantale, "quantale")
    crit = quantale_symmetry_criteria(Q)
    n = args.max_objects
    res = bounded_preservation_search(Q, max_points=n)
    rep.holds = res.passed
    wit = None
    if res.counterexample:
        X, mu = res.counterexample
        wit = {"category": _elements_text(X), "presingleton": mu.label()}
    rep.data.update(quantale=qname, criteria=asdict(crit), search_bound=n, checked=res.checked,
                    search_passed=res.passed, counterexample=wit)
    rep.say(f"{qname}: integral={crit.integral} commutative={crit.commutative} "
            f"square_bound={crit.square_bound}")
    rep.say(f"  sufficient criterion applies: {crit.sufficient}")
    if res.passed:
        rep.say(f"  no counterexample among {res.checked} symmetric categories "
                f"with at most {n} points (bounded check only)")
    else:
        rep.say(f"  counterexample at category {res.checked} checked: [{wit['category']}] "
                f"with presingleton {wit['presingleton']}")


def cmd_qset(ws, args, rep):
    if args.qset is None and not ws.qsets:
        qname, Q = _pick(ws.quantales, args.quantale, "quantale")
        W = omega_terminal(dq_from_quantale(Q))
        table = {f"{a},{b}": W(a, b) for a in W.carrier for b in W.carrier}
        rep.data.update(quantale=qname, omega=table)
        rep.say(f"terminal Q-valued set over {qname}:")
        for k, v in table.items():
            rep.say(f"  omega({k}) = {v}")
        return
    sname, S = _pick(ws.qsets, args.qset, "qset")
    X = qset_to_category(S)
    back = category_to_qset(X)
    strict = strictness_holds(S)
    rep.data.update(qset=sname, elements=list(S.carrier), types={x: X.types[x] for x in X.elements},
                    strict=strict, symmetric=is_symmetric(X), roundtrip=back == S,
                    separated=is_separated(X))
    rep.say(f"{sname} as a category over D: {_elements_text(X)}")
    rep.say(f"  symmetric={is_symmetric(X)} separated={is_separated(X)} strict={strict}")
    rep.say(f"  round trip through categories is the identity: {back == S}")


def cmd_omega(ws, args, rep):
    qname, Q = _pick(ws.quantales, args.quantale, "quantale")
    res = terminal_set_properties(Q)
    W = omega_terminal(dq_from_quantale(Q))
    rep.holds = res.equivalent
    rep.data.update(quantale=qname, integral=res.integral, separated=res.separated,
                    cauchy_complete=res.cauchy_complete, equivalent=res.equivalent,
                    omega={f"{a},{b}": W(a, b) for a in W.carrier for b in W.carrier})
    rep.say(f"{qname}: integral={res.integral} separated={res.separated} "
            f"cauchy_complete={res.cauchy_complete} (equivalent: {res.equivalent})")


def cmd_report(ws, args, rep):
    for qname, Q in ws.quantales.items():
        props = asdict(quantale_properties(Q))
        try:
            props["dq_objects"] = list(dq_from_quantale(Q).objects)
        except QloidError as exc:
            props["dq_objects"] = None
            props["dq_error"] = str(exc)
        rep.data.setdefault("quantales", {})[qname] = props
        flags = " ".join(k for k in ("unital", "commutative", "integral", "idempotent", "involutive")
                         if props[k])
        rep.say(f"quantale {qname}: {len(Q.elements)} elements; {flags or 'no special properties'}")
        if props["dq_objects"] is not None:
            rep.say(f"  D({qname}) objects: {' '.join(props['dq_objects'])}")
    for cname, X in ws.categories.items():
        info = {"size": len(X.elements), "separated": is_separated(X),
                "cauchy_complete": not cauchy_failures(X), "cocomplete": not sup_failures(X)}
        if X.base.has_involution:
            info["symmetric"] = is_symmetric(X)
        rep.data.setdefault("categories", {})[cname] = info
        rep.say(f"category {cname}: " + " ".join(f"{k}={v}" for k, v in info.items()))
    for dname, phi in ws.distributors.items():
        la = is_left_adjoint(phi)
        rep.data.setdefault("distributors", {})[dname] = {"left_adjoint": la}
        rep.say(f"distributor {dname}: left_adjoint={la}")
        if la:
            right_adjoint_of(phi)


HANDLERS = {name: globals()[f"cmd_{name}"] for name in COMMANDS}


# entry point ------------------------------------------------------------------

def build_parser():
    p = argparse.ArgumentParser(
        prog="qloid", description="Finite quantaloids and enriched categories.",
        epilog="exit codes: 0 holds, 1 fails, 2 invalid input, 3 enumeration budget exceeded")
    p.add_argument("command", choices=COMMANDS, metavar="COMMAND",
                   help="one of: " + ", ".join(COMMANDS))
    p.add_argument("files", nargs="+", metavar="FILES", help="block files (.qd), read in order")
    p.add_argument("--quantale", help="quantale name (defaults to the only one)")
    p.add_argument("--category", help="category name")
    p.add_argument("--distributor", help="distributor name")
    p.add_argument("--functor", help="functor name (classify)")
    p.add_argument("--qset", help="Q-valued set name")
    p.add_argument("--type", help="object r of the base (classify)")
    p.add_argument("--max-enum", type=int, default=DEFAULT_MAX_ENUM,
                   help="refuse enumerations with more candidates than this")
    p.add_argument("--max-objects", type=int, default=2,
                   help="largest category size tried by the bounded symmetry search")
    p.add_argument("--format", choices=("text", "machine"), default="text",
                   help="machine prints one JSON document")
    return p


def run(command, ws: Workspace, args) -> tuple[Report, int]:
    rep = Report(command)
    with enumeration_budget(args.max_enum):
        HANDLERS[command](ws, args, rep)
    return rep, 0 if rep.holds else 1


def _emit(rep: Report, code, fmt, error=None, out=None):
    out = out or sys.stdout
    if fmt == "machine":
        doc = {"schema_version": SCHEMA_VERSION, "command": rep.command, "exit_code": code,
               "status": {0: "ok", 1: "fails", 2: "invalid", 3: "budget_exceeded"}[code],
               "result": rep.data}
        if error is not None:
            doc["error"] = error
        out.write(json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False, default=str) + "\n")
    else:
        for line in rep.lines:
            out.write(line + "\n")
        if error is not None:
            sys.stderr.write(f"error: {error}\n")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    rep = Report(args.command)
    try:
        with enumeration_budget(args.max_enum):
            ws = parse_files(args.files)
        rep, code = run(args.command, ws, args)
        _emit(rep, code, args.format)
        return code
    except EnumerationBudgetExceeded as exc:
        _emit(rep, 3, args.format, str(exc))
        return 3
    except (QloidError, OSError) as exc:
        _emit(rep, 2, args.format, str(exc))
        return 2


if __name__ == "__main__":
    sys.exit(main())
