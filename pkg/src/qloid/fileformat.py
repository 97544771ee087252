"""Plain-text block format for quantales, quantaloids, categories and friends.

A file is a sequence of blocks::

    quantale Q2
      elements bot b ar al c top
      le bot b | b ar | b al | ar c | al c | c top
      mult b b b | b al b | ...
      unit e
      involution al ar
    end

    quantaloid K
      objects p q
      hom p q bot u top          # elements of hom(p, q)
      le p q bot u | u top
      id p e
      compose p q r g f h | ...  # g∘f for f in hom(p,q), g in hom(q,r)
      involution p q u v | ...   # u in hom(p,q) goes to v in hom(q,p)
    end

    qcategory X over dq(Q2)
      object x b
      hom x x b
    end

    functor F from X to Y
      map x y
    end

    distributor F from X to Y
      at y x VALUE
    end

    qset S over Q2
      elements x y
      eps x y VALUE
    end

``#`` starts a comment.  Bases are written as a quantaloid name, ``dq(Name)``
or ``one(Name)`` for a quantale name.  Lattice orders are closed reflexively
and transitively; products and composites with a bottom may be omitted.  An
``involution`` line without pairs declares the identity involution.  Missing
``hom`` and ``at`` entries are bottom.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

from .diagonal import dq_from_quantale
from .distributor import Distributor, validate_distributor
from .errors import ParseError, UnresolvedReference
from .order_algebra import Quantale, validate_complete_lattice, validate_quantale
from .qcat import QCategory, QFunctor, validate_functor, validate_qcategory
from .qset import QValuedRelation, validate_qvalued_set
from .quantaloid import Quantaloid, one_object_quantaloid, validate_quantaloid

KINDS = ("quantale", "quantaloid", "qcategory", "functor", "distributor", "qset")

_TOKEN = re.compile(r"\||[^\s|]+")
_REF = re.compile(r"^(dq|one)\((.+)\)$")


@dataclass
class Workspace:
    quantales: dict = field(default_factory=dict)
    quantaloids: dict = field(default_factory=dict)
    categories: dict = field(default_factory=dict)
    functors: dict = field(default_factory=dict)
    distributors: dict = field(default_factory=dict)
    qsets: dict = field(default_factory=dict)

    def table(self, kind) -> dict:
        return {"quantale": self.quantales, "quantaloid": self.quantaloids,
                "qcategory": self.categories, "functor": self.functors,
                "distributor": self.distributors, "qset": self.qsets}[kind]

    def __eq__(self, other):
        if not isinstance(other, Workspace):
            return NotImplemented
        return all(self.table(k) == other.table(k) for k in KINDS)

    def merge(self, other: "Workspace"):
        for k in KINDS:
            mine = self.table(k)
            for name, obj in other.table(k).items():
                if name in mine:
                    raise ParseError(f"duplicate {k} name {name!r}")
                mine[name] = obj
        return self


# reading ------------------------------------------------------------------

@dataclass
class _Line:
    number: int
    tokens: list
    columns: list


@dataclass
class _Block:
    kind: str
    header: _Line
    body: list


def _lex(text: str):
    for n, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        ms = list(_TOKEN.finditer(line))
        if ms:
            yield _Line(n, [m.group() for m in ms], [m.start() + 1 for m in ms])


def _blocks(text: str, source):
    current = None
    for line in _lex(text):
        head = line.tokens[0]
        if current is None:
            if head not in KINDS:
                raise ParseError(f"expected a block keyword, got {head!r}", line.number, 1, source)
            current = _Block(head, line, [])
        elif head == "end":
            if len(line.tokens) != 1:
                raise ParseError("'end' takes no arguments", line.number, line.columns[1], source)
            yield current
            current = None
        elif head in KINDS:
            raise ParseError(f"block {current.header.tokens[:2]} is not closed before {head!r}",
                             line.number, 1, source)
        else:
            current.body.append(line)
    if current is not None:
        raise ParseError("missing 'end'", current.header.number, 1, source)


class _Reader:
    def __init__(self, ws: Workspace, source):
        self.ws = ws
        self.source = source
        self._bases = {}

    def fail(self, msg, line: _Line, i=0):
        col = line.columns[i] if i < len(line.columns) else None
        raise ParseError(msg, line.number, col, self.source)

    def groups(self, line: _Line, start, size):
        """Split tokens after ``start`` on '|' into groups of ``size``."""
        out, cur, idx = [], [], []
        for i in range(start, len(line.tokens)):
            t = line.tokens[i]
            if t == "|":
                out.append((cur, idx))
                cur, idx = [], []
            else:
                cur.append(t)
                idx.append(i)
        out.append((cur, idx))
        if out == [([], [])]:
            return []
        for g, gi in out:
            if len(g) != size:
                self.fail(f"expected {size} names per group, got {len(g)}", line,
                          gi[0] if gi else start)
        return [g for g, _ in out]

    def args(self, line: _Line, n, at_least=False):
        k = len(line.tokens) - 1
        if k < n or (k > n and not at_least) or "|" in line.tokens[1:n + 1]:
            self.fail(f"{line.tokens[0]!r} expects {'at least ' if at_least else ''}{n} arguments",
                      line, min(k, n) if k else 0)
        return line.tokens[1:n + 1]

    def header(self, b: _Block, pattern):
        toks = b.header.tokens
        if len(toks) != len(pattern) + 1:
            self.fail(f"malformed {b.kind} header", b.header, 0)
        for i, word in enumerate(pattern):
            if word is not None and toks[i + 1] != word:
                self.fail(f"expected {word!r}", b.header, i + 1)
        return toks[1:]

    def lookup(self, kind, name, line, i):
        table = self.ws.table(kind)
        if name not in table:
            raise UnresolvedReference(
                f"{self.source or '<input>'}:{line.number}:{line.columns[i]}: unknown {kind} {name!r}")
        return table[name]

    def base(self, ref, line, i) -> Quantaloid:
        m = _REF.match(ref)
        if m:
            Q = self.lookup_quantale(m.group(2), line, i)
            if ref not in self._bases:
                build = dq_from_quantale if m.group(1) == "dq" else one_object_quantaloid
                self._bases[ref] = build(Q)
            return self._bases[ref]
        return self.lookup("quantaloid", ref, line, i)

    def lookup_quantale(self, name, line, i):
        return self.lookup("quantale", name, line, i)

    def unknown(self, line):
        self.fail(f"unknown directive {line.tokens[0]!r}", line, 0)

    # blocks
    def quantale(self, b: _Block) -> Quantale:
        (name,) = self.header(b, [None])
        elements, le, mult, unit, inv = None, [], [], None, None
        for line in b.body:
            d = line.tokens[0]
            if d == "elements":
                self.args(line, 1, at_least=True)
                elements = line.tokens[1:]
            elif d == "le":
                le += self.groups(line, 1, 2)
            elif d == "mult":
                mult += self.groups(line, 1, 3)
            elif d == "unit":
                (unit,) = self.args(line, 1)
            elif d == "involution":
                inv = (inv or []) + self.groups(line, 1, 2)
            else:
                self.unknown(line)
        if elements is None:
            self.fail("quantale needs an 'elements' line", b.header)
        L = validate_complete_lattice(elements, le)
        return validate_quantale(L, mult, unit, inv, name)

    def quantaloid(self, b: _Block) -> Quantaloid:
        (name,) = self.header(b, [None])
        objects, elems, le, ids, comp, inv = None, {}, {}, {}, {}, None
        for line in b.body:
            d = line.tokens[0]
            if d == "objects":
                self.args(line, 1, at_least=True)
                objects = line.tokens[1:]
            elif d == "hom":
                p, q, _ = self.args(line, 3, at_least=True)
                elems[(p, q)] = line.tokens[3:]
            elif d == "le":
                p, q = self.args(line, 2, at_least=True)
                le.setdefault((p, q), []).extend(self.groups(line, 3, 2))
            elif d == "id":
                p, v = self.args(line, 2)
                ids[p] = v
            elif d == "compose":
                p, q, r = self.args(line, 3, at_least=True)
                comp.setdefault((p, q, r), []).extend(self.groups(line, 4, 3))
            elif d == "involution":
                inv = inv or {}
                if len(line.tokens) > 1:
                    p, q = self.args(line, 2, at_least=True)
                    inv.setdefault((p, q), []).extend(self.groups(line, 3, 2))
            else:
                self.unknown(line)
        if objects is None:
            self.fail("quantaloid needs an 'objects' line", b.header)
        homs = {pq: validate_complete_lattice(es, le.get(pq, [])) for pq, es in elems.items()}
        return validate_quantaloid(objects, homs, comp, ids, inv, name=name)

    def qcategory(self, b: _Block) -> QCategory:
        name, _, ref = self.header(b, [None, "over", None])
        K = self.base(ref, b.header, 3)
        types, hom = {}, {}
        for line in b.body:
            d = line.tokens[0]
            if d == "object":
                x, p = self.args(line, 2)
                if x in types:
                    self.fail(f"duplicate element {x!r}", line, 1)
                types[x] = p
            elif d == "hom":
                x, y, v = self.args(line, 3)
                hom[(x, y)] = v
            else:
                self.unknown(line)
        for (x, y) in hom:
            for z in (x, y):
                if z not in types:
                    raise UnresolvedReference(f"{self.source or '<input>'}: unknown element {z!r} in {name}")
        alpha = {(x, y): hom.get((x, y), K.hom(types[y], types[x]).bottom)
                 for x in types for y in types}
        return validate_qcategory(K, types, alpha, name)

    def _pair(self, b):
        name, _, src, _, tgt = self.header(b, [None, "from", None, "to", None])
        return name, self.lookup("qcategory", src, b.header, 3), self.lookup("qcategory", tgt, b.header, 5)

    def functor(self, b: _Block) -> QFunctor:
        name, X, Y = self._pair(b)
        m = {}
        for line in b.body:
            if line.tokens[0] != "map":
                self.unknown(line)
            x, y = self.args(line, 2)
            m[x] = y
        return validate_functor(X, Y, m, name)

    def distributor(self, b: _Block) -> Distributor:
        name, X, Y = self._pair(b)
        m = {}
        for line in b.body:
            if line.tokens[0] != "at":
                self.unknown(line)
            y, x, v = self.args(line, 3)
            if y not in Y.types or x not in X.types:
                raise UnresolvedReference(
                    f"{self.source or '<input>'}:{line.number}: unknown element in 'at {y} {x}'")
            m[(y, x)] = v
        return validate_distributor(X, Y, m, name, fill_bottom=True)

    def qset(self, b: _Block) -> QValuedRelation:
        name, _, qname = self.header(b, [None, "over", None])
        Q = self.lookup_quantale(qname, b.header, 3)
        carrier, eps = [], {}
        for line in b.body:
            d = line.tokens[0]
            if d == "elements":
                self.args(line, 1, at_least=True)
                carrier += [t for t in line.tokens[1:] if t not in carrier]
            elif d == "eps":
                x, y, v = self.args(line, 3)
                eps[(x, y)] = v
                carrier += [t for t in (x, y) if t not in carrier]
            else:
                self.unknown(line)
        return validate_qvalued_set(Q, carrier, eps)


def parse_text(text: str, source=None, workspace: Workspace | None = None) -> Workspace:
    """Parse and validate; later blocks may refer to earlier ones."""
    ws = workspace if workspace is not None else Workspace()
    reader = _Reader(ws, source)
    for b in _blocks(text, source):
        name = b.header.tokens[1] if len(b.header.tokens) > 1 else None
        if name is None:
            reader.fail(f"{b.kind} needs a name", b.header)
        table = ws.table(b.kind)
        if name in table:
            reader.fail(f"duplicate {b.kind} name {name!r}", b.header, 1)
        table[name] = getattr(reader, b.kind)(b)
    return ws


def parse_files(paths) -> Workspace:
    ws = Workspace()
    for p in paths:
        parse_text(Path(p).read_text(encoding="utf-8"), str(p), ws)
    return ws


# writing ------------------------------------------------------------------

def _pipe(groups):
    return " | ".join(" ".join(str(t) for t in g) for g in groups)


def _line(*parts):
    return "  " + " ".join(str(p) for p in parts if p != "")


def emit_quantale(Q: Quantale, name=None) -> str:
    out = [f"quantale {name or Q.name}", _line("elements", *Q.elements)]
    if Q.lattice.covers():
        out.append(_line("le", _pipe(Q.lattice.covers())))
    if Q.mult_entries():
        out.append(_line("mult", _pipe(Q.mult_entries())))
    if Q.unit is not None:
        out.append(_line("unit", Q.unit))
    if Q.has_involution:
        out.append(_line("involution", _pipe(Q.involution_entries())))
    out.append("end")
    return "\n".join(out)


def emit_quantaloid(K: Quantaloid, name=None) -> str:
    objs = K.objects
    out = [f"quantaloid {name or K.name}", _line("objects", *objs)]
    for p in objs:
        for q in objs:
            H = K.hom(p, q)
            out.append(_line("hom", p, q, *H.elements))
            if H.covers():
                out.append(_line("le", p, q, _pipe(H.covers())))
    for p in objs:
        out.append(_line("id", p, K.identity(p).value))
    for p in objs:
        for q in objs:
            for r in objs:
                entries = K.compose_entries(p, q, r)
                if entries:
                    out.append(_line("compose", p, q, r, _pipe(entries)))
    if K.has_involution:
        wrote = False
        for i, p in enumerate(objs):
            for q in objs[i:]:
                pairs = [(a, b) for a, b in K.involution_entries(p, q) if p != q or a != b]
                if pairs:
                    out.append(_line("involution", p, q, _pipe(pairs)))
                    wrote = True
        if not wrote:
            out.append(_line("involution"))
    out.append("end")
    return "\n".join(out)


def _check_names(names, what):
    bad = [x for x in names if not isinstance(x, str) or not _TOKEN.fullmatch(x) or x == "|"]
    if bad:
        raise ValueError(f"{what} names must be single tokens: {bad[:3]}")


def _same_quantale(q: Quantale, Q: Quantale) -> bool:
    """Equal, or equal once a commutative q is given the identity involution."""
    if q == Q:
        return True
    return not q.has_involution and q.is_commutative() and q.with_identity_involution() == Q


def base_reference(K: Quantaloid, ws: Workspace | None = None) -> str | None:
    """How a block refers to ``K``, or None when it must be written out."""
    if ws is not None:
        for n, other in ws.quantaloids.items():
            if other is K or other == K:
                return n
    if K.origin and K.origin[0] in ("dq", "one"):
        Q = K.origin[1]
        qname = Q.name
        if ws is not None:
            qname = next((n for n, q in ws.quantales.items() if _same_quantale(q, Q)), None)
        if qname:
            probe = dq_from_quantale(Q) if K.origin[0] == "dq" else one_object_quantaloid(Q)
            if probe == K:
                return f"{K.origin[0]}({qname})"
    return None


def emit_qcategory(X: QCategory, name=None, base_ref=None) -> str:
    _check_names(X.elements, "element")
    ref = base_ref or base_reference(X.base) or X.base.name
    out = [f"qcategory {name or X.name} over {ref}"]
    for x in X.elements:
        out.append(_line("object", x, X.types[x]))
    for x in X.elements:
        for y in X.elements:
            a = X.alpha(x, y)
            if a.value != X.base.hom(a.dom, a.cod).bottom:
                out.append(_line("hom", x, y, a.value))
    out.append("end")
    return "\n".join(out)


def emit_functor(F: QFunctor, name, source_name, target_name) -> str:
    out = [f"functor {name} from {source_name} to {target_name}"]
    out += [_line("map", x, F(x)) for x in F.source.elements]
    out.append("end")
    return "\n".join(out)


def emit_distributor(phi: Distributor, name, source_name, target_name) -> str:
    base = phi.source.base
    out = [f"distributor {name} from {source_name} to {target_name}"]
    for y in phi.target.elements:
        for x in phi.source.elements:
            m = phi.at(y, x)
            if m.value != base.hom(m.dom, m.cod).bottom:
                out.append(_line("at", y, x, m.value))
    out.append("end")
    return "\n".join(out)


def emit_qset(S: QValuedRelation, name, quantale_name) -> str:
    _check_names(S.carrier, "element")
    out = [f"qset {name} over {quantale_name}", _line("elements", *S.carrier)]
    out += [_line("eps", x, y, S(x, y)) for x in S.carrier for y in S.carrier]
    out.append("end")
    return "\n".join(out)


def _name_of(table, obj, what):
    for n, o in table.items():
        if o is obj:
            return n
    for n, o in table.items():
        if o == obj:
            return n
    raise ValueError(f"{what} is not in the workspace")


def emit_workspace(ws: Workspace) -> str:
    """Text that parses back to an equal workspace."""
    parts = [emit_quantale(Q, n) for n, Q in ws.quantales.items()]
    parts += [emit_quantaloid(K, n) for n, K in ws.quantaloids.items()]
    for n, X in ws.categories.items():
        ref = base_reference(X.base, ws)
        if ref is None:
            raise ValueError(f"category {n} lives over a base that is not in the workspace")
        parts.append(emit_qcategory(X, n, ref))
    cats = ws.categories
    for n, F in ws.functors.items():
        parts.append(emit_functor(F, n, _name_of(cats, F.source, "source"),
                                  _name_of(cats, F.target, "target")))
    for n, phi in ws.distributors.items():
        parts.append(emit_distributor(phi, n, _name_of(cats, phi.source, "source"),
                                      _name_of(cats, phi.target, "target")))
    for n, S in ws.qsets.items():
        qname = next((m for m, q in ws.quantales.items() if _same_quantale(q, S.quantale)), None)
        if qname is None:
            raise ValueError(f"qset {n} lives over a quantale that is not in the workspace")
        parts.append(emit_qset(S, n, qname))
    return "\n\n".join(parts) + "\n"
