"""Ring and map description files: parsers and canonical printers.

Ring file::

    field Q            # or: field Fp 5
    vars x, y, t:2     # optional :weight suffixes
    ideal x^2 - y*z, x*y

Map file (paths relative to the map file)::

    source a.ring
    target b.ring
    images x -> y^2, t -> 0        # or: quotient-by x, y
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass, field

from .errors import CIHomError, IllDefinedMapError, ParseError
from .field import Field
from .ideal import GradedAlgebra, HomogeneousIdeal
from .maps import GradedMap
from .poly import PolyRing

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9']*)|(->|[-+*/^(),:]))")
_NAME = re.compile(r"[A-Za-z_][A-Za-z_0-9']*$")


def _tokenize(text, line, col0, source):
    """List of ``(kind, value, column)``; kinds are num, name, op, end."""
    out = []
    pos = 0
    while True:
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            rest = text[pos:]
            if rest.strip():
                col = col0 + pos + (len(rest) - len(rest.lstrip()))
                raise ParseError(f"unexpected character {rest.strip()[0]!r}", line, col, source)
            out.append(("end", None, col0 + len(text)))
            return out
        col = col0 + m.start(m.lastindex)
        num, name, op = m.groups()
        if num is not None:
            out.append(("num", int(num), col))
        elif name is not None:
            out.append(("name", name, col))
        else:
            out.append(("op", op, col))
        pos = m.end()


class _ExprParser:
    """Recursive-descent parser for polynomial expressions.

    Grammar: ``expr := ['-'|'+'] term (('+'|'-') term)*``,
    ``term := power (('*'|'/') power)*``, ``power := atom ['^' num]``,
    ``atom := num | name | '(' expr ')'``.  Division is only by nonzero
    constants.
    """

    def __init__(self, tokens, ring, line, source):
        self.toks = tokens
        self.i = 0
        self.ring = ring
        self.line = line
        self.source = source

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        return ParseError(msg, self.line, tok[2], self.source)

    def expect(self, op):
        t = self.take()
        if t[0] != "op" or t[1] != op:
            raise self.error(f"expected {op!r}", t)
        return t

    def at_op(self, *ops):
        t = self.peek()
        return t[0] == "op" and t[1] in ops

    def expr(self):
        sign = None
        if self.at_op("-", "+"):
            sign = self.take()[1]
        acc = self.term()
        if sign == "-":
            acc = -acc
        while self.at_op("+", "-"):
            op = self.take()[1]
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self):
        acc = self.power()
        while self.at_op("*", "/"):
            op = self.take()
            rhs = self.power()
            if op[1] == "*":
                acc = acc * rhs
            else:
                if not rhs.is_constant() or rhs.is_zero():
                    raise self.error("division is only allowed by nonzero constants", op)
                f = self.ring.field
                acc = acc * self.ring.const(f.inv(rhs.leading_coefficient()))
        t = self.peek()
        if t[0] in ("num", "name") or (t[0] == "op" and t[1] == "("):
            raise self.error("implicit multiplication is not allowed; use '*'", t)
        return acc

    def power(self):
        base = self.atom()
        if self.at_op("^"):
            self.take()
            t = self.take()
            if t[0] != "num":
                raise self.error("exponent must be a non-negative integer", t)
            base = base ** t[1]
        return base

    def atom(self):
        t = self.take()
        if t[0] == "num":
            return self.ring.const(t[1])
        if t[0] == "name":
            if t[1] not in self.ring.names:
                raise self.error(f"unknown variable {t[1]!r}", t)
            return self.ring.var(t[1])
        if t[0] == "op" and t[1] == "(":
            e = self.expr()
            self.expect(")")
            return e
        if t[0] == "end":
            raise self.error("unexpected end of expression", t)
        raise self.error(f"unexpected {t[1]!r}", t)


def parse_polynomial(text, ring, line=1, col=1, source="<string>"):
    toks = _tokenize(text, line, col, source)
    p = _ExprParser(toks, ring, line, source)
    e = p.expr()
    if p.peek()[0] != "end":
        raise p.error(f"unexpected {p.peek()[1]!r}")
    return e


def _split_commas(text, col0):
    """Split on top-level commas; yields ``(piece, column)``."""
    depth = 0
    start = 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            yield text[start:i], col0 + start
            start = i + 1
    yield text[start:], col0 + start


def _lines(text):
    """Meaningful lines as ``(line_no, keyword, keyword_column, rest, rest_column)``."""
    for no, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        if not body.strip():
            continue
        stripped = body.lstrip()
        lead = len(body) - len(stripped)
        parts = stripped.split(None, 1)
        kw = parts[0]
        if len(parts) > 1:
            rest = parts[1]
            rest_col = lead + len(kw) + (len(stripped) - len(kw) - len(rest)) + 1
        else:
            rest, rest_col = "", lead + len(kw) + 1
        yield no, kw, lead + 1, rest.rstrip(), rest_col


@dataclass
class RingFile:
    field: Field
    names: tuple
    weights: tuple
    ideal: tuple = ()
    path: str = None

    def ring(self):
        return PolyRing(self.field, self.names, self.weights)

    def algebra(self):
        ring = self.ring()
        return GradedAlgebra(ring, HomogeneousIdeal(ring, self.ideal))

    def to_text(self):
        return print_ring(self.algebra())

    def __eq__(self, other):
        return (
            isinstance(other, RingFile)
            and self.field == other.field
            and self.names == other.names
            and self.weights == other.weights
            and tuple(self.ideal) == tuple(other.ideal)
        )


def parse_ring(text, source="<string>"):
    fld = None
    names, weights = None, None
    ring = None
    ideal = []
    seen = set()
    for no, kw, kw_col, rest, col in _lines(text):
        if kw in ("field", "vars") and kw in seen:
            raise ParseError(f"duplicate {kw!r} line", no, kw_col, source)
        if kw == "field":
            seen.add(kw)
            parts = rest.split()
            if parts == ["Q"]:
                fld = Field(0)
            elif len(parts) == 2 and parts[0] == "Fp" and parts[1].isdigit():
                try:
                    fld = Field(int(parts[1]))
                except ValueError as exc:
                    pcol = col + rest.index(parts[1], rest.index("Fp") + 2)
                    raise ParseError(str(exc), no, pcol, source) from None
            else:
                raise ParseError("expected 'field Q' or 'field Fp <prime>'", no, col, source)
        elif kw == "vars":
            seen.add(kw)
            if fld is None:
                raise ParseError("'field' must come before 'vars'", no, kw_col, source)
            names, weights = [], []
            if rest.strip():
                for piece, pcol in _split_commas(rest, col):
                    item = piece.strip()
                    icol = pcol + len(piece) - len(piece.lstrip())
                    name, _, w = item.partition(":")
                    name = name.strip()
                    if not _NAME.match(name):
                        raise ParseError(f"invalid variable name {name!r}", no, icol, source)
                    if name in names:
                        raise ParseError(f"duplicate variable {name!r}", no, icol, source)
                    if w:
                        w = w.strip()
                        if not w.isdigit() or int(w) < 1:
                            raise ParseError(f"weight must be a positive integer, got {w!r}", no, icol, source)
                        weights.append(int(w))
                    else:
                        weights.append(1)
                    names.append(name)
            ring = PolyRing(fld, names, weights)
        elif kw == "ideal":
            if ring is None:
                raise ParseError("'vars' must come before 'ideal'", no, kw_col, source)
            if not rest.strip():
                continue
            for piece, pcol in _split_commas(rest, col):
                if not piece.strip():
                    raise ParseError("empty generator", no, pcol, source)
                g = parse_polynomial(piece, ring, no, pcol, source)
                if g.is_zero():
                    continue
                if not g.is_homogeneous():
                    raise ParseError(f"generator {g} is not homogeneous", no, pcol, source)
                if g.degree() <= 0:
                    raise ParseError(f"generator {g} is a unit; ideals must lie in the irrelevant ideal", no, pcol, source)
                ideal.append(g)
        else:
            raise ParseError(f"unknown keyword {kw!r}", no, kw_col, source)
    if fld is None:
        raise ParseError("missing 'field' line", 1, 1, source)
    if ring is None:
        ring = PolyRing(fld, [], [])
        names, weights = [], []
    return RingFile(fld, tuple(names), tuple(weights), tuple(ideal))


def load_ring(path):
    with open(path, encoding="utf-8") as fh:
        rf = parse_ring(fh.read(), source=str(path))
    rf.path = str(path)
    return rf


def print_ring(algebra):
    """Canonical text for a graded algebra."""
    ring = algebra.ring
    lines = [f"field {algebra.field.name}"]
    vs = ", ".join(n if w == 1 else f"{n}:{w}" for n, w in zip(ring.names, ring.weights))
    lines.append(f"vars {vs}".rstrip())
    if algebra.ideal.gens:
        lines.append("ideal " + ", ".join(str(g) for g in algebra.ideal.gens))
    return "\n".join(lines) + "\n"


@dataclass
class MapFile:
    source: str
    target: str = None
    kind: str = "images"  # or "quotient-by"
    images: dict = field(default_factory=dict)  # source var -> text
    elements: list = field(default_factory=list)  # texts
    path: str = None
    source_ring: RingFile = None
    target_ring: RingFile = None
    _map: object = None

    def build(self):
        if self._map is None:
            A = self.source_ring.algebra()
            if self.kind == "quotient-by":
                ring = A.ring
                elems = [parse_polynomial(e, ring) for e in self.elements]
                B = self.target_ring.algebra() if self.target_ring else None
                self._map = GradedMap.quotient(A, elems, target=B)
            else:
                B = self.target_ring.algebra()
                imgs = [parse_polynomial(self.images[n], B.ring) for n in A.ring.names]
                self._map = GradedMap(A, B, imgs)
        return self._map

    def to_text(self):
        lines = [f"source {self.source}"]
        if self.target:
            lines.append(f"target {self.target}")
        if self.kind == "quotient-by":
            lines.append("quotient-by " + ", ".join(self.elements))
        else:
            lines.append(
                "images " + ", ".join(f"{n} -> {e}" for n, e in self.images.items())
            )
        return "\n".join(lines) + "\n"

    def __eq__(self, other):
        return (
            isinstance(other, MapFile)
            and (self.source, self.target, self.kind) == (other.source, other.target, other.kind)
            and self.images == other.images
            and self.elements == other.elements
        )


def parse_map(text, source="<string>", base_dir=None, load=True):
    """Parse a map file; with ``load`` the ring files are read and the map built."""
    mf = MapFile(source=None)
    mode_seen = False
    locs = {}
    for no, kw, kw_col, rest, col in _lines(text):
        if kw in ("source", "target"):
            if getattr(mf, kw) is not None:
                raise ParseError(f"duplicate {kw!r} line", no, kw_col, source)
            if not rest.strip():
                raise ParseError(f"{kw!r} needs a ring file path", no, col, source)
            setattr(mf, kw, rest.strip())
            locs[kw] = (no, col)
        elif kw in ("quotient-by", "images"):
            if mode_seen:
                raise ParseError("only one 'images' or 'quotient-by' line is allowed", no, kw_col, source)
            mode_seen = True
            mf.kind = kw
            locs["body"] = (no, col, rest)
            pieces = list(_split_commas(rest, col)) if rest.strip() else []
            for piece, pcol in pieces:
                if not piece.strip():
                    raise ParseError("empty entry", no, pcol, source)
                if kw == "quotient-by":
                    mf.elements.append(piece.strip())
                else:
                    if "->" not in piece:
                        raise ParseError("expected 'var -> expression'", no, pcol, source)
                    name, _, expr = piece.partition("->")
                    name = name.strip()
                    if name in mf.images:
                        raise ParseError(f"variable {name!r} assigned twice", no, pcol, source)
                    if not expr.strip():
                        raise ParseError(f"missing image for {name!r}", no, pcol, source)
                    mf.images[name] = expr.strip()
        else:
            raise ParseError(f"unknown keyword {kw!r}", no, kw_col, source)
    if mf.source is None:
        raise ParseError("missing 'source' line", 1, 1, source)
    if not mode_seen:
        raise ParseError("missing 'images' or 'quotient-by' line", 1, 1, source)
    if mf.kind == "images" and mf.target is None:
        raise ParseError("'images' maps need a 'target' line", 1, 1, source)
    if not load:
        return mf

    base_dir = base_dir or "."

    def load_at(kw):
        path = os.path.join(base_dir, getattr(mf, kw))
        no, col = locs[kw]
        try:
            return load_ring(path)
        except OSError as exc:
            raise ParseError(f"cannot read ring file: {exc.strerror}", no, col, source) from None

    mf.source_ring = load_at("source")
    if mf.target is not None:
        mf.target_ring = load_at("target")
    no, col, rest = locs["body"]
    # re-parse expressions against the right rings so positions are reported
    if mf.kind == "images":
        names = mf.source_ring.names
        missing = [n for n in names if n not in mf.images]
        extra = [n for n in mf.images if n not in names]
        if missing or extra:
            raise ParseError(
                f"images must assign every source variable exactly once "
                f"(missing {missing}, unknown {extra})",
                no, col, source,
            )
        ring = mf.target_ring.algebra().ring
        for piece, pcol in _split_commas(rest, col) if rest.strip() else ():
            _, _, expr = piece.partition("->")
            off = pcol + piece.index("->") + 2
            parse_polynomial(expr, ring, no, off, source)
    else:
        ring = mf.source_ring.algebra().ring
        for piece, pcol in _split_commas(rest, col):
            parse_polynomial(piece, ring, no, pcol, source)
    try:
        mf.build()
    except IllDefinedMapError:
        raise
    except CIHomError as exc:
        raise IllDefinedMapError(str(exc)) from None
    return mf


def load_map(path, load=True):
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    mf = parse_map(text, source=str(path), base_dir=os.path.dirname(os.path.abspath(path)), load=load)
    mf.path = str(path)
    return mf


__all__ = [
    "MapFile",
    "RingFile",
    "load_map",
    "load_ring",
    "parse_map",
    "parse_polynomial",
    "parse_ring",
    "print_ring",
]
