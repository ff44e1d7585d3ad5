"""Line-oriented ``.qalg`` presentation syntax.

    # comment
    algebra vs3
    params p
    generators z0 z1
    order z0 z1 z1* z0*          # optional, lowest letter first
    relation z1 z0 = p z0 z1
    relation z1 z1* = 1 - z0 z0*

A ``*`` written directly after a generator name (no space) stars it;
elsewhere ``*`` is multiplication.  Coefficients use the scalar syntax.
This module only reads and writes the text; building the rewrite system
is left to :mod:`qcoact.presentations`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .ncpoly import Element, Letter, format_element
from .scalars import ScalarParser, ScalarSyntaxError, Token, tokenize

__all__ = ["ElementParser", "RawPresentation", "parse_text", "parse_element", "DSLError"]

RESERVED = {"q", "p", "w", "i", "sqrt", "algebra", "params", "generators", "order", "relation"}

DSLError = ScalarSyntaxError


class ElementParser(ScalarParser):
    """Scalar parser that also accepts generator names as atoms."""

    def __init__(self, tokens: List[Token], names: Dict[str, int], params, line: int = 1, start: int = 0):
        self.line = line
        self.params = set(params)
        self.tokens = tokens
        self.i = start
        self.names = names
        self.ngens = len(names)

    def name_atom(self, tok: Token):
        idx = self.names.get(tok.text)
        if idx is None:
            return super().name_atom(tok)
        self.next()
        starred = False
        nxt = self.peek()
        if nxt.kind == "sym" and nxt.text == "*" and nxt.col - 1 == tok.end:
            self.next()
            starred = True
        return Element.gen(self.ngens, idx, starred)

    def power(self, base):
        if self.at("^") and isinstance(base, Element):
            tok = self.next()
            e = self.exponent()
            if e < 0:
                self.error("negative power of a generator", tok)
            return base ** e
        return super().power(base)

    def element(self):
        """Parse an expression and lift it to an Element."""
        value = self.expr()
        if not isinstance(value, Element):
            value = Element.one(self.ngens, value)
        return value


@dataclass
class RawPresentation:
    name: Optional[str] = None
    params: Tuple[str, ...] = ()
    generators: Tuple[str, ...] = ()
    order: Optional[List[Letter]] = None
    relations: List[Tuple[Element, Element, int]] = field(default_factory=list)


def _names(tokens: List[Token], line: int) -> List[Token]:
    out = []
    for tok in tokens[1:-1]:
        if tok.kind != "name":
            raise DSLError("expected a name", line, tok.col, tok.text)
        out.append(tok)
    return out


def parse_text(text: str) -> RawPresentation:
    raw = RawPresentation()
    index: Dict[str, int] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0]
        if not line.strip():
            continue
        tokens = tokenize(line, lineno)
        head = tokens[0]
        if head.kind != "name":
            raise DSLError("expected a keyword", lineno, head.col, head.text)
        kw = head.text
        if kw == "algebra":
            args = _names(tokens, lineno)
            if len(args) != 1:
                raise DSLError("algebra takes one name", lineno, head.col, kw)
            raw.name = args[0].text
        elif kw == "params":
            args = _names(tokens, lineno)
            for tok in args:
                if tok.text not in ("p", "q", "w"):
                    raise DSLError(f"unknown parameter {tok.text!r}", lineno, tok.col, tok.text)
            raw.params = tuple(sorted({tok.text for tok in args}))
        elif kw == "generators":
            if raw.generators:
                raise DSLError("generators declared twice", lineno, head.col, kw)
            args = _names(tokens, lineno)
            if not args:
                raise DSLError("no generators", lineno, head.col, kw)
            for tok in args:
                if tok.text in RESERVED:
                    raise DSLError(f"reserved name {tok.text!r}", lineno, tok.col, tok.text)
                if tok.text in index:
                    raise DSLError(f"duplicate generator name {tok.text!r}", lineno, tok.col, tok.text)
                index[tok.text] = len(index)
            raw.generators = tuple(tok.text for tok in args)
        elif kw == "order":
            if not index:
                raise DSLError("order before generators", lineno, head.col, kw)
            letters = []
            toks = tokens[1:-1]
            j = 0
            while j < len(toks):
                tok = toks[j]
                if tok.kind != "name" or tok.text not in index:
                    raise DSLError("expected a generator name", lineno, tok.col, tok.text)
                starred = (j + 1 < len(toks) and toks[j + 1].text == "*"
                           and toks[j + 1].col - 1 == tok.end)
                letters.append(Letter(index[tok.text], starred))
                j += 2 if starred else 1
            if len(set(letters)) != len(letters) or len(letters) != 2 * len(index):
                raise DSLError("order must list every letter exactly once", lineno, head.col, kw)
            raw.order = letters
        elif kw == "relation":
            if not index:
                raise DSLError("relation before generators", lineno, head.col, kw)
            parser = ElementParser(tokens, index, raw.params, lineno, start=1)
            lhs = parser.element()
            parser.expect("=")
            rhs = parser.element()
            if parser.peek().kind != "end":
                parser.error("unexpected token")
            raw.relations.append((lhs, rhs, lineno))
        else:
            raise DSLError(f"unknown keyword {kw!r}", lineno, head.col, kw)
    if not raw.generators:
        raise DSLError("missing generators line", 1, 1)
    if raw.name is None:
        raise DSLError("missing algebra line", 1, 1)
    return raw


def parse_element(text: str, names: Sequence[str], params=("q", "p", "w")) -> Element:
    index = {n: i for i, n in enumerate(names)}
    parser = ElementParser(tokenize(text), index, params)
    value = parser.element()
    if parser.peek().kind != "end":
        parser.error("unexpected token")
    return value


def format_text(name: str, params: Sequence[str], generators: Sequence[str],
                order: Optional[Sequence[Letter]], relations: Sequence[Tuple[Element, Element]]) -> str:
    lines = [f"algebra {name}"]
    if params:
        lines.append("params " + " ".join(params))
    lines.append("generators " + " ".join(generators))
    if order is not None:
        lines.append("order " + " ".join(generators[l.index] + ("*" if l.starred else "") for l in order))
    for lhs, rhs in relations:
        lines.append(f"relation {format_element(lhs, generators)} = {format_element(rhs, generators)}")
    return "\n".join(lines) + "\n"
