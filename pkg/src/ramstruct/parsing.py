"""Parsers and renderers for group specs, element literals, and tuple literals.

Group spec grammar (case-insensitive keywords, whitespace-insensitive):

    spec    := chain | 'abelian' '(' int (',' int)* ')' | 'heis' '(' int ')'
             | 'cayley' ':' path | 'prod' '(' spec ',' spec ')'
    chain   := 'C' int ('x' 'C' int)*

Element literals depend on the realization: abelian groups accept exponent
vectors "(e1,...,ek)" and generator words like "x1*x2^-1" or "(x1*x2)^-1";
Heisenberg groups accept triples "(a,b,c)"; table groups accept "#<index>" or
a declared name; direct products accept "(<left>|<right>)".  Tuples are
semicolon-separated element literals in brackets: "[x1; x2; (x1*x2)^-1]".
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Union

from .errors import InvalidOrder, InvalidPrime, OutOfRange, ParseError, RamError
from .groups import (
    AbelianGroup,
    CayleyTableGroup,
    DirectProductGroup,
    FiniteGroup,
    HeisenbergGroup,
    _is_prime,
    direct_product,
)
from .structures import GenTuple


# -- group specs -----------------------------------------------------------------


@dataclass(frozen=True)
class AbelianSpec:
    orders: tuple[int, ...]

    def to_group(self) -> AbelianGroup:
        return AbelianGroup(self.orders)

    def render(self) -> str:
        return "x".join(f"C{m}" for m in self.orders)


@dataclass(frozen=True)
class HeisSpec:
    p: int

    def to_group(self) -> HeisenbergGroup:
        return HeisenbergGroup(self.p)

    def render(self) -> str:
        return f"heis({self.p})"


@dataclass(frozen=True)
class CayleySpec:
    path: str

    def to_group(self) -> CayleyTableGroup:
        return load_cayley_file(self.path)

    def render(self) -> str:
        return f"cayley:{self.path}"


@dataclass(frozen=True)
class ProdSpec:
    left: "GroupSpec"
    right: "GroupSpec"

    def to_group(self) -> DirectProductGroup:
        return direct_product(self.left.to_group(), self.right.to_group())

    def render(self) -> str:
        return f"prod({self.left.render()},{self.right.render()})"


GroupSpec = Union[AbelianSpec, HeisSpec, CayleySpec, ProdSpec]


def load_cayley_file(path: str) -> CayleyTableGroup:
    data = json.loads(Path(path).read_text())
    if "order" not in data or "table" not in data:
        raise RamError(f"cayley file {path} lacks 'order'/'table' fields")
    if len(data["table"]) != data["order"]:
        raise RamError(f"cayley file {path}: table size does not match declared order")
    return CayleyTableGroup(
        data["table"], data.get("names"), label=Path(path).stem
    )


class _Cursor:
    __slots__ = ("text", "pos")

    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def at_end(self) -> bool:
        self.skip_ws()
        return self.pos >= len(self.text)

    def error(self, message: str) -> ParseError:
        return ParseError(message, self.text, self.pos)

    def expect(self, ch: str):
        if self.peek() != ch:
            raise self.error(f"expected '{ch}'")
        self.pos += 1

    def match_keyword(self, word: str) -> bool:
        self.skip_ws()
        end = self.pos + len(word)
        if self.text[self.pos : end].lower() == word:
            self.pos = end
            return True
        return False

    def integer(self, signed: bool = False) -> int:
        self.skip_ws()
        start = self.pos
        if signed and self.pos < len(self.text) and self.text[self.pos] in "+-":
            self.pos += 1
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start or self.text[start:self.pos] in "+-":
            raise self.error("expected an integer")
        return int(self.text[start : self.pos])


def parse_group_spec(text: str) -> GroupSpec:
    cur = _Cursor(text)
    spec = _parse_spec(cur)
    if not cur.at_end():
        raise cur.error("unexpected trailing input")
    return spec


def _parse_spec(cur: _Cursor) -> GroupSpec:
    cur.skip_ws()
    rest = cur.text[cur.pos :].lower()
    if rest.startswith("abelian"):
        cur.pos += len("abelian")
        cur.expect("(")
        orders = [_order(cur)]
        while cur.peek() == ",":
            cur.expect(",")
            orders.append(_order(cur))
        cur.expect(")")
        return AbelianSpec(tuple(orders))
    if rest.startswith("heis"):
        cur.pos += len("heis")
        cur.expect("(")
        at = cur.pos
        p = cur.integer()
        if p < 3 or not _is_prime(p):
            raise InvalidPrime(f"heis needs an odd prime, got {p}", cur.text, at)
        cur.expect(")")
        return HeisSpec(p)
    if rest.startswith("cayley"):
        cur.pos += len("cayley")
        cur.expect(":")
        start = cur.pos
        depth = 0
        while cur.pos < len(cur.text):
            ch = cur.text[cur.pos]
            if ch == "(":
                depth += 1
            elif ch == ")" and depth == 0:
                break
            elif ch == ")":
                depth -= 1
            elif ch == "," and depth == 0:
                break
            cur.pos += 1
        path = cur.text[start : cur.pos].strip()
        if not path:
            raise cur.error("empty cayley path")
        return CayleySpec(path)
    if rest.startswith("prod"):
        cur.pos += len("prod")
        cur.expect("(")
        left = _parse_spec(cur)
        cur.expect(",")
        right = _parse_spec(cur)
        cur.expect(")")
        return ProdSpec(left, right)
    if cur.peek() in ("C", "c"):
        orders = [_cyclic_atom(cur)]
        while cur.peek() in ("x", "X"):
            cur.pos += 1
            orders.append(_cyclic_atom(cur))
        return AbelianSpec(tuple(orders))
    raise cur.error("expected a group spec")


def _cyclic_atom(cur: _Cursor) -> int:
    if cur.peek() not in ("C", "c"):
        raise cur.error("expected 'C'")
    cur.pos += 1
    return _order(cur)


def _order(cur: _Cursor) -> int:
    at = cur.pos
    n = cur.integer()
    if n < 2:
        raise InvalidOrder(f"cyclic order must be >= 2, got {n}", cur.text, at)
    return n


def build_group(text: str) -> FiniteGroup:
    return parse_group_spec(text).to_group()


# -- element literals ---------------------------------------------------------------


def parse_element(G: FiniteGroup, text: str) -> int:
    cur = _Cursor(text)
    e = _element(cur, G)
    if not cur.at_end():
        raise cur.error("unexpected trailing input")
    return e


def _element(cur: _Cursor, G: FiniteGroup) -> int:
    if isinstance(G, AbelianGroup):
        return _abelian_word(cur, G)
    if isinstance(G, HeisenbergGroup):
        return _heisenberg_triple(cur, G)
    if isinstance(G, DirectProductGroup):
        cur.expect("(")
        left = _element(cur, G.left)
        cur.expect("|")
        right = _element(cur, G.right)
        cur.expect(")")
        return G.index_of(left, right)
    if isinstance(G, CayleyTableGroup):
        return _table_element(cur, G)
    raise cur.error(f"no element grammar for {type(G).__name__}")


def _abelian_word(cur: _Cursor, G: AbelianGroup) -> int:
    acc = _abelian_factor(cur, G)
    while cur.peek() == "*":
        cur.expect("*")
        acc = G.mul(acc, _abelian_factor(cur, G))
    return acc


def _abelian_factor(cur: _Cursor, G: AbelianGroup) -> int:
    base = _abelian_atom(cur, G)
    if cur.peek() == "^":
        cur.expect("^")
        return G.power(base, cur.integer(signed=True))
    return base


def _abelian_atom(cur: _Cursor, G: AbelianGroup) -> int:
    ch = cur.peek()
    if ch == "1":
        cur.pos += 1
        return 0
    if ch in ("x", "X"):
        cur.pos += 1
        at = cur.pos
        i = cur.integer()
        if not 1 <= i <= len(G.orders):
            raise OutOfRange(f"generator x{i} out of range (1..{len(G.orders)})")
        return G.generator(i - 1)
    if ch == "(":
        if _looks_like_vector(cur):
            return _abelian_vector(cur, G)
        cur.expect("(")
        inner = _abelian_word(cur, G)
        cur.expect(")")
        return inner
    raise cur.error("expected '1', a generator 'x<i>', a vector, or '('")


def _looks_like_vector(cur: _Cursor) -> bool:
    depth = 0
    for ch in cur.text[cur.pos :]:
        if ch == "(":
            depth += 1
        elif ch == ")":
            return True
        elif not (ch.isdigit() or ch in ",-+ \t"):
            return False
    return False


def _abelian_vector(cur: _Cursor, G: AbelianGroup) -> int:
    cur.expect("(")
    coords = [cur.integer(signed=True)]
    while cur.peek() == ",":
        cur.expect(",")
        coords.append(cur.integer(signed=True))
    cur.expect(")")
    if len(coords) != len(G.orders):
        raise cur.error(f"vector needs {len(G.orders)} coordinates")
    for e, m in zip(coords, G.orders):
        if not 0 <= e < m:
            raise OutOfRange(f"coordinate {e} out of range for C{m}")
    return G.index_of(coords)


def _heisenberg_triple(cur: _Cursor, G: HeisenbergGroup) -> int:
    cur.expect("(")
    coords = [cur.integer(signed=True)]
    while cur.peek() == ",":
        cur.expect(",")
        coords.append(cur.integer(signed=True))
    cur.expect(")")
    if len(coords) != 3:
        raise cur.error("Heisenberg elements are triples")
    return G.index_of(coords)


def _table_element(cur: _Cursor, G: CayleyTableGroup) -> int:
    if cur.peek() == "#":
        cur.expect("#")
        at = cur.pos
        i = cur.integer()
        if not 0 <= i < G.order:
            raise OutOfRange(f"element #{i} out of range (order {G.order})")
        return i
    if G.names:
        cur.skip_ws()
        rest = cur.text[cur.pos :]
        for name in sorted(set(G.names), key=len, reverse=True):
            if rest.startswith(name):
                cur.pos += len(name)
                return G.names.index(name)
    raise cur.error("expected '#<index>' or a declared element name")


def render_element(G: FiniteGroup, a: int) -> str:
    """Canonical literal for an element; abelian groups render as generator
    words to match the tuple notation used everywhere else."""
    G.check_index(a)
    if isinstance(G, AbelianGroup):
        vec = G.vector(a)
        parts = []
        for i, e in enumerate(vec):
            if e == 1:
                parts.append(f"x{i + 1}")
            elif e > 1:
                parts.append(f"x{i + 1}^{e}")
        return "*".join(parts) if parts else "1"
    if isinstance(G, HeisenbergGroup):
        return "({},{},{})".format(*G.triple(a))
    if isinstance(G, DirectProductGroup):
        left, right = G.pair(a)
        return f"({render_element(G.left, left)}|{render_element(G.right, right)})"
    if isinstance(G, CayleyTableGroup):
        name = G.name_of(a)
        return name if name is not None else f"#{a}"
    raise RamError(f"no renderer for {type(G).__name__}")


# -- tuples -----------------------------------------------------------------------


def parse_tuple(G: FiniteGroup, text: str) -> GenTuple:
    cur = _Cursor(text)
    cur.expect("[")
    if cur.peek() == "]":
        raise cur.error("empty tuple")
    entries = [_element(cur, G)]
    while cur.peek() == ";":
        cur.expect(";")
        entries.append(_element(cur, G))
    cur.expect("]")
    if not cur.at_end():
        raise cur.error("unexpected trailing input")
    return GenTuple(G, tuple(entries))


def render_tuple(T: GenTuple) -> str:
    return "[" + "; ".join(render_element(T.group, g) for g in T.entries) + "]"
