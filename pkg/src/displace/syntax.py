"""ASCII surface syntax for types, configurations and hypersequents.

Type grammar: atoms are identifiers; ``I`` and ``J`` are the units;
binary operators are ``\\`` (under), ``/`` (over), ``*`` (product),
``^k`` (extract), ``!k`` (infix) and ``(o)k`` (discontinuous product),
``k`` defaulting to 1 when omitted.  Parentheses are required around
every binary subformula; the outermost binary may be written bare.

Configuration grammar: comma-separated items; ``[]`` is the separator;
``T{c1 : c2 : ...}`` is a hyperleaf with one filler per sort; ``0``
writes the empty configuration.  The sequent arrow is ``=>``.
"""

from __future__ import annotations

import string
from typing import Optional

from .config import (
    SEP,
    Config,
    HyperLeaf,
    Hypersequent,
    Leaf,
    config_latex,
    config_sort,
    config_text,
    mk_item,
    sequent_latex,
    sequent_text,
)
from .types import (
    Atom,
    DiscProd,
    Extract,
    InfixDn,
    InvalidTypeError,
    Over,
    Prod,
    TypeFormula,
    Under,
    UnitI,
    UnitJ,
    type_latex,
    type_text,
    validate_type,
)
from .types import I as UNIT_I
from .types import J as UNIT_J

_IDENT_START = set(string.ascii_letters + "_")
_IDENT_BODY = _IDENT_START | set(string.digits + "'")


class ParseError(ValueError):
    def __init__(self, text: str, pos: int, msg: str):
        super().__init__(f"column {pos + 1}: {msg}")
        self.text = text
        self.pos = pos
        self.msg = msg


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.i = 0

    def error(self, msg: str):
        raise ParseError(self.text, self.i, msg)

    def skip_ws(self) -> None:
        while self.i < len(self.text) and self.text[self.i] in " \t\n":
            self.i += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.i] if self.i < len(self.text) else ""

    def at(self, s: str) -> bool:
        self.skip_ws()
        return self.text.startswith(s, self.i)

    def eat(self, s: str) -> None:
        if not self.at(s):
            self.error(f"expected {s!r}")
        self.i += len(s)

    def ident(self) -> str:
        self.skip_ws()
        if self.i >= len(self.text) or self.text[self.i] not in _IDENT_START:
            self.error("expected an identifier")
        j = self.i
        while j < len(self.text) and self.text[j] in _IDENT_BODY:
            j += 1
        word = self.text[self.i : j]
        self.i = j
        return word

    def number(self) -> Optional[int]:
        self.skip_ws()
        j = self.i
        while j < len(self.text) and self.text[j].isdigit():
            j += 1
        if j == self.i:
            return None
        n = int(self.text[self.i : j])
        self.i = j
        return n

    def done(self) -> bool:
        self.skip_ws()
        return self.i >= len(self.text)


_BINOPS = ("\\", "/", "*", "^", "!", "(o)")


def _type_operand(sc: _Scanner) -> TypeFormula:
    if sc.at("("):
        # "(o)" never starts an operand; a plain "(" opens a subformula
        sc.eat("(")
        t = _type_expr(sc)
        sc.eat(")")
        return t
    name = sc.ident()
    if name == "I":
        return UNIT_I
    if name == "J":
        return UNIT_J
    return Atom(name)


def _peek_op(sc: _Scanner) -> Optional[str]:
    for op in _BINOPS:
        if sc.at(op):
            return op
    return None


def _type_expr(sc: _Scanner) -> TypeFormula:
    left = _type_operand(sc)
    op = _peek_op(sc)
    if op is None:
        return left
    sc.eat(op)
    k = 1
    if op in ("^", "!", "(o)"):
        n = sc.number()
        if n is not None:
            k = n
    right = _type_operand(sc)
    if op == "\\":
        return Under(left, right)
    if op == "/":
        return Over(left, right)
    if op == "*":
        return Prod(left, right)
    if op == "^":
        return Extract(k, left, right)
    if op == "!":
        return InfixDn(k, left, right)
    return DiscProd(k, left, right)


def parse_type(text: str, validate: bool = True) -> TypeFormula:
    sc = _Scanner(text)
    t = _type_expr(sc)
    if not sc.done():
        sc.error("trailing input after type")
    if validate:
        validate_type(t)
    return t


def _config(sc: _Scanner) -> Config:
    if sc.at("0"):
        sc.eat("0")
        return ()
    items: list = []
    while True:
        if sc.at("[]"):
            sc.eat("[]")
            items.append(SEP)
        else:
            t = _type_expr(sc)
            validate_type(t)
            if sc.at("{"):
                sc.eat("{")
                fillers = [_config(sc)]
                while sc.at(":"):
                    sc.eat(":")
                    fillers.append(_config(sc))
                sc.eat("}")
                if t.sort != len(fillers):
                    sc.error(
                        f"hyperleaf {t!r} has sort {t.sort} but {len(fillers)} fillers"
                    )
                items.append(HyperLeaf(t, fillers))
            else:
                if t.sort != 0:
                    sc.error(f"type {t!r} of sort {t.sort} needs fillers")
                items.append(Leaf(t))
        if sc.at(","):
            sc.eat(",")
            continue
        return tuple(items)


def parse_config(text: str) -> Config:
    sc = _Scanner(text)
    c = _config(sc)
    if not sc.done():
        sc.error("trailing input after configuration")
    return c


def parse_sequent(text: str) -> Hypersequent:
    sc = _Scanner(text)
    ant = _config(sc)
    sc.eat("=>")
    succ = _type_expr(sc)
    if not sc.done():
        sc.error("trailing input after sequent")
    validate_type(succ)
    if config_sort(ant) != succ.sort:
        sc.error(
            f"antecedent sort {config_sort(ant)} != succedent sort {succ.sort}"
        )
    return Hypersequent(ant, succ)


def render(x, format: str = "text") -> str:
    """Canonical text or LaTeX for a type, configuration or sequent."""
    if format == "text":
        if isinstance(x, TypeFormula):
            return type_text(x)
        if isinstance(x, Hypersequent):
            return sequent_text(x)
        return config_text(x)
    if format == "latex":
        if isinstance(x, TypeFormula):
            return type_latex(x)
        if isinstance(x, Hypersequent):
            return sequent_latex(x)
        return config_latex(x)
    raise ValueError(f"unknown format {format!r}")
