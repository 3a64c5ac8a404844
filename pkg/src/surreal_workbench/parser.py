"""Recursive-descent parser for workbench expressions.

Grammar::

    expr    := term (('+' | '-') term)*
    term    := factor (('*' | '/') factor)*
    factor  := base ('^' factor)?
    base    := NUMBER | 'w' | 'E' | '-' base | '(' expr ')'
             | ('exp' | 'log') ('_' NAT)? '(' expr ')'
             | 'D' '(' expr ')' | 'W' '(' expr ')'
             | 'compose' '(' expr ',' expr ')'
             | 'simplest' '(' '{' list '}' ',' '{' list '}' ')'
    list    := (expr (',' expr)*)?

Columns in error messages are 1-based.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from typing import Optional, Union

from .errors import ParseError


@dataclass(frozen=True)
class Number:
    value: Fraction


@dataclass(frozen=True)
class Omega:
    pass


@dataclass(frozen=True)
class EConst:
    pass


@dataclass(frozen=True)
class Atom:
    index: int


@dataclass(frozen=True)
class Add:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Neg:
    arg: "Expr"


@dataclass(frozen=True)
class Mul:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Div:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exponent: "Expr"


@dataclass(frozen=True)
class Exp:
    arg: "Expr"


@dataclass(frozen=True)
class Log:
    arg: "Expr"


@dataclass(frozen=True)
class LogIter:
    k: int
    arg: "Expr"


@dataclass(frozen=True)
class ExpIter:
    k: int
    arg: "Expr"


@dataclass(frozen=True)
class Derive:
    arg: "Expr"


@dataclass(frozen=True)
class Compose:
    f: "Expr"
    x: "Expr"


@dataclass(frozen=True)
class Simplest:
    left: tuple["Expr", ...]
    right: tuple["Expr", ...]


@dataclass(frozen=True)
class OmegaPow:
    arg: "Expr"


Expr = Union[
    Number, Omega, EConst, Atom, Add, Neg, Mul, Div, Pow, Exp, Log, LogIter, ExpIter,
    Derive, Compose, Simplest, OmegaPow,
]

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:\.\d+)?)|(?P<name>[A-Za-z]+(?:_\d+)?)|(?P<op>[-+*/^(),{}]))"
)

_FUNCS = {"exp", "log", "D", "W", "compose", "simplest"}


@dataclass(frozen=True)
class Token:
    kind: str  # "num", "name", "op", "end"
    text: str
    col: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    text = text.replace("−", "-")
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            col = pos + 1 + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise ParseError(f"unexpected character {text[col - 1]!r}", col, frozenset())
        kind = m.lastgroup
        tokens.append(Token(kind, m.group(kind), m.start(kind) + 1))
        pos = m.end()
    tokens.append(Token("end", "", len(text) + 1))
    return tokens


_BASE_START = frozenset({"NUMBER", "w", "E", "-", "(", "exp", "log", "D", "W", "compose", "simplest"})


class Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def fail(self, expected) -> ParseError:
        t = self.tok
        what = "end of input" if t.kind == "end" else repr(t.text)
        return ParseError(f"unexpected {what}", t.col, frozenset(expected))

    def accept(self, text: str) -> bool:
        if self.tok.kind == "op" and self.tok.text == text:
            self.i += 1
            return True
        return False

    def expect(self, text: str) -> None:
        if not self.accept(text):
            raise self.fail({text})

    def parse(self) -> Expr:
        e = self.expr()
        if self.tok.kind != "end":
            raise self.fail({"+", "-", "*", "/", "^", "end of input"})
        return e

    def expr(self) -> Expr:
        e = self.term()
        while True:
            if self.accept("+"):
                e = Add(e, self.term())
            elif self.accept("-"):
                e = Add(e, Neg(self.term()))
            else:
                return e

    def term(self) -> Expr:
        e = self.factor()
        while True:
            if self.accept("*"):
                e = Mul(e, self.factor())
            elif self.accept("/"):
                e = Div(e, self.factor())
            else:
                return e

    def factor(self) -> Expr:
        b = self.base()
        if self.accept("^"):
            return Pow(b, self.factor())
        return b

    def args(self, n: int) -> list[Expr]:
        self.expect("(")
        out = [self.expr()]
        for _ in range(n - 1):
            self.expect(",")
            out.append(self.expr())
        self.expect(")")
        return out

    def expr_list(self) -> tuple[Expr, ...]:
        self.expect("{")
        items: list[Expr] = []
        if not self.accept("}"):
            items.append(self.expr())
            while self.accept(","):
                items.append(self.expr())
            self.expect("}")
        return tuple(items)

    def base(self) -> Expr:
        t = self.tok
        if t.kind == "num":
            self.i += 1
            value = Fraction(Decimal(t.text)) if "." in t.text else Fraction(int(t.text))
            return Number(value)
        if t.kind == "op":
            if t.text == "-":
                self.i += 1
                return Neg(self.base())
            if t.text == "(":
                self.i += 1
                e = self.expr()
                self.expect(")")
                return e
            raise self.fail(_BASE_START)
        if t.kind == "name":
            name, _, sub = t.text.partition("_")
            if name == "w" and not sub:
                self.i += 1
                return Omega()
            if name == "E" and not sub:
                self.i += 1
                return EConst()
            if name in ("exp", "log"):
                self.i += 1
                k = int(sub) if sub else 1
                (arg,) = self.args(1)
                if k == 0:
                    return arg
                if k == 1:
                    return Exp(arg) if name == "exp" else Log(arg)
                return ExpIter(k, arg) if name == "exp" else LogIter(k, arg)
            if sub:
                raise self.fail(_BASE_START)
            if name == "D":
                self.i += 1
                return Derive(self.args(1)[0])
            if name == "W":
                self.i += 1
                return OmegaPow(self.args(1)[0])
            if name == "compose":
                self.i += 1
                f, x = self.args(2)
                return Compose(f, x)
            if name == "simplest":
                self.i += 1
                self.expect("(")
                left = self.expr_list()
                self.expect(",")
                right = self.expr_list()
                self.expect(")")
                return Simplest(left, right)
        raise self.fail(_BASE_START)


def parse(text: str) -> Expr:
    return Parser(text).parse()


def rational_literal(e: Expr) -> Optional[Fraction]:
    """The value of ``e`` if it is a literal such as ``3``, ``-1/2`` or ``(2/3)``."""
    if isinstance(e, Number):
        return e.value
    if isinstance(e, Neg):
        v = rational_literal(e.arg)
        return None if v is None else -v
    if isinstance(e, Div):
        a, b = rational_literal(e.left), rational_literal(e.right)
        if a is None or b is None or b == 0:
            return None
        return a / b
    return None
