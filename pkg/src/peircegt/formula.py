"""Formulas of GT: abstract syntax, concrete grammar, definitional expansion.

Primitive connectives are verum ``T``, weak negation ``-`` and the conditional
``->``.  Classical negation ``~`` and conjunction ``&`` are kept as their own
nodes because the graph translation treats them differently; the remaining
connectives are expanded while parsing::

    +X      ~-X         (strong affirmation)
    <>X     -~X         (weak affirmation)
    X | Y   ~X -> Y
    X <-> Y (X -> Y) & (Y -> X)

Grammar (tightest binding first)::

    formula := iff
    iff     := impl ("<->" impl)*          left-associative
    impl    := disj ("->" impl)?           right-associative
    disj    := conj ("|" conj)*            left-associative
    conj    := unary ("&" unary)*          left-associative
    unary   := ("-" | "~" | "+" | "<>") unary | primary
    primary := "T" | atom | "(" formula ")"
    atom    := [a-z][a-zA-Z0-9_]*
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

ATOM_RE = re.compile(r"[a-z][a-zA-Z0-9_]*\Z")


class Formula:
    """Base class of formula nodes.  Instances are immutable and hashable."""

    __slots__ = ()

    def __str__(self) -> str:
        return print_formula(self)


@dataclass(frozen=True, slots=True)
class Atom(Formula):
    name: str

    def __post_init__(self):
        if not ATOM_RE.match(self.name):
            raise ValueError(f"bad atom name {self.name!r}")

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True, slots=True)
class Top(Formula):
    def __str__(self) -> str:
        return "T"


@dataclass(frozen=True, slots=True)
class WeakNeg(Formula):
    operand: Formula


@dataclass(frozen=True, slots=True)
class ClassNeg(Formula):
    operand: Formula


@dataclass(frozen=True, slots=True)
class Impl(Formula):
    antecedent: Formula
    consequent: Formula


@dataclass(frozen=True, slots=True)
class Conj(Formula):
    left: Formula
    right: Formula


TOP = Top()
FALSUM = WeakNeg(TOP)


# sugar constructors, shared by the parser and the fixture tables


def strong(x: Formula) -> Formula:
    """``+X`` as ``~-X``."""
    return ClassNeg(WeakNeg(x))


def weak(x: Formula) -> Formula:
    """``<>X`` as ``-~X``."""
    return WeakNeg(ClassNeg(x))


def disj(x: Formula, y: Formula) -> Formula:
    return Impl(ClassNeg(x), y)


def iff(x: Formula, y: Formula) -> Formula:
    return Conj(Impl(x, y), Impl(y, x))


class FormulaSyntaxError(ValueError):
    """Raised for malformed formula text.  ``offset`` is a UTF-8 byte offset."""

    def __init__(self, message: str, text: str, index: int):
        self.offset = len(text[:index].encode("utf-8"))
        self.text = text
        super().__init__(f"{message} at byte {self.offset}")


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<op><->|<>|->|[-~+&|()])|(?P<ident>[A-Za-z_][A-Za-z0-9_]*))"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise FormulaSyntaxError(f"unknown token {text[pos]!r}", text, pos)
        start = m.start(m.lastgroup)
        value = m.group(m.lastgroup)
        if m.lastgroup == "ident":
            if value == "T":
                tokens.append(("top", value, start))
            elif ATOM_RE.match(value):
                tokens.append(("atom", value, start))
            else:
                raise FormulaSyntaxError(f"unknown token {value!r}", text, start)
        else:
            tokens.append((value, value, start))
        pos = m.end()
    tokens.append(("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> str:
        return self.tokens[self.i][0]

    def take(self) -> tuple[str, str, int]:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, what: str):
        kind, value, pos = self.tokens[self.i]
        found = "end of input" if kind == "eof" else repr(value)
        raise FormulaSyntaxError(f"expected {what}, found {found}", self.text, pos)

    def parse(self) -> Formula:
        f = self.iff()
        if self.peek() != "eof":
            self.fail("end of input")
        return f

    def iff(self) -> Formula:
        f = self.impl()
        while self.peek() == "<->":
            self.take()
            f = iff(f, self.impl())
        return f

    def impl(self) -> Formula:
        f = self.disj()
        if self.peek() == "->":
            self.take()
            return Impl(f, self.impl())
        return f

    def disj(self) -> Formula:
        f = self.conj()
        while self.peek() == "|":
            self.take()
            f = disj(f, self.conj())
        return f

    def conj(self) -> Formula:
        f = self.unary()
        while self.peek() == "&":
            self.take()
            f = Conj(f, self.unary())
        return f

    def unary(self) -> Formula:
        kind = self.peek()
        if kind == "-":
            self.take()
            return WeakNeg(self.unary())
        if kind == "~":
            self.take()
            return ClassNeg(self.unary())
        if kind == "+":
            self.take()
            return strong(self.unary())
        if kind == "<>":
            self.take()
            return weak(self.unary())
        return self.primary()

    def primary(self) -> Formula:
        kind, value, _ = self.tokens[self.i]
        if kind == "top":
            self.take()
            return TOP
        if kind == "atom":
            self.take()
            return Atom(value)
        if kind == "(":
            self.take()
            f = self.iff()
            if self.peek() != ")":
                self.fail("')'")
            self.take()
            return f
        self.fail("a formula")


def parse_formula(text: str) -> Formula:
    """Parse formula text, expanding the sugar connectives."""
    return _Parser(text).parse()


# printer precedences; higher binds tighter
_IMPL, _CONJ, _UNARY = 1, 2, 3


def _prec(f: Formula) -> int:
    if isinstance(f, Impl):
        return _IMPL
    if isinstance(f, Conj):
        return _CONJ
    return _UNARY


def print_formula(f: Formula) -> str:
    """Canonical text with the fewest parentheses the grammar allows."""
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Top):
        return "T"
    if isinstance(f, (WeakNeg, ClassNeg)):
        sym = "-" if isinstance(f, WeakNeg) else "~"
        return sym + _wrap(f.operand, _prec(f.operand) < _UNARY)
    if isinstance(f, Impl):
        left = _wrap(f.antecedent, _prec(f.antecedent) <= _IMPL)
        right = _wrap(f.consequent, _prec(f.consequent) < _IMPL)
        return f"{left} -> {right}"
    if isinstance(f, Conj):
        left = _wrap(f.left, _prec(f.left) < _CONJ)
        right = _wrap(f.right, _prec(f.right) <= _CONJ)
        return f"{left} & {right}"
    raise TypeError(f"not a formula: {f!r}")


def _wrap(f: Formula, parens: bool) -> str:
    s = print_formula(f)
    return f"({s})" if parens else s


@lru_cache(maxsize=None)
def expand_defined(f: Formula) -> Formula:
    """Rewrite ``~`` and ``&`` into the primitive connectives T, -, ->."""
    if isinstance(f, (Atom, Top)):
        return f
    if isinstance(f, WeakNeg):
        return WeakNeg(expand_defined(f.operand))
    if isinstance(f, Impl):
        return Impl(expand_defined(f.antecedent), expand_defined(f.consequent))
    if isinstance(f, ClassNeg):
        return Impl(expand_defined(f.operand), FALSUM)
    if isinstance(f, Conj):
        return expand_defined(ClassNeg(Impl(f.left, ClassNeg(f.right))))
    raise TypeError(f"not a formula: {f!r}")


def complexity_K(f: Formula) -> int:
    """Formula complexity: atoms and T count 0, each connective adds one
    above its deepest operand."""
    if isinstance(f, (Atom, Top)):
        return 0
    if isinstance(f, (WeakNeg, ClassNeg)):
        return 1 + complexity_K(f.operand)
    if isinstance(f, Impl):
        return 1 + max(complexity_K(f.antecedent), complexity_K(f.consequent))
    if isinstance(f, Conj):
        return 1 + max(complexity_K(f.left), complexity_K(f.right))
    raise TypeError(f"not a formula: {f!r}")


def children(f: Formula) -> tuple[Formula, ...]:
    if isinstance(f, (WeakNeg, ClassNeg)):
        return (f.operand,)
    if isinstance(f, Impl):
        return (f.antecedent, f.consequent)
    if isinstance(f, Conj):
        return (f.left, f.right)
    return ()


def subformulas(f: Formula) -> Iterator[Formula]:
    """Post-order walk: every operand is yielded before its parent."""
    for c in children(f):
        yield from subformulas(c)
    yield f


def atoms(f: Formula) -> tuple[str, ...]:
    """Sorted atom names occurring in ``f``."""
    return tuple(sorted({g.name for g in subformulas(f) if isinstance(g, Atom)}))
