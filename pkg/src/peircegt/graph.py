"""Existential graphs with continuous and broken cuts.

A graph is a tuple of elements; the empty tuple is the blank sheet λ.
Juxtaposition keeps the order it was written in, and equality up to
reordering is :func:`ac_equal`.

Grammar::

    graph   := element*                     whitespace separates elements
    element := atom | "(" graph ")" | "{" graph "}"
    atom    := [a-z][a-zA-Z0-9_]*

``( )`` is a continuous cut and ``{ }`` a broken cut.  The strong element
``*X`` is ``({X})``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence, Union

from .formula import ATOM_RE

CONTINUOUS = "continuous"
BROKEN = "broken"


@dataclass(frozen=True, slots=True)
class GAtom:
    name: str

    def __post_init__(self):
        if not ATOM_RE.match(self.name):
            raise ValueError(f"bad atom name {self.name!r}")


@dataclass(frozen=True, slots=True)
class Ccut:
    contents: tuple["Element", ...] = ()


@dataclass(frozen=True, slots=True)
class Bcut:
    contents: tuple["Element", ...] = ()


Element = Union[GAtom, Ccut, Bcut]
Graph = tuple[Element, ...]
Position = tuple[int, ...]
"""Indices of cuts from the sheet inward; the position names the region
inside the last cut (the empty path is the sheet itself)."""

LAMBDA: Graph = ()


def strong(g: Sequence[Element]) -> Ccut:
    """``*g`` = ``({g})``."""
    return Ccut((Bcut(tuple(g)),))


def is_strong(e: Element) -> bool:
    return isinstance(e, Ccut) and len(e.contents) == 1 and isinstance(e.contents[0], Bcut)


def is_cut(e: Element) -> bool:
    return isinstance(e, (Ccut, Bcut))


def kind(e: Element) -> str:
    if isinstance(e, Ccut):
        return CONTINUOUS
    if isinstance(e, Bcut):
        return BROKEN
    raise TypeError(f"{e!r} is not a cut")


def with_contents(cut: Ccut | Bcut, contents: Sequence[Element]) -> Ccut | Bcut:
    return type(cut)(tuple(contents))


# ---------------------------------------------------------------------------
# text


class GraphSyntaxError(ValueError):
    """Malformed graph text.  ``offset`` is a UTF-8 byte offset."""

    def __init__(self, message: str, text: str, index: int):
        self.offset = len(text[:index].encode("utf-8"))
        self.text = text
        super().__init__(f"{message} at byte {self.offset}")


_GTOKEN_RE = re.compile(r"(?P<delim>[(){}])|(?P<word>[A-Za-z0-9_]+)")
_CLOSE = {"(": ")", "{": "}"}


def parse_graph(text: str) -> Graph:
    """Parse graph text, keeping the written order."""
    stack: list[tuple[str, int, list]] = []
    current: list[Element] = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _GTOKEN_RE.match(text, pos)
        if m is None:
            raise GraphSyntaxError(f"unexpected character {text[pos]!r}", text, pos)
        tok = m.group()
        if m.lastgroup == "word":
            if not ATOM_RE.match(tok):
                raise GraphSyntaxError(f"bad atom {tok!r}", text, pos)
            current.append(GAtom(tok))
        elif tok in "({":
            stack.append((tok, pos, current))
            current = []
        else:
            if not stack:
                raise GraphSyntaxError(f"unmatched {tok!r}", text, pos)
            opener, _, outer = stack.pop()
            if _CLOSE[opener] != tok:
                raise GraphSyntaxError(
                    f"expected {_CLOSE[opener]!r}, found {tok!r}", text, pos
                )
            cut = Ccut(tuple(current)) if opener == "(" else Bcut(tuple(current))
            outer.append(cut)
            current = outer
        pos = m.end()
    if stack:
        opener, at, _ = stack[-1]
        raise GraphSyntaxError(f"unclosed {opener!r} opened", text, at)
    return tuple(current)


def print_element(e: Element) -> str:
    if isinstance(e, GAtom):
        return e.name
    inner = print_graph(e.contents)
    return f"({inner})" if isinstance(e, Ccut) else f"{{{inner}}}"


def print_graph(g: Sequence[Element]) -> str:
    """Stored order, single spaces between elements; λ prints as ''."""
    return " ".join(print_element(e) for e in g)


# ---------------------------------------------------------------------------
# AC-equality


@lru_cache(maxsize=None)
def canonical_element(e: Element) -> Element:
    if isinstance(e, GAtom):
        return e
    return type(e)(canonical_form(e.contents))


@lru_cache(maxsize=None)
def element_key(e: Element) -> str:
    """Total order on elements: the printed text of the canonical form."""
    return print_element(canonical_element(e))


def canonical_form(g: Sequence[Element]) -> Graph:
    """Every juxtaposition sorted, recursively."""
    return tuple(sorted((canonical_element(e) for e in g), key=element_key))


def graph_key(g: Sequence[Element]) -> str:
    return print_graph(canonical_form(g))


def ac_equal(a: Sequence[Element], b: Sequence[Element]) -> bool:
    return canonical_form(a) == canonical_form(b)


# ---------------------------------------------------------------------------
# regions


@dataclass(frozen=True)
class RegionContext:
    kinds: tuple[str, ...]

    @property
    def depth(self) -> int:
        return len(self.kinds)

    @property
    def parity(self) -> str:
        return "even" if len(self.kinds) % 2 == 0 else "odd"

    @property
    def even(self) -> bool:
        return len(self.kinds) % 2 == 0

    @property
    def ncc(self) -> bool:
        """Only continuous cuts surround the region."""
        return all(k == CONTINUOUS for k in self.kinds)

    @property
    def one_cq(self) -> bool:
        """Some broken cut surrounds the region."""
        return any(k == BROKEN for k in self.kinds)

    def inside(self, cut_kind: str) -> "RegionContext":
        return RegionContext(self.kinds + (cut_kind,))


class PositionError(IndexError):
    pass


def region_at(g: Sequence[Element], pos: Sequence[int]) -> tuple[Graph, RegionContext]:
    """Contents and context of the region named by ``pos``."""
    region = tuple(g)
    kinds = []
    for depth, i in enumerate(pos):
        if not (0 <= i < len(region)) or not is_cut(region[i]):
            raise PositionError(f"path {list(pos)} dangles at step {depth}")
        kinds.append(kind(region[i]))
        region = region[i].contents
    return region, RegionContext(tuple(kinds))


def region_context(g: Sequence[Element], pos: Sequence[int]) -> RegionContext:
    return region_at(g, pos)[1]


def replace_region(g: Sequence[Element], pos: Sequence[int], new: Sequence[Element]) -> Graph:
    """``g`` with the region at ``pos`` replaced by ``new``."""
    if not pos:
        return tuple(new)
    i, rest = pos[0], pos[1:]
    cut = g[i]
    return tuple(g[:i]) + (with_contents(cut, replace_region(cut.contents, rest, new)),) + tuple(g[i + 1:])


def positions(g: Sequence[Element], prefix: Position = ()) -> Iterator[Position]:
    """Every region of ``g``, the sheet first, then depth-first."""
    yield prefix
    for i, e in enumerate(g):
        if is_cut(e):
            yield from positions(e.contents, prefix + (i,))


# ---------------------------------------------------------------------------
# measures


def size(g: Sequence[Element]) -> int:
    """Number of atoms and cuts."""
    return sum(element_size(e) for e in g)


def element_size(e: Element) -> int:
    return 1 if isinstance(e, GAtom) else 1 + size(e.contents)


def complexity_C(g: Sequence[Element]) -> int:
    """Atoms and λ are 0; a cut adds one to its contents; a juxtaposition
    of two or more elements adds one to its most complex element."""
    if len(g) == 0:
        return 0
    if len(g) == 1:
        e = g[0]
        return 0 if isinstance(e, GAtom) else 1 + complexity_C(e.contents)
    return 1 + max(complexity_C((e,)) for e in g)


def graph_atoms(g: Sequence[Element]) -> tuple[str, ...]:
    found = set()

    def walk(h):
        for e in h:
            if isinstance(e, GAtom):
                found.add(e.name)
            else:
                walk(e.contents)

    walk(g)
    return tuple(sorted(found))


# ---------------------------------------------------------------------------
# enumeration


@lru_cache(maxsize=None)
def elements_of_size(n: int, atom_names: tuple[str, ...]) -> tuple[Element, ...]:
    """Canonical elements with exactly ``n`` nodes, sorted by key."""
    if n < 1:
        return ()
    out: list[Element] = []
    if n == 1:
        out.extend(GAtom(a) for a in atom_names)
    for g in graphs_of_size(n - 1, atom_names):
        out.append(Ccut(g))
        out.append(Bcut(g))
    return tuple(sorted(out, key=element_key))


@lru_cache(maxsize=None)
def graphs_of_size(n: int, atom_names: tuple[str, ...]) -> tuple[Graph, ...]:
    """Canonical graphs with exactly ``n`` nodes, one per AC-class."""
    if n == 0:
        return ((),)
    pool = [e for k in range(1, n + 1) for e in elements_of_size(k, atom_names)]
    sizes = {e: element_size(e) for e in pool}
    out = set()

    def extend(start: int, remaining: int, acc: list):
        if remaining == 0:
            out.add(canonical_form(acc))
            return
        for i in range(start, len(pool)):
            e = pool[i]
            if sizes[e] <= remaining:
                acc.append(e)
                extend(i, remaining - sizes[e], acc)
                acc.pop()

    extend(0, n, [])
    return tuple(sorted(out, key=print_graph))


def all_graphs(max_size: int, atom_names: Sequence[str]) -> list[Graph]:
    """One canonical representative per AC-class, smallest first."""
    names = tuple(sorted(atom_names))
    return [g for n in range(max_size + 1) for g in graphs_of_size(n, names)]
