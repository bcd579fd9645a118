"""Translations between formulas and graphs.

``to_graph`` (T1) and ``to_formula`` (T2) are inverse up to the laws checked
by :func:`roundtrip_report`:

* ``to_graph(to_formula(g))`` is ``g`` itself, for every graph;
* ``to_formula(to_graph(f))`` is ``f`` itself when :func:`is_t1_canonical`
  holds, and is semantically equivalent to ``f`` otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Sequence

from .formula import (
    TOP,
    Atom,
    ClassNeg,
    Conj,
    Formula,
    Impl,
    Top,
    WeakNeg,
)
from .graph import Bcut, Ccut, Element, GAtom, Graph, ac_equal
from .kripke import FrameClass, bounded_equivalent


def to_graph(f: Formula) -> Graph:
    """T1."""
    if isinstance(f, Atom):
        return (GAtom(f.name),)
    if isinstance(f, Top):
        return ()
    if isinstance(f, Impl):
        return (Ccut(to_graph(f.antecedent) + (Ccut(to_graph(f.consequent)),)),)
    if isinstance(f, Conj):
        return to_graph(f.left) + to_graph(f.right)
    if isinstance(f, WeakNeg):
        return (Bcut(to_graph(f.operand)),)
    if isinstance(f, ClassNeg):
        return (Ccut(to_graph(f.operand)),)
    raise TypeError(f"not a formula: {f!r}")


def to_formula(g: Sequence[Element]) -> Formula:
    """T2.  A juxtaposition folds to the left with ``&``; a continuous cut
    is read, in order of preference, as ``~T`` when empty, as a negation
    when it holds one element, as a conditional when it ends in a
    continuous cut, and as a negated conjunction otherwise."""
    if len(g) == 0:
        return TOP
    return reduce(Conj, (_element(e) for e in g))


def _element(e: Element) -> Formula:
    if isinstance(e, GAtom):
        return Atom(e.name)
    if isinstance(e, Bcut):
        return WeakNeg(to_formula(e.contents))
    c = e.contents
    if len(c) == 0:
        return ClassNeg(TOP)
    if len(c) == 1:
        return ClassNeg(_element(c[0]))
    if isinstance(c[-1], Ccut):
        return Impl(to_formula(c[:-1]), to_formula(c[-1].contents))
    return ClassNeg(to_formula(c))


def is_t1_canonical(f: Formula) -> bool:
    """Exactly the formulas that ``to_formula(to_graph(f))`` returns unchanged.

    No ``T`` antecedent of ``->`` and no ``T`` operand of ``&``; ``&``
    nested to the left only; and no ``~(A & B)`` whose last conjunct ``B``
    is a conditional or a classical negation (its graph ends in a
    continuous cut and reads back as a conditional).  A ``T`` consequent is
    fine: ``(X ())`` reads back as ``X -> T``.
    """
    if isinstance(f, (Atom, Top)):
        return True
    if isinstance(f, WeakNeg):
        return is_t1_canonical(f.operand)
    if isinstance(f, Impl):
        return (
            not isinstance(f.antecedent, Top)
            and is_t1_canonical(f.antecedent)
            and is_t1_canonical(f.consequent)
        )
    if isinstance(f, Conj):
        return (
            not isinstance(f.left, Top)
            and not isinstance(f.right, (Top, Conj))
            and is_t1_canonical(f.left)
            and is_t1_canonical(f.right)
        )
    if isinstance(f, ClassNeg):
        x = f.operand
        if isinstance(x, Conj) and isinstance(x.right, (Impl, ClassNeg)):
            return False
        return is_t1_canonical(x)
    raise TypeError(f"not a formula: {f!r}")


@dataclass(frozen=True)
class RoundTripReport:
    kind: str  # "formula" or "graph"
    syntactic_identity: bool
    ac_identity: bool
    semantic_equivalence: bool
    image: object  # the translation
    back: object  # translated back again

    def to_document(self) -> dict:
        from .formula import print_formula
        from .graph import print_graph

        show = print_formula if self.kind == "formula" else print_graph
        other = print_graph if self.kind == "formula" else print_formula
        return {
            "kind": self.kind,
            "image": other(self.image),
            "back": show(self.back),
            "syntactic_identity": self.syntactic_identity,
            "ac_identity": self.ac_identity,
            "semantic_equivalence": self.semantic_equivalence,
        }


def roundtrip_report(x: Formula | Graph, max_worlds: int = 3) -> RoundTripReport:
    """Translate there and back and compare, syntactically, up to AC, and
    semantically over all reflexive models with at most ``max_worlds``."""
    if isinstance(x, Formula):
        image = to_graph(x)
        back = to_formula(image)
        same = back == x
        sem = same or bounded_equivalent(x, back, max_worlds, FrameClass())
        return RoundTripReport("formula", same, ac_equal(to_graph(back), image), sem, image, back)
    g = tuple(x)
    image = to_formula(g)
    back = to_graph(image)
    same = back == g
    sem = same or bounded_equivalent(image, to_formula(back), max_worlds, FrameClass())
    return RoundTripReport("graph", same, ac_equal(back, g), sem, image, back)
