"""Hilbert-style proofs for GT and GT4.

Axiom lines carry no schema annotation; :func:`match_axiom` finds one.  All
comparisons are made after :func:`~peircegt.formula.expand_defined`, so a
line may use ``~`` and ``&`` freely where a schema is stated in primitive
connectives.

The necessitation clause is read recursively: ``-A -> -T`` (that is, ``+A``)
is an axiom whenever ``A`` is, including when ``A`` was itself produced by
the clause.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterator, Mapping, Union

from .formula import (
    FALSUM,
    TOP,
    Atom,
    Formula,
    Impl,
    Top,
    WeakNeg,
    expand_defined,
    parse_formula,
    print_formula,
)

SYSTEMS = ("gt", "gt4")


@dataclass(frozen=True, slots=True)
class Meta(Formula):
    """Schematic letter inside an axiom pattern."""

    name: str

    def __str__(self) -> str:
        return self.name


X, Y, Z = Meta("X"), Meta("Y"), Meta("Z")


def _neg(x):
    return Impl(x, FALSUM)


def _box(x):
    return Impl(WeakNeg(x), FALSUM)


def _and(x, y):
    return _neg(Impl(x, _neg(y)))


SCHEMAS: dict[str, Formula] = {
    "Ax1": TOP,
    "Ax2": Impl(X, Impl(Y, X)),
    "Ax3": Impl(Impl(X, Impl(Y, Z)), Impl(Impl(X, Y), Impl(X, Z))),
    "Ax4": Impl(Impl(Impl(X, Y), X), X),
    "Ax5": Impl(FALSUM, Z),
    "Ax6": Impl(Impl(X, FALSUM), WeakNeg(X)),
    "Ax7": Impl(
        Impl(WeakNeg(Impl(X, Y)), FALSUM),
        Impl(Impl(WeakNeg(X), FALSUM), Impl(WeakNeg(Y), FALSUM)),
    ),
    "GT4": Impl(_box(X), Impl(WeakNeg(_and(_box(X), Y)), WeakNeg(Y))),
}


def schemas_for(system: str) -> list[str]:
    if system not in SYSTEMS:
        raise ValueError(f"unknown system {system!r}")
    names = [f"Ax{i}" for i in range(1, 8)]
    return names + ["GT4"] if system == "gt4" else names


def _match(pattern: Formula, f: Formula, binding: dict) -> bool:
    if isinstance(pattern, Meta):
        bound = binding.get(pattern.name)
        if bound is None:
            binding[pattern.name] = f
            return True
        return bound == f
    if type(pattern) is not type(f):
        return False
    if isinstance(pattern, (Atom, Top)):
        return pattern == f
    if isinstance(pattern, WeakNeg):
        return _match(pattern.operand, f.operand, binding)
    if isinstance(pattern, Impl):
        return _match(pattern.antecedent, f.antecedent, binding) and _match(
            pattern.consequent, f.consequent, binding
        )
    raise TypeError(f"unexpected pattern node {pattern!r}")


def instantiate(schema: str, **subst: Formula) -> Formula:
    """Fill a schema's letters; unfilled letters are an error."""

    def go(p):
        if isinstance(p, Meta):
            return subst[p.name]
        if isinstance(p, WeakNeg):
            return WeakNeg(go(p.operand))
        if isinstance(p, Impl):
            return Impl(go(p.antecedent), go(p.consequent))
        return p

    return go(SCHEMAS[schema])


def necessitate(f: Formula) -> Formula:
    """``+f`` written the way the necessitation clause produces it."""
    return Impl(WeakNeg(f), FALSUM)


@dataclass(frozen=True)
class AxiomMatch:
    schema: str
    peel: int
    binding: Mapping[str, Formula] = field(default_factory=dict, compare=False)


def axiom_matches(f: Formula, system: str = "gt") -> Iterator[AxiomMatch]:
    """Every way ``f`` is an axiom, fewest necessitation layers first."""
    names = schemas_for(system)
    core = expand_defined(f)
    peel = 0
    while True:
        for name in names:
            binding: dict = {}
            if _match(SCHEMAS[name], core, binding):
                yield AxiomMatch(name, peel, binding)
        if (
            isinstance(core, Impl)
            and isinstance(core.antecedent, WeakNeg)
            and core.consequent == FALSUM
        ):
            core = core.antecedent.operand
            peel += 1
        else:
            return


def match_axiom(f: Formula, system: str = "gt") -> AxiomMatch | None:
    return next(axiom_matches(f, system), None)


# ---------------------------------------------------------------------------
# proof documents


@dataclass(frozen=True)
class MP:
    major: int
    minor: int


Justification = Union[str, MP]  # "ax", "hyp" or MP(major, minor); lines are 1-indexed


@dataclass(frozen=True)
class ProofLine:
    formula: Formula
    by: Justification


@dataclass(frozen=True)
class ProofDocument:
    system: str
    hypotheses: tuple[Formula, ...]
    lines: tuple[ProofLine, ...]

    @property
    def conclusion(self) -> Formula | None:
        return self.lines[-1].formula if self.lines else None

    def to_document(self) -> dict:
        def by(j):
            return {"mp": [j.major, j.minor]} if isinstance(j, MP) else j

        return {
            "system": self.system,
            "hypotheses": [print_formula(h) for h in self.hypotheses],
            "lines": [{"formula": print_formula(l.formula), "by": by(l.by)} for l in self.lines],
        }


class ProofFormatError(ValueError):
    pass


def load_proof(doc: Mapping | str) -> ProofDocument:
    """Read a proof document (mapping or JSON text)."""
    if isinstance(doc, str):
        doc = json.loads(doc)
    try:
        system = str(doc.get("system", "gt")).lower()
        if system not in SYSTEMS:
            raise ProofFormatError(f"unknown system {system!r}")
        hyps = tuple(parse_formula(h) for h in doc.get("hypotheses", []))
        lines = []
        for raw in doc["lines"]:
            by = raw["by"]
            if isinstance(by, Mapping):
                major, minor = by["mp"]
                by = MP(int(major), int(minor))
            elif by not in ("ax", "hyp"):
                raise ProofFormatError(f"unknown justification {by!r}")
            lines.append(ProofLine(parse_formula(raw["formula"]), by))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, ProofFormatError):
            raise
        raise ProofFormatError(f"malformed proof document: {exc}") from exc
    return ProofDocument(system, hyps, tuple(lines))


@dataclass
class ProofReport:
    accepted: bool
    conclusion: Formula | None = None
    failed_line: int | None = None
    reason: str | None = None
    axioms: dict[int, AxiomMatch] = field(default_factory=dict)
    theorem: bool = False  # accepted with no hypotheses declared


def check_proof(doc: ProofDocument) -> ProofReport:
    """Accept iff every line is an axiom, a declared hypothesis, or follows
    by modus ponens from earlier lines."""
    if not doc.lines:
        return ProofReport(False, reason="empty proof")
    hyps = {expand_defined(h) for h in doc.hypotheses}
    expanded: list[Formula] = []
    axioms = {}
    for i, line in enumerate(doc.lines, start=1):
        f = expand_defined(line.formula)
        if line.by == "ax":
            m = match_axiom(line.formula, doc.system)
            if m is None:
                return ProofReport(False, failed_line=i, reason="not an axiom", axioms=axioms)
            axioms[i] = m
        elif line.by == "hyp":
            if f not in hyps:
                return ProofReport(False, failed_line=i, reason="hypothesis not declared",
                                   axioms=axioms)
        elif isinstance(line.by, MP):
            j, k = line.by.major, line.by.minor
            if not (1 <= j < i and 1 <= k < i):
                return ProofReport(False, failed_line=i,
                                   reason="malformed indices: must cite earlier lines",
                                   axioms=axioms)
            if expanded[j - 1] != Impl(expanded[k - 1], f):
                return ProofReport(False, failed_line=i,
                                   reason=f"MP shape mismatch: line {j} is not line {k} -> line {i}",
                                   axioms=axioms)
        else:
            return ProofReport(False, failed_line=i, reason=f"unknown justification {line.by!r}",
                               axioms=axioms)
        expanded.append(f)
    return ProofReport(True, conclusion=doc.lines[-1].formula, axioms=axioms,
                       theorem=not doc.hypotheses)


class DeductionError(ValueError):
    pass


def deduction_transform(doc: ProofDocument, discharge: Formula) -> ProofDocument:
    """Discharge one hypothesis: from a proof of ``C`` under ``discharge``
    build a proof of ``discharge -> C`` without it.

    Each line ``F`` becomes a block ending in ``discharge -> F``: the
    discharged hypothesis gets the five-line identity proof, other axioms
    and hypotheses get weakening through Ax2, and modus ponens goes through
    Ax3 and two further MP steps.
    """
    d = discharge
    target = expand_defined(d)
    if target not in {expand_defined(h) for h in doc.hypotheses}:
        raise DeductionError(f"{print_formula(d)} is not a hypothesis")
    report = check_proof(doc)
    if not report.accepted:
        raise DeductionError(f"input proof fails at line {report.failed_line}: {report.reason}")

    out: list[ProofLine] = []
    where: dict[int, int] = {}  # old line -> new line proving d -> old formula

    def emit(f: Formula, by: Justification) -> int:
        out.append(ProofLine(f, by))
        return len(out)

    for i, line in enumerate(doc.lines, start=1):
        f = line.formula
        if line.by == "hyp" and expand_defined(f) == target:
            dd = Impl(d, d)
            a = emit(Impl(d, Impl(dd, d)), "ax")
            b = emit(Impl(Impl(d, Impl(dd, d)), Impl(Impl(d, dd), dd)), "ax")
            c = emit(Impl(Impl(d, dd), dd), MP(b, a))
            e = emit(Impl(d, dd), "ax")
            where[i] = emit(dd, MP(c, e))
        elif line.by in ("ax", "hyp"):
            a = emit(f, line.by)
            b = emit(Impl(f, Impl(d, f)), "ax")
            where[i] = emit(Impl(d, f), MP(b, a))
        else:
            j, k = line.by.major, line.by.minor
            g = doc.lines[k - 1].formula
            # the major premise is used as written so the Ax3 instance matches
            # it after expansion even when it is spelled with ~ or &
            major = doc.lines[j - 1].formula
            a = emit(Impl(Impl(d, major), Impl(Impl(d, g), Impl(d, f))), "ax")
            b = emit(Impl(Impl(d, g), Impl(d, f)), MP(a, where[j]))
            where[i] = emit(Impl(d, f), MP(b, where[k]))

    hyps = tuple(h for h in doc.hypotheses if expand_defined(h) != target)
    return ProofDocument(doc.system, hyps, tuple(out))


# ---------------------------------------------------------------------------
# theorem corpus

_CORPUS = [
    ("box_distribution", "+(p -> q) -> (+p -> +q)"),
    ("contraposition_classical", "(p -> ~q) -> (q -> ~p)"),
    ("classical_explosion", "~(p -> p) -> q"),
    ("excluded_middle", "p | ~p"),
    ("double_negation_intro", "p -> ~~p"),
    ("double_negation_elim", "~~p -> p"),
    ("contraposition", "(p -> q) -> (~q -> ~p)"),
    ("contraposition_converse", "(~q -> ~p) -> (p -> q)"),
    ("or_intro_left", "p -> (p | q)"),
    ("or_intro_right", "p -> (q | p)"),
    ("or_elim", "(p -> q) -> ((r -> q) -> ((p | r) -> q))"),
    ("and_elim_left", "(p & q) -> p"),
    ("and_elim_right", "(p & q) -> q"),
    ("and_intro_conditional", "(p -> q) -> ((p -> r) -> (p -> (q & r)))"),
    ("and_intro", "p -> (q -> (p & q))"),
    ("box_and_commute", "+(p & q) <-> (+p & +q)"),
    ("diamond_top", "<>T -> T"),
    ("weak_excluded_middle", "p | -p"),
    ("classical_to_weak_negation", "~p -> -p"),  # weak_excluded_middle with | unfolded
    ("weak_negation_is_not_box", "-p <-> ~+p"),
    ("box_reflexive", "+p -> p"),
    ("dual_diamond", "~+~p <-> <>p"),
    ("dual_box", "+~p <-> ~<>p"),
    ("dual_weak_negation", "~+p <-> -p"),
    ("diamond_reflexive", "p -> <>p"),
    ("weak_negation_diamond", "-p -> <>~p"),
    ("box_diamond_consistent", "~(+p & <>~p)"),
]


def theorem_corpus() -> list[tuple[str, Formula]]:
    """Named GT theorems instantiated over p, q, r."""
    return [(name, parse_formula(text)) for name, text in _CORPUS]
