"""Hand-written proofs, derivations and models exercised by ``corpus``.

Derivations of the graphs of the axioms are built from short inner
derivations (antecedents ≫ consequent) lifted by
:func:`~peircegt.rewrite.curried_scroll_theorem`.  The JSON copies under
``data/`` are regenerated with ``python -m peircegt.fixtures``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .formula import parse_formula
from .graph import parse_graph, print_graph
from .hilbert import ProofDocument, instantiate, load_proof
from .rewrite import (
    DerivationDocument,
    DerivationStep,
    curried_scroll_theorem,
    rule_id,
    scroll_theorem,
)
from .translate import to_graph

DATA_DIR = Path(__file__).parent / "data"


def derivation(system: str, start: str, steps: list[tuple[str, str]]) -> DerivationDocument:
    return DerivationDocument(
        system,
        parse_graph(start),
        tuple(DerivationStep(rule_id(r), parse_graph(g)) for r, g in steps),
    )


# ---------------------------------------------------------------------------
# proofs


@dataclass(frozen=True)
class ProofFixture:
    name: str
    doc: ProofDocument
    accepted: bool
    discharge: tuple[str, ...] = ()  # hypotheses to discharge, in order


def _lines(*rows):
    return [{"formula": f, "by": by} for f, by in rows]


def proof_fixtures() -> list[ProofFixture]:
    ax = "ax"
    return [
        ProofFixture("identity", load_proof({"system": "gt", "lines": _lines(
            ("p -> (p -> p) -> p", ax),
            ("(p -> (p -> p) -> p) -> (p -> p -> p) -> p -> p", ax),
            ("(p -> p -> p) -> p -> p", {"mp": [2, 1]}),
            ("p -> p -> p", ax),
            ("p -> p", {"mp": [3, 4]}),
        )}), True),
        ProofFixture("necessitated_falsum", load_proof(
            {"system": "gt", "lines": _lines(("-T -> -T", ax))}), True),
        ProofFixture("gt4_axiom_in_gt4", load_proof({"system": "gt4", "lines": _lines(
            ("+p -> -(+p & q) -> -q", ax))}), True),
        ProofFixture("gt4_axiom_in_gt", load_proof({"system": "gt", "lines": _lines(
            ("+p -> -(+p & q) -> -q", ax))}), False),
        ProofFixture("mp_shape_mismatch", load_proof({
            "system": "gt", "hypotheses": ["p -> q"],
            "lines": _lines(("p -> q", "hyp"), ("q", {"mp": [1, 1]}))}), False),
        ProofFixture("undeclared_hypothesis", load_proof({
            "system": "gt", "lines": _lines(("p", "hyp"))}), False),
        ProofFixture("forward_reference", load_proof({
            "system": "gt", "hypotheses": ["p"],
            "lines": _lines(("p", "hyp"), ("q", {"mp": [3, 1]}))}), False),
        ProofFixture("hypothesis_itself", load_proof({
            "system": "gt", "hypotheses": ["p"], "lines": _lines(("p", "hyp"))}),
            True, ("p",)),
        ProofFixture("weakening", load_proof({
            "system": "gt", "hypotheses": ["p"], "lines": _lines(
                ("p", "hyp"), ("p -> q -> p", ax), ("q -> p", {"mp": [2, 1]}))}),
            True, ("p",)),
        ProofFixture("double_negation_intro", load_proof({
            "system": "gt", "hypotheses": ["p", "p -> -T"], "lines": _lines(
                ("p", "hyp"), ("p -> -T", "hyp"), ("-T", {"mp": [2, 1]}))}),
            True, ("p -> -T", "p")),
        ProofFixture("syllogism", load_proof({
            "system": "gt", "hypotheses": ["p -> q", "q -> r", "p"], "lines": _lines(
                ("p", "hyp"), ("p -> q", "hyp"), ("q", {"mp": [2, 1]}),
                ("q -> r", "hyp"), ("r", {"mp": [4, 3]}))}),
            True, ("p",)),
        ProofFixture("necessitation_under_hypothesis", load_proof({
            "system": "gt4", "hypotheses": ["+p"], "lines": _lines(
                ("+p", "hyp"),
                ("+p -> -(+p & q) -> -q", ax),
                ("-(+p & q) -> -q", {"mp": [2, 1]}))}),
            True, ("+p",)),
    ]


# ---------------------------------------------------------------------------
# derivations


@dataclass(frozen=True)
class DerivationFixture:
    name: str
    doc: DerivationDocument
    accepted: bool
    final: str | None = None  # expected final graph, for accepted fixtures


def axiom_instances() -> dict[str, object]:
    """The instances of Ax1–Ax7 whose graphs are derived below."""
    p, q, r = (parse_formula(a) for a in "pqr")
    return {
        "Ax1": instantiate("Ax1"),
        "Ax2": instantiate("Ax2", X=p, Y=q),
        "Ax3": instantiate("Ax3", X=p, Y=q, Z=r),
        "Ax4": instantiate("Ax4", X=p, Y=q),
        "Ax5": instantiate("Ax5", Z=r),
        "Ax6": instantiate("Ax6", X=p),
        "Ax7": instantiate("Ax7", X=p, Y=q),
    }


def _axiom_derivations() -> dict[str, DerivationDocument]:
    g = parse_graph
    out = {"Ax1": derivation("get", "", [])}

    out["Ax2"] = curried_scroll_theorem(
        [g("p"), g("q")], derivation("get", "p q", [("R2_erase_even", "p")]))

    out["Ax3"] = curried_scroll_theorem(
        [g("(p ((q (r))))"), g("(p (q))"), g("p")],
        derivation("get", "(p ((q (r)))) (p (q)) p", [
            ("R3_deiterate", "(((q (r)))) (p (q)) p"),
            ("R3_deiterate", "(((q (r)))) ((q)) p"),
            ("R6_remove_double_even", "(((q (r)))) q p"),
            ("R6_remove_double_even", "(q (r)) q p"),
            ("R3_deiterate", "((r)) q p"),
            ("R6_remove_double_even", "r q p"),
            ("R2_erase_even", "r"),
        ]))

    out["Ax4"] = curried_scroll_theorem(
        [g("((p (q)) (p))")],
        derivation("get", "((p (q)) (p))", [
            ("R2_erase_even", "((p) (p))"),
            ("R3_deiterate", "((p))"),
            ("R6_remove_double_even", "p"),
        ]))

    out["Ax5"] = derivation("get", "", [
        ("R1", "({})"),
        ("R2_write_odd", "({} (r))"),
    ])

    out["Ax6"] = curried_scroll_theorem(
        [g("(p ({}))")],
        derivation("get", "(p ({}))", [
            ("R1", "(p ({})) ({})"),
            ("R3_deiterate", "(p) ({})"),
            ("R4_break_even", "{p} ({})"),
            ("R2_erase_even", "{p}"),
        ]))

    # No GET rule moves anything into a broken cut, so distribution of +
    # over -> needs the strong iteration rule of GET4.
    out["Ax7"] = curried_scroll_theorem(
        [g("({(p (q))} ({}))"), g("({p} ({}))")],
        derivation("get4", "({(p (q))} ({})) ({p} ({}))", [
            ("R1", "({(p (q))} ({})) ({p} ({})) ({})"),
            ("R3_deiterate", "({(p (q))}) ({p} ({})) ({})"),
            ("R3_deiterate", "({(p (q))}) ({p}) ({})"),
            ("R2_erase_even", "({(p (q))}) ({p})"),
            ("R3_iterate", "({(p (q))} ({p})) ({p})"),
            ("SID_iterate", "({(p (q)) ({p})} ({p})) ({p})"),
            ("R6_add_double_odd", "({(((p)) (q)) ({p})} ({p})) ({p})"),
            ("R4_break_even", "({(({p}) (q)) ({p})} ({p})) ({p})"),
            ("R3_deiterate", "({((q)) ({p})} ({p})) ({p})"),
            ("R6_remove_double_even", "({q ({p})} ({p})) ({p})"),
            ("R2_erase_even", "({q} ({p})) ({p})"),
            ("R3_deiterate", "({q}) ({p})"),
            ("R2_erase_even", "({q})"),
            ("R1", "({q} ({}))"),
        ]))
    return out


def falsum_explosion() -> DerivationDocument:
    """``{}`` ≫ ``p``: the blank broken cut yields anything."""
    return derivation("get", "{}", [
        ("R1", "{} ({})"),
        ("R2_write_odd", "{} ({} (p))"),
        ("R3_deiterate", "{} ((p))"),
        ("R6_remove_double_even", "{} p"),
        ("R2_erase_even", "p"),
    ])


def derivation_fixtures() -> list[DerivationFixture]:
    fx = [
        DerivationFixture("strong_lambda", derivation("get", "", [("R1", "({})")]), True, "({})"),
        DerivationFixture("scroll_identity", derivation("get", "", [
            ("R1", "({})"), ("R4_complete_odd", "(())"),
            ("R2_write_odd", "(p ())"), ("R3_iterate", "(p (p))")]), True, "(p (p))"),
        DerivationFixture("scroll_identity_constructed",
                          scroll_theorem(derivation("get", "p", [])), True, "(p (p))"),
        DerivationFixture("scroll_erase",
                          scroll_theorem(derivation("get", "p q", [("R2_erase_even", "p")])),
                          True, "(p q (p))"),
        DerivationFixture("falsum_explosion", falsum_explosion(), True, "p"),
        DerivationFixture("falsum_explosion_scroll", scroll_theorem(falsum_explosion()),
                          True, "({} (p))"),
        DerivationFixture("write_on_sheet", derivation("get", "", [("R2_write_odd", "p")]), False),
        DerivationFixture("sid_in_get", derivation("get", "({q}) {p}", [
            ("SID_iterate", "({q}) {({q}) p}")]), False),
        DerivationFixture("sid_in_get4", derivation("get4", "({q}) {p}", [
            ("SID_iterate", "({q}) {({q}) p}")]), True, "({q}) {({q}) p}"),
    ]
    instances = axiom_instances()
    for name, doc in _axiom_derivations().items():
        final = print_graph(to_graph(instances[name]))
        fx.append(DerivationFixture(f"axiom_{name.lower()}", doc, True, final))
    return fx


# ---------------------------------------------------------------------------
# models

PARACONSISTENT_MODEL = {
    "worlds": ["M", "N"],
    "actual": "M",
    "rel": [["M", "M"], ["N", "N"], ["M", "N"]],
    "valuation": {"M": {"p": True}},
}


def write_data(root: Path = DATA_DIR) -> list[Path]:
    """Write every fixture as a JSON document under ``root``."""
    written = []
    for sub, items in (("proofs", proof_fixtures()), ("derivations", derivation_fixtures())):
        (root / sub).mkdir(parents=True, exist_ok=True)
        for fx in items:
            path = root / sub / f"{fx.name}.json"
            path.write_text(json.dumps(fx.doc.to_document(), indent=2) + "\n")
            written.append(path)
    (root / "models").mkdir(parents=True, exist_ok=True)
    path = root / "models" / "paraconsistent.json"
    path.write_text(json.dumps(PARACONSISTENT_MODEL, indent=2) + "\n")
    written.append(path)
    return written


if __name__ == "__main__":
    for p in write_data():
        print(p)
