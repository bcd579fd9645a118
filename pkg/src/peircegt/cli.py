"""Command-line interface.

Every subcommand prints one JSON object on standard output and exits with
0 (success, valid, accepted, true), 1 (countermodel found, check rejected,
false) or 2 (usage or input error).  A formula or graph argument written
``@path`` is read from that file.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Callable, Sequence

from . import fixtures
from .formula import FormulaSyntaxError, complexity_K, expand_defined, parse_formula, print_formula
from .graph import GraphSyntaxError, canonical_form, complexity_C, parse_graph, print_graph, size
from .hilbert import (
    DeductionError,
    ProofFormatError,
    check_proof,
    deduction_transform,
    load_proof,
    match_axiom,
    theorem_corpus,
)
from .kripke import (
    BudgetExceeded,
    Countermodel,
    ModelError,
    bounded_valid,
    build_model,
    correspondence_check,
    evaluate,
    frame_by_name,
)
from .rewrite import (
    DerivationFormatError,
    UnknownRule,
    check_derivation,
    load_derivation,
    rule_soundness_suite,
)
from .translate import roundtrip_report, to_formula, to_graph

INPUT_ERRORS = (
    FormulaSyntaxError, GraphSyntaxError, ModelError, ProofFormatError, DerivationFormatError,
    UnknownRule, DeductionError, BudgetExceeded, OSError, json.JSONDecodeError, ValueError,
)


class InputError(Exception):
    pass


def _text(arg: str) -> str:
    if arg.startswith("@"):
        return Path(arg[1:]).read_text().strip()
    return arg


def _json_file(path: str) -> dict:
    return json.loads(Path(path).read_text())


def _emit(obj: dict) -> None:
    print(json.dumps(obj, indent=2))


def _error_doc(exc: Exception) -> dict:
    doc = {"error": str(exc), "kind": type(exc).__name__}
    offset = getattr(exc, "offset", None)
    if isinstance(exc, (FormulaSyntaxError, GraphSyntaxError)):
        doc["offset"] = offset
    return doc


# ---------------------------------------------------------------------------
# subcommands


def cmd_parse_formula(args) -> int:
    f = parse_formula(_text(args.expr))
    _emit({
        "formula": print_formula(f),
        "primitive": print_formula(expand_defined(f)),
        "K": complexity_K(f),
    })
    return 0


def cmd_parse_graph(args) -> int:
    g = parse_graph(_text(args.expr))
    _emit({
        "graph": print_graph(g),
        "canonical": print_graph(canonical_form(g)),
        "size": size(g),
        "C": complexity_C(g),
    })
    return 0


def cmd_translate(args) -> int:
    text = _text(args.expr)
    source = parse_formula(text) if args.to == "graph" else parse_graph(text)
    output = (print_graph(to_graph(source)) if args.to == "graph"
              else print_formula(to_formula(source)))
    doc = {"to": args.to, "input": text, "output": output}
    if args.report:
        doc["roundtrip"] = roundtrip_report(source).to_document()
    _emit(doc)
    return 0


def cmd_eval(args) -> int:
    m = build_model(_json_file(args.model))
    world = args.world or m.actual
    f = parse_formula(_text(args.formula))
    value = evaluate(m, world, f)
    _emit({"formula": print_formula(f), "world": world, "value": value})
    return 0 if value else 1


def cmd_valid(args) -> int:
    f = parse_formula(_text(args.formula))
    frame = frame_by_name(args.frame)
    verdict = bounded_valid(f, args.max_worlds, frame, budget=args.budget, jobs=args.jobs)
    doc = {"formula": print_formula(f), "frame": frame.name, "max_worlds": args.max_worlds}
    if isinstance(verdict, Countermodel):
        _emit({**doc, "verdict": "countermodel", "model": verdict.model.to_document()})
        return 1
    _emit({**doc, "verdict": "valid", "bound": verdict.bound})
    return 0


def cmd_check_proof(args) -> int:
    doc = load_proof(_json_file(args.file))
    for h in args.discharge:
        doc = deduction_transform(doc, parse_formula(h))
    r = check_proof(doc)
    out = {
        "accepted": r.accepted,
        "theorem": r.theorem,
        "conclusion": None if r.conclusion is None else print_formula(r.conclusion),
        "failed_line": r.failed_line,
        "reason": r.reason,
        "axioms": {str(i): {"schema": m.schema, "peel": m.peel} for i, m in r.axioms.items()},
    }
    if args.discharge:
        out["proof"] = doc.to_document()
    _emit(out)
    return 0 if r.accepted else 1


def cmd_check_derivation(args) -> int:
    r = check_derivation(load_derivation(_json_file(args.file)))
    _emit({
        "accepted": r.accepted,
        "theorem": r.theorem,
        "final": print_graph(r.final),
        "failed_step": r.failed_step,
        "reason": r.reason,
    })
    return 0 if r.accepted else 1


def cmd_soundness_suite(args) -> int:
    r = rule_soundness_suite(
        max_size=args.max_size, atoms=args.atoms.split(","), max_worlds=args.max_worlds,
        system=args.system, frame=args.frame, rules=args.rules or None,
        pool_size=args.pool_size, jobs=args.jobs,
    )
    _emit({**r.to_document(), "sound": r.sound})
    return 0 if r.sound else 1


def cmd_correspondence(args) -> int:
    schema = parse_formula(_text(args.schema))
    r = correspondence_check(schema, args.property, args.max_worlds)
    _emit({
        "schema": print_formula(schema),
        "property": r.property,
        "max_worlds": r.max_worlds,
        "frames_checked": r.frames_checked,
        "equivalent": r.equivalent,
        "failures": [{"worlds": w.n, "rel": w.pairs(), "schema_holds": w.schema_holds,
                      "has_property": w.has_property} for w in r.failures],
    })
    return 0 if r.equivalent else 1


def run_corpus(max_worlds: int = 3) -> dict:
    """Check every fixture and report each against its expected outcome."""
    results = []

    def record(kind, name, expected, got, **extra):
        results.append({"kind": kind, "name": name, "expected": expected, "got": got,
                        "ok": expected == got, **extra})

    for fx in fixtures.proof_fixtures():
        r = check_proof(fx.doc)
        record("proof", fx.name, fx.accepted, r.accepted)
        if fx.discharge:
            doc = fx.doc
            for h in fx.discharge:
                doc = deduction_transform(doc, parse_formula(h))
            d = check_proof(doc)
            record("deduction", fx.name, True, d.accepted,
                   conclusion=print_formula(d.conclusion) if d.accepted else None)
    for fx in fixtures.derivation_fixtures():
        r = check_derivation(fx.doc)
        record("derivation", fx.name, fx.accepted, r.accepted, final=print_graph(r.final))
        if r.theorem:
            v = bounded_valid(to_formula(r.final), max_worlds)
            record("graph_theorem_valid", fx.name, True, v.valid)
    for name, f in theorem_corpus():
        record("theorem_valid", name, True, bounded_valid(f, max_worlds).valid,
               formula=print_formula(f))
    for name, f in fixtures.axiom_instances().items():
        record("axiom_valid", name, True, bounded_valid(f, max_worlds).valid)
        record("axiom_matched", name, name, getattr(match_axiom(f), "schema", None))
    return {"ok": all(r["ok"] for r in results), "results": results}


def cmd_corpus(args) -> int:
    report = run_corpus(args.max_worlds)
    _emit(report)
    return 0 if report["ok"] else 1


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="peircegt", description=__doc__.split("\n\n")[0])
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name: str, fn: Callable, help: str) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help)
        sp.set_defaults(fn=fn)
        return sp

    sp = add("parse-formula", cmd_parse_formula, "parse and print a formula")
    sp.add_argument("expr")
    sp = add("parse-graph", cmd_parse_graph, "parse and print a graph")
    sp.add_argument("expr")
    sp = add("translate", cmd_translate, "translate a formula to a graph or back")
    sp.add_argument("--to", choices=("graph", "formula"), required=True)
    sp.add_argument("--report", action="store_true", help="add a round-trip report")
    sp.add_argument("expr")
    sp = add("eval", cmd_eval, "evaluate a formula in a model file")
    sp.add_argument("--model", required=True)
    sp.add_argument("--formula", required=True)
    sp.add_argument("--world", help="defaults to the actual world")
    sp = add("valid", cmd_valid, "bounded validity / countermodel search")
    sp.add_argument("--formula", required=True)
    sp.add_argument("--max-worlds", type=int, default=3)
    sp.add_argument("--frame", default="t", help="t, s4, s4.2 or s5")
    sp.add_argument("--budget", type=int, default=1 << 26, help="maximum number of models")
    sp.add_argument("--jobs", type=int, default=1)
    sp = add("check-proof", cmd_check_proof, "check a Hilbert proof document")
    sp.add_argument("file")
    sp.add_argument("--discharge", action="append", default=[], metavar="FORMULA",
                    help="discharge a hypothesis first (repeatable, applied in order)")
    sp = add("check-derivation", cmd_check_derivation, "check a graph derivation document")
    sp.add_argument("file")
    sp = add("soundness-suite", cmd_soundness_suite, "check every small rewrite semantically")
    sp.add_argument("--max-size", type=int, default=3)
    sp.add_argument("--max-worlds", type=int, default=3)
    sp.add_argument("--system", choices=("get", "get4"), default="get")
    sp.add_argument("--frame", help="defaults to t for get, s4 for get4")
    sp.add_argument("--atoms", default="p,q")
    sp.add_argument("--rules", nargs="*", help="restrict to these rules")
    sp.add_argument("--pool-size", type=int, default=2, help="largest graph R2_write_odd writes")
    sp.add_argument("--jobs", type=int, default=1)
    sp = add("correspondence", cmd_correspondence, "frame correspondence check")
    sp.add_argument("--schema", default="+p -> (-(+p & q) -> -q)")
    sp.add_argument("--property", default="transitive")
    sp.add_argument("--max-worlds", type=int, default=3)
    sp = add("corpus", cmd_corpus, "run every fixture")
    sp.add_argument("--max-worlds", type=int, default=3)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.fn(args)
    except INPUT_ERRORS as exc:
        _emit(_error_doc(exc))
        return 2


if __name__ == "__main__":
    sys.exit(main())
