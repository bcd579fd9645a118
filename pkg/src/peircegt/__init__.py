"""The paraconsistent modal logic GT/GT4 and the graph calculi GET/GET4."""

from .formula import Formula, parse_formula, print_formula
from .graph import ac_equal, parse_graph, print_graph
from .hilbert import check_proof, deduction_transform, load_proof, match_axiom
from .kripke import bounded_valid, build_model, evaluate
from .rewrite import check_derivation, load_derivation, verify_step
from .translate import to_formula, to_graph

__all__ = [
    "Formula", "parse_formula", "print_formula",
    "ac_equal", "parse_graph", "print_graph",
    "check_proof", "deduction_transform", "load_proof", "match_axiom",
    "bounded_valid", "build_model", "evaluate",
    "check_derivation", "load_derivation", "verify_step",
    "to_formula", "to_graph",
]
