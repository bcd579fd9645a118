import pytest
from hypothesis import given, settings

from conftest import formulas, graphs
from peircegt.formula import parse_formula, print_formula
from peircegt.graph import complexity_C, graphs_of_size, parse_graph, print_graph
from peircegt.kripke import all_models
from peircegt.translate import is_t1_canonical, roundtrip_report, to_formula, to_graph


@pytest.mark.parametrize("formula, graph", [
    ("p -> q", "(p (q))"),
    ("-p", "{p}"),
    ("p & q", "p q"),
    ("+p", "({p})"),
    ("~p", "(p)"),
    ("T", ""),
    ("p & q -> r", "(p q (r))"),
    ("p | q", "((p) (q))"),
])
def test_to_graph(formula, graph):
    assert print_graph(to_graph(parse_formula(formula))) == graph


@pytest.mark.parametrize("graph, formula", [
    ("(p (q))", "p -> q"),
    ("{p}", "-p"),
    ("((p) (q))", "~p -> q"),
    ("", "T"),
    ("()", "~T"),
    ("(p q)", "~(p & q)"),
    ("(p q (r))", "p & q -> r"),
    ("p q r", "p & q & r"),
    ("((p))", "~~p"),
])
def test_to_formula(graph, formula):
    assert print_formula(to_formula(parse_graph(graph))) == formula


def test_roundtrip_report_examples():
    r = roundtrip_report(parse_formula("p -> (q & -r)"))
    assert r.syntactic_identity and r.semantic_equivalence
    r = roundtrip_report(parse_graph("({p})"))
    assert r.ac_identity and r.syntactic_identity
    r = roundtrip_report(parse_formula("T -> p"))
    assert not r.syntactic_identity and r.semantic_equivalence
    assert print_formula(r.back) == "~~p"
    assert r.to_document()["back"] == "~~p"


@pytest.mark.parametrize("text, canonical", [
    ("p -> (q & -r)", True),
    ("T -> p", False),
    ("p & (q & r)", False),
    ("(p & q) & r", True),
    ("~(p & ~q)", False),
    ("~(p & (q -> r))", False),
    ("~(p & q)", True),
    ("~(~p & q)", True),
    ("p -> T", True),
    ("T & p", False),
    ("p & T", False),
    ("-T", True),
])
def test_t1_canonical_class(text, canonical):
    f = parse_formula(text)
    assert is_t1_canonical(f) is canonical
    assert (to_formula(to_graph(f)) == f) is canonical


@settings(max_examples=1000)
@given(formulas(("p", "q", "r")))
def test_t2_t1_identity_exactly_on_canonical(f):
    assert (to_formula(to_graph(f)) == f) == is_t1_canonical(f)


def test_t1_t2_identity_small_graphs():
    for n in range(6):
        for g in graphs_of_size(n, ("p", "q")):
            assert to_graph(to_formula(g)) == g


@settings(max_examples=400)
@given(graphs(("p", "q", "r")))
def test_t1_t2_identity(g):
    assert to_graph(to_formula(g)) == g


_BATCH = all_models(("p", "q"), 3)


@settings(max_examples=300, deadline=None)
@given(formulas(("p", "q"), max_leaves=10))
def test_semantic_preservation(f):
    assert (_BATCH.truth(f) == _BATCH.truth(to_formula(to_graph(f)))).all()


@settings(max_examples=200)
@given(formulas(("p", "q"), max_leaves=10))
def test_complexity_transport(f):
    g = to_graph(f)
    assert complexity_C(g) >= 0
    assert to_formula(g) is not None
