"""Acceptance criteria AC1–AC10.

Each test records one PASS/FAIL line through the ``acceptance`` fixture
(printed with ``-s`` and summarised at the end of the run) and then asserts
the same condition, so a FAIL line is always a failing test.
"""

import json
import random
import time

from conftest import random_formula, random_graph
from peircegt.cli import main
from peircegt.fixtures import axiom_instances, derivation_fixtures, proof_fixtures
from peircegt.formula import Impl, expand_defined, parse_formula, print_formula
from peircegt.graph import ac_equal, graph_key, parse_graph, print_graph
from peircegt.hilbert import (
    check_proof,
    deduction_transform,
    match_axiom,
    necessitate,
    theorem_corpus,
)
from peircegt.kripke import (
    FRAMES,
    Countermodel,
    Valid,
    all_models,
    bounded_valid,
    build_model,
    correspondence_check,
    evaluate,
    true_in,
)
from peircegt.rewrite import check_derivation, rule_soundness_suite
from peircegt.translate import is_t1_canonical, to_formula, to_graph

P = parse_formula
EXPLOSION = P("p -> (-p -> q)")
GT4_AXIOM = P("+p -> (-(+p & q) -> -q)")


def cli(capsys, *argv):
    code = main(list(argv))
    return code, json.loads(capsys.readouterr().out)


class Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.seconds = time.perf_counter() - self.start

    def __str__(self):
        return f"{self.seconds:.2f}s"


def test_ac1_paraconsistency_countermodel(acceptance, capsys):
    with Timer() as t:
        verdict = bounded_valid(EXPLOSION, 2, FRAMES["t"])
        code, doc = cli(capsys, "valid", "--formula", "p -> (-p -> q)",
                        "--max-worlds", "2", "--frame", "t")
    ok = isinstance(verdict, Countermodel)
    if ok:
        m = verdict.model
        a, (n,) = m.actual, [w for w in m.worlds if w != m.actual]
        ok = (
            len(m.worlds) == 2
            and m.rel == frozenset({(a, a), (n, n), (a, n)})
            and m.true_atoms(a) == {"p"} and m.true_atoms(n) == frozenset()
            and evaluate(m, a, P("q")) is False
            and evaluate(m, a, EXPLOSION) is False
            # second route: the CLI's countermodel, re-read and re-evaluated
            and code == 1 and build_model(doc["model"]) == m
            and not true_in(build_model(doc["model"]), EXPLOSION)
        )
    acceptance("AC1", ok and t.seconds < 1, f"time={t}")
    assert ok and t.seconds < 1


def test_ac2_axiom_validity(acceptance):
    with Timer() as t:
        instances = dict(axiom_instances())
        instances["Ax+(Ax7)"] = necessitate(instances["Ax7"])
        verdicts = {name: bounded_valid(f, 3, FRAMES["t"]) for name, f in instances.items()}
        matched = {name: match_axiom(f) for name, f in instances.items()}
    bad = [n for n, v in verdicts.items() if v != Valid(3)]
    unmatched = [n for n, m in matched.items() if m is None]
    ok = not bad and not unmatched and matched["Ax+(Ax7)"].peel == 1
    acceptance("AC2", ok and t.seconds < 60,
               f"{len(instances)} instances, invalid={bad}, unmatched={unmatched}, time={t}")
    assert ok and t.seconds < 60


def test_ac3_theorem_corpus(acceptance):
    with Timer() as t:
        corpus = theorem_corpus()
        bad = [name for name, f in corpus if bounded_valid(f, 3, FRAMES["t"]) != Valid(3)]
    ok = not bad and len(corpus) >= 20
    acceptance("AC3", ok and t.seconds < 60, f"{len(corpus)} formulas, invalid={bad}, time={t}")
    assert ok and t.seconds < 60


def test_ac4_transitivity_correspondence(acceptance):
    with Timer() as t:
        report = correspondence_check(GT4_AXIOM, "transitive", 3)
    ok = report.equivalent and not report.failures and report.frames_checked == 1 + 4 + 64
    acceptance("AC4", ok and t.seconds < 300,
               f"frames={report.frames_checked}, exceptions={len(report.failures)}, time={t}")
    assert ok and t.seconds < 300


def test_ac5_gt4_axiom_invalid_in_gt(acceptance):
    with Timer() as t:
        verdict = bounded_valid(GT4_AXIOM, 3, FRAMES["t"])
    ok = isinstance(verdict, Countermodel)
    detail = ""
    if ok:
        m = verdict.model
        a = m.actual
        # chain a < b < c with a not seeing c
        chain = [
            (b, c) for b in m.successors(a) for c in m.successors(b)
            if len({a, b, c}) == 3 and c not in m.successors(a)
        ]
        ok = (len(m.worlds) >= 3 and bool(chain) and not m.in_frame(FRAMES["s4"])
              and not evaluate(m, a, GT4_AXIOM))
        detail = f"worlds={len(m.worlds)}, chain={[(a, *c) for c in chain]}, "
    acceptance("AC5", ok and t.seconds < 60, f"{detail}time={t}")
    assert ok and t.seconds < 60


def test_ac6_get_sound_on_t(acceptance):
    with Timer() as t:
        r = rule_soundness_suite(max_size=3, atoms=("p", "q"), max_worlds=3,
                                 system="get", frame="t")
    acceptance("AC6", r.sound and t.seconds < 600,
               f"GET/t graphs={r.graphs} steps={r.steps} violations={len(r.violations)} time={t}")
    assert r.sound and t.seconds < 600


def test_ac6_get4_sound_on_s4(acceptance):
    with Timer() as t:
        r = rule_soundness_suite(max_size=3, atoms=("p", "q"), max_worlds=3,
                                 system="get4", frame="s4")
    acceptance("AC6", r.sound and t.seconds < 600,
               f"GET4/s4 graphs={r.graphs} steps={r.steps} violations={len(r.violations)} time={t}")
    assert r.sound and t.seconds < 600


def test_ac6_sid_iterate_unsound_on_t(acceptance):
    """The criterion asks for a violation at the same bounds (graphs with at
    most 3 nodes).  The smallest violating step has 5 nodes, so at these
    bounds none is found and this test fails; see test_rewrite for the
    size-5 witness."""
    with Timer() as t:
        r = rule_soundness_suite(max_size=3, atoms=("p", "q"), max_worlds=3,
                                 system="get4", frame="t", rules=["SID_iterate"])
    found = bool(r.violations)
    acceptance("AC6", found and t.seconds < 600,
               f"SID_iterate/t graphs={r.graphs} steps={r.steps} "
               f"violations={len(r.violations)} time={t}")
    assert found, "no SID_iterate violation among graphs with at most 3 nodes"


def _derivation_row(fx):
    """Accepted, ends where expected, and the final graph's T2 is valid (for
    a theorem) or follows from the start graph's T2 (for a consequence)."""
    r = check_derivation(fx.doc)
    final_ok = r.accepted and graph_key(r.final) == graph_key(parse_graph(fx.final))
    claim = to_formula(r.final) if r.theorem else Impl(to_formula(fx.doc.start), to_formula(r.final))
    return final_ok and bounded_valid(claim, 3, FRAMES["t"]) == Valid(3)


def test_ac7_graph_theorem_fixtures(acceptance):
    wanted = {"strong_lambda", "scroll_identity", "falsum_explosion", "falsum_explosion_scroll"}
    wanted |= {f"axiom_ax{i}" for i in range(1, 7)}
    with Timer() as t:
        rows = {fx.name: (fx.doc.system, _derivation_row(fx))
                for fx in derivation_fixtures() if fx.name in wanted}
    bad = [n for n, (_, ok) in rows.items() if not ok]
    ok = set(rows) == wanted and not bad and {s for s, _ in rows.values()} == {"get"}
    acceptance("AC7", ok, f"{len(rows)} GET derivations (*λ, scroll identity, {{}} ≫ p, "
                          f"Ax1–Ax6 images), failed={bad}, time={t}")
    assert ok


def test_ac7_ax7_image_in_get(acceptance):
    """The T1 image of the Ax7 instance is derived only with the strong
    iteration rule of GET4: no rule of GET moves anything into a broken cut.
    test_rewrite shows GET is sound on monotone neighbourhood models where
    Ax7 fails, so no GET derivation is expected."""
    ax7 = next(fx for fx in derivation_fixtures() if fx.name == "axiom_ax7")
    accepted = _derivation_row(ax7)
    in_get = ax7.doc.system == "get" and accepted
    acceptance("AC7", in_get, f"Ax7 image accepted={accepted} in {ax7.doc.system.upper()}, "
                              f"GET derivation={in_get}")
    assert accepted
    assert in_get, "no derivation of the Ax7 image that uses GET rules only"


def test_ac8_roundtrip_laws(acceptance):
    rng = random.Random(2024)
    batch = all_models(("p", "q"), 3, FRAMES["t"])
    n_formulas = n_graphs = canonical = semantic = 0
    failures = []
    with Timer() as t:
        for i in range(10_000):
            f = random_formula(rng, 5)
            back = to_formula(to_graph(f))
            n_formulas += 1
            if is_t1_canonical(f):
                canonical += 1
                if back != f:
                    failures.append(("T2T1 identity", print_formula(f)))
            else:
                semantic += 1
                if not (batch.truth(f) == batch.truth(back)).all():
                    failures.append(("T2T1 equivalence", print_formula(f)))
            if i % 500 == 0:
                batch.clear_cache()
        for _ in range(10_000):
            g = random_graph(rng, 4)
            n_graphs += 1
            back = to_graph(to_formula(g))
            if not ac_equal(back, g):
                failures.append(("T1T2 AC identity", print_graph(g)))
    ok = not failures and n_formulas + n_graphs >= 10_000 and canonical and semantic
    acceptance("AC8", ok and t.seconds < 300,
               f"formulas={n_formulas} (canonical={canonical}, semantic={semantic}) "
               f"graphs={n_graphs} failures={len(failures)} time={t}")
    assert ok and t.seconds < 300, failures[:5]


def test_ac9_deduction_theorem(acceptance):
    checked, bad = [], []
    with Timer() as t:
        for fx in proof_fixtures():
            r = check_proof(fx.doc)
            if not (r.accepted and fx.doc.hypotheses):
                continue
            order = list(fx.discharge) or [print_formula(h) for h in reversed(fx.doc.hypotheses)]
            doc = fx.doc
            for h in order:
                h = P(h)
                out = deduction_transform(doc, h)
                rr = check_proof(out)
                if not (rr.accepted and expand_defined(rr.conclusion)
                        == expand_defined(Impl(h, doc.conclusion))):
                    bad.append((fx.name, print_formula(h)))
                    break
                doc = out
            checked.append((fx.name, print_formula(doc.conclusion)))
    concl = dict(checked)
    has_dn = expand_defined(P(concl.get("double_negation_intro", "T"))) == \
        expand_defined(P("p -> ~~p"))
    ok = not bad and len(checked) >= 3 and has_dn
    acceptance("AC9", ok, f"fixtures={len(checked)}, failed={bad}, p->~~p={has_dn}, time={t}")
    assert ok


def test_ac10_s5_paraconsistency(acceptance, capsys):
    with Timer() as t:
        verdict = bounded_valid(EXPLOSION, 3, FRAMES["s5"])
        code, doc = cli(capsys, "valid", "--formula", "p -> (-p -> q)", "--frame", "s5")
    ok = (isinstance(verdict, Countermodel) and len(verdict.model.worlds) <= 2
          and verdict.model.in_frame(FRAMES["s5"])
          and code == 1 and len(doc["model"]["worlds"]) <= 2
          and not true_in(build_model(doc["model"]), EXPLOSION))
    acceptance("AC10", ok and t.seconds < 1, f"worlds={len(doc['model']['worlds'])}, time={t}")
    assert ok and t.seconds < 1
