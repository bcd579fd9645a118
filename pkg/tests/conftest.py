import random

import pytest
from hypothesis import strategies as st

from peircegt.formula import TOP, Atom, ClassNeg, Conj, Impl, WeakNeg
from peircegt.graph import Bcut, Ccut, GAtom

# ---------------------------------------------------------------------------
# generators


def formulas(names=("p", "q"), max_leaves=12):
    base = st.sampled_from([Atom(n) for n in names] + [TOP])
    return st.recursive(
        base,
        lambda sub: st.one_of(
            st.builds(WeakNeg, sub),
            st.builds(ClassNeg, sub),
            st.builds(Impl, sub, sub),
            st.builds(Conj, sub, sub),
        ),
        max_leaves=max_leaves,
    )


def graphs(names=("p", "q"), max_leaves=10):
    element = st.recursive(
        st.sampled_from([GAtom(n) for n in names]),
        lambda sub: st.one_of(
            st.builds(Ccut, st.lists(sub, max_size=3).map(tuple)),
            st.builds(Bcut, st.lists(sub, max_size=3).map(tuple)),
        ),
        max_leaves=max_leaves,
    )
    return st.lists(element, max_size=3).map(tuple)


def random_formula(rng: random.Random, depth: int, names=("p", "q")):
    """Plain seeded generator, for the large acceptance samples."""
    if depth == 0 or rng.random() < 0.25:
        return TOP if rng.random() < 0.15 else Atom(rng.choice(names))
    k = rng.randrange(4)
    if k == 0:
        return WeakNeg(random_formula(rng, depth - 1, names))
    if k == 1:
        return ClassNeg(random_formula(rng, depth - 1, names))
    a, b = random_formula(rng, depth - 1, names), random_formula(rng, depth - 1, names)
    return Impl(a, b) if k == 2 else Conj(a, b)


def random_graph(rng: random.Random, depth: int, names=("p", "q")):
    out = []
    for _ in range(rng.randrange(4)):
        if depth == 0 or rng.random() < 0.4:
            out.append(GAtom(rng.choice(names)))
        else:
            cut = Ccut if rng.random() < 0.5 else Bcut
            out.append(cut(random_graph(rng, depth - 1, names)))
    return tuple(out)


# ---------------------------------------------------------------------------
# acceptance reporting

_ACCEPTANCE: list[tuple[str, str, bool, str]] = []


@pytest.fixture
def acceptance(request):
    """Record one acceptance line: call with (criterion, ok, detail)."""
    title = request.node.name

    def record(criterion: str, ok: bool, detail: str = ""):
        _ACCEPTANCE.append((criterion, title, bool(ok), detail))
        print(f"{criterion} {'PASS' if ok else 'FAIL'} {title} {detail}")

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for criterion, title, ok, detail in _ACCEPTANCE:
        terminalreporter.write_line(f"{criterion:5} {'PASS' if ok else 'FAIL'}  {title}  {detail}")
