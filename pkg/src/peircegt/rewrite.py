"""Transformation rules of GET and GET4, derivation checking, and the
semantic soundness harness.

A derivation step records the rule and the resulting graph, not where the
rule was applied.  :func:`verify_step` recovers the site by comparing the
two graphs up to reordering: it walks down from the sheet through the one
cut that changed at each level, and tests the rule at every region on that
chain.  Side conditions always use the full context from the sheet.
"""

from __future__ import annotations

import json
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from itertools import product
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

from .graph import (
    Bcut,
    Ccut,
    Element,
    Graph,
    LAMBDA,
    Position,
    PositionError,
    RegionContext,
    all_graphs,
    canonical_form,
    element_key,
    graph_key,
    is_strong,
    parse_graph,
    positions,
    print_graph,
    region_at,
    replace_region,
    size,
    strong,
)
from .kripke import FrameClass, KripkeModel, all_models, frame_by_name
from .translate import to_formula

SYSTEMS = ("get", "get4")
STRONG_LAMBDA = strong(())


class RuleId(str, Enum):
    R1_write_strong_double_cut = "R1_write_strong_double_cut"
    R2_erase_even = "R2_erase_even"
    R2_write_odd = "R2_write_odd"
    R3_iterate = "R3_iterate"
    R3_deiterate = "R3_deiterate"
    R4_break_even = "R4_break_even"
    R4_complete_odd = "R4_complete_odd"
    R6_remove_double_even = "R6_remove_double_even"
    R6_add_double_odd = "R6_add_double_odd"
    SID_iterate = "SID_iterate"
    SID_deiterate = "SID_deiterate"

    def __str__(self) -> str:
        return self.value


ALIASES = {"R1": RuleId.R1_write_strong_double_cut}
SID_RULES = frozenset({RuleId.SID_iterate, RuleId.SID_deiterate})


class UnknownRule(ValueError):
    pass


def rule_id(name: str | RuleId) -> RuleId:
    if isinstance(name, RuleId):
        return name
    if name in ALIASES:
        return ALIASES[name]
    try:
        return RuleId(name)
    except ValueError:
        raise UnknownRule(f"unknown rule {name!r}") from None


def ruleset(system: str) -> list[RuleId]:
    if system not in SYSTEMS:
        raise ValueError(f"unknown system {system!r}")
    return [r for r in RuleId if system == "get4" or r not in SID_RULES]


# ---------------------------------------------------------------------------
# step verification


@dataclass(frozen=True)
class _Site:
    path: Position
    ctx: RegionContext
    before: Graph  # region contents before the step
    after: Graph
    removed: tuple[Element, ...]
    added: tuple[Element, ...]


def _keys(g: Iterable[Element]) -> Counter:
    return Counter(element_key(e) for e in g)


def _diff(b: Graph, a: Graph) -> tuple[tuple[Element, ...], tuple[Element, ...]]:
    kb, ka = _keys(b), _keys(a)
    rem, add = kb - ka, ka - kb

    def pick(g, wanted):
        wanted = Counter(wanted)
        out = []
        for e in g:
            k = element_key(e)
            if wanted[k] > 0:
                wanted[k] -= 1
                out.append(e)
        return tuple(out)

    return pick(b, rem), pick(a, add)


def _sites(before: Graph, after: Graph) -> list[_Site]:
    """Regions where a single rule application could have happened."""
    sites = []
    path: Position = ()
    ctx = RegionContext(())
    b, a = before, after
    while True:
        removed, added = _diff(b, a)
        sites.append(_Site(path, ctx, b, a, removed, added))
        if not (len(removed) == 1 and len(added) == 1):
            return sites
        r, n = removed[0], added[0]
        if type(r) is not type(n) or not isinstance(r, (Ccut, Bcut)):
            return sites
        path = path + (b.index(r),)
        ctx = ctx.inside("continuous" if isinstance(r, Ccut) else "broken")
        b, a = r.contents, n.contents


def _copy_elsewhere(before: Graph, site: _Site, e: Element, cut_type) -> RegionContext | None:
    """Context of the parent region if ``e`` sits there beside the cut of
    type ``cut_type`` enclosing the site; None otherwise."""
    if not site.path:
        return None
    parent, pctx = region_at(before, site.path[:-1])
    i = site.path[-1]
    if not isinstance(parent[i], cut_type):
        return None
    key = element_key(e)
    if any(element_key(x) == key for j, x in enumerate(parent) if j != i):
        return pctx
    return None


def _iteration_ok(before: Graph, site: _Site, e: Element, present: int) -> bool:
    """Plain iteration: the copy's source is the same region (``present``
    copies remain there) or the region just outside a continuous cut."""
    allowed = lambda ctx: ctx.ncc or is_strong(e)
    key = element_key(e)
    if sum(1 for x in site.before if element_key(x) == key) >= present and allowed(site.ctx):
        return True
    pctx = _copy_elsewhere(before, site, e, Ccut)
    return pctx is not None and allowed(pctx)


def _double(e: Element) -> Graph | None:
    if isinstance(e, Ccut) and len(e.contents) == 1 and isinstance(e.contents[0], Ccut):
        return e.contents[0].contents
    return None


def _rule_at(rule: RuleId, before: Graph, s: _Site) -> bool:
    R, A, even = s.removed, s.added, s.ctx.even
    if rule is RuleId.R1_write_strong_double_cut:
        return not R and len(A) == 1 and element_key(A[0]) == element_key(STRONG_LAMBDA)
    if rule is RuleId.R2_erase_even:
        return bool(R) and not A and even
    if rule is RuleId.R2_write_odd:
        return bool(A) and not R and not even
    if rule is RuleId.R3_iterate:
        return not R and len(A) == 1 and _iteration_ok(before, s, A[0], 1)
    if rule is RuleId.R3_deiterate:
        return not A and len(R) == 1 and _iteration_ok(before, s, R[0], 2)
    if rule in (RuleId.R4_break_even, RuleId.R4_complete_odd):
        src, dst = (Ccut, Bcut) if rule is RuleId.R4_break_even else (Bcut, Ccut)
        return (
            len(R) == 1 and len(A) == 1
            and isinstance(R[0], src) and isinstance(A[0], dst)
            and graph_key(R[0].contents) == graph_key(A[0].contents)
            and even == (rule is RuleId.R4_break_even)
        )
    if rule is RuleId.R6_remove_double_even:
        if not even:
            return False
        target = _keys(s.after)
        for x in set(s.before):
            inner = _double(x)
            if inner is not None and _keys(s.before) - Counter([element_key(x)]) + _keys(inner) == target:
                return True
        return False
    if rule is RuleId.R6_add_double_odd:
        if even or len(A) != 1:
            return False
        inner = _double(A[0])
        return inner is not None and _keys(inner) == _keys(R)
    if rule in SID_RULES:
        moved, other = (A, R) if rule is RuleId.SID_iterate else (R, A)
        if other or len(moved) != 1:
            return False
        return is_strong(moved[0]) and _copy_elsewhere(before, s, moved[0], Bcut) is not None
    raise UnknownRule(f"unknown rule {rule!r}")


@dataclass(frozen=True)
class StepVerdict:
    accepted: bool
    reason: str | None = None
    site: Position | None = None


def _hint_valid(before: Graph, hint: Position) -> bool:
    try:
        region_at(before, hint)
        return True
    except PositionError:
        pass
    if not hint:
        return False
    try:
        region, _ = region_at(before, hint[:-1])
    except PositionError:
        return False
    return 0 <= hint[-1] < len(region)


def verify_step(before: Sequence[Element], after: Sequence[Element], rule: str | RuleId,
                hint: Sequence[int] | None = None, system: str = "get") -> StepVerdict:
    """Whether ``after`` comes from ``before`` by one application of ``rule``.

    ``hint`` names the region of the application, or an element in it (the
    region path plus the element's index); it only narrows the search.
    """
    rule = rule_id(rule)
    if rule not in ruleset(system):
        return StepVerdict(False, f"{rule} is not a rule of {system.upper()}")
    before, after = tuple(before), tuple(after)
    if hint is not None:
        hint = tuple(hint)
        if not _hint_valid(before, hint):
            return StepVerdict(False, "hint out of range")
    if graph_key(before) == graph_key(after):
        return StepVerdict(False, "step changes nothing")
    for s in _sites(before, after):
        if hint is not None and hint != s.path and hint[:-1] != s.path:
            continue
        if _rule_at(rule, before, s):
            return StepVerdict(True, site=s.path)
    where = " at the hinted position" if hint is not None else ""
    return StepVerdict(False, f"no application of {rule}{where} yields the result")


# ---------------------------------------------------------------------------
# derivations


@dataclass(frozen=True)
class DerivationStep:
    rule: RuleId
    result: Graph
    hint: Position | None = None


@dataclass(frozen=True)
class DerivationDocument:
    system: str
    start: Graph
    steps: tuple[DerivationStep, ...]

    @property
    def final(self) -> Graph:
        return self.steps[-1].result if self.steps else self.start

    def to_document(self) -> dict:
        steps = []
        for s in self.steps:
            d = {"rule": s.rule.value, "result": print_graph(s.result)}
            if s.hint is not None:
                d["hint"] = list(s.hint)
            steps.append(d)
        return {"system": self.system, "start": print_graph(self.start), "steps": steps}


class DerivationFormatError(ValueError):
    pass


def load_derivation(doc: Mapping | str) -> DerivationDocument:
    """Read a derivation document (mapping or JSON text)."""
    if isinstance(doc, str):
        doc = json.loads(doc)
    try:
        system = str(doc.get("system", "get")).lower()
        if system not in SYSTEMS:
            raise DerivationFormatError(f"unknown system {system!r}")
        steps = []
        for raw in doc["steps"]:
            hint = raw.get("hint")
            steps.append(DerivationStep(
                rule_id(raw["rule"]),
                parse_graph(raw["result"]),
                None if hint is None else tuple(int(i) for i in hint),
            ))
        return DerivationDocument(system, parse_graph(doc.get("start", "")), tuple(steps))
    except UnknownRule:
        raise
    except DerivationFormatError:
        raise
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise DerivationFormatError(f"malformed derivation document: {exc}") from exc


@dataclass
class DerivationReport:
    accepted: bool
    final: Graph
    theorem: bool = False  # accepted and started from the blank sheet
    failed_step: int | None = None  # 1-indexed
    reason: str | None = None


def check_derivation(doc: DerivationDocument) -> DerivationReport:
    current = doc.start
    for i, step in enumerate(doc.steps, start=1):
        v = verify_step(current, step.result, step.rule, step.hint, doc.system)
        if not v.accepted:
            return DerivationReport(False, current, failed_step=i, reason=v.reason)
        current = step.result
    return DerivationReport(True, current, theorem=len(doc.start) == 0)


class DerivationError(ValueError):
    pass


def curried_scroll_theorem(antecedents: Sequence[Sequence[Element]],
                           inner: DerivationDocument) -> DerivationDocument:
    """From ``A1 … An ≫ C`` build a derivation from λ of the graph of
    ``A1 -> (A2 -> … (An -> C))``, i.e. ``(A1 ((A2 ( … (C)))))``.

    Each antecedent is written into its odd region, iterated one cut at a
    time down to the innermost region, the intermediate copies are
    deiterated again, and ``inner`` is replayed in the innermost region.
    """
    report = check_derivation(inner)
    if not report.accepted:
        raise DerivationError(f"inner derivation fails at step {report.failed_step}: {report.reason}")
    parts = [tuple(a) for a in antecedents]
    joined = tuple(e for a in parts for e in a)
    if graph_key(joined) != graph_key(inner.start):
        raise DerivationError("antecedents do not add up to the inner derivation's start")

    n = len(parts)
    depth = 0
    extras: list[list[Element]] = [[] for _ in range(2 * n + 1)]  # region j = d_j, 0 = sheet
    steps: list[DerivationStep] = []

    def contents(j: int) -> Graph:
        here = tuple(extras[j])
        return here + (Ccut(contents(j + 1)),) if j < depth else here

    def path(j: int) -> Position:
        p: Position = ()
        for k in range(j):
            p += (len(extras[k]),)
        return p

    def emit(rule: RuleId, hint: Position):
        steps.append(DerivationStep(rule, contents(0), hint))

    for _ in range(n):
        extras[depth].append(STRONG_LAMBDA)
        emit(RuleId.R1_write_strong_double_cut, path(depth))
        extras[depth].pop()
        depth += 2
        emit(RuleId.R4_complete_odd, path(depth - 1))
    for k, part in enumerate(parts):
        j = 2 * k + 1
        if part:
            extras[j][:0] = part
            emit(RuleId.R2_write_odd, path(j))
        for e in part:
            for t in range(j + 1, 2 * n + 1):
                extras[t].insert(0, e)
                emit(RuleId.R3_iterate, path(t))
            for t in range(2 * n - 1, j, -1):
                extras[t].remove(e)
                emit(RuleId.R3_deiterate, path(t))

    base = path(2 * n)
    for s in inner.steps:
        extras[2 * n] = list(s.result)
        hint = None if s.hint is None else base + s.hint
        steps.append(DerivationStep(s.rule, contents(0), hint))
    return DerivationDocument(inner.system, LAMBDA, tuple(steps))


def scroll_theorem(inner: DerivationDocument) -> DerivationDocument:
    """From ``X ≫ Y`` build a derivation from λ of ``(X (Y))``."""
    return curried_scroll_theorem([inner.start], inner)


# ---------------------------------------------------------------------------
# successor generation


def _submultisets(g: Graph) -> Iterator[tuple[Graph, Graph]]:
    """(chosen, rest) for every sub-multiset of ``g``, one per AC-class."""
    groups: dict[str, list[Element]] = {}
    for e in g:
        groups.setdefault(element_key(e), []).append(e)
    items = list(groups.values())
    for counts in product(*(range(len(v) + 1) for v in items)):
        chosen = tuple(e for v, c in zip(items, counts) for e in v[:c])
        rest = tuple(e for v, c in zip(items, counts) for e in v[c:])
        yield chosen, rest


def _without(g: Graph, i: int) -> Graph:
    return g[:i] + g[i + 1:]


def _region_rewrites(region: Graph, ctx: RegionContext, rules: frozenset,
                     pool: Sequence[Graph]) -> Iterator[tuple[RuleId, Graph]]:
    even = ctx.even
    if RuleId.R1_write_strong_double_cut in rules:
        yield RuleId.R1_write_strong_double_cut, region + (STRONG_LAMBDA,)
    if even and RuleId.R2_erase_even in rules:
        for chosen, rest in _submultisets(region):
            if chosen:
                yield RuleId.R2_erase_even, rest
    if not even and RuleId.R2_write_odd in rules:
        for h in pool:
            if h:
                yield RuleId.R2_write_odd, region + tuple(h)
    for i, e in enumerate(region):
        plain = ctx.ncc or is_strong(e)
        if plain and RuleId.R3_iterate in rules:
            yield RuleId.R3_iterate, region + (e,)
        if plain and RuleId.R3_deiterate in rules and any(
            element_key(x) == element_key(e) for x in _without(region, i)
        ):
            yield RuleId.R3_deiterate, _without(region, i)
        if isinstance(e, (Ccut, Bcut)):
            flipped = (Bcut if isinstance(e, Ccut) else Ccut)(e.contents)
            if isinstance(e, Ccut) and even and RuleId.R4_break_even in rules:
                yield RuleId.R4_break_even, region[:i] + (flipped,) + region[i + 1:]
            if isinstance(e, Bcut) and not even and RuleId.R4_complete_odd in rules:
                yield RuleId.R4_complete_odd, region[:i] + (flipped,) + region[i + 1:]
            # copies into and out of the cut at i
            iterate, deiterate = (
                (RuleId.R3_iterate, RuleId.R3_deiterate) if isinstance(e, Ccut)
                else (RuleId.SID_iterate, RuleId.SID_deiterate)
            )
            others = _without(region, i)
            other_keys = {element_key(x) for x in others}
            for x in others:
                ok = (ctx.ncc or is_strong(x)) if isinstance(e, Ccut) else is_strong(x)
                if ok and iterate in rules:
                    yield iterate, region[:i] + (type(e)(e.contents + (x,)),) + region[i + 1:]
            for j, y in enumerate(e.contents):
                ok = (ctx.ncc or is_strong(y)) if isinstance(e, Ccut) else is_strong(y)
                if ok and deiterate in rules and element_key(y) in other_keys:
                    smaller = type(e)(_without(e.contents, j))
                    yield deiterate, region[:i] + (smaller,) + region[i + 1:]
        inner = _double(e)
        if inner is not None and even and RuleId.R6_remove_double_even in rules:
            yield RuleId.R6_remove_double_even, _without(region, i) + inner
    if not even and RuleId.R6_add_double_odd in rules:
        for chosen, rest in _submultisets(region):
            yield RuleId.R6_add_double_odd, rest + (Ccut((Ccut(chosen),)),)


def successors(g: Sequence[Element], rules: Iterable[RuleId | str],
               pool: Sequence[Graph] = ()) -> list[tuple[RuleId, Graph]]:
    """Every single-step rewrite of ``g`` by the given rules, one result per
    rule and AC-class.  ``pool`` lists the graphs R2_write_odd may insert."""
    g = tuple(g)
    rules = frozenset(rule_id(r) for r in rules)
    seen = set()
    out = []
    for pos in positions(g):
        region, ctx = region_at(g, pos)
        for rule, new in _region_rewrites(region, ctx, rules, pool):
            h = canonical_form(replace_region(g, pos, new))
            key = (rule, print_graph(h))
            if key not in seen:
                seen.add(key)
                out.append((rule, h))
    return out


# ---------------------------------------------------------------------------
# soundness harness

DEFAULT_FRAMES = {"get": "t", "get4": "s4"}


@dataclass(frozen=True)
class Violation:
    before: Graph
    after: Graph
    rule: RuleId
    model: KripkeModel

    def to_document(self) -> dict:
        return {
            "before": print_graph(self.before),
            "after": print_graph(self.after),
            "rule": self.rule.value,
            "model": self.model.to_document(),
        }


@dataclass
class SoundnessReport:
    system: str
    frame: str
    max_size: int
    max_worlds: int
    graphs: int
    steps: int
    models: int
    violations: list[Violation] = field(default_factory=list)
    rules: list[RuleId] = field(default_factory=list)

    @property
    def sound(self) -> bool:
        return not self.violations

    def to_document(self) -> dict:
        return {
            "system": self.system, "frame": self.frame, "max_size": self.max_size,
            "max_worlds": self.max_worlds, "graphs": self.graphs, "steps": self.steps,
            "models": self.models, "rules": [r.value for r in self.rules],
            "violations": [v.to_document() for v in self.violations],
        }


def _check_chunk(args) -> tuple[int, list[Violation]]:
    graphs, atom_names, max_worlds, frame, rules, pool = args
    batch = all_models(atom_names, max_worlds, frame)
    steps = 0
    found = []
    for before in graphs:
        pre = batch.at_actual(to_formula(before))
        if not pre.any():
            steps += len(successors(before, rules, pool))
            continue
        for rule, after in successors(before, rules, pool):
            steps += 1
            bad = np.flatnonzero(pre & ~batch.at_actual(to_formula(after)))
            if len(bad):
                found.append(Violation(before, after, rule, batch.model(int(bad[0]), atom_names)))
    return steps, found


def rule_soundness_suite(max_size: int = 3, atoms: Sequence[str] = ("p", "q"),
                         max_worlds: int = 3, system: str = "get",
                         frame: str | FrameClass | None = None,
                         rules: Iterable[RuleId | str] | None = None,
                         pool_size: int = 2, jobs: int = 1) -> SoundnessReport:
    """Check every one-step rewrite of every graph with at most ``max_size``
    nodes: wherever the old graph's formula holds at the actual world, the
    new one's must too, over all models with at most ``max_worlds`` worlds.

    The frame defaults to reflexive (GET) or reflexive-transitive (GET4).
    Written graphs come from all graphs with at most ``pool_size`` nodes.
    Violations are listed in enumeration order whatever ``jobs`` is.
    """
    if frame is None:
        frame = DEFAULT_FRAMES[system]
    fc = frame_by_name(frame) if isinstance(frame, str) else frame
    rules = ruleset(system) if rules is None else [rule_id(r) for r in rules]
    atom_names = tuple(sorted(atoms))
    graphs = all_graphs(max_size, atom_names)
    pool = [g for g in all_graphs(pool_size, atom_names) if g]
    models = len(all_models(atom_names, max_worlds, fc))
    if jobs > 1:
        size = -(-len(graphs) // jobs)
        chunks = [graphs[i:i + size] for i in range(0, len(graphs), size)]
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(_check_chunk,
                                  [(c, atom_names, max_worlds, fc, rules, pool) for c in chunks]))
    else:
        results = [_check_chunk((graphs, atom_names, max_worlds, fc, rules, pool))]
    steps = sum(r[0] for r in results)
    violations = [v for r in results for v in r[1]]
    return SoundnessReport(system, fc.name, max_size, max_worlds, len(graphs), steps, models,
                           violations, list(rules))


def reachable(start: Sequence[Element], system: str = "get", max_steps: int = 4,
              max_size: int = 7, pool: Sequence[Graph] = ()) -> list[Graph]:
    """Every graph (one per AC-class) reachable from ``start`` in at most
    ``max_steps`` steps without passing through a graph larger than
    ``max_size`` nodes."""
    start = canonical_form(start)
    seen = {graph_key(start): start}
    frontier = [start]
    for _ in range(max_steps):
        nxt = []
        for g in frontier:
            for _, h in successors(g, ruleset(system), pool):
                k = graph_key(h)
                if k not in seen and size(h) <= max_size:
                    seen[k] = h
                    nxt.append(h)
        frontier = nxt
    return list(seen.values())
