"""Finite reflexive Kripke models, evaluation, and bounded model search.

Two evaluators live here.  :func:`evaluate` walks one model world by world
and spells out the quantifier in the weak-negation clause; it is the
reference.  :class:`ModelBatch` evaluates a formula over many models at once
by treating truth values as world bitmasks in numpy arrays; the bounded
searches use it.

Enumeration order is fixed so that "the first countermodel" means the same
thing everywhere: world count ascending, then the off-diagonal accessibility
pairs read as a bitset (pairs in lexicographic order, bit 0 first) ascending,
then valuations read as a bitset ascending, where bit ``w * len(atoms) + i``
says atom ``atoms[i]`` holds at world ``w``.  World 0 is the actual world;
since every relabelling of a frame is enumerated, truth at world 0 of every
enumerated model is the same as truth at every world.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping

import numpy as np

from .formula import (
    Atom,
    ClassNeg,
    Conj,
    Formula,
    Impl,
    Top,
    WeakNeg,
    atoms as formula_atoms,
    print_formula,
)


class ModelError(ValueError):
    pass


class MissingReflexivity(ModelError):
    def __init__(self, world: str):
        self.world = world
        super().__init__(f"world {world!r} is not related to itself")


class UnknownWorld(ModelError):
    def __init__(self, world: str):
        self.world = world
        super().__init__(f"reference to unknown world {world!r}")


class DuplicateWorld(ModelError):
    def __init__(self, world: str):
        self.world = world
        super().__init__(f"world {world!r} listed twice")


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class FrameClass:
    """Frame conditions beyond reflexivity, which always holds."""

    transitive: bool = False
    symmetric: bool = False
    convergent: bool = False

    @property
    def name(self) -> str:
        for key, frame in FRAMES.items():
            if frame == self:
                return key
        flags = [n for n in ("transitive", "symmetric", "convergent") if getattr(self, n)]
        return "+".join(["reflexive", *flags])


FRAMES = {
    "t": FrameClass(),
    "s4": FrameClass(transitive=True),
    "s4.2": FrameClass(transitive=True, convergent=True),
    "s5": FrameClass(transitive=True, symmetric=True),
}


def frame_by_name(name: str) -> FrameClass:
    try:
        return FRAMES[name.lower()]
    except KeyError:
        raise ValueError(f"unknown frame {name!r}; expected one of {sorted(FRAMES)}") from None


@dataclass(frozen=True)
class KripkeModel:
    worlds: tuple[str, ...]
    actual: str
    rel: frozenset[tuple[str, str]]
    valuation: Mapping[str, frozenset[str]] = field(hash=False)

    def __post_init__(self):
        seen = set()
        for w in self.worlds:
            if w in seen:
                raise DuplicateWorld(w)
            seen.add(w)
        if not self.worlds:
            raise ModelError("a model needs at least one world")
        if self.actual not in seen:
            raise UnknownWorld(self.actual)
        for a, b in sorted(self.rel):
            for w in (a, b):
                if w not in seen:
                    raise UnknownWorld(w)
        for w in self.valuation:
            if w not in seen:
                raise UnknownWorld(w)
        for w in self.worlds:
            if (w, w) not in self.rel:
                raise MissingReflexivity(w)
        full = {w: frozenset(self.valuation.get(w, ())) for w in self.worlds}
        object.__setattr__(self, "valuation", full)

    def successors(self, w: str) -> list[str]:
        return [v for v in self.worlds if (w, v) in self.rel]

    def true_atoms(self, w: str) -> frozenset[str]:
        return self.valuation[w]

    def in_frame(self, frame: FrameClass) -> bool:
        ws = self.worlds
        r = self.rel
        if frame.transitive and any(
            (a, b) in r and (b, c) in r and (a, c) not in r for a in ws for b in ws for c in ws
        ):
            return False
        if frame.symmetric and any((b, a) not in r for a, b in r):
            return False
        if frame.convergent:
            for a in ws:
                succ = self.successors(a)
                for b in succ:
                    for c in succ:
                        if not any((b, d) in r and (c, d) in r for d in ws):
                            return False
        return True

    def to_document(self) -> dict:
        return {
            "worlds": list(self.worlds),
            "actual": self.actual,
            "rel": [[a, b] for a in self.worlds for b in self.worlds if (a, b) in self.rel],
            "valuation": {
                w: {a: True for a in sorted(self.valuation[w])}
                for w in self.worlds
                if self.valuation[w]
            },
        }


def build_model(description: Mapping | str) -> KripkeModel:
    """Validate a model document (a mapping, or its JSON text).

    Atoms missing from a world's valuation are false there.  Reflexive
    pairs must be listed; nothing is added.
    """
    doc = json.loads(description) if isinstance(description, str) else description
    try:
        worlds = tuple(str(w) for w in doc["worlds"])
        actual = str(doc["actual"])
        pairs = []
        for pair in doc.get("rel", []):
            a, b = pair
            pairs.append((str(a), str(b)))
        valuation = {}
        for w, vals in (doc.get("valuation") or {}).items():
            if isinstance(vals, Mapping):
                valuation[str(w)] = frozenset(a for a, v in vals.items() if v)
            else:
                valuation[str(w)] = frozenset(vals)
    except (KeyError, TypeError, ValueError) as exc:
        raise ModelError(f"malformed model document: {exc}") from exc
    return KripkeModel(worlds, actual, frozenset(pairs), valuation)


def evaluate(m: KripkeModel, w: str, f: Formula) -> bool:
    """Truth of ``f`` at world ``w`` of ``m``."""
    if w not in m.valuation:
        raise UnknownWorld(w)
    return _eval(m, w, f)


def _eval(m: KripkeModel, w: str, f: Formula) -> bool:
    if isinstance(f, Atom):
        return f.name in m.valuation[w]
    if isinstance(f, Top):
        return True
    if isinstance(f, WeakNeg):
        # some accessible world falsifies the operand
        return any(not _eval(m, v, f.operand) for v in m.successors(w))
    if isinstance(f, ClassNeg):
        return not _eval(m, w, f.operand)
    if isinstance(f, Impl):
        return (not _eval(m, w, f.antecedent)) or _eval(m, w, f.consequent)
    if isinstance(f, Conj):
        return _eval(m, w, f.left) and _eval(m, w, f.right)
    raise TypeError(f"not a formula: {f!r}")


def true_in(m: KripkeModel, f: Formula) -> bool:
    return evaluate(m, m.actual, f)


# ---------------------------------------------------------------------------
# enumeration


def _pairs(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(n) for j in range(n) if i != j]


def succ_masks(n: int, rel_bits: int) -> tuple[int, ...]:
    """Successor bitmask per world for the reflexive relation ``rel_bits``."""
    succ = [1 << i for i in range(n)]
    for k, (i, j) in enumerate(_pairs(n)):
        if rel_bits >> k & 1:
            succ[i] |= 1 << j
    return tuple(succ)


def frame_ok(succ: tuple[int, ...], frame: FrameClass) -> bool:
    n = len(succ)
    if frame.transitive:
        for i in range(n):
            for j in range(n):
                if succ[i] >> j & 1 and succ[j] & ~succ[i]:
                    return False
    if frame.symmetric:
        for i in range(n):
            for j in range(n):
                if (succ[i] >> j & 1) != (succ[j] >> i & 1):
                    return False
    if frame.convergent:
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    if succ[i] >> j & 1 and succ[i] >> k & 1 and not succ[j] & succ[k]:
                        return False
    return True


def frames(n: int, frame: FrameClass = FrameClass()) -> Iterator[tuple[int, tuple[int, ...]]]:
    """Reflexive frames on ``n`` worlds satisfying ``frame``, in order."""
    for rel_bits in range(1 << (n * (n - 1))):
        succ = succ_masks(n, rel_bits)
        if frame_ok(succ, frame):
            yield rel_bits, succ


def is_transitive(succ: tuple[int, ...]) -> bool:
    return frame_ok(succ, FrameClass(transitive=True))


def decode_model(n: int, rel_bits: int, val_bits: int, atom_names: tuple[str, ...]) -> KripkeModel:
    names = tuple(f"w{i}" for i in range(n))
    succ = succ_masks(n, rel_bits)
    rel = frozenset(
        (names[i], names[j]) for i in range(n) for j in range(n) if succ[i] >> j & 1
    )
    k = len(atom_names)
    valuation = {
        names[w]: frozenset(a for i, a in enumerate(atom_names) if val_bits >> (w * k + i) & 1)
        for w in range(n)
    }
    return KripkeModel(names, names[0], rel, valuation)


def upper_model_count(n_atoms: int, max_worlds: int) -> int:
    return sum(2 ** (n * (n - 1)) * 2 ** (n * n_atoms) for n in range(1, max_worlds + 1))


class ModelBatch:
    """Many models evaluated side by side.

    ``succ[m, w]`` is the successor bitmask of world ``w`` in model ``m``;
    ``full[m]`` has one bit per world of model ``m``; ``val[a][m]`` is the
    set of worlds where atom ``a`` holds.  Worlds past a model's size have no
    successors and never get set.
    """

    def __init__(self, succ: np.ndarray, full: np.ndarray, val: dict[str, np.ndarray],
                 index: np.ndarray | None = None):
        self.succ = succ
        self.full = full
        self.val = val
        # rows of (n, rel_bits, val_bits) used to rebuild individual models
        self.index = index
        self._memo: dict[Formula, np.ndarray] = {}

    def __len__(self) -> int:
        return len(self.full)

    @classmethod
    def for_frame(cls, n: int, rel_bits: int, succ: tuple[int, ...],
                  atom_names: tuple[str, ...]) -> "ModelBatch":
        k = len(atom_names)
        vals = np.arange(1 << (n * k), dtype=np.int64)
        count = len(vals)
        succ_arr = np.broadcast_to(np.array(succ, dtype=np.int64), (count, n))
        full = np.full(count, (1 << n) - 1, dtype=np.int64)
        val = {}
        for i, a in enumerate(atom_names):
            mask = np.zeros(count, dtype=np.int64)
            for w in range(n):
                mask |= ((vals >> (w * k + i)) & 1) << w
            val[a] = mask
        index = np.stack([np.full(count, n), np.full(count, rel_bits), vals], axis=1)
        return cls(succ_arr, full, val, index)

    @classmethod
    def concat(cls, batches: list["ModelBatch"], n_max: int) -> "ModelBatch":
        succ = np.concatenate(
            [np.pad(b.succ, ((0, 0), (0, n_max - b.succ.shape[1]))) for b in batches]
        )
        full = np.concatenate([b.full for b in batches])
        names = batches[0].val.keys()
        val = {a: np.concatenate([b.val[a] for b in batches]) for a in names}
        index = np.concatenate([b.index for b in batches])
        return cls(succ, full, val, index)

    def truth(self, f: Formula) -> np.ndarray:
        """Bitmask of worlds where ``f`` holds, per model."""
        hit = self._memo.get(f)
        if hit is not None:
            return hit
        if isinstance(f, Atom):
            try:
                out = self.val[f.name]
            except KeyError:
                out = np.zeros_like(self.full)
        elif isinstance(f, Top):
            out = self.full
        elif isinstance(f, WeakNeg):
            false_at = ~self.truth(f.operand) & self.full
            out = np.zeros_like(self.full)
            for w in range(self.succ.shape[1]):
                out = out | (((self.succ[:, w] & false_at) != 0).astype(np.int64) << w)
        elif isinstance(f, ClassNeg):
            out = ~self.truth(f.operand) & self.full
        elif isinstance(f, Impl):
            out = (~self.truth(f.antecedent) | self.truth(f.consequent)) & self.full
        elif isinstance(f, Conj):
            out = self.truth(f.left) & self.truth(f.right)
        else:
            raise TypeError(f"not a formula: {f!r}")
        self._memo[f] = out
        return out

    def clear_cache(self) -> None:
        """Drop memoised truth tables (they grow with every formula seen)."""
        self._memo.clear()

    def at_actual(self, f: Formula) -> np.ndarray:
        return (self.truth(f) & 1).astype(bool)

    def everywhere(self, f: Formula) -> np.ndarray:
        return self.truth(f) == self.full

    def model(self, i: int, atom_names: tuple[str, ...]) -> KripkeModel:
        n, rel_bits, val_bits = (int(x) for x in self.index[i])
        return decode_model(n, rel_bits, val_bits, atom_names)


def all_models(atom_names: Iterable[str], max_worlds: int,
               frame: FrameClass = FrameClass(), budget: int = 1 << 26) -> ModelBatch:
    """Every model up to ``max_worlds`` on the frame class, as one batch."""
    atom_names = tuple(atom_names)
    if upper_model_count(len(atom_names), max_worlds) > budget:
        raise BudgetExceeded(
            f"{max_worlds} worlds over {len(atom_names)} atoms exceeds the model budget {budget}"
        )
    batches = [
        ModelBatch.for_frame(n, rel_bits, succ, atom_names)
        for n in range(1, max_worlds + 1)
        for rel_bits, succ in frames(n, frame)
    ]
    return ModelBatch.concat(batches, max_worlds)


# ---------------------------------------------------------------------------
# verdicts


@dataclass(frozen=True)
class Valid:
    bound: int

    @property
    def valid(self) -> bool:
        return True


@dataclass(frozen=True)
class Countermodel:
    model: KripkeModel
    formula: Formula

    def __post_init__(self):
        if true_in(self.model, self.formula):
            raise AssertionError(
                f"claimed countermodel satisfies {print_formula(self.formula)}"
            )

    @property
    def valid(self) -> bool:
        return False


Verdict = Valid | Countermodel


def _first_failure(args) -> tuple[int, int, int] | None:
    f, n, chunk, atom_names = args
    for rel_bits, succ in chunk:
        batch = ModelBatch.for_frame(n, rel_bits, succ, atom_names)
        bad = np.flatnonzero(~batch.at_actual(f))
        if len(bad):
            return n, rel_bits, int(batch.index[bad[0], 2])
    return None


def bounded_valid(f: Formula, max_worlds: int, frame: FrameClass = FrameClass(),
                  budget: int = 1 << 26, jobs: int = 1) -> Verdict:
    """Search every model with at most ``max_worlds`` worlds for one that
    falsifies ``f`` at its actual world.

    A countermodel settles invalidity; ``Valid`` only speaks for the bound.
    With ``jobs > 1`` each world count's frames are split into contiguous
    chunks checked in parallel; the earliest chunk with a hit wins, so the
    answer matches the sequential one.
    """
    if max_worlds < 1:
        raise ValueError("max_worlds must be at least 1")
    atom_names = formula_atoms(f)
    if upper_model_count(len(atom_names), max_worlds) > budget:
        raise BudgetExceeded(
            f"{max_worlds} worlds over {len(atom_names)} atoms exceeds the model budget {budget}"
        )
    for n in range(1, max_worlds + 1):
        frame_list = list(frames(n, frame))
        if jobs > 1 and len(frame_list) > 1:
            size = -(-len(frame_list) // jobs)
            chunks = [frame_list[i:i + size] for i in range(0, len(frame_list), size)]
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                results = list(pool.map(_first_failure, [(f, n, c, atom_names) for c in chunks]))
            hit = next((r for r in results if r is not None), None)
        else:
            hit = _first_failure((f, n, frame_list, atom_names))
        if hit is not None:
            return Countermodel(decode_model(*hit, atom_names), f)
    return Valid(max_worlds)


def bounded_equivalent(f: Formula, g: Formula, max_worlds: int = 3,
                       frame: FrameClass = FrameClass()) -> bool:
    """Whether ``f`` and ``g`` agree at every world of every bounded model."""
    names = tuple(sorted(set(formula_atoms(f)) | set(formula_atoms(g))))
    batch = all_models(names, max_worlds, frame)
    return bool(np.array_equal(batch.truth(f), batch.truth(g)))


# ---------------------------------------------------------------------------
# frame correspondence


@dataclass
class FrameWitness:
    n: int
    rel_bits: int
    schema_holds: bool
    has_property: bool

    def pairs(self) -> list[tuple[int, int]]:
        succ = succ_masks(self.n, self.rel_bits)
        return [(i, j) for i in range(self.n) for j in range(self.n) if succ[i] >> j & 1]


@dataclass
class CorrespondenceReport:
    schema: Formula
    property: str
    max_worlds: int
    frames_checked: int
    failures: list[FrameWitness]

    @property
    def equivalent(self) -> bool:
        return not self.failures


PROPERTIES = {"transitive": is_transitive}


def schema_holds_on_frame(schema: Formula, n: int, rel_bits: int, succ: tuple[int, ...]) -> bool:
    """Frame validity: true at every world under every valuation."""
    batch = ModelBatch.for_frame(n, rel_bits, succ, formula_atoms(schema))
    return bool(batch.everywhere(schema).all())


def correspondence_check(schema: Formula, property: str = "transitive",
                         max_worlds: int = 3) -> CorrespondenceReport:
    """Compare frame validity of ``schema`` with a relational property over
    every reflexive frame with at most ``max_worlds`` worlds."""
    try:
        prop = PROPERTIES[property]
    except KeyError:
        raise ValueError(f"unsupported frame property {property!r}") from None
    failures = []
    checked = 0
    for n in range(1, max_worlds + 1):
        for rel_bits, succ in frames(n):
            checked += 1
            holds = schema_holds_on_frame(schema, n, rel_bits, succ)
            has = prop(succ)
            if holds != has:
                failures.append(FrameWitness(n, rel_bits, holds, has))
    return CorrespondenceReport(schema, property, max_worlds, checked, failures)
