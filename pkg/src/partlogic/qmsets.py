"""Quantum mechanics over sets: the powerset of a universe as a vector space over GF(2).

A subset is a vector, addition is symmetric difference and the empty set is
zero. There is no inner product, so evolution is any non-singular linear map
and state reduction picks an atom of the current support with equal odds.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import InputError, RankDeficientBasis, UniverseMismatch
from .partition import Partition, Universe, lattice_graph


def gf2_rank(rows: Sequence[int]) -> int:
    """Rank over GF(2) of bitmask rows ("bit i" = coordinate i)."""
    work = list(rows)
    rank = 0
    for i in range(len(work)):
        pivot = work[i]
        if not pivot:
            continue
        low = pivot & -pivot
        rank += 1
        for j in range(i + 1, len(work)):
            if work[j] & low:
                work[j] ^= pivot
    return rank


def gf2_solve(rows: Sequence[int], target: int) -> int | None:
    """Bitmask ``c`` of row indices with XOR of the selected rows equal to ``target``.

    Returns None when ``target`` is outside the row span. When the rows are
    independent the answer is unique.
    """
    # each entry: (reduced vector, combination of original rows producing it)
    basis: list[tuple[int, int]] = []
    for idx, row in enumerate(rows):
        vec, comb = row, 1 << idx
        for bvec, bcomb in basis:
            if vec & (bvec & -bvec):
                vec ^= bvec
                comb ^= bcomb
        if vec:
            # keep pivots unique by clearing this pivot from earlier vectors
            low = vec & -vec
            basis = [(bv ^ vec, bc ^ comb) if bv & low else (bv, bc) for bv, bc in basis]
            basis.append((vec, comb))
    vec, comb = target, 0
    for bvec, bcomb in basis:
        if vec & (bvec & -bvec):
            vec ^= bvec
            comb ^= bcomb
    return comb if vec == 0 else None


@dataclass(frozen=True)
class SubsetVector:
    """A subset of the universe viewed as a GF(2) vector (bit i = atom i)."""

    universe: Universe
    mask: int

    def __post_init__(self):
        if self.mask < 0 or self.mask >> len(self.universe):
            raise InputError("subset mask has bits outside the universe")

    @classmethod
    def of(cls, universe: Universe, labels: Iterable[str]) -> "SubsetVector":
        mask = 0
        for i in universe.indices(labels):
            mask |= 1 << i
        return cls(universe, mask)

    @classmethod
    def empty(cls, universe: Universe) -> "SubsetVector":
        return cls(universe, 0)

    @property
    def members(self) -> tuple[str, ...]:
        return tuple(lab for i, lab in enumerate(self.universe.labels) if self.mask >> i & 1)

    def __len__(self) -> int:
        return bin(self.mask).count("1")

    def __bool__(self) -> bool:
        return self.mask != 0

    def __iter__(self):
        return iter(self.members)

    def __add__(self, other: "SubsetVector") -> "SubsetVector":
        if self.universe != other.universe:
            raise UniverseMismatch("vectors live on different universes")
        return SubsetVector(self.universe, self.mask ^ other.mask)

    def notation(self) -> str:
        if not self.mask:
            return "∅"
        return "{" + ",".join(self.members) + "}"

    __str__ = notation


def add_vectors(x: SubsetVector, y: SubsetVector) -> SubsetVector:
    """Vector sum: symmetric difference."""
    return x + y


@dataclass(frozen=True)
class BasisTable:
    """A basis of the powerset space: one image subset per basis label.

    ``images[i]`` is the basis vector named ``labels[i]``, written as a subset
    of ``universe``.
    """

    universe: Universe
    basis_name: str
    images: tuple[SubsetVector, ...]
    labels: tuple[str, ...]
    basis_universe: Universe = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        images = tuple(self.images)
        labels = tuple(self.labels)
        n = len(self.universe)
        if len(images) != n or len(labels) != n:
            raise RankDeficientBasis(f"basis {self.basis_name!r} needs exactly {n} vectors")
        for v in images:
            if v.universe != self.universe:
                raise UniverseMismatch("basis vectors live on another universe")
        rank = gf2_rank([v.mask for v in images])
        if rank != n:
            raise RankDeficientBasis(f"basis {self.basis_name!r} has rank {rank} < {n}")
        object.__setattr__(self, "images", images)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "basis_universe", Universe(labels))

    @classmethod
    def standard(cls, universe: Universe, name: str = "U") -> "BasisTable":
        return cls(
            universe, name, tuple(SubsetVector(universe, 1 << i) for i in range(len(universe))), universe.labels
        )

    @classmethod
    def from_mapping(
        cls, universe: Universe, images: Mapping[str, Iterable[str]], name: str = "U'", suffix: str = "'"
    ) -> "BasisTable":
        """Basis vector ``x + suffix`` is the image of atom ``x``."""
        missing = [lab for lab in universe.labels if lab not in images]
        if missing:
            raise InputError(f"evolution table gives no image for {missing}")
        extra = set(images) - set(universe.labels)
        if extra:
            raise InputError(f"evolution table names unknown atoms {sorted(extra)}")
        vecs = tuple(SubsetVector.of(universe, images[lab]) for lab in universe.labels)
        return cls(universe, name, vecs, tuple(lab + suffix for lab in universe.labels))

    def image(self, label: str) -> SubsetVector:
        return self.images[self.universe.index(label)]

    def to_json(self) -> dict:
        return {lab: list(self.image(lab).members) for lab in self.universe.labels}


SLIT_UNIVERSE = Universe("abc")

PRIMED_IMAGES = {"a": ["a", "b"], "b": ["a", "b", "c"], "c": ["b", "c"]}
DOUBLE_PRIMED_IMAGES = {"a": ["a"], "b": ["a", "b"], "c": ["a", "c"]}


def primed_basis(universe: Universe = SLIT_UNIVERSE) -> BasisTable:
    """``a' = {a,b}``, ``b' = {a,b,c}``, ``c' = {b,c}``: the wave-spreading basis."""
    return BasisTable.from_mapping(universe, PRIMED_IMAGES, "U'", "'")


def double_primed_basis(universe: Universe = SLIT_UNIVERSE) -> BasisTable:
    return BasisTable.from_mapping(universe, DOUBLE_PRIMED_IMAGES, "U''", "''")


def express_in_basis(v: SubsetVector, basis: BasisTable) -> SubsetVector:
    """Coordinates of ``v``: the basis vectors summing to it, as a subset of the basis labels."""
    if v.universe != basis.universe:
        raise UniverseMismatch("vector and basis live on different universes")
    comb = gf2_solve([img.mask for img in basis.images], v.mask)
    assert comb is not None  # full rank is checked at construction
    return SubsetVector(basis.basis_universe, comb)


def from_basis(coords: SubsetVector, basis: BasisTable) -> SubsetVector:
    """Sum of the basis vectors named in ``coords``."""
    if coords.universe != basis.basis_universe:
        raise UniverseMismatch("coordinates do not use this basis' labels")
    out = SubsetVector.empty(basis.universe)
    for i in range(len(basis.images)):
        if coords.mask >> i & 1:
            out = out + basis.images[i]
    return out


def apply_evolution(v: SubsetVector, basis: BasisTable) -> SubsetVector:
    """Linear map sending each atom ``x`` to its basis image, extended by addition."""
    if v.universe != basis.universe:
        raise UniverseMismatch("vector and evolution live on different universes")
    out = SubsetVector.empty(v.universe)
    for lab in v.members:
        out = out + basis.image(lab)
    return out


@dataclass(frozen=True)
class KetTable:
    bases: tuple[BasisTable, ...]
    rows: tuple[tuple[SubsetVector, ...], ...]

    def row_for(self, v: SubsetVector) -> tuple[SubsetVector, ...]:
        """Row whose first-basis entry is ``v``."""
        return next(r for r in self.rows if r[0] == v)

    def to_json(self) -> dict:
        return {
            "bases": [b.basis_name for b in self.bases],
            "rows": [[list(v.members) for v in row] for row in self.rows],
        }

    def to_text(self) -> str:
        cells = [[b.basis_name for b in self.bases]] + [[v.notation() for v in row] for row in self.rows]
        width = [max(len(r[i]) for r in cells) for i in range(len(self.bases))]
        return "\n".join("  ".join(c.ljust(w) for c, w in zip(r, width)).rstrip() for r in cells) + "\n"


def ket_table(bases: Sequence[BasisTable]) -> KetTable:
    """Every vector of the space written in each basis, one row per vector.

    Rows are ordered by the size of the subset in the first basis' universe,
    largest first, then lexicographically.
    """
    if not bases:
        raise InputError("ket table needs at least one basis")
    universe = bases[0].universe
    for b in bases:
        if b.universe != universe:
            raise UniverseMismatch("all bases must span the same powerset")
        if gf2_rank([v.mask for v in b.images]) != len(universe):
            raise RankDeficientBasis(f"basis {b.basis_name!r} is rank deficient")
    n = len(universe)
    vectors = [SubsetVector(universe, m) for m in range(1 << n)]
    vectors.sort(key=lambda v: (-len(v), [universe.index(x) for x in v.members]))
    rows = tuple(tuple(express_in_basis(v, b) for b in bases) for v in vectors)
    return KetTable(tuple(bases), rows)


@dataclass(frozen=True)
class SlitScenario:
    """Emitter, two-slit screen and detection wall on ``{a, b, c}``."""

    detection: bool = True
    evolution: BasisTable = field(default_factory=primed_basis)
    emitter: str = "b"
    slits: tuple[str, ...] = ("a", "c")

    def __post_init__(self):
        if self.evolution.universe != SLIT_UNIVERSE:
            raise InputError("the two-slit setup uses the universe {a, b, c}")
        SLIT_UNIVERSE.index(self.emitter)
        SLIT_UNIVERSE.indices(self.slits)
        object.__setattr__(self, "slits", tuple(self.slits))

    @property
    def universe(self) -> Universe:
        return SLIT_UNIVERSE


def scenario_from_json(obj: Mapping) -> SlitScenario:
    if not isinstance(obj, Mapping):
        raise InputError("scenario JSON must be an object")
    detection = obj.get("detection", True)
    if not isinstance(detection, bool):
        raise InputError("'detection' must be true or false")
    evolution = primed_basis()
    if "evolution" in obj:
        evolution = BasisTable.from_mapping(SLIT_UNIVERSE, obj["evolution"], "U'", "'")
    return SlitScenario(detection=detection, evolution=evolution)


@dataclass(frozen=True)
class OutcomeDist:
    outcomes: dict

    def __post_init__(self):
        total = sum(self.outcomes.values(), Fraction(0))
        if total != 1:
            raise InputError(f"outcome probabilities sum to {total}")

    def __getitem__(self, label: str) -> Fraction:
        return self.outcomes[label]

    def to_json(self) -> dict:
        return {"outcomes": {k: str(v) for k, v in self.outcomes.items()}}


def lattice_node(v: SubsetVector) -> Partition:
    """Partition whose only non-singleton block is the support of ``v``."""
    universe = v.universe
    members = [universe.index(x) for x in v.members]
    rest = [(i,) for i in range(len(universe)) if i not in members]
    return Partition.from_indices(universe, ([members] if members else []) + rest)


@dataclass(frozen=True)
class TraceEvent:
    """One arrow of the path through the lattice.

    ``probability`` is conditional on being at ``source``; evolutions carry 1.
    """

    step: int
    kind: str
    source: SubsetVector
    target: SubsetVector
    probability: Fraction

    @property
    def source_node(self) -> Partition:
        return lattice_node(self.source)

    @property
    def target_node(self) -> Partition:
        return lattice_node(self.target)

    def to_json(self) -> dict:
        return {
            "step": self.step,
            "kind": self.kind,
            "from": list(self.source.members),
            "to": list(self.target.members),
            "probability": str(self.probability),
            "from_node": self.source_node.notation(),
            "to_node": self.target_node.notation(),
        }


def _reduce(state: SubsetVector, weight: Fraction, step: int, events: list, sink: dict, prefix: str) -> None:
    share = Fraction(1, len(state))
    for lab in state.members:
        single = SubsetVector.of(state.universe, [lab])
        events.append(TraceEvent(step, "reduction", state, single, share))
        sink[f"{prefix}:{lab}"] += weight * share


def _propagate(scenario: SlitScenario) -> tuple[dict, list[TraceEvent]]:
    U = scenario.universe
    evo = scenario.evolution
    events: list[TraceEvent] = []
    screen_atoms = [x for x in U.labels if x not in scenario.slits]
    outcomes = {f"screen:{x}": Fraction(0) for x in screen_atoms}
    outcomes.update({f"wall:{x}": Fraction(0) for x in U.labels})

    start = SubsetVector.of(U, [scenario.emitter])
    at_screen = apply_evolution(start, evo)
    events.append(TraceEvent(0, "evolution", start, at_screen, Fraction(1)))

    # the screen absorbs outside the slits; the slit part stays a superposition
    share = Fraction(1, len(at_screen))
    through = SubsetVector.of(U, [x for x in at_screen.members if x in scenario.slits])
    for x in at_screen.members:
        if x not in scenario.slits:
            events.append(TraceEvent(1, "reduction", at_screen, SubsetVector.of(U, [x]), share))
            outcomes[f"screen:{x}"] += share
    branches: list[tuple[SubsetVector, Fraction]] = []
    if through:
        weight = share * len(through)
        events.append(TraceEvent(1, "reduction", at_screen, through, weight))
        branches = [(through, weight)]

    step = 2
    if scenario.detection:
        # detectors distinguish the slits: probabilities add from here on
        split = []
        for state, weight in branches:
            for x in state.members:
                single = SubsetVector.of(U, [x])
                events.append(TraceEvent(step, "reduction", state, single, Fraction(1, len(state))))
                split.append((single, weight / len(state)))
        branches = split
        step += 1

    arrived = []
    for state, weight in branches:
        at_wall = apply_evolution(state, evo)
        events.append(TraceEvent(step, "evolution", state, at_wall, Fraction(1)))
        arrived.append((at_wall, weight))
    step += 1
    for state, weight in arrived:
        if state:
            _reduce(state, weight, step, events, outcomes, "wall")
    return outcomes, events


def run_double_slit(scenario: SlitScenario) -> OutcomeDist:
    """Exact hit distribution over screen and wall positions."""
    outcomes, _ = _propagate(scenario)
    return OutcomeDist(outcomes)


def trace_lattice_path(scenario: SlitScenario) -> list[TraceEvent]:
    """Ordered evolutions and reductions followed by the particle."""
    _, events = _propagate(scenario)
    return events


def trace_to_dot(events: Sequence[TraceEvent]) -> str:
    """The trace drawn over the partition lattice of ``{a, b, c}``.

    Reductions are dashed arrows, evolutions solid ones.
    """
    graph = lattice_graph(SLIT_UNIVERSE)
    overlay = []
    seen = set()
    for ev in events:
        arrow = (graph.index_of(ev.source_node), graph.index_of(ev.target_node),
                 "dashed" if ev.kind == "reduction" else "solid")
        if arrow not in seen:
            seen.add(arrow)
            overlay.append(arrow)
    return graph.to_dot(name="slit_trace", overlay=overlay)
