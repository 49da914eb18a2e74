"""Set partitions of a finite universe and the partition algebra.

Partitions are ordered by refinement with the discrete partition (all
singletons) on top: ``join`` intersects blocks and ``meet`` merges
overlapping blocks. Distinctions (dits) are ordered pairs of atoms in
different blocks; the join's dits are the union of both ditsets.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Hashable, Iterable, Iterator, Mapping, Sequence

import numpy as np

from . import kernels
from .errors import (
    AtomNotInUniverse,
    CoverError,
    EmptyBlockError,
    InputError,
    OverlapError,
    SizeCapExceeded,
    UniverseMismatch,
)

DEFAULT_CAP = 12


@dataclass(frozen=True)
class Universe:
    """Ordered set of distinct atom labels; position is the canonical index."""

    labels: tuple[str, ...]
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __init__(self, labels: Iterable[str]):
        labels = tuple(labels)
        for lab in labels:
            if not isinstance(lab, str) or not lab:
                raise InputError(f"atom labels must be non-empty strings, got {lab!r}")
        index = {}
        for i, lab in enumerate(labels):
            if lab in index:
                raise InputError(f"duplicate atom {lab!r} in universe")
            index[lab] = i
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "_index", index)

    @classmethod
    def letters(cls, n: int) -> "Universe":
        """``a, b, c, ...`` for n <= 26, else ``u1 .. un``."""
        if n < 0:
            raise InputError("universe size must be non-negative")
        if n <= 26:
            return cls(chr(ord("a") + i) for i in range(n))
        return cls(f"u{i + 1}" for i in range(n))

    def __len__(self) -> int:
        return len(self.labels)

    def __iter__(self) -> Iterator[str]:
        return iter(self.labels)

    def __contains__(self, label: object) -> bool:
        return label in self._index

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except (KeyError, TypeError):
            raise AtomNotInUniverse(f"atom {label!r} is not in the universe {list(self.labels)}") from None

    def indices(self, labels: Iterable[str]) -> tuple[int, ...]:
        return tuple(self.index(lab) for lab in labels)

    def subset_mask(self, labels: Iterable[str]) -> np.ndarray:
        mask = np.zeros(len(self), dtype=bool)
        for i in self.indices(labels):
            mask[i] = True
        return mask


def _single_char(universe: Universe) -> bool:
    return all(len(lab) == 1 for lab in universe.labels)


@dataclass(frozen=True)
class Partition:
    """A partition in canonical form.

    ``blocks`` holds atom indices; members are sorted and blocks are ordered
    by their least member, so equality is structural.
    """

    universe: Universe
    blocks: tuple[tuple[int, ...], ...]

    @classmethod
    def from_indices(cls, universe: Universe, blocks: Iterable[Iterable[int]]) -> "Partition":
        n = len(universe)
        owner: dict[int, int] = {}
        clean = []
        for b, block in enumerate(blocks):
            block = tuple(block)
            if not block:
                raise EmptyBlockError(f"block {b} is empty")
            for i in block:
                if not 0 <= i < n:
                    raise AtomNotInUniverse(f"atom index {i} is outside a universe of size {n}")
                if i in owner:
                    lab = universe.labels[i]
                    raise OverlapError(f"atom {lab!r} appears in blocks {owner[i]} and {b}")
                owner[i] = b
            clean.append(tuple(sorted(set(block))))
        missing = [universe.labels[i] for i in range(n) if i not in owner]
        if missing:
            raise CoverError(f"atoms {missing} are not covered by any block")
        clean.sort(key=lambda blk: blk[0])
        return cls(universe, tuple(clean))

    @classmethod
    def from_rgs(cls, universe: Universe, rgs: Sequence[int]) -> "Partition":
        """Build from a restricted growth string (block label per atom)."""
        groups: dict[int, list[int]] = {}
        for i, lab in enumerate(rgs):
            groups.setdefault(int(lab), []).append(i)
        # first-appearance labelling already orders blocks by least member
        return cls(universe, tuple(tuple(g) for g in groups.values()))

    @classmethod
    def from_function(cls, universe: Universe, f: Mapping[str, Hashable]) -> "Partition":
        """Inverse-image partition ``{f^-1(r)}`` of a total function on the atoms."""
        groups: dict[Hashable, list[int]] = {}
        for lab in universe.labels:
            if lab not in f:
                raise InputError(f"function is not defined on atom {lab!r}")
            groups.setdefault(f[lab], []).append(universe.index(lab))
        return cls(universe, tuple(tuple(g) for g in groups.values()))

    @classmethod
    def top(cls, universe: Universe) -> "Partition":
        """The discrete partition: every atom its own block."""
        return cls(universe, tuple((i,) for i in range(len(universe))))

    @classmethod
    def bottom(cls, universe: Universe) -> "Partition":
        """The indiscrete partition: a single block."""
        if len(universe) == 0:
            return cls(universe, ())
        return cls(universe, (tuple(range(len(universe))),))

    def __len__(self) -> int:
        return len(self.blocks)

    @property
    def block_of(self) -> tuple[int, ...]:
        """Block position of each atom, i.e. the restricted growth string."""
        code = [0] * len(self.universe)
        for b, block in enumerate(self.blocks):
            for i in block:
                code[i] = b
        return tuple(code)

    @property
    def label_blocks(self) -> list[list[str]]:
        labs = self.universe.labels
        return [[labs[i] for i in block] for block in self.blocks]

    @property
    def is_top(self) -> bool:
        return len(self.blocks) == len(self.universe)

    @property
    def is_bottom(self) -> bool:
        return len(self.blocks) <= 1

    def notation(self) -> str:
        """Block notation with inner braces elided, e.g. ``{abc, d}``."""
        if _single_char(self.universe):
            inner = ["".join(b) for b in self.label_blocks]
        else:
            inner = ["{" + ",".join(b) + "}" for b in self.label_blocks]
        return "{" + ", ".join(inner) + "}"

    def __str__(self) -> str:
        return self.notation()

    def to_json(self) -> dict:
        return {"universe": list(self.universe.labels), "blocks": self.label_blocks}


def make_partition(universe: Universe, blocks: Iterable[Iterable[str]]) -> Partition:
    """Validate label blocks and return the canonical partition."""
    index_blocks = []
    for block in blocks:
        block = list(block)
        if not block:
            raise EmptyBlockError("partition contains an empty block")
        idx = universe.indices(block)
        if len(set(idx)) != len(idx):
            dup = next(lab for lab in block if block.count(lab) > 1)
            raise OverlapError(f"atom {dup!r} is repeated within a block")
        index_blocks.append(idx)
    return Partition.from_indices(universe, index_blocks)


def partition_from_json(obj: Mapping) -> Partition:
    try:
        universe = Universe(obj["universe"])
        blocks = obj["blocks"]
    except (KeyError, TypeError) as exc:
        raise InputError(f"partition JSON needs 'universe' and 'blocks': {exc}") from None
    return make_partition(universe, blocks)


@dataclass(frozen=True, eq=False)
class PairRelation:
    """Subset of ``U x U`` stored as an n-by-n boolean grid of ordered pairs."""

    universe: Universe
    grid: np.ndarray

    def __post_init__(self):
        grid = np.array(self.grid, dtype=bool)
        n = len(self.universe)
        if grid.shape != (n, n):
            raise InputError(f"relation grid must be {n}x{n}, got {grid.shape}")
        grid.setflags(write=False)
        object.__setattr__(self, "grid", grid)

    @classmethod
    def from_pairs(cls, universe: Universe, pairs: Iterable[tuple[str, str]]) -> "PairRelation":
        grid = np.zeros((len(universe), len(universe)), dtype=bool)
        for u, v in pairs:
            grid[universe.index(u), universe.index(v)] = True
        return cls(universe, grid)

    @classmethod
    def diagonal(cls, universe: Universe) -> "PairRelation":
        return cls(universe, np.eye(len(universe), dtype=bool))

    @classmethod
    def full(cls, universe: Universe) -> "PairRelation":
        return cls(universe, np.ones((len(universe), len(universe)), dtype=bool))

    def _check(self, other: "PairRelation") -> None:
        if self.universe != other.universe:
            raise UniverseMismatch("relations live on different universes")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PairRelation):
            return NotImplemented
        return self.universe == other.universe and bool(np.array_equal(self.grid, other.grid))

    def __hash__(self) -> int:
        return hash((self.universe, self.grid.tobytes()))

    def __len__(self) -> int:
        return int(self.grid.sum())

    def __contains__(self, pair: tuple[str, str]) -> bool:
        u, v = pair
        return bool(self.grid[self.universe.index(u), self.universe.index(v)])

    def __or__(self, other: "PairRelation") -> "PairRelation":
        self._check(other)
        return PairRelation(self.universe, self.grid | other.grid)

    def __and__(self, other: "PairRelation") -> "PairRelation":
        self._check(other)
        return PairRelation(self.universe, self.grid & other.grid)

    def __sub__(self, other: "PairRelation") -> "PairRelation":
        self._check(other)
        return PairRelation(self.universe, self.grid & ~other.grid)

    def __invert__(self) -> "PairRelation":
        return PairRelation(self.universe, ~self.grid)

    def __le__(self, other: "PairRelation") -> bool:
        self._check(other)
        return not bool((self.grid & ~other.grid).any())

    def pairs(self) -> list[tuple[str, str]]:
        labs = self.universe.labels
        return [(labs[j], labs[k]) for j, k in zip(*np.nonzero(self.grid))]

    def is_reflexive(self) -> bool:
        return bool(np.diagonal(self.grid).all())

    def is_symmetric(self) -> bool:
        return bool(np.array_equal(self.grid, self.grid.T))

    def is_transitive(self) -> bool:
        g = self.grid.astype(np.int64)
        return not bool(((g @ g > 0) & ~self.grid).any())

    def is_equivalence(self) -> bool:
        return self.is_reflexive() and self.is_symmetric() and self.is_transitive()

    def equivalence_closure(self) -> "PairRelation":
        """Least equivalence relation containing this relation (Warshall)."""
        g = self.grid | self.grid.T | np.eye(len(self.universe), dtype=bool)
        g = g.copy()
        for k in range(len(self.universe)):
            g |= np.outer(g[:, k], g[k, :])
        return PairRelation(self.universe, g)

    def to_partition(self) -> Partition:
        if not self.is_equivalence():
            raise InputError("relation is not an equivalence relation")
        seen: dict[bytes, list[int]] = {}
        for i in range(len(self.universe)):
            seen.setdefault(self.grid[i].tobytes(), []).append(i)
        return Partition.from_indices(self.universe, seen.values())


def _same_universe(*parts: Partition) -> None:
    first = parts[0].universe
    for p in parts[1:]:
        if p.universe != first:
            raise UniverseMismatch(
                f"partitions live on different universes {list(first.labels)} and {list(p.universe.labels)}"
            )


def indit_set(pi: Partition) -> PairRelation:
    """Pairs of atoms in a common block: the equivalence relation of ``pi``."""
    code = np.array(pi.block_of, dtype=np.int64)
    return PairRelation(pi.universe, code[:, None] == code[None, :])


def dit_set(pi: Partition) -> PairRelation:
    """Ordered pairs of atoms in different blocks."""
    return ~indit_set(pi)


def join(pi: Partition, sigma: Partition) -> Partition:
    """Partition whose blocks are the non-empty intersections of blocks."""
    _same_universe(pi, sigma)
    groups: dict[tuple[int, int], list[int]] = {}
    for i, key in enumerate(zip(pi.block_of, sigma.block_of)):
        groups.setdefault(key, []).append(i)
    return Partition(pi.universe, tuple(tuple(g) for g in groups.values()))


class DisjointSet:
    """Union-find over ``0..n-1`` with path halving and union by size."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, x: int, y: int) -> None:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return
        if self.size[rx] < self.size[ry]:
            rx, ry = ry, rx
        self.parent[ry] = rx
        self.size[rx] += self.size[ry]

    def groups(self) -> list[list[int]]:
        out: dict[int, list[int]] = {}
        for x in range(len(self.parent)):
            out.setdefault(self.find(x), []).append(x)
        return list(out.values())


def meet(pi: Partition, sigma: Partition) -> Partition:
    """Merge blocks sharing any atom until no two blocks overlap."""
    _same_universe(pi, sigma)
    ds = DisjointSet(len(pi.universe))
    for block in pi.blocks + sigma.blocks:
        for i in block[1:]:
            ds.union(block[0], i)
    return Partition.from_indices(pi.universe, ds.groups())


def _block_contained(block: Sequence[int], code: Sequence[int]) -> bool:
    first = code[block[0]]
    return all(code[i] == first for i in block)


def refines(sigma: Partition, pi: Partition) -> bool:
    """True iff ``sigma <= pi``: every block of ``pi`` sits inside a block of ``sigma``."""
    _same_universe(sigma, pi)
    code = sigma.block_of
    return all(_block_contained(block, code) for block in pi.blocks)


def implies(sigma: Partition, pi: Partition) -> Partition:
    """Partition implication ``sigma => pi``.

    Blocks of ``pi`` contained in a block of ``sigma`` are split into
    singletons; the other blocks of ``pi`` are kept whole.
    """
    _same_universe(sigma, pi)
    code = sigma.block_of
    out: list[tuple[int, ...]] = []
    for block in pi.blocks:
        if _block_contained(block, code):
            out.extend((i,) for i in block)
        else:
            out.append(block)
    return Partition.from_indices(pi.universe, out)


def bell_number(n: int) -> int:
    """Bell numbers via the Bell triangle."""
    if n < 0:
        raise ValueError("n must be non-negative")
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for v in row:
            nxt.append(nxt[-1] + v)
        row = nxt
    return row[0]


def _check_cap(universe: Universe, cap: int) -> None:
    if len(universe) > cap:
        raise SizeCapExceeded(
            f"universe of size {len(universe)} exceeds the enumeration cap {cap} "
            f"(Bell({len(universe)}) = {bell_number(len(universe))})"
        )


def iter_partitions(universe: Universe, cap: int = DEFAULT_CAP) -> Iterator[Partition]:
    _check_cap(universe, cap)
    for row in kernels.rgs_array(len(universe)):
        yield Partition.from_rgs(universe, row.tolist())


def enumerate_partitions(universe: Universe, cap: int = DEFAULT_CAP) -> list[Partition]:
    """All partitions, from the indiscrete one to the discrete one.

    The order is lexicographic in the restricted growth string of each
    partition, which is deterministic.
    """
    return list(iter_partitions(universe, cap))


@dataclass(frozen=True)
class LatticeGraph:
    """Hasse diagram of the partition lattice.

    ``edges`` are covering pairs ``(lower, upper)`` where ``upper`` is
    obtained from ``lower`` by splitting one block in two. ``entropy`` is the
    logical entropy of each node with equiprobable atoms.
    """

    universe: Universe
    nodes: tuple[Partition, ...]
    entropy: tuple[Fraction, ...]
    edges: tuple[tuple[int, int], ...]

    @property
    def classical(self) -> tuple[bool, ...]:
        return tuple(p.is_top for p in self.nodes)

    def to_json(self) -> dict:
        return {
            "universe": list(self.universe.labels),
            "nodes": [
                {
                    "id": i,
                    "blocks": p.label_blocks,
                    "label": p.notation(),
                    "entropy": str(h),
                    "classical": p.is_top,
                }
                for i, (p, h) in enumerate(zip(self.nodes, self.entropy))
            ],
            "edges": [list(e) for e in self.edges],
        }

    def to_dot(self, name: str = "partitions", overlay: Iterable[tuple[int, int, str]] = ()) -> str:
        """DOT text; ``overlay`` adds extra ``(src, dst, style)`` arrows."""
        lines = [f"digraph {name} {{", "  rankdir=BT;", '  node [shape=box, fontname="Helvetica"];']
        for i, (p, h) in enumerate(zip(self.nodes, self.entropy)):
            style = 'style=bold' if p.is_top else 'style=filled, fillcolor="lightblue"'
            lines.append(f'  n{i} [label="{p.notation()}\\nh={h}", {style}];')
        ranks: dict[int, list[int]] = {}
        for i, p in enumerate(self.nodes):
            ranks.setdefault(len(p), []).append(i)
        for r in sorted(ranks):
            lines.append("  { rank=same; " + " ".join(f"n{i};" for i in ranks[r]) + " }")
        for lo, hi in self.edges:
            lines.append(f"  n{lo} -> n{hi} [dir=none, color=gray];")
        for src, dst, style in overlay:
            lines.append(f"  n{src} -> n{dst} [style={style}, color=red, constraint=false];")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def index_of(self, pi: Partition) -> int:
        return self.nodes.index(pi)


def lattice_graph(universe: Universe, cap: int = DEFAULT_CAP) -> LatticeGraph:
    _check_cap(universe, cap)
    n = len(universe)
    rgs = kernels.rgs_array(n)
    nodes = tuple(Partition.from_rgs(universe, row.tolist()) for row in rgs)
    sizes = np.array([len(p) for p in nodes])
    below = kernels.refinement_matrix(rgs)
    # the lattice is graded by block count, so covers are refinements one block apart
    cover = below & (sizes[None, :] == sizes[:, None] + 1)
    edges = tuple((int(i), int(j)) for i, j in zip(*np.nonzero(cover)))
    entropy = tuple(
        1 - sum(Fraction(len(b), n) ** 2 for b in p.blocks) if n else Fraction(0) for p in nodes
    )
    return LatticeGraph(universe, nodes, entropy, edges)
