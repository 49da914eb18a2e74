"""Classical logical entropy with exact rational arithmetic.

The logical entropy of a partition is the product measure ``p x p`` of its
ditset: the chance that two independent draws land in different blocks.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Literal, Mapping, Sequence

from .errors import (
    AtomNotInUniverse,
    InputError,
    InvalidDistribution,
    MissingDistance,
    UniverseMismatch,
)
from .partition import PairRelation, Partition, Universe, dit_set


def parse_rational(value) -> Fraction:
    """Accept ints, Fractions or ``"num/den"`` / decimal strings; floats are refused."""
    if isinstance(value, bool):
        raise InvalidDistribution(f"not a rational: {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise InvalidDistribution(f"not a rational: {value!r}") from None
    raise InvalidDistribution(f"probabilities must be exact (int or 'num/den' string), got {value!r}")


@dataclass(frozen=True)
class ProbDist:
    """Exact point probabilities, one per atom, summing to exactly 1."""

    universe: Universe
    p: tuple[Fraction, ...]

    def __post_init__(self):
        p = tuple(parse_rational(v) for v in self.p)
        if len(p) != len(self.universe):
            raise InvalidDistribution(f"{len(p)} probabilities for {len(self.universe)} atoms")
        bad = [lab for lab, v in zip(self.universe.labels, p) if v < 0 or v > 1]
        if bad:
            raise InvalidDistribution(f"probabilities out of [0, 1] at atoms {bad}")
        if sum(p) != 1:
            raise InvalidDistribution(f"probabilities sum to {sum(p)}, not 1")
        object.__setattr__(self, "p", p)

    @classmethod
    def uniform(cls, universe: Universe) -> "ProbDist":
        n = len(universe)
        return cls(universe, tuple(Fraction(1, n) for _ in range(n)))

    @classmethod
    def from_mapping(cls, universe: Universe, p: Mapping[str, object]) -> "ProbDist":
        extra = set(p) - set(universe.labels)
        if extra:
            raise AtomNotInUniverse(f"atoms {sorted(extra)} are not in the universe")
        return cls(universe, tuple(p.get(lab, 0) for lab in universe.labels))

    def __getitem__(self, label: str) -> Fraction:
        return self.p[self.universe.index(label)]

    @property
    def strictly_positive(self) -> bool:
        return all(v > 0 for v in self.p)

    def to_json(self) -> dict:
        return {"universe": list(self.universe.labels), "p": [str(v) for v in self.p]}


def dist_from_json(obj) -> ProbDist:
    """Accept ``{"universe": [...], "p": [...]}`` or a bare list of probabilities."""
    if isinstance(obj, list):
        return ProbDist(Universe.letters(len(obj)), tuple(obj))
    try:
        universe = Universe(obj["universe"])
        p = obj["p"]
    except (KeyError, TypeError) as exc:
        raise InputError(f"distribution JSON needs 'universe' and 'p': {exc}") from None
    if isinstance(p, Mapping):
        return ProbDist.from_mapping(universe, p)
    return ProbDist(universe, tuple(p))


def _check_same(universe: Universe, p: ProbDist) -> None:
    if universe != p.universe:
        raise UniverseMismatch("partition and distribution live on different universes")


def prob_of_subset(subset: Iterable[str], p: ProbDist) -> Fraction:
    idx = set(p.universe.indices(subset))
    return sum((p.p[i] for i in idx), Fraction(0))


def block_probabilities(pi: Partition, p: ProbDist) -> list[Fraction]:
    _check_same(pi.universe, p)
    return [sum((p.p[i] for i in block), Fraction(0)) for block in pi.blocks]


def product_measure(rel: PairRelation, p: ProbDist) -> Fraction:
    """``p x p`` of a set of ordered pairs, by direct summation."""
    _check_same(rel.universe, p)
    return sum((p.p[j] * p.p[k] for j, k in zip(*rel.grid.nonzero())), Fraction(0))


def logical_entropy_partition(pi: Partition, p: ProbDist) -> Fraction:
    """``1 - sum_j Pr(B_j)^2``."""
    return 1 - sum(q * q for q in block_probabilities(pi, p))


def logical_entropy_dist(p: ProbDist) -> Fraction:
    """``1 - sum_i p_i^2``, the entropy of the discrete partition."""
    return 1 - sum(v * v for v in p.p)


CompoundKind = Literal["joint", "difference", "mutual"]


def compound_entropy(kind: CompoundKind, pi: Partition, sigma: Partition, p: ProbDist) -> Fraction:
    """Product measure of a Venn region of the two ditsets.

    ``joint`` is the union, ``mutual`` the intersection and ``difference``
    the dits of ``pi`` that are not dits of ``sigma``.
    """
    if pi.universe != sigma.universe:
        raise UniverseMismatch("partitions live on different universes")
    a, b = dit_set(pi), dit_set(sigma)
    if kind == "joint":
        region = a | b
    elif kind == "difference":
        region = a - b
    elif kind == "mutual":
        region = a & b
    else:
        raise InputError(f"unknown compound entropy {kind!r}")
    return product_measure(region, p)


@dataclass(frozen=True)
class DistanceFunction:
    """Non-negative distances on ordered pairs; the diagonal is zero."""

    universe: Universe
    d: Mapping[tuple[str, str], Fraction]

    def __post_init__(self):
        clean = {}
        for (u, v), val in dict(self.d).items():
            self.universe.index(u), self.universe.index(v)
            val = parse_rational(val)
            if val < 0:
                raise InputError(f"negative distance d({u},{v}) = {val}")
            if u == v and val != 0:
                raise InputError(f"d({u},{u}) must be 0, got {val}")
            clean[(u, v)] = val
        object.__setattr__(self, "d", clean)

    @classmethod
    def logical(cls, universe: Universe) -> "DistanceFunction":
        """``1 - delta``: distance 1 between different atoms."""
        return cls(universe, {(u, v): Fraction(int(u != v)) for u in universe for v in universe})

    def __call__(self, u: str, v: str) -> Fraction:
        if u == v:
            return Fraction(0)
        try:
            return self.d[(u, v)]
        except KeyError:
            raise MissingDistance(f"no distance given for the pair ({u}, {v})") from None


def quadratic_entropy(p: ProbDist, d: DistanceFunction) -> Fraction:
    """``sum_{j,k} p_j p_k d_jk`` over all ordered pairs."""
    _check_same(d.universe, p)
    labs = p.universe.labels
    total = Fraction(0)
    for j, u in enumerate(labs):
        for k, v in enumerate(labs):
            total += p.p[j] * p.p[k] * d(u, v)
    return total


@dataclass(frozen=True)
class BoxCell:
    row: int
    col: int
    value: Fraction
    on_block: bool


@dataclass(frozen=True)
class BoxDiagram:
    """Square of ``p_i * p_j`` cells; cells off the block squares sum to the entropy."""

    universe: Universe
    cells: tuple[BoxCell, ...]

    @property
    def off_block_total(self) -> Fraction:
        return sum((c.value for c in self.cells if not c.on_block), Fraction(0))

    @property
    def upper_total(self) -> Fraction:
        return sum((c.value for c in self.cells if not c.on_block and c.col > c.row), Fraction(0))

    @property
    def lower_total(self) -> Fraction:
        return sum((c.value for c in self.cells if not c.on_block and c.col < c.row), Fraction(0))

    def to_json(self) -> dict:
        return {
            "universe": list(self.universe.labels),
            "cells": [
                {"row": c.row, "col": c.col, "value": str(c.value), "on_block": c.on_block}
                for c in self.cells
            ],
            "off_block_total": str(self.off_block_total),
        }


def box_diagram(p: ProbDist, pi: Partition | None = None) -> BoxDiagram:
    """Row-major cells of the box diagram.

    ``on_block`` marks cells whose atoms share a block of ``pi``; with no
    partition given the discrete partition is used, so only the diagonal is
    on a block.
    """
    code: Sequence[int]
    if pi is None:
        code = range(len(p.universe))
    else:
        _check_same(pi.universe, p)
        code = pi.block_of
    cells = tuple(
        BoxCell(j, k, pj * pk, code[j] == code[k])
        for j, pj in enumerate(p.p)
        for k, pk in enumerate(p.p)
    )
    return BoxDiagram(p.universe, cells)
