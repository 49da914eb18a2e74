"""Balls into boxes: factorials, occupancy statistics and the twelvefold way.

Counts are exact integers and probabilities exact fractions. Every closed
form in ``twelvefold_count`` can be checked against ``twelvefold_bruteforce``,
which enumerates all maps from balls to boxes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Sequence

from . import kernels
from .errors import (
    ExclusionViolated,
    InputError,
    MissingTheta,
    SizeCapExceeded,
    ThetaSumMismatch,
)

BRUTEFORCE_CAP = 70_000_000  # n**k maps; about exp(18)


def falling_factorial(n: int, k: int) -> int:
    """``n (n-1) ... (n-k+1)``."""
    if n < 0 or k < 0:
        raise InputError("falling factorial needs n >= 0 and k >= 0")
    out = 1
    for i in range(k):
        out *= n - i
    return out


def rising_factorial(n: int, k: int) -> int:
    """``n (n+1) ... (n+k-1)``."""
    if n < 0 or k < 0:
        raise InputError("rising factorial needs n >= 0 and k >= 0")
    out = 1
    for i in range(k):
        out *= n + i
    return out


@dataclass(frozen=True)
class OccupancyProfile:
    """``k`` balls in ``n`` boxes, optionally with occupation numbers ``theta``."""

    k: int
    n: int
    theta: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.k < 0 or self.n < 1:
            raise InputError("need k >= 0 balls and n >= 1 boxes")
        if self.theta is not None:
            theta = tuple(int(t) for t in self.theta)
            if len(theta) != self.n:
                raise ThetaSumMismatch(f"theta has {len(theta)} entries for {self.n} boxes")
            if any(t < 0 for t in theta):
                raise InputError("occupation numbers must be non-negative")
            if sum(theta) != self.k:
                raise ThetaSumMismatch(f"occupation numbers sum to {sum(theta)}, not k = {self.k}")
            object.__setattr__(self, "theta", theta)


def occupancy_profiles(k: int, n: int) -> Iterator[tuple[int, ...]]:
    """All ``theta`` of length ``n`` with non-negative entries summing to ``k``."""
    if n == 1:
        yield (k,)
        return
    for first in range(k, -1, -1):
        for rest in occupancy_profiles(k - first, n - 1):
            yield (first,) + rest


def multinomial(k: int, theta: Sequence[int]) -> int:
    out = math.factorial(k)
    for t in theta:
        out //= math.factorial(t)
    return out


def mb_probability(profile: OccupancyProfile) -> Fraction:
    """Maxwell-Boltzmann: ``k! / (theta_1! ... theta_n!) / n^k``."""
    if profile.theta is None:
        raise MissingTheta("Maxwell-Boltzmann probability needs occupation numbers")
    return Fraction(multinomial(profile.k, profile.theta), profile.n ** profile.k)


def fd_count(k: int, n: int) -> int:
    """Ways to place ``k`` indistinguishable balls, at most one per box."""
    if k < 0 or n < 0:
        raise InputError("need k >= 0 and n >= 0")
    return falling_factorial(n, k) // math.factorial(k)


def be_count(k: int, n: int) -> int:
    """Ways to place ``k`` indistinguishable balls with repetition allowed."""
    if k < 0 or n < 1:
        raise InputError("need k >= 0 and n >= 1")
    return rising_factorial(n, k) // math.factorial(k)


def fd_probability(k: int, n: int) -> Fraction:
    count = fd_count(k, n)
    if count == 0:
        raise ExclusionViolated(f"{k} fermions cannot occupy {n} states at most one per state")
    return Fraction(1, count)


def be_probability(k: int, n: int) -> Fraction:
    return Fraction(1, be_count(k, n))


BALLS = ("distinguishable", "indistinguishable")
MAP_KINDS = ("arbitrary", "injective", "surjective")

_ALIASES = {
    "dist": "distinguishable",
    "distinguishable": "distinguishable",
    "labeled": "distinguishable",
    "indist": "indistinguishable",
    "indistinguishable": "indistinguishable",
    "unlabeled": "indistinguishable",
    "any": "arbitrary",
    "arbitrary": "arbitrary",
    "inj": "injective",
    "injective": "injective",
    "surj": "surjective",
    "surjective": "surjective",
}


def _norm(value: str, allowed: Sequence[str], what: str) -> str:
    full = _ALIASES.get(str(value).lower())
    if full not in allowed:
        raise InputError(f"unknown {what} {value!r}; expected one of {list(allowed)}")
    return full


@dataclass(frozen=True)
class RegimeSpec:
    balls: str
    boxes: str
    map_kind: str

    def __post_init__(self):
        object.__setattr__(self, "balls", _norm(self.balls, BALLS, "ball kind"))
        object.__setattr__(self, "boxes", _norm(self.boxes, BALLS, "box kind"))
        object.__setattr__(self, "map_kind", _norm(self.map_kind, MAP_KINDS, "map kind"))

    @property
    def balls_indist(self) -> bool:
        return self.balls == "indistinguishable"

    @property
    def boxes_indist(self) -> bool:
        return self.boxes == "indistinguishable"


def all_regimes() -> list[RegimeSpec]:
    return [RegimeSpec(b, x, m) for b in BALLS for x in BALLS for m in MAP_KINDS]


@lru_cache(maxsize=None)
def _stirling2(k: int, j: int) -> int:
    if k == j:
        return 1
    if j == 0 or j > k:
        return 0
    return j * _stirling2(k - 1, j) + _stirling2(k - 1, j - 1)


@lru_cache(maxsize=None)
def _partitions_exact(k: int, j: int) -> int:
    """Integer partitions of ``k`` into exactly ``j`` positive parts."""
    if k == 0 and j == 0:
        return 1
    if k <= 0 or j <= 0 or j > k:
        return 0
    # either some part equals 1, or subtract 1 from every part
    return _partitions_exact(k - 1, j - 1) + _partitions_exact(k - j, j)


def _binom(a: int, b: int) -> int:
    if a < 0 or b < 0 or b > a:
        return 0
    return math.comb(a, b)


def twelvefold_count(k: int, n: int, regime: RegimeSpec, oracle: bool = False) -> int:
    """Number of ways to distribute ``k`` balls into ``n`` boxes in ``regime``.

    ``oracle=True`` counts by enumeration instead of closed forms.
    """
    if k < 0 or n < 1:
        raise InputError("need k >= 0 balls and n >= 1 boxes")
    if oracle:
        return twelvefold_bruteforce(k, n, regime)
    kind = regime.map_kind
    if not regime.balls_indist and not regime.boxes_indist:
        if kind == "arbitrary":
            return n ** k
        if kind == "injective":
            return falling_factorial(n, k)
        return math.factorial(n) * _stirling2(k, n)
    if regime.balls_indist and not regime.boxes_indist:
        if kind == "arbitrary":
            return _binom(n + k - 1, k)
        if kind == "injective":
            return _binom(n, k)
        return _binom(k - 1, n - 1)
    if not regime.balls_indist and regime.boxes_indist:
        if kind == "arbitrary":
            return sum(_stirling2(k, j) for j in range(n + 1))
        if kind == "injective":
            return int(k <= n)
        return _stirling2(k, n)
    if kind == "arbitrary":
        return sum(_partitions_exact(k, j) for j in range(n + 1))
    if kind == "injective":
        return int(k <= n)
    return _partitions_exact(k, n)


_KIND_CODES = {"arbitrary": kernels.ARBITRARY, "injective": kernels.INJECTIVE, "surjective": kernels.SURJECTIVE}


def twelvefold_bruteforce(k: int, n: int, regime: RegimeSpec, cap: int = BRUTEFORCE_CAP) -> int:
    """Count orbits of all ``n**k`` maps under the regime's permutation groups."""
    if k < 0 or n < 1:
        raise InputError("need k >= 0 balls and n >= 1 boxes")
    if n ** k > cap:
        raise SizeCapExceeded(f"{n}**{k} maps exceed the enumeration cap of {cap}")
    return int(
        kernels.count_orbit_representatives(
            k, n, _KIND_CODES[regime.map_kind], regime.balls_indist, regime.boxes_indist
        )
    )
