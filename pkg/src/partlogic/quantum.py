"""Relation matrices, density matrices and Lüders measurement.

Two numeric layers are kept side by side. Entries of density matrices are
complex floats. States built from sets and distributions also carry an exact
form: the rational diagonal plus the partition of atoms into coherent blocks.
For such states ``|rho_jk|^2 = rho_jj * rho_kk`` inside a block and 0 across
blocks, so traces of ``rho^2`` and outcome probabilities stay rational.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, NamedTuple

import numpy as np

from .entropy import ProbDist, prob_of_subset
from .errors import (
    EmptySupport,
    InputError,
    InvalidDensityMatrix,
    NonPositiveProbability,
    NotPureState,
    UniverseMismatch,
    ZeroProbability,
)
from .partition import PairRelation, Partition, Universe, join

DEFAULT_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class RelationMatrix:
    """0/1 incidence matrix of a relation on the universe."""

    universe: Universe
    entries: np.ndarray

    def __post_init__(self):
        m = np.array(self.entries, dtype=np.int64)
        n = len(self.universe)
        if m.shape != (n, n) or not ((m == 0) | (m == 1)).all():
            raise InputError(f"relation matrix must be an {n}x{n} 0/1 grid")
        m.setflags(write=False)
        object.__setattr__(self, "entries", m)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RelationMatrix):
            return NotImplemented
        return self.universe == other.universe and bool(np.array_equal(self.entries, other.entries))

    def __hash__(self) -> int:
        return hash((self.universe, self.entries.tobytes()))

    def rank(self) -> int:
        """Exact rank over the rationals, by Gaussian elimination."""
        rows = [[Fraction(int(x)) for x in row] for row in self.entries]
        rank = 0
        for col in range(len(rows[0]) if rows else 0):
            pivot = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
            if pivot is None:
                continue
            rows[rank], rows[pivot] = rows[pivot], rows[rank]
            for r in range(rank + 1, len(rows)):
                if rows[r][col] != 0:
                    factor = rows[r][col] / rows[rank][col]
                    rows[r] = [a - factor * b for a, b in zip(rows[r], rows[rank])]
            rank += 1
        return rank

    def outer_factor(self) -> np.ndarray | None:
        """A 0/1 column ``v`` with ``v v^t`` equal to the matrix, found by exhaustive search."""
        n = len(self.universe)
        for bits in itertools.product((0, 1), repeat=n):
            v = np.array(bits, dtype=np.int64)
            if np.array_equal(np.outer(v, v), self.entries):
                return v
        return None

    def as_relation(self) -> PairRelation:
        return PairRelation(self.universe, self.entries.astype(bool))

    def tolist(self) -> list[list[int]]:
        return self.entries.tolist()


def indicator(universe: Universe, subset: Iterable[str]) -> np.ndarray:
    """0/1 column vector of the characteristic function of ``subset``."""
    return universe.subset_mask(subset).astype(np.int64)


def rel_delta(universe: Universe, subset: Iterable[str]) -> RelationMatrix:
    """Diagonal relation on ``subset``: the classical discrete event."""
    return RelationMatrix(universe, np.diag(indicator(universe, subset)))


def rel_full(universe: Universe, subset: Iterable[str]) -> RelationMatrix:
    """Full block ``S x S``, built as the outer product of the indicator."""
    v = indicator(universe, subset)
    return RelationMatrix(universe, np.outer(v, v))


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, unit-trace, positive semidefinite matrix in the atom basis.

    ``exact_diag`` and ``coherence`` are present only for states whose exact
    form is known (see the module docstring).
    """

    universe: Universe
    entries: np.ndarray
    tol: float = DEFAULT_TOL
    exact_diag: tuple[Fraction, ...] | None = None
    coherence: Partition | None = None

    def __post_init__(self):
        rho = np.array(self.entries, dtype=np.complex128)
        n = len(self.universe)
        tol = self.tol
        if rho.shape != (n, n):
            raise InvalidDensityMatrix(f"density matrix must be {n}x{n}, got {rho.shape}")
        if not np.isfinite(rho).all():
            raise InvalidDensityMatrix("density matrix has non-finite entries")
        herm = float(np.abs(rho - rho.conj().T).max(initial=0.0))
        if herm > tol:
            raise InvalidDensityMatrix(f"matrix is not Hermitian (deviation {herm:.3g})")
        tr = complex(np.trace(rho))
        if abs(tr - 1) > tol:
            raise InvalidDensityMatrix(f"trace is {tr.real:.15g}, not 1")
        diag = np.diagonal(rho).real
        if n and (diag.min() < -tol or diag.max() > 1 + tol):
            raise InvalidDensityMatrix("diagonal entries must lie in [0, 1]")
        if n:
            lowest = float(np.linalg.eigvalsh((rho + rho.conj().T) / 2).min())
            if lowest < -tol:
                raise InvalidDensityMatrix(f"matrix is not positive semidefinite (eigenvalue {lowest:.3g})")
        rho.setflags(write=False)
        object.__setattr__(self, "entries", rho)
        if (self.exact_diag is None) != (self.coherence is None):
            raise InputError("exact_diag and coherence must be given together")

    @property
    def n(self) -> int:
        return len(self.universe)

    @property
    def diagonal(self) -> np.ndarray:
        return np.diagonal(self.entries).real.copy()

    @property
    def is_real(self) -> bool:
        return not bool(np.any(self.entries.imag != 0))

    def purity(self) -> float:
        """``tr[rho^2]``, computed as the sum of squared moduli of the entries."""
        return float(np.sum(np.abs(self.entries) ** 2))

    def is_pure(self) -> bool:
        return abs(self.purity() - 1) <= self.tol

    @property
    def has_exact_form(self) -> bool:
        return self.exact_diag is not None

    def purity_exact(self) -> Fraction:
        if self.exact_diag is None or self.coherence is None:
            raise InputError("no exact form is known for this state")
        d = self.exact_diag
        return sum((sum((d[i] for i in b), Fraction(0)) ** 2 for b in self.coherence.blocks), Fraction(0))

    def with_tol(self, tol: float) -> "DensityMatrix":
        return DensityMatrix(self.universe, self.entries, tol, self.exact_diag, self.coherence)

    def to_json(self, precision: int | None = None) -> dict:
        def fmt(a: np.ndarray) -> list:
            if precision is None:
                return a.tolist()
            return np.round(a, precision).tolist()

        out = {"basis": list(self.universe.labels), "re": fmt(self.entries.real)}
        if not self.is_real:
            out["im"] = fmt(self.entries.imag)
        return out


def density_from_json(obj: Mapping, tol: float = DEFAULT_TOL) -> DensityMatrix:
    try:
        universe = Universe(obj["basis"])
        re = np.array(obj["re"], dtype=float)
        im = np.array(obj.get("im", np.zeros_like(re)), dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidDensityMatrix(f"density JSON needs 'basis', 're' and optional 'im': {exc}") from None
    if re.shape != im.shape:
        raise InvalidDensityMatrix("'re' and 'im' have different shapes")
    return DensityMatrix(universe, re + 1j * im, tol)


def _phase_vector(universe: Universe, phases: Mapping[str, float] | None) -> np.ndarray:
    ph = np.ones(len(universe), dtype=np.complex128)
    if phases:
        for lab, angle in phases.items():
            ph[universe.index(lab)] = np.exp(1j * float(angle))
    return ph


def density_superposition(
    subset: Iterable[str],
    p: ProbDist,
    tol: float = DEFAULT_TOL,
    phases: Mapping[str, float] | None = None,
) -> DensityMatrix:
    """Pure state of the superposition event on ``subset``.

    Entries are ``sqrt(p_j p_k) / Pr(S)`` on ``S x S`` and 0 elsewhere.
    Optional ``phases`` (radians per atom) give the complex pure state with
    the same moduli.
    """
    universe = p.universe
    members = sorted(set(universe.indices(subset)))
    if not members:
        raise EmptySupport("superposition needs a non-empty subset")
    total = prob_of_subset((universe.labels[i] for i in members), p)
    if total == 0:
        raise ZeroProbability("subset has probability 0")
    q = [Fraction(0)] * len(universe)
    for i in members:
        q[i] = p.p[i] / total
    amp = np.array([math.sqrt(v) for v in q]) * _phase_vector(universe, phases)
    rho = np.outer(amp, amp.conj())
    np.fill_diagonal(rho, [float(v) for v in q])
    rest = [(i,) for i in range(len(universe)) if i not in members]
    coherence = Partition.from_indices(universe, [members] + rest)
    return DensityMatrix(universe, rho, tol, tuple(q), coherence)


def density_mixture(pi: Partition, p: ProbDist, tol: float = DEFAULT_TOL) -> DensityMatrix:
    """``sum_j Pr(B_j) rho(B_j)``: block-diagonal with ``sqrt(p_j p_k)`` inside blocks."""
    if pi.universe != p.universe:
        raise UniverseMismatch("partition and distribution live on different universes")
    if not p.strictly_positive:
        zero = [lab for lab, v in zip(p.universe.labels, p.p) if v <= 0]
        raise NonPositiveProbability(f"mixture states need strictly positive probabilities; zero at {zero}")
    n = len(pi.universe)
    rho = np.zeros((n, n), dtype=np.complex128)
    for block in pi.blocks:
        weight = sum((p.p[i] for i in block), Fraction(0))
        part = density_superposition((pi.universe.labels[i] for i in block), p, tol)
        rho += float(weight) * part.entries
    np.fill_diagonal(rho, [float(v) for v in p.p])
    return DensityMatrix(pi.universe, rho, tol, p.p, pi)


def rho_sharp(rho: DensityMatrix) -> DensityMatrix:
    """Real counterpart with entries ``sqrt(q_j q_k)`` where ``q`` is the diagonal."""
    q = np.clip(rho.diagonal, 0.0, None)
    amp = np.sqrt(q)
    out = np.outer(amp, amp)
    np.fill_diagonal(out, q)
    exact = None
    coherence = None
    if rho.exact_diag is not None:
        exact = rho.exact_diag
        support = [i for i, d in enumerate(exact) if d > 0]
        rest = [(i,) for i in range(rho.n) if i not in support]
        coherence = Partition.from_indices(rho.universe, ([support] if support else []) + rest)
    return DensityMatrix(rho.universe, out, rho.tol, exact, coherence)


@dataclass(frozen=True, eq=False)
class AmplitudeVector:
    universe: Universe
    amplitudes: np.ndarray
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        a = np.array(self.amplitudes, dtype=np.complex128)
        if a.shape != (len(self.universe),):
            raise InputError(f"amplitude vector must have length {len(self.universe)}")
        norm = float(np.linalg.norm(a))
        if abs(norm - 1) > max(self.tol, 1e-12) * 10:
            raise InputError(f"amplitude vector has norm {norm}, not 1")
        a.setflags(write=False)
        object.__setattr__(self, "amplitudes", a)

    def support(self) -> list[str]:
        return [lab for lab, a in zip(self.universe.labels, self.amplitudes) if abs(a) > self.tol]

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def density(self) -> DensityMatrix:
        return DensityMatrix(self.universe, np.outer(self.amplitudes, self.amplitudes.conj()), self.tol)

    def to_json(self, precision: int | None = None) -> dict:
        a = self.amplitudes
        re, im = a.real, a.imag
        if precision is not None:
            re, im = np.round(re, precision), np.round(im, precision)
        out = {"basis": list(self.universe.labels), "re": re.tolist()}
        if np.any(a.imag != 0):
            out["im"] = im.tolist()
        return out


def extract_amplitudes(rho: DensityMatrix) -> AmplitudeVector:
    """Unit vector ``psi`` with ``rho = |psi><psi|``.

    The global phase is fixed so the first non-zero amplitude is real and
    positive.
    """
    purity = rho.purity()
    if abs(purity - 1) > rho.tol:
        raise NotPureState(f"tr[rho^2] = {purity:.15g}; amplitudes exist only for pure states")
    m = rho.entries
    k = int(np.argmax(rho.diagonal))
    psi = m[:, k] / math.sqrt(m[k, k].real)
    psi = psi / np.linalg.norm(psi)
    lead = next(i for i in range(rho.n) if abs(psi[i]) > rho.tol)
    psi = psi * (abs(psi[lead]) / psi[lead])
    psi[lead] = abs(psi[lead])
    return AmplitudeVector(rho.universe, psi, rho.tol)


def support_matrix(rho: DensityMatrix) -> RelationMatrix:
    """0/1 pattern of entries with modulus above the tolerance."""
    return RelationMatrix(rho.universe, (np.abs(rho.entries) > rho.tol).astype(np.int64))


@dataclass(frozen=True)
class EigenvalueFunction:
    """Real eigenvalue for every basis atom; its fibres give the projections."""

    universe: Universe
    f: Mapping[str, float]

    def __post_init__(self):
        clean = {}
        for lab, val in dict(self.f).items():
            self.universe.index(lab)
            try:
                clean[lab] = float(val)
            except (TypeError, ValueError):
                raise InputError(f"eigenvalue for {lab!r} is not a real number: {val!r}") from None
        missing = [lab for lab in self.universe.labels if lab not in clean]
        if missing:
            raise InputError(f"eigenvalue function is not defined on {missing}")
        object.__setattr__(self, "f", clean)

    @classmethod
    def from_partition(cls, pi: Partition) -> "EigenvalueFunction":
        """Eigenvalue ``j`` on the ``j``-th block."""
        code = pi.block_of
        return cls(pi.universe, {lab: float(code[i]) for i, lab in enumerate(pi.universe.labels)})

    def __hash__(self) -> int:
        return hash((self.universe, tuple(sorted(self.f.items()))))

    def eigenvalues(self) -> list[float]:
        return sorted(set(self.f.values()))

    def partition(self) -> Partition:
        return Partition.from_function(self.universe, self.f)

    def mask(self, r: float) -> np.ndarray:
        return np.array([self.f[lab] == r for lab in self.universe.labels])

    def projection(self, r: float) -> np.ndarray:
        return np.diag(self.mask(r).astype(float))

    def to_json(self) -> dict:
        return {"f": dict(self.f)}


def eigenfunction_from_json(universe: Universe, obj: Mapping) -> EigenvalueFunction:
    try:
        f = obj["f"]
    except (KeyError, TypeError):
        raise InputError("eigenvalue function JSON needs an 'f' object") from None
    return EigenvalueFunction(universe, f)


class Outcome(NamedTuple):
    eigenvalue: float
    probability: float
    state: DensityMatrix
    block: tuple[str, ...]
    exact_probability: Fraction | None = None


class MeasurementResult(NamedTuple):
    state: DensityMatrix
    outcomes: tuple[Outcome, ...]


def _restrict_exact(rho: DensityMatrix, mask: np.ndarray, weight: Fraction):
    assert rho.exact_diag is not None and rho.coherence is not None
    diag = tuple(d / weight if mask[i] else Fraction(0) for i, d in enumerate(rho.exact_diag))
    inside = [[i for i in b if mask[i]] for b in rho.coherence.blocks]
    blocks = [b for b in inside if b] + [(i,) for i in range(rho.n) if not mask[i]]
    return diag, Partition.from_indices(rho.universe, blocks)


def lueders_measure(rho: DensityMatrix, f: EigenvalueFunction) -> MeasurementResult:
    """Projective measurement ``rho_hat = sum_r P_r rho P_r``.

    Each outcome carries its eigenvalue, probability and normalised post
    state ``P_r rho P_r / Pr(f^-1(r))``. Outcomes of probability zero (within
    tolerance) are left out; they contribute nothing to ``rho_hat``.
    """
    if f.universe != rho.universe:
        raise UniverseMismatch("state and eigenvalue function use different bases")
    m = rho.entries
    hat = np.zeros_like(m)
    outcomes = []
    for r in f.eigenvalues():
        mask = f.mask(r)
        part = m * np.outer(mask, mask)
        hat = hat + part
        prob = float(np.trace(part).real)
        exact_prob = None
        if rho.exact_diag is not None:
            exact_prob = sum((d for i, d in enumerate(rho.exact_diag) if mask[i]), Fraction(0))
            if exact_prob == 0:
                continue
        elif prob <= rho.tol:
            continue
        if exact_prob is not None:
            diag, coh = _restrict_exact(rho, mask, exact_prob)
            post = DensityMatrix(rho.universe, part / float(exact_prob), rho.tol, diag, coh)
        else:
            post = DensityMatrix(rho.universe, part / prob, rho.tol)
        block = tuple(lab for lab, keep in zip(rho.universe.labels, mask) if keep)
        outcomes.append(Outcome(r, prob, post, block, exact_prob))
    if rho.coherence is not None:
        state = DensityMatrix(rho.universe, hat, rho.tol, rho.exact_diag, join(rho.coherence, f.partition()))
    else:
        state = DensityMatrix(rho.universe, hat, rho.tol)
    return MeasurementResult(state, tuple(outcomes))


def quantum_logical_entropy(rho: DensityMatrix) -> float:
    """``1 - tr[rho^2]``."""
    return 1.0 - rho.purity()


def quantum_logical_entropy_exact(rho: DensityMatrix) -> Fraction:
    """Exact ``1 - tr[rho^2]`` for states carrying an exact form."""
    return 1 - rho.purity_exact()


def measurement_entropy_increase(rho: DensityMatrix, f: EigenvalueFunction) -> tuple[float, float]:
    """``(h(rho_hat) - h(rho), sum of |rho_jk|^2 over entries the measurement zeroes)``."""
    hat = lueders_measure(rho, f).state
    increase = quantum_logical_entropy(hat) - quantum_logical_entropy(rho)
    vals = np.array([f.f[lab] for lab in rho.universe.labels])
    across = vals[:, None] != vals[None, :]
    zeroed = float(np.sum(np.abs(rho.entries[across]) ** 2))
    return increase, zeroed
