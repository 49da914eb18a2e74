"""The eleven acceptance criteria, each with its tolerance and time budget.

Every check prints ``ACCEPTANCE <n> PASS|FAIL`` with the elapsed time; the
lines are repeated in the terminal summary.
"""

from __future__ import annotations

import itertools
import random
import time
from fractions import Fraction as F
from math import comb

import numpy as np

from conftest import ACCEPTANCE_LINES
from partlogic.entropy import ProbDist, logical_entropy_dist, logical_entropy_partition
from partlogic.occupancy import (
    OccupancyProfile,
    RegimeSpec,
    all_regimes,
    mb_probability,
    occupancy_profiles,
    twelvefold_bruteforce,
    twelvefold_count,
)
from partlogic.partition import (
    Universe,
    bell_number,
    dit_set,
    enumerate_partitions,
    implies,
    indit_set,
    join,
    lattice_graph,
    make_partition,
    meet,
    refines,
)
from partlogic.qmsets import (
    BasisTable,
    SlitScenario,
    SubsetVector,
    express_in_basis,
    ket_table,
    primed_basis,
    run_double_slit,
)
from partlogic.quantum import (
    EigenvalueFunction,
    density_mixture,
    density_superposition,
    extract_amplitudes,
    indicator,
    measurement_entropy_increase,
    quantum_logical_entropy,
    rel_delta,
    rel_full,
)


def run_criterion(number: int, title: str, limit_s: float, body) -> None:
    start = time.perf_counter()
    error = None
    try:
        body()
    except AssertionError as exc:
        error = exc
    elapsed = time.perf_counter() - start
    passed = error is None and elapsed < limit_s
    status = "PASS" if passed else "FAIL"
    line = f"ACCEPTANCE {number:>2} {status}  {title}  ({elapsed * 1e3:.3f} ms, limit {limit_s * 1e3:g} ms)"
    if error is not None:
        line += f"  assertion: {error}"
    print(line)
    ACCEPTANCE_LINES.append(line)
    if error is not None:
        raise error
    assert elapsed < limit_s, f"{title} took {elapsed:.4f} s, limit {limit_s} s"


def random_dist(rng: random.Random, universe: Universe) -> ProbDist:
    w = [rng.randint(1, 20) for _ in universe]
    total = sum(w)
    return ProbDist(universe, tuple(F(x, total) for x in w))


def random_pure_state(rng: random.Random, max_n: int = 6, phases: bool = False):
    n = rng.randint(1, max_n)
    u = Universe.letters(n)
    subset = [lab for lab in u.labels if rng.random() < 0.6] or [rng.choice(u.labels)]
    ph = {lab: rng.uniform(-np.pi, np.pi) for lab in u.labels} if phases else None
    return density_superposition(subset, random_dist(rng, u), phases=ph)


def test_criterion_01_entropy_golden():
    p = ProbDist(Universe("abc"), ("1/2", "1/4", "1/4"))

    def body():
        assert logical_entropy_dist(p) == F(5, 8)

    run_criterion(1, "h((1/2,1/4,1/4)) = 5/8 exactly", 1e-3, body)


def test_criterion_02_relation_factorisation():
    U = Universe("abc")

    def body():
        full = rel_full(U, "bc")
        assert full.tolist() == [[0, 0, 0], [0, 1, 1], [0, 1, 1]]
        chi = indicator(U, "bc")
        assert (full.entries == np.outer(chi, chi)).all()
        assert rel_delta(U, "bc").rank() == 2

    run_criterion(2, "rel_full(S) = chi chi^t and rank rel_delta(S) = 2", 1e-3, body)


def test_criterion_03_partition_algebra_exhaustive():
    def body():
        for n in range(1, 6):
            u = Universe.letters(n)
            parts = enumerate_partitions(u)
            for pi, sigma in itertools.product(parts, repeat=2):
                assert dit_set(join(pi, sigma)) == (dit_set(pi) | dit_set(sigma))
                # least closure: the smallest equivalence containing both indit sets
                m = indit_set(meet(pi, sigma))
                both = indit_set(pi) | indit_set(sigma)
                assert both <= m and m.is_equivalence()
                assert m == both.equivalence_closure()
                assert implies(sigma, pi).is_top == refines(sigma, pi)

    run_criterion(3, "join/meet/implication laws over all pairs, n = 1..5", 10.0, body)


def test_criterion_03_least_closure_against_all_upper_bounds():
    # the closure is below every equivalence relation containing both indit sets
    u = Universe.letters(4)
    parts = enumerate_partitions(u)
    for pi, sigma in itertools.product(parts, repeat=2):
        both = indit_set(pi) | indit_set(sigma)
        m = indit_set(meet(pi, sigma))
        for tau in parts:
            if both <= indit_set(tau):
                assert m <= indit_set(tau)


def test_criterion_04_lattice_counts():
    def body():
        assert [len(enumerate_partitions(Universe.letters(n))) for n in range(1, 6)] == [1, 2, 5, 15, 52]
        assert [bell_number(n) for n in range(1, 6)] == [1, 2, 5, 15, 52]
        U = Universe("abcd")
        g = lattice_graph(U)
        assert len(g.nodes) == 15
        expected = {0: F(0), 1: F(3, 8), 2: F(1, 2), 3: F(5, 8), 4: F(3, 4)}
        for p, h in zip(g.nodes, g.entropy):
            sizes = sorted(len(b) for b in p.blocks)
            want = 1 - sum(F(s, 4) ** 2 for s in sizes)
            assert h == want
            assert h in expected.values()
        assert g.entropy[g.index_of(make_partition(U, [["a", "b", "c"], ["d"]]))] == F(3, 8)

    run_criterion(4, "Bell counts 1,2,5,15,52 and n=4 entropy annotations", 1.0, body)


def test_criterion_05_lueders_identity():
    rng = random.Random(20261014)
    cases = []
    for _ in range(200):
        rho = random_pure_state(rng)
        f = EigenvalueFunction(rho.universe, {lab: rng.randint(0, 3) for lab in rho.universe.labels})
        cases.append((rho, f))

    def body():
        for rho, f in cases:
            inc, zeroed = measurement_entropy_increase(rho, f)
            assert abs(inc - zeroed) <= 1e-9

    run_criterion(5, "h(rho_hat) - h(rho) = zeroed sum for 200 random pure states", 5.0, body)


def test_criterion_06_entropy_bridge():
    rng = random.Random(6)

    def body():
        for n in range(1, 6):
            u = Universe.letters(n)
            parts = enumerate_partitions(u)
            for _ in range(20):
                p = random_dist(rng, u)
                for pi in parts:
                    q = quantum_logical_entropy(density_mixture(pi, p))
                    assert abs(q - float(logical_entropy_partition(pi, p))) <= 1e-12

    run_criterion(6, "quantum entropy of rho(pi) = h(pi), n <= 5, 20 distributions", 5.0, body)


def test_criterion_07_double_slit():
    def body():
        det = run_double_slit(SlitScenario(detection=True)).outcomes
        assert det == {"screen:b": F(1, 3), "wall:a": F(1, 6), "wall:b": F(1, 3), "wall:c": F(1, 6)}
        nodet = run_double_slit(SlitScenario(detection=False)).outcomes
        assert nodet == {"screen:b": F(1, 3), "wall:a": F(1, 3), "wall:b": F(0), "wall:c": F(1, 3)}
        assert all(type(v) is F for v in list(det.values()) + list(nodet.values()))

    run_criterion(7, "double-slit distributions with and without detection", 1e-3, body)


def test_criterion_08_basis_algebra():
    U = Universe("abc")
    up = primed_basis()
    std = BasisTable.standard(U)

    def body():
        table = ket_table([std, up])
        rows = {(row[0].members, row[1].members) for row in table.rows}
        assert (("a", "b", "c"), ("b'",)) in rows
        assert (("b", "c"), ("c'",)) in rows
        assert express_in_basis(SubsetVector.of(U, ["a"]), up).members == ("b'", "c'")

    run_criterion(8, "ket table rows and {a} = b' + c'", 1e-3, body)


def test_criterion_09_twelvefold_oracle():
    def body():
        cases = 0
        for regime in all_regimes():
            for k in range(1, 6):
                for n in range(1, 6):
                    assert twelvefold_count(k, n, regime) == twelvefold_bruteforce(k, n, regime), (regime, k, n)
                    cases += 1
        assert cases == 300
        for k in range(1, 6):
            for n in range(1, 6):
                assert twelvefold_bruteforce(k, n, RegimeSpec("dist", "dist", "arbitrary")) == n ** k
                assert twelvefold_bruteforce(k, n, RegimeSpec("indist", "dist", "injective")) == comb(n, k)
                assert twelvefold_bruteforce(k, n, RegimeSpec("indist", "dist", "arbitrary")) == comb(n + k - 1, k)

    run_criterion(9, "closed forms = brute force on 12 regimes x 25 (k, n)", 30.0, body)


def test_criterion_10_mb_normalisation():
    def body():
        for k in range(0, 7):
            for n in range(1, 7):
                total = sum(mb_probability(OccupancyProfile(k, n, t)) for t in occupancy_profiles(k, n))
                assert total == 1, (k, n)

    run_criterion(10, "Maxwell-Boltzmann probabilities sum to 1 for k, n <= 6", 5.0, body)


def test_criterion_11_born_rule():
    rng = random.Random(11)
    states = [random_pure_state(rng, phases=i % 2 == 1) for i in range(100)]

    def body():
        for rho in states:
            amp = extract_amplitudes(rho)
            a = amp.amplitudes
            assert np.max(np.abs(np.outer(a, a.conj()) - rho.entries)) <= 1e-10
            assert np.max(np.abs(np.abs(a) ** 2 - rho.diagonal)) <= 1e-10

    run_criterion(11, "amplitudes reproduce rho and the diagonal for 100 pure states", 5.0, body)
