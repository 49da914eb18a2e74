from __future__ import annotations

import math
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import dists_on, partitions_on
from partlogic.entropy import ProbDist, logical_entropy_partition
from partlogic.errors import (
    AtomNotInUniverse,
    EmptySupport,
    InvalidDensityMatrix,
    NonPositiveProbability,
    NotPureState,
    UniverseMismatch,
    ZeroProbability,
)
from partlogic.partition import Partition, Universe, enumerate_partitions, indit_set, make_partition
from partlogic.quantum import (
    DensityMatrix,
    EigenvalueFunction,
    density_from_json,
    density_mixture,
    density_superposition,
    extract_amplitudes,
    indicator,
    lueders_measure,
    measurement_entropy_increase,
    quantum_logical_entropy,
    quantum_logical_entropy_exact,
    rel_delta,
    rel_full,
    rho_sharp,
    support_matrix,
)

ABC = Universe("abc")
ABCD = Universe("abcd")
P3 = ProbDist(ABC, ("1/2", "1/4", "1/4"))


def diag_state(universe, values):
    return DensityMatrix(universe, np.diag(np.array(values, dtype=float)))


def superposition_oracle(subset, p):
    idx = [p.universe.index(x) for x in subset]
    total = sum(float(p.p[i]) for i in idx)
    n = len(p.universe)
    out = np.zeros((n, n))
    for j in idx:
        for k in idx:
            out[j, k] = math.sqrt(float(p.p[j]) * float(p.p[k])) / total
    return out


def test_rel_matrices():
    assert rel_full(ABC, "bc").tolist() == [[0, 0, 0], [0, 1, 1], [0, 1, 1]]
    assert rel_delta(ABC, "bc").tolist() == [[0, 0, 0], [0, 1, 0], [0, 0, 1]]
    assert rel_delta(ABC, []).tolist() == [[0] * 3] * 3
    assert rel_delta(ABC, "abc").tolist() == np.eye(3, dtype=int).tolist()
    assert rel_full(ABC, "a") == rel_delta(ABC, "a")
    assert rel_full(Universe("ab"), "ab").tolist() == [[1, 1], [1, 1]]
    with pytest.raises(AtomNotInUniverse):
        rel_full(ABC, "z")


def test_outer_product_law():
    for n in range(1, 7):
        u = Universe.letters(n)
        for mask in range(1 << n):
            s = [u.labels[i] for i in range(n) if mask >> i & 1]
            chi = indicator(u, s)
            assert (rel_full(u, s).entries == np.outer(chi, chi)).all()
            delta = rel_delta(u, s)
            assert delta.rank() == len(s)
            if len(s) >= 2:
                assert delta.outer_factor() is None
            else:
                assert rel_full(u, s).outer_factor() is not None


def test_superposition_examples():
    rho = density_superposition("bc", P3)
    np.testing.assert_allclose(rho.entries.real, superposition_oracle("bc", P3), atol=1e-15)
    np.testing.assert_allclose(rho.diagonal, [0, 0.5, 0.5])
    assert rho.entries[1, 2] == pytest.approx(0.5)
    eq = density_superposition("abd", ProbDist.uniform(ABCD))
    np.testing.assert_allclose(eq.entries.real, (rel_full(ABCD, "abd").entries / 3))
    single = density_superposition("a", P3)
    np.testing.assert_allclose(single.entries.real, np.diag([1, 0, 0]))
    assert rho.is_pure() and rho.purity_exact() == 1
    with pytest.raises(EmptySupport):
        density_superposition([], P3)
    with pytest.raises(ZeroProbability):
        density_superposition("bc", ProbDist(ABC, (1, 0, 0)))


def test_density_validation():
    with pytest.raises(InvalidDensityMatrix, match="trace"):
        diag_state(ABC, [0.5, 0.2, 0.2])
    with pytest.raises(InvalidDensityMatrix, match="ermitian"):
        DensityMatrix(Universe("ab"), np.array([[0.5, 0.1], [0.2, 0.5]]))
    with pytest.raises(InvalidDensityMatrix):
        DensityMatrix(Universe("ab"), np.array([[0.5, 0.9], [0.9, 0.5]]))
    with pytest.raises(InvalidDensityMatrix):
        DensityMatrix(ABC, np.eye(2) / 2)


def test_density_json_roundtrip():
    rho = density_superposition("bc", P3, phases={"c": 1.0})
    doc = rho.to_json()
    assert "im" in doc
    back = density_from_json(doc)
    np.testing.assert_allclose(back.entries, rho.entries)
    real = density_superposition("bc", P3).to_json(precision=6)
    assert "im" not in real and real["re"][1][2] == 0.5


def test_mixture_examples():
    p4 = ProbDist.uniform(ABCD)
    mix = density_mixture(make_partition(ABCD, [["a", "b"], ["c", "d"]]), p4)
    expected = np.zeros((4, 4))
    expected[:2, :2] = expected[2:, 2:] = 0.25
    np.testing.assert_allclose(mix.entries.real, expected)
    np.testing.assert_allclose(
        density_mixture(Partition.bottom(ABC), P3).entries, density_superposition("abc", P3).entries
    )
    np.testing.assert_allclose(density_mixture(Partition.top(ABC), P3).entries.real, np.diag([0.5, 0.25, 0.25]))
    with pytest.raises(NonPositiveProbability):
        density_mixture(Partition.top(ABC), ProbDist(ABC, (1, 0, 0)))
    with pytest.raises(UniverseMismatch):
        density_mixture(Partition.top(ABCD), P3)


def test_amplitudes_examples():
    amp = extract_amplitudes(diag_state(ABC, [1, 0, 0]))
    np.testing.assert_allclose(amp.amplitudes, [1, 0, 0])
    r = 1 / math.sqrt(2)
    for p in (ProbDist.uniform(ABC), P3):
        amp = extract_amplitudes(density_superposition("bc", p))
        np.testing.assert_allclose(amp.amplitudes, [0, r, r], atol=1e-15)
        assert amp.support() == ["b", "c"]
    with pytest.raises(NotPureState):
        extract_amplitudes(diag_state(Universe("ab"), [0.5, 0.5]))


def test_amplitude_phase_convention():
    rho = density_superposition("abc", P3, phases={"a": 2.0, "b": 0.5, "c": -1.0})
    amp = extract_amplitudes(rho).amplitudes
    assert amp[0].imag == 0 and amp[0].real > 0
    np.testing.assert_allclose(np.outer(amp, amp.conj()), rho.entries, atol=1e-12)


def test_support_matrix():
    assert support_matrix(density_superposition("bc", P3)) == rel_full(ABC, "bc")
    assert support_matrix(diag_state(ABC, [0.5, 0.25, 0.25])).tolist() == np.eye(3, dtype=int).tolist()
    pi = make_partition(ABC, [["a", "c"], ["b"]])
    assert support_matrix(density_mixture(pi, P3)).as_relation() == indit_set(pi)


def test_rho_sharp():
    rho = density_superposition("bc", P3, phases={"b": 1.0})
    sharp = rho_sharp(rho)
    assert sharp.is_real
    np.testing.assert_allclose(sharp.entries.real, superposition_oracle("bc", P3), atol=1e-15)


def test_measure_examples():
    rho = density_superposition("abcd", ProbDist.uniform(ABCD))
    const = EigenvalueFunction(ABCD, {x: 7 for x in "abcd"})
    res = lueders_measure(rho, const)
    np.testing.assert_allclose(res.state.entries, rho.entries)
    assert len(res.outcomes) == 1
    inj = EigenvalueFunction(ABCD, {x: i for i, x in enumerate("abcd")})
    np.testing.assert_allclose(lueders_measure(rho, inj).state.entries, np.diag(rho.diagonal))
    f = EigenvalueFunction(ABCD, {"a": 1, "b": 1, "c": -1, "d": -1})
    res = lueders_measure(rho, f)
    expected = np.zeros((4, 4))
    expected[:2, :2] = expected[2:, 2:] = 0.25
    np.testing.assert_allclose(res.state.entries.real, expected)
    assert [o.eigenvalue for o in res.outcomes] == [-1, 1]
    assert [o.exact_probability for o in res.outcomes] == [F(1, 2), F(1, 2)]
    assert all(o.state.is_pure() for o in res.outcomes)
    inc, zeroed = measurement_entropy_increase(rho, f)
    assert inc == pytest.approx(0.5) and zeroed == pytest.approx(0.5)
    assert measurement_entropy_increase(rho, const) == pytest.approx((0, 0))
    assert measurement_entropy_increase(rho, inj) == pytest.approx((0.75, 0.75))


def test_measure_drops_zero_outcomes():
    rho = density_superposition("ab", ProbDist.uniform(ABC))
    f = EigenvalueFunction(ABC, {"a": 0, "b": 1, "c": 2})
    res = lueders_measure(rho, f)
    assert [o.block for o in res.outcomes] == [("a",), ("b",)]
    with pytest.raises(UniverseMismatch):
        lueders_measure(rho, EigenvalueFunction(ABCD, {x: 0 for x in "abcd"}))


def test_quantum_entropy_values():
    for n in range(1, 6):
        u = Universe.letters(n)
        assert quantum_logical_entropy(diag_state(u, [1 / n] * n)) == pytest.approx(1 - 1 / n)
        assert quantum_logical_entropy(density_superposition(u.labels, ProbDist.uniform(u))) == pytest.approx(0, abs=1e-12)


def test_entropy_bridge_exact():
    u = Universe.letters(4)
    p = ProbDist(u, ("1/10", "2/10", "3/10", "4/10"))
    for pi in enumerate_partitions(u):
        rho = density_mixture(pi, p)
        assert quantum_logical_entropy_exact(rho) == logical_entropy_partition(pi, p)
        assert quantum_logical_entropy(rho) == pytest.approx(float(logical_entropy_partition(pi, p)), abs=1e-12)


@st.composite
def pure_states(draw, max_n=6, complex_=False):
    n = draw(st.integers(1, max_n))
    u = Universe.letters(n)
    p = draw(dists_on(u, positive=True))
    mask = draw(st.integers(1, (1 << n) - 1))
    subset = [u.labels[i] for i in range(n) if mask >> i & 1]
    phases = None
    if complex_:
        angles = draw(st.lists(st.floats(-3.0, 3.0), min_size=n, max_size=n))
        phases = dict(zip(u.labels, angles))
    return density_superposition(subset, p, phases=phases)


@st.composite
def state_and_f(draw):
    rho = draw(pure_states(complex_=draw(st.booleans())))
    values = draw(st.lists(st.integers(-2, 2), min_size=rho.n, max_size=rho.n))
    return rho, EigenvalueFunction(rho.universe, dict(zip(rho.universe.labels, values)))


@given(state_and_f())
def test_increase_identity(pair):
    rho, f = pair
    inc, zeroed = measurement_entropy_increase(rho, f)
    assert abs(inc - zeroed) < 1e-9


@given(state_and_f())
def test_lueders_idempotent(pair):
    rho, f = pair
    hat = lueders_measure(rho, f).state
    np.testing.assert_allclose(lueders_measure(hat, f).state.entries, hat.entries, atol=1e-12)


@given(state_and_f())
def test_post_states_are_pure(pair):
    rho, f = pair
    res = lueders_measure(rho, f)
    assert sum(o.probability for o in res.outcomes) == pytest.approx(1)
    for o in res.outcomes:
        assert o.state.is_pure()
        assert o.state.purity_exact() == 1


@st.composite
def partition_and_dist(draw):
    u = Universe.letters(draw(st.integers(1, 5)))
    return draw(partitions_on(u)), draw(dists_on(u, positive=True))


@settings(max_examples=50)
@given(partition_and_dist())
def test_partition_correspondence(pair):
    f_pi, p = pair
    u = p.universe
    rho = density_superposition(u.labels, p)
    f = EigenvalueFunction.from_partition(f_pi)
    hat = lueders_measure(rho, f).state
    np.testing.assert_allclose(hat.entries, density_mixture(f_pi, p).entries, atol=1e-12)
    assert quantum_logical_entropy_exact(hat) == logical_entropy_partition(f_pi, p)


@given(pure_states(complex_=True))
def test_born_rule(rho):
    amp = extract_amplitudes(rho)
    np.testing.assert_allclose(np.outer(amp.amplitudes, amp.amplitudes.conj()), rho.entries, atol=1e-10)
    np.testing.assert_allclose(amp.probabilities(), rho.diagonal, atol=1e-10)


def test_increase_identity_mixed_input():
    # the identity only uses which entries are zeroed, so mixed states obey it too
    u = ABCD
    p = ProbDist(u, ("1/10", "2/10", "3/10", "4/10"))
    rho = density_mixture(make_partition(u, [["a", "b", "c"], ["d"]]), p)
    f = EigenvalueFunction(u, {"a": 0, "b": 1, "c": 1, "d": 1})
    inc, zeroed = measurement_entropy_increase(rho, f)
    assert inc == pytest.approx(zeroed, abs=1e-12) and inc > 0
