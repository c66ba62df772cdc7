import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from bathent.states import (BlochState, InvalidStateError, bloch_to_matrix, check_density_matrix,
                            concurrence, matrix_to_bloch, min_eigenvalue, partial_transpose,
                            ppt_min_eigenvalue)

from oracles import bell_eg_ge, bloch_components, random_density, random_unitary, wootters_direct

seeds = st.integers(0, 2**32 - 1)


def test_maximally_mixed_matrix():
    assert np.allclose(bloch_to_matrix(BlochState.maximally_mixed()), np.eye(4) / 4)


def test_excited_ground_is_basis_projector():
    rho = bloch_to_matrix(BlochState.excited_ground())
    expected = np.zeros((4, 4))
    expected[1, 1] = 1
    assert np.allclose(rho, expected, atol=1e-15)


def test_product_state_matches_kron():
    a, b = np.array([0.3, -0.2, 0.5]), np.array([0.0, 0.6, -0.7])
    single = lambda r: 0.5 * (np.eye(2) + np.einsum("i,iab->ab", r, _pauli()))  # noqa: E731
    assert np.allclose(bloch_to_matrix(BlochState.product(a, b)), np.kron(single(a), single(b)), atol=1e-15)


def _pauli():
    from bathent.states import SIGMA
    return SIGMA


@settings(max_examples=100)
@given(seeds)
def test_matrix_round_trip(seed):
    rho = random_density(np.random.default_rng(seed))
    back = bloch_to_matrix(matrix_to_bloch(rho))
    assert np.allclose(back, rho, atol=1e-14)


@settings(max_examples=100)
@given(seeds)
def test_bloch_components_agree_with_oracle(seed):
    rho = random_density(np.random.default_rng(seed))
    assert np.allclose(matrix_to_bloch(rho).to_vector(), bloch_components(rho), atol=1e-14)


def test_vector_round_trip():
    v = np.arange(15) / 100.0
    assert np.array_equal(BlochState.from_vector(v).to_vector(), v)
    with pytest.raises(ValueError):
        BlochState.from_vector(np.zeros(14))


def test_tau_is_trace_of_correlations():
    assert BlochState.excited_ground().tau == -1.0
    assert BlochState.product([0, 0, 1], [0, 0, 1]).tau == 1.0


def test_bell_state():
    rho = bell_eg_ge()
    assert ppt_min_eigenvalue(rho) == pytest.approx(-0.5, abs=1e-14)
    assert concurrence(rho) == pytest.approx(1.0, abs=1e-12)
    assert matrix_to_bloch(rho).tau == pytest.approx(1.0, abs=1e-14)


@pytest.mark.parametrize("state", [BlochState.maximally_mixed(), BlochState.excited_ground(),
                                   BlochState.product([0.1, 0.2, 0.3], [-0.5, 0.0, 0.5])])
def test_separable_states(state):
    rho = bloch_to_matrix(state)
    assert concurrence(rho) == 0.0
    assert ppt_min_eigenvalue(rho) >= -1e-15


def test_werner_threshold():
    bell = bell_eg_ge()
    for p, c in ((1 / 3, 0.0), (0.5, 0.25), (0.8, 0.7)):
        rho = p * bell + (1 - p) * np.eye(4) / 4
        assert concurrence(rho) == pytest.approx(c, abs=1e-12)


@settings(max_examples=100)
@given(seeds, st.sampled_from([1, 2, 4]))
def test_concurrence_matches_direct_formula(seed, rank):
    rho = random_density(np.random.default_rng(seed), rank)
    # the direct route takes square roots of eigenvalues that are zero up to rounding
    assert concurrence(rho) == pytest.approx(wootters_direct(rho), abs=1e-8 if rank == 4 else 1e-6)


@settings(max_examples=100)
@given(seeds)
def test_local_unitary_invariance(seed):
    rng = np.random.default_rng(seed)
    rho = random_density(rng, 2)
    U = np.kron(random_unitary(rng), random_unitary(rng))
    assert concurrence(U @ rho @ U.conj().T) == pytest.approx(concurrence(rho), abs=1e-10)


@settings(max_examples=100)
@given(seeds)
def test_ppt_agrees_with_concurrence(seed):
    rho = random_density(np.random.default_rng(seed), 2)
    c, e = concurrence(rho), ppt_min_eigenvalue(rho)
    if c > 1e-8:
        assert e < 0
    if e < -1e-8:
        assert c > 0


@given(seeds)
def test_partial_transpose_is_involution(seed):
    rho = random_density(np.random.default_rng(seed))
    assert np.array_equal(partial_transpose(partial_transpose(rho)), rho)
    assert np.trace(partial_transpose(rho)) == pytest.approx(1.0)


def test_partial_transpose_acts_on_second_qubit():
    a, b = np.array([[1, 2], [3, 4]], complex), np.array([[5, 6j], [7, 8]], complex)
    assert np.array_equal(partial_transpose(np.kron(a, b)), np.kron(a, b.T))


def test_invalid_inputs():
    with pytest.raises(InvalidStateError):
        check_density_matrix(np.eye(3) / 3)
    with pytest.raises(InvalidStateError):
        check_density_matrix(np.eye(4) / 2)
    bad = np.eye(4, dtype=complex) / 4
    bad[0, 1] = 0.1
    with pytest.raises(InvalidStateError):
        matrix_to_bloch(bad)
    with pytest.raises(InvalidStateError):
        concurrence(np.diag([1.5, -0.5, 0, 0]))


def test_min_eigenvalue():
    assert min_eigenvalue(np.diag([0.5, 0.25, 0.25, 0.0])) == 0.0
