import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from boundent.errors import ContractViolation, ConvergenceError, SizeLimitError
from boundent.linalg import (
    hermitian_eig,
    kron,
    kron_power,
    solver_settings,
    trace_norm_hermitian,
)
from conftest import random_hermitian

seeds = st.integers(min_value=0, max_value=2**32 - 1)


def test_kron_identity():
    np.testing.assert_array_equal(kron(np.eye(3), np.eye(3)), np.eye(9))


def test_kron_basis_bookkeeping():
    np.testing.assert_array_equal(kron(np.diag([1, 0]), np.diag([0, 1])), np.diag([0, 1, 0, 0]))


def test_kron_index_convention(rng):
    a = rng.normal(size=(2, 3))
    b = rng.normal(size=(4, 5))
    k = kron(a, b)
    assert k.shape == (8, 15)
    for i, j, kk, ll in [(0, 0, 0, 0), (1, 2, 3, 4), (1, 0, 2, 3)]:
        assert k[i * 4 + kk, j * 5 + ll] == pytest.approx(a[i, j] * b[kk, ll])


def test_kron_trace_of_pb_squared(pb):
    # trace multiplies: 4 * 4
    assert np.trace(kron(pb.matrix, pb.matrix)).real == pytest.approx(16.0, abs=1e-10)


def test_kron_size_limit():
    with pytest.raises(SizeLimitError):
        kron(np.eye(81), np.eye(100))
    with pytest.raises(SizeLimitError):
        kron_power(np.eye(9), 5)


@given(seeds)
def test_kron_associative(seed):
    rng = np.random.default_rng(seed)
    a, b, c = (random_hermitian(rng, n) for n in (2, 3, 2))
    np.testing.assert_allclose(kron(kron(a, b), c), kron(a, kron(b, c)), atol=1e-12)


def test_eig_identity():
    np.testing.assert_allclose(hermitian_eig(np.eye(3)).values, [1, 1, 1], atol=1e-15)


def test_eig_sigma_x():
    np.testing.assert_allclose(hermitian_eig([[0, 1], [1, 0]]).values, [1, -1], atol=1e-15)


def test_eig_pb_spectrum(pb):
    np.testing.assert_allclose(hermitian_eig(pb.matrix).values, [1] * 4 + [0] * 5, atol=1e-12)


def test_eig_sorted_descending(rng):
    vals = hermitian_eig(random_hermitian(rng, 12)).values
    assert np.all(np.diff(vals) <= 0)


@given(seeds, st.sampled_from([2, 3, 5, 9, 16, 27]))
def test_eig_reconstruction_and_orthonormality(seed, n):
    rng = np.random.default_rng(seed)
    a = random_hermitian(rng, n)
    dec = hermitian_eig(a)
    norm = np.linalg.norm(a)
    assert np.linalg.norm(a - dec.reconstruct()) <= 1e-10 * norm
    np.testing.assert_allclose(dec.vectors.conj().T @ dec.vectors, np.eye(n), atol=1e-10)
    assert dec.off_norm <= 1e-14 * norm


@pytest.mark.parametrize("n", [64, 81])
def test_eig_large_against_lapack(rng, n):
    a = random_hermitian(rng, n)
    dec = hermitian_eig(a)
    ref = np.sort(np.linalg.eigvalsh(a))[::-1]
    np.testing.assert_allclose(dec.values, ref, atol=1e-10 * np.linalg.norm(a))
    assert np.linalg.norm(a - dec.reconstruct()) <= 1e-10 * np.linalg.norm(a)
    np.testing.assert_allclose(dec.vectors.conj().T @ dec.vectors, np.eye(n), atol=1e-10)


def test_eig_degenerate_cluster(rng):
    # repeated eigenvalues: only the spectrum is canonical
    u, _ = np.linalg.qr(rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6)))
    a = u @ np.diag([2, 2, 2, -1, -1, 0]) @ u.conj().T
    dec = hermitian_eig(a)
    np.testing.assert_allclose(dec.values, [2, 2, 2, 0, -1, -1], atol=1e-12)
    assert np.linalg.norm(a - dec.reconstruct()) < 1e-12


def test_eig_lapack_method_matches(rng):
    a = random_hermitian(rng, 10)
    np.testing.assert_allclose(
        hermitian_eig(a, method="lapack").values, hermitian_eig(a).values, atol=1e-12
    )


def test_eig_rejects_non_hermitian():
    with pytest.raises(ContractViolation):
        hermitian_eig([[1, 2], [0, 1]])
    with pytest.raises(ContractViolation):
        hermitian_eig(np.ones((2, 3)))
    with pytest.raises(ContractViolation):
        hermitian_eig([[np.nan, 0], [0, 1]])


def test_eig_convergence_error_carries_residual(rng):
    a = random_hermitian(rng, 30)
    with pytest.raises(ConvergenceError) as info:
        hermitian_eig(a, max_sweeps=1)
    assert info.value.residual > 0


def test_solver_settings_context(rng):
    a = random_hermitian(rng, 30)
    with solver_settings(max_sweeps=1), pytest.raises(ConvergenceError):
        hermitian_eig(a)
    hermitian_eig(a)


def test_jacobi_is_bit_stable(rng):
    a = random_hermitian(rng, 20)
    d1, d2 = hermitian_eig(a), hermitian_eig(a.copy())
    assert np.array_equal(d1.values, d2.values)
    assert np.array_equal(d1.vectors, d2.vectors)


def test_trace_norm_psd_unit_trace(rng):
    x = rng.normal(size=(5, 5)) + 1j * rng.normal(size=(5, 5))
    rho = x @ x.conj().T
    rho /= np.trace(rho).real
    assert trace_norm_hermitian(rho) == pytest.approx(1.0, abs=1e-12)


def test_trace_norm_partially_transposed_singlet():
    # singlet (|01> - |10>)/sqrt2 with the B index transposed, written out by hand
    pt = 0.5 * np.array(
        [
            [0, 0, 0, -1],
            [0, 1, 0, 0],
            [0, 0, 1, 0],
            [-1, 0, 0, 0],
        ]
    )
    np.testing.assert_allclose(np.linalg.eigvalsh(pt), [-0.5, 0.5, 0.5, 0.5], atol=1e-15)
    assert trace_norm_hermitian(pt) == pytest.approx(2.0, abs=1e-14)


def test_trace_norm_diag():
    assert trace_norm_hermitian(np.diag([3.0, -4.0])) == pytest.approx(7.0)


@given(seeds, st.integers(min_value=2, max_value=12))
def test_trace_norm_dominates_trace(seed, n):
    a = random_hermitian(np.random.default_rng(seed), n)
    assert trace_norm_hermitian(a) >= abs(np.trace(a).real) - 1e-10


@given(seeds)
def test_trace_norm_multiplicative(seed):
    rng = np.random.default_rng(seed)
    a, b = random_hermitian(rng, 3), random_hermitian(rng, 4)
    assert trace_norm_hermitian(kron(a, b)) == pytest.approx(
        trace_norm_hermitian(a) * trace_norm_hermitian(b), abs=1e-8
    )
