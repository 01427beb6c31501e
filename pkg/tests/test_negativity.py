import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from boundent.errors import ContractViolation, SizeLimitError
from boundent.linalg import hermitian_eig
from boundent.negativity import (
    additivity_check,
    is_ppt,
    local_unitary_conjugate,
    log_negativity,
    maximally_mixed,
    theorem2_ceiling,
)
from boundent.tensor import HermitianOperator, TensorSpace
from conftest import random_density, random_hermitian

seeds = st.integers(min_value=0, max_value=2**32 - 1)


def _unitary(rng, n):
    # exp(iH) through the eigendecomposition of a random Hermitian H
    dec = hermitian_eig(random_hermitian(rng, n))
    return (dec.vectors * np.exp(1j * dec.values)) @ dec.vectors.conj().T


def test_rho_b_negativity_zero(rhob):
    rep = log_negativity(rhob)
    assert rep.value_bits == pytest.approx(0.0, abs=1e-9)
    assert rep.is_ppt


def test_singlet_negativity_one(psi):
    rep = log_negativity(psi)
    assert rep.value_bits == pytest.approx(1.0, abs=1e-9)
    assert not rep.is_ppt
    assert rep.min_pt_eigenvalue == pytest.approx(-0.5, abs=1e-14)


def test_maximally_mixed():
    rep = log_negativity(maximally_mixed(3, 3))
    assert rep.value_bits == pytest.approx(0.0, abs=1e-12) and rep.is_ppt


def test_rejects_non_states(pb):
    with pytest.raises(ContractViolation):
        log_negativity(pb)
    with pytest.raises(ContractViolation):
        log_negativity(HermitianOperator(np.diag([1.5, -0.5, 0, 0]), TensorSpace.bipartite(2, 2)))


@pytest.mark.parametrize(
    "make_pair, expected",
    [
        (lambda r, s: (r, s), (1.0, 0.0, 1.0)),
        (lambda r, s: (s, s), (2.0, 1.0, 1.0)),
        (lambda r, s: (maximally_mixed(2, 2), maximally_mixed(2, 2)), (0.0, 0.0, 0.0)),
    ],
)
def test_additivity_examples(rhob, psi, make_pair, expected):
    res = additivity_check(*make_pair(rhob, psi))
    assert res.passed
    assert res.lhs == pytest.approx(expected[0], abs=1e-8)
    assert res.parts == pytest.approx(expected[1:], abs=1e-8)


def test_additivity_size_limit(rhob):
    with pytest.raises(SizeLimitError):
        additivity_check(rhob, rhob, dim_limit=80)


@pytest.mark.parametrize("copies, singlets", [(1, 0), (1, 1), (2, 1), (1, 2), (0, 2), (2, 0)])
def test_ceiling_grid(copies, singlets):
    res = theorem2_ceiling(copies, singlets)
    assert res.passed
    assert res.e_neg == pytest.approx(singlets, abs=1e-8)
    assert res.ceiling == singlets


def test_ceiling_guards():
    with pytest.raises(SizeLimitError):
        theorem2_ceiling(2, 1, dim_limit=300)
    with pytest.raises(ContractViolation):
        theorem2_ceiling(0, 0)


def test_is_ppt_predicate(rhob, psi):
    assert is_ppt(rhob)
    assert not is_ppt(psi)


@given(seeds)
def test_negativity_nonnegative(seed):
    rng = np.random.default_rng(seed)
    op = HermitianOperator(random_density(rng, 6), TensorSpace.bipartite(2, 3))
    rep = log_negativity(op)
    assert rep.value_bits >= -1e-12
    if rep.is_ppt:
        assert abs(rep.value_bits) <= 1e-9


@given(seeds)
def test_negativity_local_unitary_invariance(seed):
    rng = np.random.default_rng(seed)
    space = TensorSpace.bipartite(3, 3)
    for op in (
        HermitianOperator(random_density(rng, 9), space),
        HermitianOperator(np.kron(np.eye(3), np.eye(3)) / 9, space),
    ):
        moved = local_unitary_conjugate(op, [_unitary(rng, 3), _unitary(rng, 3)])
        assert log_negativity(moved).value_bits == pytest.approx(log_negativity(op).value_bits, abs=1e-8)


def test_local_unitary_invariance_on_singlet(psi, rng):
    moved = local_unitary_conjugate(psi, [_unitary(rng, 2), _unitary(rng, 2)])
    assert log_negativity(moved).value_bits == pytest.approx(1.0, abs=1e-8)
