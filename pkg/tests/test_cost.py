import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from boundent.config import ToleranceConfig
from boundent.cost import (
    ec_lower_bound,
    entropy_floor_check,
    induction_inequality_check,
    induction_operators,
    run_theorem1_pipeline,
    shannon_entropy_bits,
)
from boundent.errors import ContractViolation, InvalidEstimateError, SizeLimitError
from boundent.tensor import HermitianOperator
from boundent.tiles import QUTRITS, complement_certificate

FAST = ToleranceConfig(restarts_n1=20, include_n2=False)


def test_entropy_floor_uniform_saturates():
    assert shannon_entropy_bits([0.5, 0.5]) == pytest.approx(1.0)
    assert entropy_floor_check([0.5, 0.5], 0.5)


def test_entropy_floor_pure():
    assert entropy_floor_check([1.0], 1.0)


def test_entropy_floor_premise_fails_is_vacuous():
    assert entropy_floor_check([0.9, 0.1], 0.5)


def test_entropy_floor_rejects_bad_input():
    with pytest.raises(ContractViolation):
        entropy_floor_check([0.5, 0.4], 0.5)
    with pytest.raises(ContractViolation):
        entropy_floor_check([1.2, -0.2], 0.5)
    with pytest.raises(ContractViolation):
        entropy_floor_check([1.0], 0.0)


@given(st.lists(st.floats(min_value=1e-6, max_value=1.0), min_size=1, max_size=40))
def test_entropy_floor_analytic(weights):
    p = np.asarray(weights) / np.sum(weights)
    # H(p) >= -log2 max p always holds, so alpha = max p is the tightest premise
    assert entropy_floor_check(p, min(1.0, p.max()))


@pytest.mark.parametrize("alpha", [0.3, 0.7, 0.9])
def test_entropy_floor_random_distributions(alpha):
    rng = np.random.default_rng(int(alpha * 1000))
    checked = 0
    while checked < 2000:
        k = rng.integers(2, 30)
        p = rng.dirichlet(np.ones(k) * rng.uniform(0.2, 5))
        if p.max() <= alpha:
            assert entropy_floor_check(p, alpha)
            checked += 1


def test_induction_n1_beta_09(pb):
    chk = induction_inequality_check(1, 0.9)
    assert chk.passed
    assert chk.min_eig >= -1e-10
    assert chk.identity_residual <= 1e-9


@pytest.mark.parametrize("beta", [0.05, 0.5, 0.97, 0.999])
def test_induction_identity_n1(beta, pb):
    lhs, rhs, expected = induction_operators(1, beta)
    # oracle: closed form built from scratch
    direct = np.kron(np.eye(9) - pb.matrix, pb.matrix) / beta
    np.testing.assert_allclose(expected, direct, atol=1e-15)
    assert np.linalg.norm(rhs - lhs - direct) <= 1e-9


def test_induction_n2_identity_and_psd_lapack():
    chk = induction_inequality_check(2, 0.98, eig_method="lapack")
    assert chk.passed and chk.identity_residual <= 1e-9


def test_induction_guards():
    with pytest.raises(SizeLimitError):
        induction_inequality_check(3, 0.9)
    with pytest.raises(SizeLimitError):
        induction_inequality_check(2, 0.9, dim_limit=100)
    with pytest.raises(ContractViolation):
        induction_inequality_check(1, 1.0)


def test_ec_lower_bound_arithmetic():
    b = ec_lower_bound(0.0)
    assert b.beta == 0.5 and b.ec_lower_bound_bits == pytest.approx(1.0)
    near = ec_lower_bound(0.998)
    assert near.ec_lower_bound_bits == pytest.approx(-math.log2(0.999), rel=1e-14)
    # small-gap asymptote eps/ln2 with eps = 1e-3
    assert near.ec_lower_bound_bits == pytest.approx(1e-3 / math.log(2), rel=1e-3)


def test_ec_lower_bound_invalid():
    with pytest.raises(InvalidEstimateError):
        ec_lower_bound(1.0)
    with pytest.raises(ContractViolation):
        ec_lower_bound(-0.1)


def test_ec_lower_bound_rounding_edge():
    with pytest.raises(InvalidEstimateError):
        ec_lower_bound(np.nextafter(1.0, 0.0))


@given(st.floats(min_value=0.0, max_value=1.0 - 1e-15))
def test_beta_strictly_between(alpha):
    b = ec_lower_bound(alpha)
    assert alpha < b.beta < 1.0
    assert b.beta == pytest.approx((1 + alpha) / 2, abs=1e-15)
    assert b.ec_lower_bound_bits == pytest.approx(-math.log2(b.beta), abs=1e-12)
    assert b.ec_lower_bound_bits > 0


@given(st.lists(st.floats(min_value=1e-6, max_value=1 - 1e-6), min_size=2, max_size=20, unique=True))
def test_bound_strictly_decreasing(alphas):
    alphas = sorted(alphas)
    bounds = [ec_lower_bound(a).ec_lower_bound_bits for a in alphas]
    # adjacent doubles can share a rounded beta, so strictness needs a real gap
    for (a, x), (b, y) in zip(zip(alphas, bounds), zip(alphas[1:], bounds[1:])):
        assert x >= y
        if b - a > 1e-12:
            assert x > y


def test_pipeline_fast_config():
    rep = run_theorem1_pipeline(FAST)
    assert rep.certificate_ok and rep.induction_ok and rep.oracle_ok
    assert rep.ec_lower_bound_bits > 0
    assert rep.beta == pytest.approx((1 + rep.alpha1_hat) / 2, abs=1e-15)
    assert rep.label == "numerical lower-bound estimate"
    assert rep.induction_checks[1] == {"n": 2, "status": "skipped: disabled"}
    assert rep.all_ok


def test_pipeline_deterministic_single_restart():
    cfg = ToleranceConfig(restarts_n1=1, include_n2=False, seed=3)
    assert run_theorem1_pipeline(cfg).to_dict() == run_theorem1_pipeline(cfg).to_dict()


def test_pipeline_separable_support_is_invalid():
    v = np.zeros(9)
    v[0] = 1
    prod = HermitianOperator(np.outer(v, v), QUTRITS)
    with pytest.raises(InvalidEstimateError):
        run_theorem1_pipeline(FAST, projector=prod)


def test_pipeline_custom_projector_needs_certificate(pb):
    rep = run_theorem1_pipeline(FAST, projector=pb)
    assert not rep.certificate_ok and "certificate_error" in rep.diagnostics
    assert not rep.all_ok
    rep = run_theorem1_pipeline(FAST, projector=pb, certificate=complement_certificate())
    assert rep.certificate_ok


def test_pipeline_small_dim_limit_skips_n2():
    rep = run_theorem1_pipeline(FAST.replace(include_n2=True, dim_limit=81, restarts_n2=20))
    assert rep.induction_checks[1]["status"] == "skipped: size limit"
    assert rep.multicopy_checks[1].status == "pass"
    assert rep.all_ok
