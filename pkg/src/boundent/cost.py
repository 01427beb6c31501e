"""Entanglement-cost lower bound for states supported on ``P_b``.

If every product vector has ``<e,f|P^{⊗N}|e,f> <= a^N`` then each pure
state in the range of ``P^{⊗N}`` has Schmidt weights ``<= a^N`` and hence
entanglement entropy ``>= -N log2 a``. With ``a1`` the single-copy product
overlap maximum and ``beta = (1 + a1) / 2``, an induction over ``N`` gives
the multi-copy bound with ``a = beta``, so the cost is at least
``-log2 beta`` ebits per copy.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any, Sequence

import numpy as np

from .config import DEFAULT_CONFIG, ToleranceConfig
from .errors import ContractViolation, InvalidEstimateError, SizeLimitError
from .linalg import hermitian_eig, kron_power
from .seesaw import SeesawOutcome, grid_oracle_search, multicopy_overlap, seesaw_maximize
from .tensor import HermitianOperator
from .tiles import SeparabilityCertificate, complement_certificate, tiles_projector

log = logging.getLogger(__name__)

ENTROPY_SLACK = 1e-9
STABILITY_TOL = 1e-7
ORACLE_TOL = 1e-3
IDENTITY_TOL = 1e-9
UPPER_SLACK = 1e-6
LOWER_SLACK = 1e-9
BOUND_LABEL = "numerical lower-bound estimate"


def shannon_entropy_bits(p: Sequence[float]) -> float:
    p = np.asarray(p, dtype=float)
    nz = p[p > 0]
    return float(-np.sum(nz * np.log2(nz)))


def entropy_floor_check(schmidt_sq: Sequence[float], alpha: float) -> bool:
    """Check that ``max p <= alpha`` implies ``H(p) >= -log2 alpha``.

    Returns True when the premise fails (nothing to check) or when the
    entropy clears the floor up to ``ENTROPY_SLACK``.
    """
    p = np.asarray(schmidt_sq, dtype=float)
    if p.ndim != 1 or p.size == 0 or np.any(p < 0):
        raise ContractViolation("Schmidt weights must be a nonempty list of nonnegative reals")
    if abs(p.sum() - 1.0) > 1e-10:
        raise ContractViolation(f"Schmidt weights sum to {p.sum():.12f}, not 1")
    if not 0.0 < alpha <= 1.0:
        raise ContractViolation("alpha must lie in (0, 1]")
    if p.max() > alpha:
        return True
    return shannon_entropy_bits(p) >= -np.log2(alpha) - ENTROPY_SLACK


@dataclass(frozen=True)
class InductionCheck:
    copies: int
    beta: float
    min_eig: float
    identity_residual: float
    passed: bool

    def to_dict(self) -> dict:
        return {
            "n": self.copies,
            "beta": self.beta,
            "min_eig": self.min_eig,
            "identity_residual": self.identity_residual,
            "pass": self.passed,
        }


def induction_operators(
    n: int, beta: float, projector: HermitianOperator | None = None, dim_limit: int = 6561
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """``(lhs, rhs, expected_difference)`` of the induction-step operator inequality.

    lhs = (1 + P) ⊗ (1 - P^{⊗n} / beta^n)
    rhs = 1 + P ⊗ 1 - 2 P^{⊗(n+1)} / beta^n
    expected rhs - lhs = (1 - P) ⊗ P^{⊗n} / beta^n
    """
    p = (projector or tiles_projector()).matrix
    d = p.shape[0]
    if d ** (n + 1) > dim_limit:
        raise SizeLimitError(d ** (n + 1), dim_limit, f"induction operator for n={n}")
    pn = kron_power(p, n, dim_limit=dim_limit)
    eye_1 = np.eye(d)
    eye_n = np.eye(pn.shape[0])
    scale = beta ** (-n)
    lhs = np.kron(eye_1 + p, eye_n - scale * pn)
    rhs = np.eye(d * pn.shape[0]) + np.kron(p, eye_n) - 2.0 * scale * np.kron(p, pn)
    expected = scale * np.kron(eye_1 - p, pn)
    return lhs, rhs, expected


def induction_inequality_check(
    n: int,
    beta: float,
    projector: HermitianOperator | None = None,
    *,
    psd_tol: float = 1e-10,
    dim_limit: int = 6561,
    eig_method: str | None = None,
) -> InductionCheck:
    """Verify ``rhs - lhs >= 0`` and the closed form of ``rhs - lhs`` for ``n`` = 1 or 2."""
    if n not in (1, 2):
        raise SizeLimitError(9 ** (n + 1), dim_limit, f"induction check (n must be 1 or 2, got {n})")
    if not 0.0 < beta < 1.0:
        raise ContractViolation("beta must lie in (0, 1)")
    lhs, rhs, expected = induction_operators(n, beta, projector, dim_limit)
    diff = rhs - lhs
    residual = float(np.linalg.norm(diff - expected))
    min_eig = float(hermitian_eig(diff, method=eig_method).values[-1])
    passed = min_eig >= -psd_tol and residual <= IDENTITY_TOL
    return InductionCheck(n, beta, min_eig, residual, passed)


@dataclass(frozen=True)
class CostBound:
    alpha1_hat: float
    beta: float
    ec_lower_bound_bits: float


def ec_lower_bound(alpha1_hat: float) -> CostBound:
    """``beta = (1 + a1)/2`` and the per-copy cost floor ``-log2 beta``."""
    if alpha1_hat >= 1.0:
        raise InvalidEstimateError(
            f"product-overlap estimate {alpha1_hat!r} >= 1 makes the cost bound vacuous"
        )
    if alpha1_hat < 0.0:
        raise ContractViolation("overlap estimate must be nonnegative")
    beta = (1.0 + alpha1_hat) / 2.0
    if beta >= 1.0:
        # alpha within an ulp of 1: beta rounds up and the bound collapses to zero
        raise InvalidEstimateError(f"beta rounds to 1 for estimate {alpha1_hat!r}")
    return CostBound(alpha1_hat, beta, float(-np.log2(beta)))


@dataclass(frozen=True)
class MulticopyCheck:
    copies: int
    alpha_n_hat: float | None
    beta_n: float
    lower: float
    status: str

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_dict(self) -> dict:
        return {
            "n": self.copies,
            "alpha_n_hat": self.alpha_n_hat,
            "beta_n": self.beta_n,
            "alpha1_hat_pow_n": self.lower,
            "status": self.status,
        }


@dataclass
class CostBoundReport:
    alpha1_hat: float
    beta: float
    ec_lower_bound_bits: float
    certificate_ok: bool
    induction_ok: bool
    multicopy_checks: list[MulticopyCheck]
    label: str = BOUND_LABEL
    grid_oracle_value: float | None = None
    oracle_ok: bool = True
    alpha1_stable: bool = True
    induction_checks: list[Any] = field(default_factory=list)
    diagnostics: dict[str, Any] = field(default_factory=dict)

    @property
    def all_ok(self) -> bool:
        return (
            self.certificate_ok
            and self.induction_ok
            and self.oracle_ok
            and self.alpha1_stable
            and self.ec_lower_bound_bits > 0
            and all(c.status != "fail" for c in self.multicopy_checks)
        )

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "alpha1_hat": self.alpha1_hat,
            "beta": self.beta,
            "ec_lower_bound_bits": self.ec_lower_bound_bits,
            "certificate_ok": self.certificate_ok,
            "induction_ok": self.induction_ok,
            "oracle_ok": self.oracle_ok,
            "alpha1_stable": self.alpha1_stable,
            "grid_oracle_value": self.grid_oracle_value,
            "induction_checks": [
                c.to_dict() if isinstance(c, InductionCheck) else c for c in self.induction_checks
            ],
            "multicopy_checks": [c.to_dict() for c in self.multicopy_checks],
            "diagnostics": self.diagnostics,
            "all_ok": self.all_ok,
        }


def estimate_alpha1(
    config: ToleranceConfig = DEFAULT_CONFIG, projector: HermitianOperator | None = None
) -> SeesawOutcome:
    p = projector or tiles_projector()
    return seesaw_maximize(
        p,
        restarts=config.restarts_n1,
        tol=config.seesaw_tol,
        max_iter=config.max_iter,
        seed=config.seed,
        eig_method=config.eig_method,
        psd_tol=config.psd_tol,
    )


def _skipped(n: int, reason: str) -> dict:
    return {"n": n, "status": f"skipped: {reason}"}


def run_theorem1_pipeline(
    config: ToleranceConfig = DEFAULT_CONFIG,
    projector: HermitianOperator | None = None,
    certificate: SeparabilityCertificate | None = None,
) -> CostBoundReport:
    """Certificate check, overlap estimate, oracle cross-check, induction and multi-copy checks.

    ``projector`` defaults to ``P_b`` with its built-in certificate. For any
    other projector the caller supplies a certificate for ``1 + P``, or the
    report carries ``certificate_ok = False``.

    Raises :class:`InvalidEstimateError` when the overlap estimate reaches 1
    (to within ``psd_tol``): no positive bound exists for that support.
    """
    diagnostics: dict[str, Any] = {}
    p = projector or tiles_projector()

    # separability of 1 + P
    if certificate is None and projector is None:
        try:
            certificate = complement_certificate(config.cert_tol)
        except Exception as exc:  # diagnostics instead of a silent pass
            diagnostics["certificate_error"] = str(exc)
    if certificate is not None:
        residual = float(
            np.linalg.norm(certificate.reconstruct() - np.eye(p.dim) - p.matrix)
        )
        diagnostics["certificate_residual"] = residual
        diagnostics["certificate_terms"] = len(certificate.terms)
        certificate_ok = residual <= config.cert_tol
    else:
        diagnostics.setdefault("certificate_error", "no separability certificate for this projector")
        certificate_ok = False

    outcome = estimate_alpha1(config, p)
    alpha1 = outcome.best_value
    if alpha1 > 1.0 - config.psd_tol:
        raise InvalidEstimateError(
            f"product-overlap estimate {alpha1!r} is 1 within tolerance; the support holds a product vector"
        )
    bound = ec_lower_bound(alpha1)
    top = outcome.top_fraction(0.1)
    spread = float(top[0] - top[-1])
    diagnostics["alpha1_top_decile_spread"] = spread
    diagnostics["alpha1_converged_restarts"] = int(sum(outcome.converged))
    diagnostics["alpha1_best_restart"] = outcome.best_restart
    alpha1_stable = spread <= STABILITY_TOL and all(outcome.converged)

    grid_value = None
    oracle_ok = True
    if p.space.dims == (3, 3):
        grid = grid_oracle_search(
            p, config.grid_resolution, config.seesaw_tol, config.max_iter, config.eig_method
        )
        grid_value = grid.polished_value
        diagnostics["grid_raw_value"] = grid.grid_value
        oracle_ok = abs(grid_value - alpha1) <= ORACLE_TOL

    induction_checks: list[Any] = []
    for n in (1, 2):
        if n == 2 and not config.include_n2:
            induction_checks.append(_skipped(n, "disabled"))
            continue
        if p.dim ** (n + 1) > config.dim_limit:
            induction_checks.append(_skipped(n, "size limit"))
            continue
        induction_checks.append(
            induction_inequality_check(
                n,
                bound.beta,
                p,
                psd_tol=config.psd_tol,
                dim_limit=config.dim_limit,
                eig_method=config.eig_method,
            )
        )
    induction_ok = all(c.passed for c in induction_checks if isinstance(c, InductionCheck))

    multicopy = [MulticopyCheck(1, alpha1, bound.beta, alpha1, "pass" if alpha1 < bound.beta else "fail")]
    beta2 = bound.beta**2
    if not config.include_n2:
        multicopy.append(MulticopyCheck(2, None, beta2, alpha1**2, "skipped: disabled"))
    elif p.dim**2 > config.dim_limit:
        multicopy.append(MulticopyCheck(2, None, beta2, alpha1**2, "skipped: size limit"))
    else:
        out2 = multicopy_overlap(
            2,
            restarts=config.restarts_n2,
            tol=config.seesaw_tol,
            max_iter=config.max_iter,
            seed=config.seed,
            dim_limit=config.dim_limit,
            eig_method=config.eig_method,
            projector=p,
        )
        a2 = out2.best_value
        ok = alpha1**2 - LOWER_SLACK <= a2 <= beta2 + UPPER_SLACK
        multicopy.append(MulticopyCheck(2, a2, beta2, alpha1**2, "pass" if ok else "fail"))

    report = CostBoundReport(
        alpha1_hat=alpha1,
        beta=bound.beta,
        ec_lower_bound_bits=bound.ec_lower_bound_bits,
        certificate_ok=certificate_ok,
        induction_ok=induction_ok,
        multicopy_checks=multicopy,
        grid_oracle_value=grid_value,
        oracle_ok=oracle_ok,
        alpha1_stable=alpha1_stable,
        induction_checks=induction_checks,
        diagnostics=diagnostics,
    )
    log.info("cost bound: alpha1=%.12f beta=%.12f bound=%.6e bits", alpha1, bound.beta, bound.ec_lower_bound_bits)
    return report
