"""Logarithmic negativity, PPT detection and the singlet-ceiling checks."""

from __future__ import annotations

from dataclasses import dataclass
from math import prod

import numpy as np

from .errors import ContractViolation, SizeLimitError
from .linalg import DEFAULT_DIM_LIMIT, hermitian_eig
from .tensor import HermitianOperator, TensorSpace, partial_transpose, tensor, to_grouped
from .tiles import rho_b, singlet

PPT_TOL = 1e-10
ADDITIVITY_TOL = 1e-8
CEILING_TOL = 1e-8


@dataclass(frozen=True)
class NegativityReport:
    value_bits: float
    min_pt_eigenvalue: float
    is_ppt: bool
    space_summary: str

    def to_dict(self) -> dict:
        return {
            "value_bits": self.value_bits,
            "min_pt_eigenvalue": self.min_pt_eigenvalue,
            "is_ppt": self.is_ppt,
            "space": self.space_summary,
        }


def check_state(op: HermitianOperator, tol: float = 1e-10, eig_method: str | None = None) -> None:
    """Raise unless ``op`` is a density operator (PSD, unit trace) within ``tol``."""
    if abs(op.trace() - 1.0) > tol:
        raise ContractViolation(f"trace {op.trace():.12f} is not 1")
    lam_min = hermitian_eig(op.matrix, method=eig_method).values[-1]
    if lam_min < -tol:
        raise ContractViolation(f"state is not PSD (min eigenvalue {lam_min:.3e})")


def log_negativity(
    op: HermitianOperator,
    psd_tol: float = PPT_TOL,
    eig_method: str | None = None,
    validate: bool = True,
) -> NegativityReport:
    """``log2 ||op^{T_B}||_1`` together with the smallest eigenvalue of ``op^{T_B}``."""
    if validate:
        check_state(op, psd_tol, eig_method)
    values = hermitian_eig(partial_transpose(op).matrix, method=eig_method).values
    norm = float(np.sum(np.abs(values)))
    lam_min = float(values[-1])
    return NegativityReport(
        value_bits=float(np.log2(norm)),
        min_pt_eigenvalue=lam_min,
        is_ppt=lam_min >= -psd_tol,
        space_summary=op.space.describe(),
    )


def is_ppt(op: HermitianOperator, psd_tol: float = PPT_TOL, eig_method: str | None = None) -> bool:
    lam_min = hermitian_eig(partial_transpose(op).matrix, method=eig_method).values[-1]
    return bool(lam_min >= -psd_tol)


@dataclass(frozen=True)
class AdditivityResult:
    lhs: float
    rhs: float
    passed: bool
    parts: tuple[float, float]

    def to_dict(self) -> dict:
        return {"lhs": self.lhs, "rhs": self.rhs, "parts": list(self.parts), "pass": self.passed}


def additivity_check(
    op1: HermitianOperator,
    op2: HermitianOperator,
    dim_limit: int = DEFAULT_DIM_LIMIT,
    eig_method: str | None = None,
    tol: float = ADDITIVITY_TOL,
) -> AdditivityResult:
    """Compare ``E_N(op1 ⊗ op2)`` against ``E_N(op1) + E_N(op2)``."""
    joint = to_grouped(tensor(op1, op2, dim_limit=dim_limit))
    lhs = log_negativity(joint, eig_method=eig_method).value_bits
    e1 = log_negativity(op1, eig_method=eig_method).value_bits
    e2 = log_negativity(op2, eig_method=eig_method).value_bits
    rhs = e1 + e2
    return AdditivityResult(lhs, rhs, abs(lhs - rhs) <= tol, (e1, e2))


@dataclass(frozen=True)
class CeilingResult:
    copies: int
    singlets: int
    e_neg: float
    ceiling: float
    passed: bool
    report: NegativityReport

    def to_dict(self) -> dict:
        return {
            "copies": self.copies,
            "singlets": self.singlets,
            "e_neg": self.e_neg,
            "ceiling": self.ceiling,
            "pass": self.passed,
            "negativity": self.report.to_dict(),
        }


def ceiling_dimension(copies: int, singlets: int) -> int:
    return 9**copies * 4**singlets


def theorem2_ceiling(
    copies: int,
    singlets: int,
    dim_limit: int = DEFAULT_DIM_LIMIT,
    eig_method: str | None = None,
    tol: float = CEILING_TOL,
) -> CeilingResult:
    """Negativity of ``rho_b^{⊗copies} ⊗ Psi^{⊗singlets}``, which should equal ``singlets``.

    The negativity bounds the number of singlets distillable from that
    state, so a PPT state does not add to what the loaned singlets supply.
    """
    if copies < 0 or singlets < 0 or copies + singlets == 0:
        raise ContractViolation("need copies, singlets >= 0 and at least one factor")
    dim = ceiling_dimension(copies, singlets)
    if dim > dim_limit:
        raise SizeLimitError(dim, dim_limit, f"rho_b^{copies} ⊗ singlet^{singlets}")
    factors = [rho_b()] * copies + [singlet()] * singlets
    joint = to_grouped(tensor(*factors, dim_limit=dim_limit))
    # factors are unit-trace PSD by construction; the product needs no re-validation
    rep = log_negativity(joint, eig_method=eig_method, validate=False)
    return CeilingResult(
        copies, singlets, rep.value_bits, float(singlets), abs(rep.value_bits - singlets) <= tol, rep
    )


def maximally_mixed(d_a: int, d_b: int) -> HermitianOperator:
    n = d_a * d_b
    return HermitianOperator(np.eye(n) / n, TensorSpace.bipartite(d_a, d_b))


def local_unitary_conjugate(op: HermitianOperator, unitaries: list[np.ndarray]) -> HermitianOperator:
    """Conjugate by a tensor product of per-factor unitaries (same factor order as ``op``)."""
    if len(unitaries) != len(op.space.factors):
        raise ContractViolation("need one unitary per tensor factor")
    if prod(u.shape[0] for u in unitaries) != op.dim:
        raise ContractViolation("unitary dimensions do not match the space")
    u = unitaries[0]
    for nxt in unitaries[1:]:
        u = np.kron(u, nxt)
    return HermitianOperator(u @ op.matrix @ u.conj().T, op.space)
