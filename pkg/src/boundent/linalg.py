"""Dense complex linear algebra: Kronecker products, Hermitian eigensolver, trace norm.

Matrices are plain ``numpy`` arrays of dtype ``complex128`` (row-major).
The eigensolver is a cyclic complex Jacobi method compiled with numba;
``method="lapack"`` swaps in :func:`numpy.linalg.eigh` for callers that
want speed over bit-stability.
"""

from __future__ import annotations

import math
from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass, replace
from functools import reduce
from typing import Iterator

import numba
import numpy as np

from .errors import ContractViolation, ConvergenceError, SizeLimitError

DEFAULT_DIM_LIMIT = 6561
EIG_TOL = 1e-14
HERM_TOL = 1e-10
MAX_SWEEPS = 100


@dataclass(frozen=True)
class SolverSettings:
    tol: float = EIG_TOL
    max_sweeps: int = MAX_SWEEPS
    herm_tol: float = HERM_TOL
    method: str = "jacobi"


_settings: ContextVar[SolverSettings] = ContextVar("solver_settings", default=SolverSettings())


@contextmanager
def solver_settings(**changes) -> Iterator[SolverSettings]:
    """Temporarily change the eigensolver defaults for the current context."""
    new = replace(_settings.get(), **changes)
    token = _settings.set(new)
    try:
        yield new
    finally:
        _settings.reset(token)


def as_matrix(a) -> np.ndarray:
    """Coerce to a finite 2-D complex128 array."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2:
        raise ContractViolation(f"expected a 2-D matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ContractViolation("matrix contains NaN or Inf entries")
    return m


def as_vector(v, normalized: bool = False, tol: float = 1e-12) -> np.ndarray:
    vec = np.asarray(v, dtype=np.complex128).reshape(-1)
    if not np.all(np.isfinite(vec)):
        raise ContractViolation("vector contains NaN or Inf entries")
    if normalized and abs(np.vdot(vec, vec).real - 1.0) > tol:
        raise ContractViolation("vector is not normalized")
    return vec


def kron(a, b, dim_limit: int = DEFAULT_DIM_LIMIT) -> np.ndarray:
    """Kronecker product ``a ⊗ b``; entry ``[i*rb + k, j*cb + l] = a[i, j] * b[k, l]``."""
    a = as_matrix(a)
    b = as_matrix(b)
    rows = a.shape[0] * b.shape[0]
    cols = a.shape[1] * b.shape[1]
    if max(rows, cols) > dim_limit:
        raise SizeLimitError(max(rows, cols), dim_limit, "Kronecker product")
    return np.kron(a, b)


def kron_all(*mats, dim_limit: int = DEFAULT_DIM_LIMIT) -> np.ndarray:
    return reduce(lambda x, y: kron(x, y, dim_limit=dim_limit), mats)


def kron_power(a, n: int, dim_limit: int = DEFAULT_DIM_LIMIT) -> np.ndarray:
    if n < 1:
        raise ContractViolation("tensor power needs n >= 1")
    return kron_all(*([a] * n), dim_limit=dim_limit)


def is_hermitian(a: np.ndarray, tol: float = HERM_TOL) -> bool:
    scale = np.linalg.norm(a)
    return bool(np.linalg.norm(a - a.conj().T) <= tol * max(scale, 1e-300))


@dataclass(frozen=True)
class EigenDecomposition:
    """Eigenvalues sorted descending with eigenvectors as matching columns."""

    values: np.ndarray
    vectors: np.ndarray
    sweeps: int = 0
    off_norm: float = 0.0

    def reconstruct(self) -> np.ndarray:
        return (self.vectors * self.values) @ self.vectors.conj().T

    @property
    def leading(self) -> tuple[float, np.ndarray]:
        return float(self.values[0]), self.vectors[:, 0]


@numba.njit(cache=True)
def _off_norm(a):
    n = a.shape[0]
    s = 0.0
    for p in range(n):
        for q in range(p + 1, n):
            s += a[p, q].real ** 2 + a[p, q].imag ** 2
    return math.sqrt(2.0 * s)


@numba.njit(cache=True)
def _jacobi_kernel(a, tol_abs, max_sweeps):
    # a is overwritten; returns (V^H, sweeps_used, final off-diagonal norm, converged)
    n = a.shape[0]
    vt = np.eye(n, dtype=np.complex128)
    for sweep in range(max_sweeps + 1):
        off = _off_norm(a)
        if off <= tol_abs:
            return vt, sweep, off, True
        if sweep == max_sweeps:
            return vt, sweep, off, False
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag == 0.0:
                    continue
                app = a[p, p].real
                aqq = a[q, q].real
                g = 100.0 * mag
                if sweep > 3 and abs(app) + g == abs(app) and abs(aqq) + g == abs(aqq):
                    # below rounding of both diagonal entries
                    a[p, q] = 0.0
                    a[q, p] = 0.0
                    continue
                phase = apq / mag
                h = aqq - app
                if abs(h) + g == abs(h):
                    t = mag / h
                else:
                    theta = 0.5 * h / mag
                    t = 1.0 / (abs(theta) + math.sqrt(theta * theta + 1.0))
                    if theta < 0.0:
                        t = -t
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                sp = s * phase
                cp = c * phase
                # rows p, q of V^H A; columns follow by Hermitian symmetry
                for k in range(n):
                    x = a[p, k]
                    y = a[q, k]
                    a[p, k] = c * x - sp * y
                    a[q, k] = s * x + cp * y
                for k in range(n):
                    a[k, p] = a[p, k].conjugate()
                    a[k, q] = a[q, k].conjugate()
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = app - t * mag
                a[q, q] = aqq + t * mag
                # vt holds V^H so updates run along contiguous rows
                for k in range(n):
                    x = vt[p, k]
                    y = vt[q, k]
                    vt[p, k] = c * x - sp * y
                    vt[q, k] = s * x + cp * y
    return vt, max_sweeps, _off_norm(a), False


def hermitian_eig(
    a,
    tol: float | None = None,
    max_sweeps: int | None = None,
    herm_tol: float | None = None,
    method: str | None = None,
) -> EigenDecomposition:
    """Diagonalize a Hermitian matrix.

    Cyclic Jacobi sweeps run until the off-diagonal Frobenius mass drops to
    ``tol * ||a||_F``. Raises :class:`ConvergenceError` (with the residual)
    if ``max_sweeps`` is exhausted first. Arguments left as ``None`` come
    from the active :func:`solver_settings`.
    """
    cfg = _settings.get()
    tol = cfg.tol if tol is None else tol
    max_sweeps = cfg.max_sweeps if max_sweeps is None else max_sweeps
    herm_tol = cfg.herm_tol if herm_tol is None else herm_tol
    method = cfg.method if method is None else method
    m = as_matrix(a)
    if m.shape[0] != m.shape[1]:
        raise ContractViolation(f"matrix must be square, got {m.shape}")
    if not is_hermitian(m, herm_tol):
        raise ContractViolation("matrix is not Hermitian within tolerance")
    m = 0.5 * (m + m.conj().T)

    if method == "lapack":
        w, vecs = np.linalg.eigh(m)
        order = np.argsort(-w, kind="stable")
        return EigenDecomposition(w[order], vecs[:, order])
    if method != "jacobi":
        raise ContractViolation(f"unknown eigensolver method {method!r}")

    work = np.array(m, dtype=np.complex128, order="C")
    tol_abs = tol * np.linalg.norm(m)
    vt, sweeps, off, ok = _jacobi_kernel(work, tol_abs, max_sweeps)
    vecs = vt.conj().T
    if not ok:
        raise ConvergenceError(f"Jacobi did not converge in {max_sweeps} sweeps", off)
    w = work.diagonal().real.copy()
    order = np.argsort(-w, kind="stable")
    return EigenDecomposition(w[order], vecs[:, order], sweeps, off)


def eigvalsh(a, **kwargs) -> np.ndarray:
    """Eigenvalues only, descending."""
    return hermitian_eig(a, **kwargs).values


def trace_norm_hermitian(a, **kwargs) -> float:
    """Sum of absolute eigenvalues of a Hermitian matrix."""
    return float(np.sum(np.abs(eigvalsh(a, **kwargs))))
