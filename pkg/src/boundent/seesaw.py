"""Maximize ``<e,f|M|e,f>`` over product states.

The see-saw fixes one local vector and replaces the other by the leading
eigenvector of the contracted operator, alternating until the objective
stops improving. Every iterate is a feasible product state, so the best
value found is a lower bound on the true supremum.

:func:`grid_oracle` is an independent check: it scans a deterministic grid
of party-A states, maximizes exactly over party B for each (LAPACK batch
eigenvalues, not the Jacobi path), then polishes the best grid point with
a single see-saw run.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from .errors import ContractViolation, SizeLimitError
from .linalg import DEFAULT_DIM_LIMIT, hermitian_eig
from .tensor import HermitianOperator, tensor_power, to_grouped
from .tiles import ProductState, tiles_projector

log = logging.getLogger(__name__)

ZERO_CONTRACTION = 1e-14
MAX_RESAMPLES = 100


def make_rng(seed: int | np.random.SeedSequence) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def sample_product_state(dims: tuple[int, int], rng: np.random.Generator) -> ProductState:
    """Haar-random local states: complex Gaussian entries, then normalized."""
    d_a, d_b = dims
    if d_a < 2 or d_b < 2:
        raise ContractViolation("local dimensions must be >= 2")

    def local(d: int) -> np.ndarray:
        v = rng.standard_normal(d) + 1j * rng.standard_normal(d)
        return v / np.linalg.norm(v)

    a = local(d_a)
    return ProductState(a, local(d_b))


@dataclass
class RestartTrace:
    values: list[float] = field(default_factory=list)
    iterations: int = 0
    converged: bool = False
    degenerate: bool = False
    resamples: int = 0


@dataclass(frozen=True)
class SeesawOutcome:
    best_value: float
    best_state: ProductState
    best_restart: int
    restarts: int
    final_values: tuple[float, ...]
    iterations_per_restart: tuple[int, ...]
    converged: tuple[bool, ...]
    degenerate: tuple[bool, ...]
    traces: tuple[tuple[float, ...], ...] = ()

    def top_fraction(self, fraction: float = 0.1) -> np.ndarray:
        """Final values of the best ``fraction`` of restarts, descending."""
        vals = np.sort(np.asarray(self.final_values))[::-1]
        k = max(1, int(np.ceil(fraction * len(vals))))
        return vals[:k]

    def to_dict(self, include_traces: bool = False) -> dict:
        out = {
            "best_value": self.best_value,
            "best_restart": self.best_restart,
            "best_state": {"a_local": self.best_state.a_local, "b_local": self.best_state.b_local},
            "restarts": self.restarts,
            "converged_restarts": int(sum(self.converged)),
            "degenerate_restarts": int(sum(self.degenerate)),
            "iterations_per_restart": list(self.iterations_per_restart),
            "top_decile_spread": float(np.ptp(self.top_fraction(0.1))),
        }
        if include_traces:
            out["traces"] = [list(t) for t in self.traces]
        return out


class _Bilinear:
    """Pre-reshaped operator for repeated one-sided contractions."""

    def __init__(self, op: HermitianOperator, eig_method: str):
        g = to_grouped(op)
        self.d_a = g.space.d_a
        self.d_b = g.space.d_b
        self.t = g.matrix.reshape(self.d_a, self.d_b, self.d_a, self.d_b)
        self.matrix = g.matrix
        self.eig_method = eig_method

    def value(self, e: np.ndarray, f: np.ndarray) -> float:
        v = np.kron(e, f)
        return float(np.vdot(v, self.matrix @ v).real)

    def _leading(self, m: np.ndarray) -> tuple[float, np.ndarray, bool]:
        m = 0.5 * (m + m.conj().T)
        dec = hermitian_eig(m, method=self.eig_method)
        vals = dec.values
        scale = max(abs(vals[0]), 1.0)
        degenerate = len(vals) > 1 and vals[0] - vals[1] <= 1e-12 * scale
        vec = dec.vectors[:, 0]
        return float(vals[0]), vec / np.linalg.norm(vec), bool(degenerate)

    def best_b(self, e: np.ndarray) -> tuple[float, np.ndarray, bool]:
        return self._leading(np.einsum("a,abcd,c->bd", e.conj(), self.t, e))

    def best_a(self, f: np.ndarray) -> tuple[float, np.ndarray, bool]:
        return self._leading(np.einsum("b,abcd,d->ac", f.conj(), self.t, f))


def _run_restart(
    bil: _Bilinear,
    e: np.ndarray,
    f: np.ndarray,
    tol: float,
    max_iter: int,
    rng: np.random.Generator | None,
) -> tuple[np.ndarray, np.ndarray, RestartTrace]:
    trace = RestartTrace()
    current = bil.value(e, f)
    trace.values.append(current)
    it = 0
    while it < max_iter:
        it += 1
        lam_b, f_new, deg_b = bil.best_b(e)
        if lam_b <= ZERO_CONTRACTION:
            # e sees nothing of M; start this trajectory over
            if rng is None or trace.resamples >= MAX_RESAMPLES:
                break
            trace.resamples += 1
            fresh = sample_product_state((bil.d_a, bil.d_b), rng)
            e, f = fresh.a_local, fresh.b_local
            current = bil.value(e, f)
            trace.values.append(current)
            continue
        f = f_new
        trace.values.append(lam_b)
        lam_a, e, deg_a = bil.best_a(f)
        trace.values.append(lam_a)
        trace.degenerate |= deg_b or deg_a
        gain = lam_a - current
        current = lam_a
        if gain < tol:
            trace.converged = True
            break
    trace.iterations = it
    return e, f, trace


def check_psd(op: HermitianOperator, psd_tol: float = 1e-10, eig_method: str | None = None) -> float:
    lam_min = float(hermitian_eig(op.matrix, method=eig_method).values[-1])
    if lam_min < -psd_tol:
        raise ContractViolation(f"operator is not PSD (min eigenvalue {lam_min:.3e})")
    return lam_min


def seesaw_maximize(
    op: HermitianOperator,
    restarts: int = 200,
    tol: float = 1e-10,
    max_iter: int = 500,
    seed: int = 0,
    *,
    eig_method: str | None = None,
    psd_tol: float = 1e-10,
    keep_traces: bool = False,
) -> SeesawOutcome:
    """Multi-restart see-saw estimate of ``sup <e,f|op|e,f>``.

    Restart ``i`` draws its starting point from the ``i``-th child of
    ``SeedSequence(seed)``, so each restart is reproducible on its own and
    the merged result does not depend on execution order. Ties in the
    final value go to the lowest restart index.
    """
    if restarts < 1:
        raise ContractViolation("restarts must be >= 1")
    if tol <= 0:
        raise ContractViolation("tol must be positive")
    grouped = to_grouped(op)
    check_psd(grouped, psd_tol, eig_method)
    bil = _Bilinear(grouped, eig_method)
    children = np.random.SeedSequence(seed).spawn(restarts)

    states, traces = [], []
    for child in children:
        rng = make_rng(child)
        start = sample_product_state((bil.d_a, bil.d_b), rng)
        e, f, trace = _run_restart(bil, start.a_local, start.b_local, tol, max_iter, rng)
        states.append(ProductState(e, f))
        traces.append(trace)

    finals = [s.overlap(grouped) for s in states]
    best = int(np.argmax(finals))
    log.debug("seesaw: best %.15f at restart %d of %d", finals[best], best, restarts)
    return SeesawOutcome(
        best_value=float(finals[best]),
        best_state=states[best],
        best_restart=best,
        restarts=restarts,
        final_values=tuple(float(v) for v in finals),
        iterations_per_restart=tuple(t.iterations for t in traces),
        converged=tuple(t.converged for t in traces),
        degenerate=tuple(t.degenerate for t in traces),
        traces=tuple(tuple(t.values) for t in traces) if keep_traces else (),
    )


def _local_grid(resolution: int) -> np.ndarray:
    """Unit vectors in C^3: ``(cos t1, sin t1 cos t2 e^{i p1}, sin t1 sin t2 e^{i p2})``."""
    theta = np.linspace(0.0, np.pi / 2, resolution)
    phi = np.linspace(0.0, 2 * np.pi, resolution, endpoint=False)
    t1, t2, p1, p2 = np.meshgrid(theta, theta, phi, phi, indexing="ij")
    vecs = np.stack(
        [
            np.cos(t1).astype(np.complex128),
            np.sin(t1) * np.cos(t2) * np.exp(1j * p1),
            np.sin(t1) * np.sin(t2) * np.exp(1j * p2),
        ],
        axis=-1,
    )
    return vecs.reshape(-1, 3)


@dataclass(frozen=True)
class GridOracleResult:
    grid_value: float
    polished_value: float
    state: ProductState
    points: int


def grid_oracle_search(
    op: HermitianOperator,
    resolution: int = 16,
    tol: float = 1e-10,
    max_iter: int = 500,
    eig_method: str | None = None,
) -> GridOracleResult:
    if resolution < 8:
        raise ContractViolation("grid resolution must be >= 8")
    g = to_grouped(op)
    if len(g.space.factors) != 2 or g.space.dims != (3, 3):
        raise ContractViolation("grid oracle needs a single 3x3 bipartite operator")
    t = g.matrix.reshape(3, 3, 3, 3)
    grid = _local_grid(resolution)
    # exact maximization over f for every grid e
    blocks = np.einsum("na,abcd,nc->nbd", grid.conj(), t, grid)
    blocks = 0.5 * (blocks + blocks.conj().transpose(0, 2, 1))
    w, v = np.linalg.eigh(blocks)
    best = int(np.argmax(w[:, -1]))
    grid_value = float(w[best, -1])
    e0 = grid[best] / np.linalg.norm(grid[best])
    f0 = v[best, :, -1] / np.linalg.norm(v[best, :, -1])

    bil = _Bilinear(g, eig_method)
    e, f, _ = _run_restart(bil, e0, f0, tol, max_iter, rng=None)
    polished = ProductState(e, f)
    return GridOracleResult(grid_value, polished.overlap(g), polished, grid.shape[0])


def grid_oracle(op: HermitianOperator, resolution: int = 16, **kwargs) -> float:
    """Coarse grid maximum of ``<e,f|op|e,f>`` on 3x3, see-saw polished."""
    return grid_oracle_search(op, resolution, **kwargs).polished_value


def multicopy_overlap(
    n: int,
    restarts: int = 200,
    tol: float = 1e-10,
    max_iter: int = 500,
    seed: int = 0,
    *,
    dim_limit: int = DEFAULT_DIM_LIMIT,
    eig_method: str | None = None,
    projector: HermitianOperator | None = None,
) -> SeesawOutcome:
    """See-saw over product states of ``(C^3)^n | (C^3)^n`` for ``P_b^{⊗n}``."""
    if n not in (1, 2, 3):
        raise SizeLimitError(9**n, dim_limit, f"{n}-copy operator (n must be 1, 2 or 3)")
    p = projector if projector is not None else tiles_projector()
    dim = p.dim**n
    if dim > dim_limit:
        raise SizeLimitError(dim, dim_limit, f"{n}-copy operator")
    op = to_grouped(tensor_power(p, n, dim_limit=dim_limit))
    return seesaw_maximize(op, restarts, tol, max_iter, seed, eig_method=eig_method)
