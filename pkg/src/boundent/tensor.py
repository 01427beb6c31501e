"""Bipartite bookkeeping for operators on tensor-product spaces.

A :class:`TensorSpace` is an ordered list of ``(party, dim)`` factors.
Factor 0 is the slowest-varying (leftmost Kronecker) index. For a 2x3
space ``[("A", 2), ("B", 3)]`` the basis index of ``|i, j>`` is ``3*i + j``.

``N`` copies of a 3x3 state live on the interleaved space
``[A1, B1, A2, B2, ...]``; :func:`to_grouped` reorders that to
``[A1, ..., AN, B1, ..., BN]`` so the A|B cut is a single Kronecker split.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod
from typing import Sequence

import numpy as np

from .errors import ContractViolation, SizeLimitError
from .linalg import DEFAULT_DIM_LIMIT, HERM_TOL, as_matrix, as_vector, is_hermitian

PARTIES = ("A", "B")


@dataclass(frozen=True)
class TensorSpace:
    factors: tuple[tuple[str, int], ...]

    def __post_init__(self) -> None:
        factors = tuple((str(p), int(d)) for p, d in self.factors)
        object.__setattr__(self, "factors", factors)
        for party, dim in factors:
            if party not in PARTIES:
                raise ContractViolation(f"unknown party {party!r}")
            if dim < 1:
                raise ContractViolation("factor dimensions must be positive")
        parties = {p for p, _ in factors}
        if parties != set(PARTIES):
            raise ContractViolation("a space needs at least one A and one B factor")

    @classmethod
    def bipartite(cls, d_a: int, d_b: int) -> TensorSpace:
        return cls((("A", d_a), ("B", d_b)))

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(d for _, d in self.factors)

    @property
    def dim(self) -> int:
        return prod(self.dims)

    def party_dim(self, party: str) -> int:
        return prod(d for p, d in self.factors if p == party)

    @property
    def d_a(self) -> int:
        return self.party_dim("A")

    @property
    def d_b(self) -> int:
        return self.party_dim("B")

    @property
    def is_grouped(self) -> bool:
        parties = [p for p, _ in self.factors]
        return parties == sorted(parties)

    def __add__(self, other: TensorSpace) -> TensorSpace:
        return TensorSpace(self.factors + other.factors)

    def describe(self) -> str:
        return " ⊗ ".join(f"{p}{d}" for p, d in self.factors)


@dataclass(frozen=True)
class HermitianOperator:
    """A Hermitian matrix tagged with the tensor space it acts on."""

    matrix: np.ndarray
    space: TensorSpace

    def __post_init__(self) -> None:
        m = as_matrix(self.matrix)
        if m.shape != (self.space.dim, self.space.dim):
            raise ContractViolation(
                f"matrix shape {m.shape} does not match space dimension {self.space.dim}"
            )
        if not is_hermitian(m, HERM_TOL):
            raise ContractViolation("operator is not Hermitian within tolerance")
        m = m.copy()
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.space.dim

    def trace(self) -> float:
        return float(np.trace(self.matrix).real)

    def scaled(self, factor: float) -> HermitianOperator:
        return HermitianOperator(self.matrix * factor, self.space)

    def expectation(self, vec: np.ndarray) -> float:
        return float(np.vdot(vec, self.matrix @ vec).real)


def tensor(*ops: HermitianOperator, dim_limit: int = DEFAULT_DIM_LIMIT) -> HermitianOperator:
    """Kronecker product of operators, concatenating their factor lists."""
    dim = prod(op.dim for op in ops)
    if dim > dim_limit:
        raise SizeLimitError(dim, dim_limit)
    matrix = ops[0].matrix
    space = ops[0].space
    for op in ops[1:]:
        matrix = np.kron(matrix, op.matrix)
        space = space + op.space
    return HermitianOperator(matrix, space)


def tensor_power(op: HermitianOperator, n: int, dim_limit: int = DEFAULT_DIM_LIMIT) -> HermitianOperator:
    if n < 1:
        raise ContractViolation("tensor power needs n >= 1")
    return tensor(*([op] * n), dim_limit=dim_limit)


def _check_perm(perm: Sequence[int], k: int) -> tuple[int, ...]:
    perm = tuple(int(i) for i in perm)
    if sorted(perm) != list(range(k)):
        raise ContractViolation(f"{perm} is not a permutation of {k} factors")
    return perm


def permute_factors(op: HermitianOperator, perm: Sequence[int]) -> HermitianOperator:
    """Reorder tensor factors: new factor ``i`` is old factor ``perm[i]``."""
    k = len(op.space.factors)
    perm = _check_perm(perm, k)
    dims = op.space.dims
    t = op.matrix.reshape(dims + dims)
    t = t.transpose(perm + tuple(k + i for i in perm))
    space = TensorSpace(tuple(op.space.factors[i] for i in perm))
    return HermitianOperator(t.reshape(op.dim, op.dim), space)


def grouping_permutation(space: TensorSpace) -> tuple[int, ...]:
    """Permutation that moves all A factors ahead of all B factors (stable)."""
    a_idx = [i for i, (p, _) in enumerate(space.factors) if p == "A"]
    b_idx = [i for i, (p, _) in enumerate(space.factors) if p == "B"]
    return tuple(a_idx + b_idx)


def to_grouped(op: HermitianOperator) -> HermitianOperator:
    if op.space.is_grouped:
        return op
    return permute_factors(op, grouping_permutation(op.space))


def partial_transpose(op: HermitianOperator) -> HermitianOperator:
    """Transpose every B factor's row/column indices in place."""
    k = len(op.space.factors)
    dims = op.space.dims
    axes = list(range(2 * k))
    for i, (party, _) in enumerate(op.space.factors):
        if party == "B":
            axes[i], axes[k + i] = k + i, i
    t = op.matrix.reshape(dims + dims).transpose(axes)
    return HermitianOperator(t.reshape(op.dim, op.dim), op.space)


def _bipartite_tensor(op: HermitianOperator) -> np.ndarray:
    g = to_grouped(op)
    d_a, d_b = g.space.d_a, g.space.d_b
    return g.matrix.reshape(d_a, d_b, d_a, d_b)


def contract_party_A(op: HermitianOperator, e, tol: float = 1e-12) -> np.ndarray:
    """B-side matrix ``(<e| ⊗ 1_B) op (|e> ⊗ 1_B)`` for a unit vector ``e`` on party A."""
    e = as_vector(e, normalized=True, tol=tol)
    if e.shape[0] != op.space.d_a:
        raise ContractViolation(f"A vector has dim {e.shape[0]}, party A has dim {op.space.d_a}")
    t = _bipartite_tensor(op)
    out = np.einsum("a,abcd,c->bd", e.conj(), t, e)
    return 0.5 * (out + out.conj().T)


def contract_party_B(op: HermitianOperator, f, tol: float = 1e-12) -> np.ndarray:
    """A-side matrix ``(1_A ⊗ <f|) op (1_A ⊗ |f>)``."""
    f = as_vector(f, normalized=True, tol=tol)
    if f.shape[0] != op.space.d_b:
        raise ContractViolation(f"B vector has dim {f.shape[0]}, party B has dim {op.space.d_b}")
    t = _bipartite_tensor(op)
    out = np.einsum("b,abcd,d->ac", f.conj(), t, f)
    return 0.5 * (out + out.conj().T)
