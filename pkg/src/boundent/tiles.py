"""The Tiles unextendible product basis in 3x3 and the objects built from it.

``P_b`` projects onto the 4-dimensional complement of the five Tiles
vectors; ``rho_b = P_b / 4`` is PPT yet entangled. ``1 + P_b`` splits into
two separable projectors (``P1`` and ``P2``) whose 13 product vectors form
an explicit separability certificate.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConsistencyError, ContractViolation
from .linalg import as_vector
from .tensor import HermitianOperator, TensorSpace

SQRT2 = np.sqrt(2.0)
SQRT3 = np.sqrt(3.0)
QUTRITS = TensorSpace.bipartite(3, 3)
QUBITS = TensorSpace.bipartite(2, 2)


def ket(*amplitudes: float) -> np.ndarray:
    return np.array(amplitudes, dtype=np.complex128)


@dataclass(frozen=True, eq=False)
class ProductState:
    """``|a> ⊗ |b>`` with both local factors normalized."""

    a_local: np.ndarray
    b_local: np.ndarray

    def __post_init__(self) -> None:
        a = as_vector(self.a_local)
        b = as_vector(self.b_local)
        for name, v in (("a_local", a), ("b_local", b)):
            if abs(np.linalg.norm(v) - 1.0) > 1e-12:
                raise ContractViolation(f"{name} is not normalized")
        object.__setattr__(self, "a_local", a)
        object.__setattr__(self, "b_local", b)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ProductState):
            return NotImplemented
        return np.array_equal(self.a_local, other.a_local) and np.array_equal(self.b_local, other.b_local)

    __hash__ = None

    @classmethod
    def from_unnormalized(cls, a, b) -> ProductState:
        a = as_vector(a)
        b = as_vector(b)
        return cls(a / np.linalg.norm(a), b / np.linalg.norm(b))

    @property
    def vector(self) -> np.ndarray:
        return np.kron(self.a_local, self.b_local)

    def projector(self) -> np.ndarray:
        v = self.vector
        return np.outer(v, v.conj())

    def overlap(self, op: HermitianOperator) -> float:
        """``<a,b| op |a,b>``."""
        v = self.vector
        return float(np.vdot(v, op.matrix @ v).real)


A0 = ket(1, -1, 1) / SQRT3


def tiles_upb() -> list[ProductState]:
    """The five Tiles vectors, each local factor normalized."""
    e0, e1, e2 = np.eye(3, dtype=np.complex128)
    return [
        ProductState(e0, (e0 + e1) / SQRT2),
        ProductState((e0 + e1) / SQRT2, e2),
        ProductState(e2, (e1 + e2) / SQRT2),
        ProductState((e1 + e2) / SQRT2, e0),
        ProductState(A0, A0),
    ]


def tiles_projector() -> HermitianOperator:
    """Rank-4 projector onto the orthogonal complement of the Tiles UPB."""
    p = np.eye(9, dtype=np.complex128)
    for v in tiles_upb():
        p -= v.projector()
    return HermitianOperator(p, QUTRITS)


def rho_b() -> HermitianOperator:
    """The Tiles bound entangled state ``P_b / 4``."""
    return tiles_projector().scaled(0.25)


def singlet() -> HermitianOperator:
    """Projector onto ``(|01> - |10>)/sqrt(2)``."""
    psi = ket(0, 1, -1, 0) / SQRT2
    return HermitianOperator(np.outer(psi, psi.conj()), QUBITS)


def singlet_vector() -> np.ndarray:
    return ket(0, 1, -1, 0) / SQRT2


def orthonormal_completion() -> list[np.ndarray]:
    """``[a0, a1, a2]``: Gram-Schmidt on ``(a0, |0>, |1>)`` in that order."""
    basis = [A0]
    for seed in np.eye(3, dtype=np.complex128)[:2]:
        w = seed.copy()
        for b in basis:
            w -= np.vdot(b, w) * b
        basis.append(w / np.linalg.norm(w))
    return basis


def p1_vectors() -> list[ProductState]:
    """The 8 states ``|a_k1, a_k2>`` with ``(k1, k2) != (0, 0)``."""
    a = orthonormal_completion()
    return [ProductState(a[i], a[j]) for i in range(3) for j in range(3) if (i, j) != (0, 0)]


def p2_vectors() -> list[ProductState]:
    e0, e1, e2 = np.eye(3, dtype=np.complex128)
    return [
        ProductState(e0, (e0 - e1) / SQRT2),
        ProductState((e0 - e1) / SQRT2, e2),
        ProductState(e2, (e1 - e2) / SQRT2),
        ProductState((e1 - e2) / SQRT2, e0),
        ProductState(e1, e1),
    ]


def p1_projector() -> HermitianOperator:
    """``1 - |a0,a0><a0,a0|``."""
    a00 = np.kron(A0, A0)
    return HermitianOperator(np.eye(9) - np.outer(a00, a00.conj()), QUTRITS)


def p2_projector() -> HermitianOperator:
    """``P_b + |a0,a0><a0,a0|``."""
    a00 = np.kron(A0, A0)
    return HermitianOperator(tiles_projector().matrix + np.outer(a00, a00.conj()), QUTRITS)


@dataclass(frozen=True)
class SeparabilityCertificate:
    """Explicit decomposition ``target = sum_k w_k |a_k,b_k><a_k,b_k|``."""

    terms: tuple[tuple[float, ProductState], ...]
    target: HermitianOperator

    def __post_init__(self) -> None:
        if any(w < 0 for w, _ in self.terms):
            raise ContractViolation("certificate weights must be nonnegative")

    def reconstruct(self) -> np.ndarray:
        out = np.zeros_like(self.target.matrix)
        for w, state in self.terms:
            out += w * state.projector()
        return out

    def residual(self) -> float:
        """Frobenius distance between the weighted sum and the target."""
        return float(np.linalg.norm(self.reconstruct() - self.target.matrix))


def complement_certificate(cert_tol: float = 1e-10) -> SeparabilityCertificate:
    """Unit-weight product decomposition of ``1 + P_b`` (13 terms)."""
    target = HermitianOperator(np.eye(9) + tiles_projector().matrix, QUTRITS)
    terms = tuple((1.0, s) for s in p1_vectors() + p2_vectors())
    cert = SeparabilityCertificate(terms, target)
    res = cert.residual()
    if res > cert_tol:
        raise ConsistencyError(f"separability certificate residual {res:.3e} > {cert_tol:.1e}")
    return cert


def gram_matrix(states: list[ProductState]) -> np.ndarray:
    vecs = np.array([s.vector for s in states])
    return vecs.conj() @ vecs.T
