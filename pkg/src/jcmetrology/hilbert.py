"""Dense linear algebra on small finite-dimensional Hilbert spaces.

States are 1-D complex arrays and operators are square 2-D complex arrays.
Composite qubit-oscillator indices follow ``k = j * d + m`` with the qubit
factor first (``j = 0`` excited, ``j = 1`` ground) and ``m`` the Fock index.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

HERMITIAN_TOL = 1e-12
EIG_INPUT_TOL = 1e-10
UNITARY_TOL = 1e-10
DENSITY_EIG_TOL = 1e-10
TRACE_TOL = 1e-12

QUBIT = "qubit"
FIELD = "field"


@dataclass(frozen=True)
class SpectralDecomposition:
    """Ascending eigenvalues and matching orthonormal eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def as_operator(a) -> np.ndarray:
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"operator must be square, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("operator has non-finite entries")
    return a


def dagger(a: np.ndarray) -> np.ndarray:
    return np.conj(np.transpose(a))


def is_hermitian(a, tol: float = HERMITIAN_TOL) -> bool:
    a = np.asarray(a)
    return bool(np.max(np.abs(a - dagger(a)), initial=0.0) <= tol)


def is_unitary(u, tol: float = UNITARY_TOL) -> bool:
    u = np.asarray(u)
    return bool(np.max(np.abs(dagger(u) @ u - np.eye(u.shape[0]))) <= tol)


def is_density(rho, tol: float = DENSITY_EIG_TOL) -> bool:
    rho = np.asarray(rho)
    if not is_hermitian(rho):
        return False
    if abs(np.trace(rho) - 1.0) > TRACE_TOL:
        return False
    return bool(np.linalg.eigvalsh(rho).min() >= -tol)


def ket(dim: int, index: int) -> np.ndarray:
    v = np.zeros(dim, dtype=complex)
    v[index] = 1.0
    return v


def projector(psi) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex)
    return np.outer(psi, psi.conj())


def tensor_product(a, b) -> np.ndarray:
    """Kronecker product with ``a`` as the leading (slow) index."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def partial_trace(rho, subsystem_dims: tuple[int, int], keep: str) -> np.ndarray:
    """Reduce an operator on ``A (x) B`` to ``A`` (``keep="qubit"``) or ``B`` (``keep="field"``).

    Works for any operator, not only density matrices, so state derivatives
    can be reduced the same way.
    """
    rho = as_operator(rho)
    da, db = subsystem_dims
    if da < 1 or db < 1 or rho.shape[0] != da * db:
        raise ValueError(
            f"dimension mismatch: operator is {rho.shape[0]}-dimensional, "
            f"subsystems are {da} x {db}"
        )
    r = rho.reshape(da, db, da, db)
    if keep == QUBIT:
        return np.einsum("ajbj->ab", r)
    if keep == FIELD:
        return np.einsum("iaib->ab", r)
    raise ValueError(f"keep must be {QUBIT!r} or {FIELD!r}, got {keep!r}")


def eig_hermitian(a) -> SpectralDecomposition:
    a = as_operator(a)
    dev = np.max(np.abs(a - dagger(a)), initial=0.0)
    if dev > EIG_INPUT_TOL:
        raise ValueError(f"operator is not Hermitian (max |A - A^dag| = {dev:.3e})")
    w, v = np.linalg.eigh(0.5 * (a + dagger(a)))
    return SpectralDecomposition(eigenvalues=w, eigenvectors=v)


def unitary_from_generator(g, omega: float) -> np.ndarray:
    """``exp(-i * omega * g)`` for Hermitian ``g`` via its spectral decomposition."""
    spec = eig_hermitian(g)
    v = spec.eigenvectors
    return (v * np.exp(-1j * omega * spec.eigenvalues)) @ dagger(v)


def commutator(a, b) -> np.ndarray:
    return a @ b - b @ a


def expectation(op, psi) -> complex:
    psi = np.asarray(psi, dtype=complex)
    return complex(np.vdot(psi, op @ psi))
