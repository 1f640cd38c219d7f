"""Brute-force reference dynamics on a truncated joint Hilbert space.

Basis ordering is qubit-major: ``index = s * dim_field + n`` with s = 0 for
|+> and s = 1 for |->. Nothing here uses the manifold decomposition, so the
results serve as ground truth for :mod:`orthospeed.propagator`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fieldstates import FieldState
from .propagator import ModelParams, QubitDensity, _check_qubit

HERMITIAN_TOL = 1e-14


def annihilation(dim: int) -> np.ndarray:
    """Truncated a with a|n> = sqrt(n)|n-1>."""
    return np.diag(np.sqrt(np.arange(1, dim, dtype=float)), k=1).astype(complex)


@dataclass(frozen=True)
class DenseHermitian:
    matrix: np.ndarray
    dim_field: int

    def __post_init__(self):
        H = np.asarray(self.matrix, dtype=complex)
        if H.shape != (2 * self.dim_field, 2 * self.dim_field):
            raise ValueError(f"expected shape {(2 * self.dim_field,) * 2}, got {H.shape}")
        if np.max(np.abs(H - H.conj().T)) >= HERMITIAN_TOL:
            raise ValueError("matrix is not Hermitian")
        object.__setattr__(self, "matrix", H)

    @property
    def dim(self) -> int:
        return 2 * self.dim_field


def build_hamiltonian(params: ModelParams, dim_field: int) -> DenseHermitian:
    """[[delta/2 I, -i g a], [i g a^dag, -delta/2 I]]"""
    if dim_field < 2:
        raise ValueError("dim_field must be at least 2")
    a = annihilation(dim_field)
    eye = np.eye(dim_field)
    H = np.block(
        [
            [0.5 * params.delta * eye, -1j * params.g * a],
            [1j * params.g * a.conj().T, -0.5 * params.delta * eye],
        ]
    )
    return DenseHermitian(H, dim_field)


def excitation_number(dim_field: int) -> np.ndarray:
    """a^dag a + |+><+| on the truncated space."""
    n = np.arange(dim_field, dtype=float)
    return np.diag(np.concatenate([n + 1.0, n])).astype(complex)


class Diagonalized:
    """Eigendecomposition of a Hermitian H reused across time points."""

    def __init__(self, H: DenseHermitian):
        self.H = H
        self.energies, self.vectors = np.linalg.eigh(H.matrix)

    def unitary(self, t: float) -> np.ndarray:
        phase = np.exp(-1j * self.energies * t)
        return (self.vectors * phase) @ self.vectors.conj().T

    def evolve(self, psi0, t) -> np.ndarray:
        """exp(-iHt) psi0; a time array gives one row per time point."""
        psi0 = np.asarray(psi0, dtype=complex)
        if abs(np.linalg.norm(psi0) - 1.0) > 1e-12:
            raise ValueError("psi0 must be normalized")
        coeff = self.vectors.conj().T @ psi0
        t = np.asarray(t, dtype=float)
        phase = np.exp(-1j * np.multiply.outer(t, self.energies))
        return (phase * coeff) @ self.vectors.T


def evolve_exact(H: DenseHermitian, psi0, t) -> np.ndarray:
    return Diagonalized(H).evolve(psi0, t)


def partial_trace_qubit(psi, dim_field: int) -> QubitDensity:
    """Reduced qubit state of a joint pure state (or a stack of them)."""
    psi = np.asarray(psi, dtype=complex)
    if psi.shape[-1] != 2 * dim_field:
        raise ValueError(f"state length {psi.shape[-1]} does not match 2*{dim_field}")
    m = psi.reshape(psi.shape[:-1] + (2, dim_field))
    rho = m @ np.swapaxes(m.conj(), -1, -2)
    return QubitDensity.from_matrix(rho)


def product_state(field: FieldState, qubit_init=None, dim_field: int | None = None) -> np.ndarray:
    q = _check_qubit(qubit_init)
    dim_field = field.amplitudes.size + 1 if dim_field is None else dim_field
    return np.kron(q, field.padded(dim_field))


def oracle_rho(params: ModelParams, field: FieldState, t, qubit_init=None) -> QubitDensity:
    """Reduced qubit state from dense exponentiation on N+2 field levels."""
    dim_field = field.amplitudes.size + 1
    H = build_hamiltonian(params, dim_field)
    psi = evolve_exact(H, product_state(field, qubit_init, dim_field), t)
    return partial_trace_qubit(psi, dim_field)
