"""Eigenvectors of 2x2 qubit states and their overlaps with the initial basis."""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .propagator import QubitDensity

DEGENERACY_TOL = 1e-10

#: eigenvectors (columns) of the initial state (|+> + |->)(<+| + <-|)/2
INITIAL_BASIS = np.array([[1.0, 1.0], [1.0, -1.0]], dtype=complex) / np.sqrt(2.0)


@dataclass(frozen=True)
class SpectralPair:
    """Eigenvalues lambda1 >= lambda2 and eigenvectors u1, u2 (last axis)."""

    lambda1: np.ndarray
    lambda2: np.ndarray
    u1: np.ndarray
    u2: np.ndarray
    degenerate: np.ndarray

    def reconstruct(self) -> np.ndarray:
        outer = lambda u: u[..., :, None] * np.conj(u[..., None, :])  # noqa: E731
        l1 = np.asarray(self.lambda1)[..., None, None]
        l2 = np.asarray(self.lambda2)[..., None, None]
        return l1 * outer(self.u1) + l2 * outer(self.u2)


def _fix_phase(u):
    """Rotate so the largest-magnitude component is real and non-negative."""
    idx = np.argmax(np.abs(u), axis=-1)
    pivot = np.take_along_axis(u, idx[..., None], axis=-1)
    mag = np.abs(pivot)
    phase = np.where(mag > 0, np.conj(pivot) / np.where(mag > 0, mag, 1.0), 1.0)
    return u * phase


def eig2(rho: QubitDensity) -> SpectralPair:
    """Closed-form eigensystem of a 2x2 Hermitian unit-trace matrix.

    The top eigenvector is taken from whichever row of (rho - lambda1) has
    the larger pivot, so no division by a small rho12 ever happens; u2 is
    its orthogonal complement. Exactly diagonal inputs return standard
    basis vectors ordered by eigenvalue.
    """
    a = np.asarray(rho.rho11, dtype=float)
    d = np.asarray(rho.rho22, dtype=float)
    b = np.asarray(rho.rho12, dtype=complex)
    mean = 0.5 * (a + d)
    half_gap = 0.5 * np.sqrt((a - d) ** 2 + 4.0 * np.abs(b) ** 2)
    lam1 = mean + half_gap
    lam2 = mean - half_gap
    top_first = a >= d
    # (lam1 - d, conj(b)) and (b, lam1 - a) both solve (rho - lam1) u = 0
    x = np.where(top_first, lam1 - d, b)
    y = np.where(top_first, np.conj(b), lam1 - a)
    u1 = np.stack([x, y], axis=-1).astype(complex)
    nrm = np.linalg.norm(u1, axis=-1, keepdims=True)
    degenerate = (lam1 - lam2) < DEGENERACY_TOL
    e1 = np.zeros_like(u1)
    e1[..., 0] = 1.0
    u1 = np.where(nrm > 0, u1 / np.where(nrm > 0, nrm, 1.0), e1)
    u1 = _fix_phase(u1)
    u2 = _fix_phase(np.stack([-np.conj(u1[..., 1]), np.conj(u1[..., 0])], axis=-1))
    return SpectralPair(lam1, lam2, u1, u2, degenerate)


def eig2_published(rho: QubitDensity) -> SpectralPair:
    """Eigenvectors via u = (1, (lambda - rho11)/rho12) normalized.

    Ill-conditioned for small |rho12|; used only as a cross-check.
    """
    a = np.asarray(rho.rho11, dtype=float)
    d = np.asarray(rho.rho22, dtype=float)
    b = np.asarray(rho.rho12, dtype=complex)
    root = np.sqrt((a - d) ** 2 + 4.0 * np.abs(b) ** 2)
    lam = [0.5 * (1 + root), 0.5 * (1 - root)]
    vecs = []
    for lam_k in lam:
        r = (lam_k - a) / b
        scale = np.sqrt(np.abs(b) ** 2 / (np.abs(b) ** 2 + np.abs(lam_k - a) ** 2))
        vecs.append(_fix_phase(scale[..., None] * np.stack([np.ones_like(r), r], axis=-1)))
    return SpectralPair(lam[0], lam[1], vecs[0], vecs[1], (lam[0] - lam[1]) < DEGENERACY_TOL)


def overlaps(pair: SpectralPair, basis: np.ndarray = INITIAL_BASIS) -> np.ndarray:
    """|<nu_i|u_j>| as an array of shape (..., 2, 2) indexed [i, j]."""
    u = np.stack([pair.u1, pair.u2], axis=-1)  # columns u_j
    return np.abs(basis.conj().T @ u)


class OverlapSample(NamedTuple):
    t: float
    sp: np.ndarray
    degenerate: bool


@dataclass(frozen=True)
class OverlapTrace:
    """Overlap matrices |Sp_ij| sampled on a time grid."""

    t: np.ndarray
    rho: QubitDensity
    spectral: SpectralPair
    sp: np.ndarray
    degenerate: np.ndarray

    def __len__(self) -> int:
        return self.t.size

    def __getitem__(self, k) -> OverlapSample:
        return OverlapSample(float(self.t[k]), self.sp[k], bool(self.degenerate[k]))


def overlap_trace(t, rho: QubitDensity) -> OverlapTrace:
    t = np.atleast_1d(np.asarray(t, dtype=float))
    rho = QubitDensity(*(np.atleast_1d(np.asarray(x)) for x in (rho.rho11, rho.rho22, rho.rho12)))
    pair = eig2(rho)
    return OverlapTrace(t, rho, pair, overlaps(pair), np.asarray(pair.degenerate))
