"""Initial states of the cavity mode as photon-number amplitude vectors."""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.special import gammaln, xlogy
from scipy.stats import poisson

NORM_TOL = 1e-12


@dataclass(frozen=True)
class FieldState:
    """Pure field state sum_n c_n |n>, n = 0..N.

    ``kind`` is one of ``"fock"``, ``"binomial"`` or ``"coherent_approx"`` and
    ``label`` keeps the constructor arguments (``{"n": 3}``, ``{"mu": 10,
    "eta": 0.1}``, ``{"nbar": 1.0, "tail_tol": 1e-12}``).
    """

    amplitudes: np.ndarray
    kind: str
    label: dict = field(default_factory=dict)

    def __post_init__(self):
        c = np.asarray(self.amplitudes, dtype=complex)
        if c.ndim != 1 or c.size == 0:
            raise ValueError("amplitudes must be a non-empty 1-d vector")
        norm = np.sum(np.abs(c) ** 2)
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"field state not normalized: sum |c_n|^2 = {norm!r}")
        c.setflags(write=False)
        object.__setattr__(self, "amplitudes", c)

    @property
    def truncation(self) -> int:
        """Largest photon number carried by the vector."""
        return self.amplitudes.size - 1

    @property
    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def padded(self, size: int) -> np.ndarray:
        """Amplitudes zero-padded to ``size`` entries."""
        if size < self.amplitudes.size:
            raise ValueError("cannot pad to a shorter length")
        out = np.zeros(size, dtype=complex)
        out[: self.amplitudes.size] = self.amplitudes
        return out

    def describe(self) -> str:
        args = ", ".join(f"{k}={v}" for k, v in self.label.items())
        return f"{self.kind}({args})"


def make_fock(n: int) -> FieldState:
    if int(n) != n or n < 0:
        raise ValueError(f"photon number must be a non-negative integer, got {n!r}")
    n = int(n)
    c = np.zeros(n + 1, dtype=complex)
    c[n] = 1.0
    return FieldState(c, "fock", {"n": n})


def binomial_amplitudes(mu: int, eta: float) -> np.ndarray:
    """Real binomial amplitudes for m = 0..mu, evaluated in log space.

    Log-gamma keeps the binomial coefficient finite for mu > 170; ``xlogy``
    gives the right limits at eta = 0 and eta = 1.
    """
    m = np.arange(mu + 1)
    log_c = 0.5 * (gammaln(mu + 1) - gammaln(m + 1) - gammaln(mu - m + 1))
    log_c = log_c + xlogy(m, eta) + xlogy(0.5 * (mu - m), 1.0 - eta * eta)
    return np.exp(log_c)


def make_binomial(mu: int, eta: float) -> FieldState:
    """Binomial state |mu, eta> for real eta in [0, 1].

    Mean photon number is ``mu * eta**2``. ``eta = 0`` gives the vacuum and
    ``eta = 1`` the Fock state ``|mu>``.
    """
    if int(mu) != mu or mu < 0:
        raise ValueError(f"mu must be a non-negative integer, got {mu!r}")
    eta = float(eta)
    if not 0.0 <= eta <= 1.0:
        raise ValueError(f"eta must lie in [0, 1], got {eta!r}")
    mu = int(mu)
    if mu == 0:
        warnings.warn("binomial state with mu=0 is the vacuum", stacklevel=2)
    c = binomial_amplitudes(mu, eta)
    c = c / np.sqrt(np.sum(c * c))
    return FieldState(c.astype(complex), "binomial", {"mu": mu, "eta": eta})


def coherent_truncation(nbar: float, tail_tol: float) -> int:
    """Smallest N with Poisson(nbar) mass above N below ``tail_tol``."""
    if nbar == 0:
        return 0
    n = max(0, int(poisson.isf(tail_tol, nbar)))
    while poisson.sf(n, nbar) >= tail_tol:
        n += 1
    while n > 0 and poisson.sf(n - 1, nbar) < tail_tol:
        n -= 1
    return n


def make_coherent_approx(nbar: float, tail_tol: float = 1e-12) -> FieldState:
    """Truncated, renormalized coherent state with mean photon number ``nbar``."""
    nbar = float(nbar)
    if nbar < 0 or not np.isfinite(nbar):
        raise ValueError(f"nbar must be a finite non-negative number, got {nbar!r}")
    if not 0 < tail_tol <= 1e-6:
        raise ValueError(f"tail_tol must lie in (0, 1e-6], got {tail_tol!r}")
    N = coherent_truncation(nbar, tail_tol)
    n = np.arange(N + 1)
    log_c = -0.5 * nbar + 0.5 * xlogy(n, nbar) - 0.5 * gammaln(n + 1)
    c = np.exp(log_c)
    c = c / np.sqrt(np.sum(c * c))
    return FieldState(c.astype(complex), "coherent_approx", {"nbar": nbar, "tail_tol": tail_tol})


def mean_photon(state: FieldState) -> float:
    n = np.arange(state.amplitudes.size)
    return float(np.sum(n * state.probabilities))


def max_amplitude_distance(a: FieldState, b: FieldState) -> float:
    size = max(a.amplitudes.size, b.amplitudes.size)
    return float(np.max(np.abs(a.padded(size) - b.padded(size))))


def make_field(kind: str, **kwargs) -> FieldState:
    """Dispatch on ``kind``; used by configuration-driven callers."""
    if kind == "fock":
        return make_fock(kwargs["n"])
    if kind == "binomial":
        return make_binomial(kwargs["mu"], kwargs["eta"])
    if kind in ("coherent", "coherent_approx"):
        return make_coherent_approx(kwargs["nbar"], kwargs.get("tail_tol", 1e-12))
    raise ValueError(f"unknown field kind {kind!r}")
