"""Closed-form evolution of the qubit-field state in the interaction picture.

The generator couples |+, n> only to |-, n+1>, so the joint dynamics splits
into independent 2x2 blocks

    H_n = [[ delta/2,            -1j*g*sqrt(n+1)],
           [ 1j*g*sqrt(n+1),     -delta/2       ]],

with H_n @ H_n = Omega_{n+1}**2 * I and therefore

    exp(-1j*H_n*t) = cos(Omega_{n+1} t) I - 1j * sin(Omega_{n+1} t)/Omega_{n+1} * H_n.

The state |-, 0> is uncoupled and only picks up the phase exp(+1j*delta*t/2).
Joint amplitudes are stored as two arrays over photon number: ``f_plus[n]``
for |+, n> and ``f_minus[n]`` for |-, n>. Every function broadcasts over a
leading time axis when ``t`` is an array.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.stats import binom

from .fieldstates import FieldState, make_binomial

OMEGA_FORMS = ("sqrt", "printed")
SINC_SERIES_CUTOFF = 1e-4


@dataclass(frozen=True)
class ModelParams:
    """Coupling ``g`` and detuning ``delta`` in scaled frequency units."""

    g: float
    delta: float

    def __post_init__(self):
        g, delta = float(self.g), float(self.delta)
        if not np.isfinite(g) or g < 0:
            raise ValueError(f"g must be finite and non-negative, got {self.g!r}")
        if not np.isfinite(delta):
            raise ValueError(f"delta must be finite, got {self.delta!r}")
        object.__setattr__(self, "g", g)
        object.__setattr__(self, "delta", delta)


@dataclass(frozen=True)
class JointState:
    t: np.ndarray
    f_plus: np.ndarray
    f_minus: np.ndarray

    def norm(self) -> np.ndarray:
        return np.sqrt(
            np.sum(np.abs(self.f_plus) ** 2, axis=-1) + np.sum(np.abs(self.f_minus) ** 2, axis=-1)
        )

    def as_vector(self, dim_field: int | None = None) -> np.ndarray:
        """Qubit-major vector ``index = s*dim_field + n`` (s=0 for |+>)."""
        size = self.f_minus.shape[-1]
        dim_field = size if dim_field is None else dim_field
        if dim_field < size:
            raise ValueError("dim_field smaller than the state support")
        lead = self.f_plus.shape[:-1]
        out = np.zeros(lead + (2, dim_field), dtype=complex)
        out[..., 0, : self.f_plus.shape[-1]] = self.f_plus
        out[..., 1, :size] = self.f_minus
        return out.reshape(lead + (2 * dim_field,))


@dataclass(frozen=True)
class QubitDensity:
    """Reduced 2x2 state in the {|+>, |->} basis; rho21 = conj(rho12).

    Fields may be scalars or arrays sharing a leading (time) shape.
    """

    rho11: np.ndarray
    rho22: np.ndarray
    rho12: np.ndarray

    def matrix(self) -> np.ndarray:
        r11 = np.asarray(self.rho11, dtype=complex)
        r12 = np.asarray(self.rho12, dtype=complex)
        r22 = np.asarray(self.rho22, dtype=complex)
        return np.stack(
            [np.stack([r11, r12], axis=-1), np.stack([np.conj(r12), r22], axis=-1)], axis=-2
        )

    @classmethod
    def from_matrix(cls, rho) -> "QubitDensity":
        rho = np.asarray(rho, dtype=complex)
        return cls(rho[..., 0, 0].real, rho[..., 1, 1].real, rho[..., 0, 1])

    def __getitem__(self, idx) -> "QubitDensity":
        return QubitDensity(
            np.asarray(self.rho11)[idx], np.asarray(self.rho22)[idx], np.asarray(self.rho12)[idx]
        )

    def violations(self, tol: float = 1e-12) -> list[str]:
        """Names of violated density-matrix invariants (empty when valid)."""
        r11, r22 = np.asarray(self.rho11), np.asarray(self.rho22)
        out = []
        if np.any(np.abs(r11 + r22 - 1.0) > tol):
            out.append("trace")
        if np.any((r11 < -tol) | (r11 > 1 + tol) | (r22 < -tol) | (r22 > 1 + tol)):
            out.append("diagonal range")
        if np.any(r11 * r22 - np.abs(self.rho12) ** 2 < -tol):
            out.append("positivity")
        return out


def rabi_frequency(params: ModelParams, n, omega_form: str = "sqrt"):
    """Generalized Rabi frequency Omega_n = sqrt(delta**2/4 + g**2 n).

    ``omega_form="printed"`` squares instead of taking the root. That form
    is kept only to demonstrate that it breaks unitarity.
    """
    base = params.delta**2 / 4 + params.g**2 * np.asarray(n, dtype=float)
    if omega_form == "sqrt":
        return np.sqrt(base)
    if omega_form == "printed":
        return base**2
    raise ValueError(f"omega_form must be one of {OMEGA_FORMS}, got {omega_form!r}")


def sin_over_omega(omega, t):
    """sin(omega*t)/omega, finite at omega = 0 where it tends to t."""
    omega, t = np.broadcast_arrays(np.asarray(omega, dtype=float), np.asarray(t, dtype=float))
    x = omega * t
    small = np.abs(x) < SINC_SERIES_CUTOFF
    x2 = x * x
    series = t * (1.0 - x2 / 6.0 + x2 * x2 / 120.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        direct = np.sin(x) / omega
    return np.where(small, series, direct)


def qubit_state(theta: float = np.pi / 4, phi: float = 0.0) -> np.ndarray:
    """(cos theta, e^{i phi} sin theta) in the {|+>, |->} basis."""
    return np.array([np.cos(theta), np.exp(1j * phi) * np.sin(theta)], dtype=complex)


def _check_qubit(qubit_init):
    if qubit_init is None:
        return qubit_state()
    q = np.asarray(qubit_init, dtype=complex).reshape(2)
    if abs(np.vdot(q, q).real - 1.0) > 1e-12:
        raise ValueError("qubit_init must be a unit vector")
    return q


def manifold_blocks(params: ModelParams, N: int, t, omega_form: str = "sqrt"):
    """Entries (u00, u01, u10, u11) of exp(-i H_n t) for n = 0..N.

    Each array has shape ``t.shape + (N+1,)``.
    """
    t = np.asarray(t, dtype=float)[..., None]
    n = np.arange(N + 1)
    om = rabi_frequency(params, n + 1, omega_form)
    k = params.g * np.sqrt(n + 1.0)
    c = np.cos(om * t)
    s = sin_over_omega(om, t)
    half = 0.5 * params.delta
    u00 = c - 1j * half * s
    u11 = c + 1j * half * s
    u01 = -k * s + 0j
    u10 = k * s + 0j
    return u00, u01, u10, u11


def evolve_joint(
    params: ModelParams,
    field: FieldState,
    qubit_init=None,
    t=0.0,
    omega_form: str = "sqrt",
) -> JointState:
    """Evolve qubit_init (x) field for time(s) ``t``.

    The default qubit state is (|+> + |->)/sqrt(2). The support never grows
    past photon number N+1, so there is no truncation error.
    """
    q = _check_qubit(qubit_init)
    t = np.asarray(t, dtype=float)
    c = field.amplitudes
    N = c.size - 1
    c_ext = field.padded(N + 2)
    a = q[0] * c
    b = q[1] * c_ext[1:]
    u00, u01, u10, u11 = manifold_blocks(params, N, t, omega_form)
    f_plus = u00 * a + u01 * b
    f_minus = np.empty(t.shape + (N + 2,), dtype=complex)
    f_minus[..., 0] = q[1] * c[0] * np.exp(0.5j * params.delta * t)
    f_minus[..., 1:] = u10 * a + u11 * b
    return JointState(t, f_plus, f_minus)


def reduced_qubit(state: JointState) -> QubitDensity:
    """Trace out the field."""
    fp = state.f_plus
    fm = state.f_minus[..., : fp.shape[-1]]
    rho11 = np.sum(np.abs(fp) ** 2, axis=-1)
    rho22 = np.sum(np.abs(state.f_minus) ** 2, axis=-1)
    rho12 = np.sum(fp * np.conj(fm), axis=-1)
    return QubitDensity(rho11, rho22, rho12)


def closed_form_rho(params, field, t, qubit_init=None, omega_form="sqrt") -> QubitDensity:
    return reduced_qubit(evolve_joint(params, field, qubit_init, t, omega_form))


def fock_rho_published(params: ModelParams, n: int, t, omega_form: str = "sqrt") -> QubitDensity:
    """Published element-wise expressions for a Fock field |n>.

    Valid for the default qubit state only.
    """
    t = np.asarray(t, dtype=float)
    half = 0.5 * params.delta
    om_n = rabi_frequency(params, n, omega_form)
    om_n1 = rabi_frequency(params, n + 1, omega_form)
    c_n, c_n1 = np.cos(om_n * t), np.cos(om_n1 * t)
    s_n, s_n1 = sin_over_omega(om_n, t), sin_over_omega(om_n1, t)
    g2 = params.g**2
    rho11 = 0.5 * (c_n1**2 + half**2 * s_n1**2 + g2 * n * s_n**2)
    rho22 = 0.5 * (c_n**2 + half**2 * s_n**2 + g2 * (n + 1) * s_n1**2)
    rho12 = 0.5 * (c_n1 - 1j * half * s_n1) * (c_n - 1j * half * s_n)
    return QubitDensity(rho11, rho22, rho12)


@dataclass(frozen=True)
class BinomialDiagnostic:
    """Published binomial-field expressions next to the exact result."""

    published: QubitDensity
    exact: QubitDensity
    max_deviation: float

    @property
    def flagged(self) -> bool:
        return self.max_deviation > 1e-8


def binomial_rho_published(params: ModelParams, mu: int, eta: float, t) -> BinomialDiagnostic:
    """Evaluate the published binomial-field formulas term by term.

    The formulas are reproduced as printed and are not a valid density
    matrix (the diagonal sums to 2 at t=0). The result carries the largest
    element-wise distance to the exact manifold evolution.
    """
    eta = float(eta)
    if not 0.0 <= eta < 1.0:
        raise ValueError("eta must lie in [0, 1) for the published binomial formulas")
    t = np.asarray(t, dtype=float)
    tt = t[..., None]
    n = np.arange(mu + 1)
    w = binom.pmf(n, mu, eta * eta)
    half = 0.5 * params.delta
    g = params.g

    def cs(k):
        om = rabi_frequency(params, k)
        return np.cos(om * tt), sin_over_omega(om, tt)

    c0, s0 = cs(n)
    c1, s1 = cs(n + 1)
    c2, s2 = cs(n + 2)
    ratio = (mu - n) / np.sqrt(n + 1.0)
    cross = ratio * eta / np.sqrt(1.0 - eta * eta)

    b11 = c1**2 + g**2 * n * s0**2 + half**2 * s1**2 - 2 * g * cross * c1 * s0
    b22 = c0**2 + g**2 * (n + 1) * s1**2 + half**2 * s0**2 - 2 * g * cross * c1 * s1
    b12 = (
        (c1 - 1j * half * s1) * (c0 - 1j * half * s0)
        - g**2 * ratio * (mu - n + 1) / np.sqrt(n + 2.0) / (1.0 - eta * eta) * s1 * s2
        + g * cross * s1 * ((c0 - c2) + 1j * half * (s0 - s2))
    )
    published = QubitDensity(np.sum(w * b11, -1), np.sum(w * b22, -1), np.sum(w * b12, -1))
    exact = closed_form_rho(params, make_binomial(mu, eta), t)
    dev = max(
        np.max(np.abs(published.rho11 - exact.rho11)),
        np.max(np.abs(published.rho22 - exact.rho22)),
        np.max(np.abs(published.rho12 - exact.rho12)),
    )
    return BinomialDiagnostic(published, exact, float(dev))
