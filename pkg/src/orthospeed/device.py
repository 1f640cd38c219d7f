"""Cooper-pair-box circuit parameters mapped to (g, delta).

All quantities are SI; frequencies come out in rad/s. Dividing by the field
frequency ``omega`` gives the dimensionless :class:`ModelParams`.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from scipy import constants

from .propagator import ModelParams

REGIME_FACTOR = 10.0


class RegimeWarning(UserWarning):
    """Charging energy does not dominate E_J and hbar*omega."""


@dataclass(frozen=True)
class DeviceParams:
    C_g: float
    C_J: float
    C_F: float
    E_J: float
    omega: float
    e: float = constants.e
    hbar: float = constants.hbar

    def __post_init__(self):
        for name in ("C_g", "C_J", "C_F", "E_J", "omega", "e", "hbar"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise ValueError(f"{name} must be finite and positive, got {value!r}")


def charging_energy(dev: DeviceParams) -> float:
    """E_c = e**2 / (2 (C_g + C_J)) in joules."""
    return dev.e**2 / (2.0 * (dev.C_g + dev.C_J))


def coupling_g(dev: DeviceParams) -> float:
    """sqrt(omega / (2 C_F hbar)) * e C_J / (C_g + C_J), in rad/s."""
    return math.sqrt(dev.omega / (2.0 * dev.C_F * dev.hbar)) * dev.e * dev.C_J / (dev.C_g + dev.C_J)


def coupling_g_charging_form(dev: DeviceParams) -> float:
    """The alternative form sqrt(omega / (C_F hbar)) * E_c / 2.

    Not dimensionally a frequency and not equal to :func:`coupling_g`; kept
    so the discrepancy can be reported.
    """
    return math.sqrt(dev.omega / (dev.C_F * dev.hbar)) * charging_energy(dev) / 2.0


def coupling_form_ratio(dev: DeviceParams) -> float:
    """coupling_g_charging_form / coupling_g; analytically sqrt(2) e / (4 C_J)."""
    return coupling_g_charging_form(dev) / coupling_g(dev)


def regime_ok(dev: DeviceParams) -> bool:
    """True when E_c >= 10 max(E_J, hbar omega)."""
    return charging_energy(dev) >= REGIME_FACTOR * max(dev.E_J, dev.hbar * dev.omega)


def detuning_delta(dev: DeviceParams) -> float:
    """E_J/hbar - omega in rad/s; warns outside the charge-qubit regime."""
    if not regime_ok(dev):
        warnings.warn(
            f"E_c = {charging_energy(dev):.3e} J is not >> max(E_J, hbar*omega) = "
            f"{max(dev.E_J, dev.hbar * dev.omega):.3e} J",
            RegimeWarning,
            stacklevel=2,
        )
    return dev.E_J / dev.hbar - dev.omega


def model_params(dev: DeviceParams) -> ModelParams:
    """(g, delta) in units of the field frequency."""
    return ModelParams(coupling_g(dev) / dev.omega, detuning_delta(dev) / dev.omega)


def device_summary(dev: DeviceParams) -> dict:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RegimeWarning)
        delta = detuning_delta(dev)
    g = coupling_g(dev)
    return {
        "E_c": charging_energy(dev),
        "g": g,
        "g_charging_form": coupling_g_charging_form(dev),
        "g_form_ratio": coupling_form_ratio(dev),
        "delta": delta,
        "g_scaled": g / dev.omega,
        "delta_scaled": delta / dev.omega,
        "regime_ok": regime_ok(dev),
    }
