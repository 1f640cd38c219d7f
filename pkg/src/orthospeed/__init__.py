"""Orthogonality speed of a Cooper-pair-box charge qubit coupled to a cavity mode.

Typical use::

    from orthospeed import ModelParams, make_fock, run_cell

    trace, report = run_cell(ModelParams(g=0.1, delta=1.0), make_fock(1), window=(0, 40))
    report.total_events, report.first_orthogonality_time
"""

from .device import DeviceParams, coupling_g, detuning_delta, model_params
from .fieldstates import FieldState, make_binomial, make_coherent_approx, make_fock, mean_photon
from .oracle import build_hamiltonian, evolve_exact, oracle_rho, partial_trace_qubit
from .orthodetect import DetectorSettings, OrthogonalityEvent, SpeedReport, scan_events, speed_report
from .propagator import (
    JointState,
    ModelParams,
    QubitDensity,
    binomial_rho_published,
    closed_form_rho,
    evolve_joint,
    fock_rho_published,
    rabi_frequency,
    reduced_qubit,
)
from .spectral import INITIAL_BASIS, OverlapTrace, SpectralPair, eig2, overlap_trace, overlaps
from .sweep import SweepConfig, run_cell, run_sweep

__version__ = "0.1.0"
