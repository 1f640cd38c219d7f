"""Single runs and parameter sweeps: propagate, reduce, diagonalize, detect."""

from __future__ import annotations

import os
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from . import oracle
from .fieldstates import FieldState, make_field
from .orthodetect import DetectorSettings, SpeedReport, scan_events, speed_report
from .propagator import ModelParams, QubitDensity, closed_form_rho
from .spectral import OverlapSample, OverlapTrace, overlap_trace

AXES = ("g", "delta", "n", "mu", "eta")
ENGINES = ("closed_form", "oracle")
DEFAULT_MU = 10


class SweepError(RuntimeError):
    pass


def time_grid(t0: float, t1: float, dt: float) -> np.ndarray:
    """``floor((t1 - t0)/dt) + 1`` points starting at t0."""
    if not t1 > t0:
        raise ValueError(f"window must satisfy t1 > t0, got ({t0}, {t1})")
    if not dt > 0:
        raise ValueError("dt must be positive")
    n = int(np.floor((t1 - t0) / dt + 1e-9)) + 1
    return t0 + dt * np.arange(n)


def rho_function(params: ModelParams, field: FieldState, qubit_init=None, engine: str = "closed_form"):
    """Callable t -> QubitDensity for the requested engine."""
    if engine == "closed_form":
        return lambda t: closed_form_rho(params, field, t, qubit_init)
    if engine == "oracle":
        dim_field = field.amplitudes.size + 1
        diag = oracle.Diagonalized(oracle.build_hamiltonian(params, dim_field))
        psi0 = oracle.product_state(field, qubit_init, dim_field)
        return lambda t: oracle.partial_trace_qubit(diag.evolve(psi0, t), dim_field)
    raise ValueError(f"engine must be one of {ENGINES}, got {engine!r}")


def sample_evaluator(rho_fn):
    def evaluate(t: float) -> OverlapSample:
        return overlap_trace(t, rho_fn(np.atleast_1d(float(t))))[0]

    return evaluate


def run_cell(
    params: ModelParams,
    field: FieldState,
    window=(0.0, 40.0),
    dt: float = 0.005,
    detector: DetectorSettings | None = None,
    qubit_init=None,
    engine: str = "closed_form",
) -> tuple[OverlapTrace, SpeedReport]:
    detector = detector or DetectorSettings()
    rho_fn = rho_function(params, field, qubit_init, engine)
    t = time_grid(window[0], window[1], dt)
    trace = overlap_trace(t, rho_fn(t))
    with warnings.catch_warnings():
        if dt <= detector.max_dt * (1 + 1e-9):
            warnings.simplefilter("ignore")
        events = scan_events(trace, evaluator=sample_evaluator(rho_fn), settings=detector)
    return trace, speed_report(events, window)


@dataclass(frozen=True)
class SweepConfig:
    """One axis of a parameter study.

    ``field_spec`` is a dict such as ``{"kind": "fock", "n": 1}`` or
    ``{"kind": "binomial", "mu": 10, "eta": 0.1}``; axis values override the
    matching entry. Values are deduplicated and sorted.
    """

    base: ModelParams
    field_spec: dict
    axis: str
    values: tuple
    window: tuple = (0.0, 40.0)
    dt: float = 0.005
    detector: DetectorSettings = field(default_factory=DetectorSettings)
    qubit_init: object = None
    engine: str = "closed_form"

    def __post_init__(self):
        if self.axis not in AXES:
            raise ValueError(f"axis must be one of {AXES}, got {self.axis!r}")
        vals = list(self.values)
        if not vals:
            raise ValueError("sweep values must be non-empty")
        uniq = sorted(set(vals))
        if len(uniq) != len(vals):
            warnings.warn(f"duplicate {self.axis} values removed", stacklevel=3)
        object.__setattr__(self, "values", tuple(uniq))
        if not self.window[1] > self.window[0]:
            raise ValueError("window must satisfy t1 > t0")

    def cell(self, value):
        params = self.base
        spec = dict(self.field_spec)
        if self.axis in ("g", "delta"):
            params = replace(params, **{self.axis: value})
        elif self.axis == "n":
            spec = {"kind": "fock", "n": int(value)}
        else:
            if spec.get("kind") != "binomial":
                spec = {"kind": "binomial", "mu": DEFAULT_MU, "eta": spec.get("eta", 0.1)}
            spec.setdefault("mu", DEFAULT_MU)
            spec[self.axis] = int(value) if self.axis == "mu" else float(value)
        kind = spec.pop("kind")
        return params, make_field(kind, **spec)


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get("ORTHOSPEED_THREADS", "1")))
    except ValueError:
        return 1


def run_sweep(cfg: SweepConfig, workers: int | None = None) -> list[tuple[object, SpeedReport]]:
    """One :class:`SpeedReport` per axis value, in axis order."""
    workers = default_workers() if workers is None else max(1, int(workers))

    def one(value):
        try:
            params, fld = cfg.cell(value)
            _, report = run_cell(params, fld, cfg.window, cfg.dt, cfg.detector, cfg.qubit_init, cfg.engine)
        except Exception as exc:
            raise SweepError(f"{cfg.axis}={value}: {exc}") from exc
        return value, report

    if workers == 1:
        return [one(v) for v in cfg.values]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(one, cfg.values))
