"""Run configuration: JSON documents with defaults, dotted overrides and validation."""

from __future__ import annotations

import copy
import json
import math
from pathlib import Path

import numpy as np

from .fieldstates import make_field
from .orthodetect import DetectorSettings
from .propagator import ModelParams, qubit_state
from .sweep import AXES, SweepConfig

ECHO_PREFIX = "# config: "

DEFAULTS = {
    "model": {"g": 0.1, "delta": 1.0},
    "field": {"kind": "fock", "n": 1, "mu": 10, "eta": 0.1, "nbar": 1.0, "tail_tol": 1e-12},
    "qubit": {"theta": math.pi / 4, "phi": 0.0},
    "time": {"t0": 0.0, "t1": 40.0, "dt": 0.005},
    "detector": {"epsilon_orth": 0.02, "refine_tol": 1e-8},
    "output": {
        "trace_path": "trace.csv",
        "events_path": "events.csv",
        "plot_path": None,
        "summary_path": "summary.csv",
    },
    "engine": "closed_form",
    "sweep": {"axis": None, "values": []},
}

FIELD_KINDS = ("fock", "binomial", "coherent_approx")
ENGINE_CHOICES = ("closed_form", "oracle", "both")


class ConfigError(ValueError):
    pass


def _merge(base: dict, update: dict, path: str = "") -> dict:
    for key, value in update.items():
        where = f"{path}{key}"
        if key not in base:
            raise ConfigError(f"unknown configuration key {where!r}")
        if isinstance(base[key], dict):
            if not isinstance(value, dict):
                raise ConfigError(f"{where!r} must be an object")
            _merge(base[key], value, where + ".")
        else:
            base[key] = value
    return base


def read_config_file(path) -> dict:
    """Load a JSON config, or the echoed config from an output CSV header."""
    text = Path(path).read_text(encoding="utf-8")
    if text.startswith("#"):
        for line in text.splitlines():
            if line.startswith(ECHO_PREFIX):
                return json.loads(line[len(ECHO_PREFIX):])
        raise ConfigError(f"{path}: no echoed configuration found")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON ({exc})") from exc


def parse_override(item: str) -> tuple[list[str], object]:
    if "=" not in item:
        raise ConfigError(f"override {item!r} is not of the form key=value")
    key, raw = item.split("=", 1)
    try:
        value = json.loads(raw)
    except json.JSONDecodeError:
        value = raw
    return key.strip().split("."), value


def resolve(raw: dict | None = None, overrides=(), engine: str | None = None) -> dict:
    """Defaults <- file contents <- ``--set`` overrides <- ``--engine``."""
    cfg = copy.deepcopy(DEFAULTS)
    if raw:
        if not isinstance(raw, dict):
            raise ConfigError("configuration must be a JSON object")
        _merge(cfg, raw)
    for item in overrides:
        keys, value = parse_override(item)
        nested = value
        for k in reversed(keys):
            nested = {k: nested}
        _merge(cfg, nested)
    if engine is not None:
        cfg["engine"] = engine
    validate(cfg)
    return cfg


def _number(cfg, section, key, *, minimum=None, strict=False):
    value = cfg[section][key]
    if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value):
        raise ConfigError(f"{section}.{key} must be a finite number, got {value!r}")
    if minimum is not None and (value <= minimum if strict else value < minimum):
        raise ConfigError(f"{section}.{key} must be {'>' if strict else '>='} {minimum}, got {value!r}")
    return value


def validate(cfg: dict) -> None:
    _number(cfg, "model", "g", minimum=0)
    _number(cfg, "model", "delta")
    fld = cfg["field"]
    if fld["kind"] not in FIELD_KINDS:
        raise ConfigError(f"field.kind must be one of {FIELD_KINDS}, got {fld['kind']!r}")
    for key in ("n", "mu"):
        if not isinstance(fld[key], int) or isinstance(fld[key], bool) or fld[key] < 0:
            raise ConfigError(f"field.{key} must be a non-negative integer")
    eta = _number(cfg, "field", "eta", minimum=0)
    if eta > 1:
        raise ConfigError("field.eta must lie in [0, 1]")
    _number(cfg, "field", "nbar", minimum=0)
    _number(cfg, "field", "tail_tol", minimum=0, strict=True)
    _number(cfg, "qubit", "theta")
    _number(cfg, "qubit", "phi")
    t0 = _number(cfg, "time", "t0")
    t1 = _number(cfg, "time", "t1")
    _number(cfg, "time", "dt", minimum=0, strict=True)
    if not t1 > t0:
        raise ConfigError(f"time.t1 must exceed time.t0 (got t0={t0}, t1={t1})")
    eps = _number(cfg, "detector", "epsilon_orth", minimum=0, strict=True)
    if eps > 0.1:
        raise ConfigError("detector.epsilon_orth must lie in (0, 0.1]")
    _number(cfg, "detector", "refine_tol", minimum=0, strict=True)
    if cfg["engine"] not in ENGINE_CHOICES:
        raise ConfigError(f"engine must be one of {ENGINE_CHOICES}, got {cfg['engine']!r}")
    for key, value in cfg["output"].items():
        if value is not None and not isinstance(value, str):
            raise ConfigError(f"output.{key} must be a path string or null")
    axis = cfg["sweep"]["axis"]
    if axis is not None and axis not in AXES:
        raise ConfigError(f"sweep.axis must be one of {AXES}, got {axis!r}")
    if not isinstance(cfg["sweep"]["values"], list):
        raise ConfigError("sweep.values must be a list")


def model_of(cfg) -> ModelParams:
    return ModelParams(cfg["model"]["g"], cfg["model"]["delta"])


def field_of(cfg):
    fld = cfg["field"]
    kind = fld["kind"]
    try:
        if kind == "fock":
            return make_field(kind, n=fld["n"])
        if kind == "binomial":
            return make_field(kind, mu=fld["mu"], eta=fld["eta"])
        return make_field(kind, nbar=fld["nbar"], tail_tol=fld["tail_tol"])
    except ValueError as exc:
        raise ConfigError(f"field: {exc}") from exc


def field_spec_of(cfg) -> dict:
    fld = cfg["field"]
    keys = {"fock": ("n",), "binomial": ("mu", "eta"), "coherent_approx": ("nbar", "tail_tol")}
    return {"kind": fld["kind"], **{k: fld[k] for k in keys[fld["kind"]]}}


def qubit_of(cfg) -> np.ndarray:
    return qubit_state(cfg["qubit"]["theta"], cfg["qubit"]["phi"])


def detector_of(cfg) -> DetectorSettings:
    return DetectorSettings(
        epsilon_orth=cfg["detector"]["epsilon_orth"], refine_tol=cfg["detector"]["refine_tol"]
    )


def window_of(cfg) -> tuple[float, float]:
    return float(cfg["time"]["t0"]), float(cfg["time"]["t1"])


def sweep_of(cfg) -> SweepConfig:
    sw = cfg["sweep"]
    if sw["axis"] is None:
        raise ConfigError("sweep.axis is required for a sweep")
    if not sw["values"]:
        raise ConfigError("sweep.values must not be empty")
    engine = "closed_form" if cfg["engine"] == "both" else cfg["engine"]
    try:
        return SweepConfig(
            base=model_of(cfg),
            field_spec=field_spec_of(cfg),
            axis=sw["axis"],
            values=tuple(sw["values"]),
            window=window_of(cfg),
            dt=cfg["time"]["dt"],
            detector=detector_of(cfg),
            qubit_init=qubit_of(cfg),
            engine=engine,
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def echo(cfg: dict) -> str:
    return ECHO_PREFIX + json.dumps(cfg, sort_keys=True, separators=(",", ":"))
