import warnings

import numpy as np
import pytest

from orthospeed.fieldstates import make_binomial, make_fock
from orthospeed.output import summary_csv
from orthospeed.propagator import ModelParams
from orthospeed.sweep import SweepConfig, SweepError, run_cell, run_sweep, time_grid


def test_time_grid_length():
    assert time_grid(0, 40, 0.005).size == 8001
    assert time_grid(0, 1, 0.3).size == 4
    with pytest.raises(ValueError):
        time_grid(1, 1, 0.1)


@pytest.mark.parametrize(
    "params, fld, window, dt",
    [
        (ModelParams(0.1, 1.0), make_fock(1), (0, 40), 0.005),
        (ModelParams(0.1, 0.3), make_fock(20), (0, 40), 0.005),
        (ModelParams(0.001, 1.0), make_binomial(10, 0.1), (0, 100), 0.01),
    ],
)
def test_figure_cells(params, fld, window, dt):
    trace, rep = run_cell(params, fld, window, dt)
    assert len(trace) == int(np.floor((window[1] - window[0]) / dt)) + 1
    assert rep.window == window and rep.speed >= 0


def test_engines_agree():
    a, ra = run_cell(ModelParams(0.25, 1.0), make_fock(1), (0, 20), 0.005, engine="closed_form")
    b, rb = run_cell(ModelParams(0.25, 1.0), make_fock(1), (0, 20), 0.005, engine="oracle")
    np.testing.assert_allclose(a.sp, b.sp, atol=1e-9)
    assert ra.counts == rb.counts


def test_sweep_order_and_dedup():
    with pytest.warns(UserWarning):
        cfg = SweepConfig(ModelParams(0.1, 1.0), {"kind": "fock", "n": 1}, "delta", (2, 0.3, 1, 0.5, 1), (0, 10))
    assert cfg.values == (0.3, 0.5, 1, 2)
    out = run_sweep(cfg, workers=3)
    assert [v for v, _ in out] == [0.3, 0.5, 1, 2]


@pytest.mark.parametrize(
    "axis, values, spec",
    [
        ("g", (0.1, 0.25, 0.35, 0.5), {"kind": "fock", "n": 1}),
        ("n", (1, 3, 5, 10, 20), {"kind": "fock", "n": 1}),
        ("eta", (0.001, 0.8), {"kind": "binomial", "mu": 10, "eta": 0.1}),
    ],
)
def test_sweep_axes(axis, values, spec):
    cfg = SweepConfig(ModelParams(0.1, 0.3), spec, axis, values, (0, 5), 0.01)
    out = run_sweep(cfg, workers=1)
    assert len(out) == len(values)


def test_mu_axis_defaults_binomial():
    cfg = SweepConfig(ModelParams(0.1, 0.3), {"kind": "fock", "n": 1}, "mu", (5, 10), (0, 5), 0.01)
    _, fld = cfg.cell(5)
    assert fld.kind == "binomial" and fld.label == {"mu": 5, "eta": 0.1}


def test_sweep_determinism_across_workers():
    cfg = SweepConfig(ModelParams(0.1, 1.0), {"kind": "fock", "n": 1}, "g", (0.1, 0.25, 0.35, 0.5), (0, 20))
    assert summary_csv("g", run_sweep(cfg, workers=1)) == summary_csv("g", run_sweep(cfg, workers=4))


def test_sweep_errors_are_tagged():
    cfg = SweepConfig(ModelParams(0.1, 1.0), {"kind": "binomial", "mu": 4, "eta": 0.1}, "eta", (0.5, 2.0), (0, 5), 0.01)
    with pytest.raises(SweepError, match="eta=2.0"):
        run_sweep(cfg)


def test_empty_axis_rejected():
    with pytest.raises(ValueError):
        SweepConfig(ModelParams(0.1, 1.0), {"kind": "fock", "n": 1}, "g", ())
