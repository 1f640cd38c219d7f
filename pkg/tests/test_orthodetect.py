import math
import warnings

import numpy as np
import pytest

from orthospeed.fieldstates import make_binomial, make_fock
from orthospeed.orthodetect import (
    PAIRS,
    DetectorSettings,
    OrthogonalityEvent,
    golden_section_min,
    low_runs,
    scan_events,
    speed_report,
    unexplained_runs,
)
from orthospeed.propagator import ModelParams
from orthospeed.spectral import OverlapSample
from orthospeed.sweep import run_cell


def synthetic(fn, t0, t1, dt):
    t = np.arange(t0, t1 + dt / 2, dt)
    samples = [OverlapSample(x, np.full((2, 2), fn(x)), False) for x in t]
    return samples, lambda x: OverlapSample(x, np.full((2, 2), fn(x)), False)


def test_golden_section():
    x, fx = golden_section_min(lambda x: (x - 0.3) ** 2, 0.0, 1.0, 1e-10)
    assert x == pytest.approx(0.3, abs=1e-9)
    x, _ = golden_section_min(lambda x: abs(x - 0.71), 0.5, 0.9, 1e-10)
    assert x == pytest.approx(0.71, abs=1e-10)


def test_abs_cos_trace():
    samples, ev = synthetic(lambda x: abs(math.cos(x)), 0, 2 * np.pi, 0.01)
    events = scan_events(samples, 1e-3, 1e-9, ev)
    times = [e.t_event for e in events if e.pair == (1, 1)]
    np.testing.assert_allclose(times, [np.pi / 2, 3 * np.pi / 2], atol=1e-8)
    assert all(e.residual < 1e-3 for e in events)
    assert {e.pair for e in events} == {(1, 1), (1, 2), (2, 1), (2, 2)}


def test_constant_trace_has_no_events():
    samples, ev = synthetic(lambda x: 0.5, 0, 10, 0.01)
    assert scan_events(samples, 0.02, 1e-8, ev) == []


def test_non_monotone_grid_rejected():
    samples, ev = synthetic(lambda x: 0.5, 0, 1, 0.01)
    samples[3], samples[4] = samples[4], samples[3]
    with pytest.raises(ValueError):
        scan_events(samples, 0.02, 1e-8, ev)


def test_coarse_grid_warns():
    samples, ev = synthetic(lambda x: abs(math.cos(x)), 0, 10, 0.1)
    with pytest.warns(UserWarning):
        scan_events(samples, 0.02, 1e-8, ev)


def test_degenerate_samples_skipped():
    t = np.arange(0, 2 * np.pi, 0.01)
    samples = [OverlapSample(x, np.full((2, 2), abs(math.cos(x))), abs(x - np.pi / 2) < 0.05) for x in t]
    events = scan_events(samples, 1e-3, 1e-9, None)
    assert all(abs(e.t_event - np.pi / 2) > 0.04 for e in events)


def test_resonant_vacuum_single_event():
    _, rep = run_cell(ModelParams(0.1, 0.0), make_fock(0), (0, 40), 0.005)
    times = [e.t_event for e in rep.events if e.pair == (1, 1)]
    assert len(times) == 1
    assert times[0] == pytest.approx(np.pi / 0.1, abs=1e-5)


def test_g0_law_events_and_count():
    _, rep = run_cell(ModelParams(0, 1), make_fock(0), (0, 7 * np.pi), 0.005)
    times = [e.t_event for e in rep.events if e.pair == (1, 1)]
    # the boundary zero at 7 pi is excluded
    np.testing.assert_allclose(times, [np.pi, 3 * np.pi, 5 * np.pi], atol=1e-7)
    assert rep.counts[(1, 1)] == 3


@pytest.mark.parametrize("delta", [0.5, 1.0, 2.5])
@pytest.mark.parametrize("fld", [make_fock(3), make_binomial(8, 0.5)])
def test_g0_law_any_field(delta, fld):
    _, rep = run_cell(ModelParams(0, delta), fld, (0, 20), 0.005)
    times = np.array([e.t_event for e in rep.events if e.pair == (1, 1)])
    k = np.arange(times.size)
    expected = (2 * k + 1) * np.pi / delta
    assert times.size == np.sum(expected < 20)
    np.testing.assert_allclose(times, expected[: times.size], atol=1e-7)


def test_resonance_speed_report():
    _, rep = run_cell(ModelParams(1, 0), make_fock(0), (0, 10 * np.pi), 0.005)
    t11 = [e.t_event for e in rep.events if e.pair == (1, 1)]
    np.testing.assert_allclose(t11, np.pi * np.array([1, 3, 5, 7, 9]), atol=1e-5)
    assert rep.pair_speed(1, 1) == pytest.approx(5 / (10 * np.pi))
    # |Sp_12| also vanishes whenever the state returns to the initial one
    t12 = [e.t_event for e in rep.events if e.pair == (1, 2)]
    np.testing.assert_allclose(t12, 2 * np.pi * np.array([1, 2, 3, 4]), atol=1e-5)
    assert rep.total_events == 9
    assert rep.speed == pytest.approx(9 / (10 * np.pi))
    assert rep.first_orthogonality_time == pytest.approx(np.pi, abs=1e-5)


def test_soundness_and_refinement_stability():
    p, fld = ModelParams(0.1, 2.0), make_fock(1)
    base = DetectorSettings(refine_tol=1e-6)
    finer = DetectorSettings(refine_tol=5e-7)
    _, r1 = run_cell(p, fld, (0, 40), 0.005, base)
    _, r2 = run_cell(p, fld, (0, 40), 0.005, finer)
    assert r1.counts == r2.counts
    assert all(e.residual < base.epsilon_orth for e in r1.events)
    for a, b in zip(r1.events, r2.events):
        assert abs(a.t_event - b.t_event) < 2e-6


@pytest.mark.parametrize(
    "p, fld",
    [(ModelParams(0.1, 2.0), make_fock(1)), (ModelParams(0.1, 0.3), make_fock(20)), (ModelParams(0, 8), make_fock(1))],
)
def test_completeness_on_grid(p, fld):
    dt = 0.005
    trace, rep = run_cell(p, fld, (0, 40), dt)
    for i, j in PAIRS:
        ev = [e.t_event for e in rep.events if e.pair == (i, j)]
        runs = low_runs(trace.t, trace.sp[:, i - 1, j - 1], 0.01)
        assert unexplained_runs(runs, ev, dt) == []


def test_speed_report_empty():
    rep = speed_report([], (0, 10))
    assert rep.speed == 0 and rep.first_orthogonality_time is None and rep.total_events == 0


def test_speed_report_counts_instants_once():
    events = [
        OrthogonalityEvent((1, 1), 1.0, 0.0),
        OrthogonalityEvent((2, 2), 1.0 + 1e-9, 0.0),
        OrthogonalityEvent((1, 2), 2.0, 0.0),
    ]
    rep = speed_report(events, (0, 4))
    assert rep.counts == {(1, 1): 1, (1, 2): 1, (2, 1): 0, (2, 2): 1}
    assert rep.total_events == 2 and rep.speed == 0.5
    with pytest.raises(ValueError):
        speed_report(events, (1.5, 4))


def test_detector_settings_validation():
    with pytest.raises(ValueError):
        DetectorSettings(epsilon_orth=0.5)
