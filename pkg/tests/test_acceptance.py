"""Exit criteria. Each test records one PASS/FAIL line, printed in the
terminal summary (see conftest.py)."""

import json
import time
from pathlib import Path

import numpy as np
import pytest

from orthospeed import verify
from orthospeed.fieldstates import make_binomial, make_fock
from orthospeed.propagator import ModelParams, binomial_rho_published
from orthospeed.sweep import run_cell

pytestmark = pytest.mark.acceptance

GOLDEN = json.loads((Path(__file__).parent / "data" / "golden_counts.json").read_text())
LINES: list[str] = []


def record(number, name, ok, detail):
    LINES.append(f"[{'PASS' if ok else 'FAIL'}] criterion {number:>2} {name}: {detail}")
    return ok


def counts_for(study, cells):
    """Live total event counts, checked against the frozen golden values."""
    live = []
    for value, params, fld, window, dt in cells:
        _, rep = run_cell(params, fld, window, dt)
        live.append(rep.total_events)
    golden = [row["total_events"] for row in GOLDEN[study]]
    assert live == golden, f"{study}: live counts {live} differ from golden {golden}"
    return live


def test_01_oracle_equivalence():
    start = time.perf_counter()
    worst = verify.oracle_equivalence(draws=200)
    elapsed = time.perf_counter() - start
    ok = worst < 1e-9 and elapsed < 10
    record(1, "oracle equivalence", ok, f"max |diff| = {worst:.2e} (< 1e-9), {elapsed:.2f} s (< 10 s)")
    assert ok


def test_02_published_fock_formulas():
    worst = verify.fock_formula_deviation(points=100)
    ok = worst < 1e-12
    record(2, "published Fock formulas", ok, f"max |diff| = {worst:.2e} (< 1e-12)")
    assert ok


def test_03_binomial_formula_diagnostic():
    diag = binomial_rho_published(ModelParams(0.01, 1.0), 10, 0.1, np.linspace(0, 50, 501))
    results = {r.name: r for r in verify.battery()}
    check = results["published binomial formulas"]
    flagged_correctly = (check.status == "FLAG") == (diag.max_deviation > 1e-8) and not check.hard
    ok = np.isfinite(diag.max_deviation) and flagged_correctly
    record(3, "binomial formula diagnostic", ok,
           f"deviation from oracle = {diag.max_deviation:.3g}; verify status {check.status}")
    assert ok


def test_04_g0_event_law():
    worst, detail = 0.0, []
    for fld in (make_fock(1), make_fock(5), make_binomial(10, 0.3)):
        _, rep = run_cell(ModelParams(0.0, 1.0), fld, (0.0, 20.0), 0.005)
        t11 = np.array([e.t_event for e in rep.events if e.pair == (1, 1)])
        err = np.inf if t11.size != 3 else float(np.max(np.abs(t11 - np.pi * np.array([1, 3, 5]))))
        worst = max(worst, err)
        detail.append(f"{fld.describe()}:{t11.size} events")
    ok = worst < 1e-6
    record(4, "g=0 event law", ok, f"max |t - (2k+1)pi| = {worst:.2e} (< 1e-6); " + ", ".join(detail))
    assert ok


def test_05_resonance_event_law():
    worst = 0.0
    for g in (0.1, 1.0):
        _, rep = run_cell(ModelParams(g, 0.0), make_fock(0), (0.0, 40.0), 0.005)
        t11 = np.array([e.t_event for e in rep.events if e.pair == (1, 1)])
        expected = (2 * np.arange(20) + 1) * np.pi / g
        expected = expected[expected < 40.0]
        err = np.inf if t11.size != expected.size else float(np.max(np.abs(t11 - expected)))
        worst = max(worst, err)
    ok = worst < 1e-5
    record(5, "resonance event law", ok, f"max |t - (2k+1)pi/g| = {worst:.2e} (< 1e-5)")
    assert ok


def test_06_fig2_coupling_claim():
    gs = (0.1, 0.25, 0.35, 0.5)
    c = counts_for("fig2_g", [(g, ModelParams(g, 1.0), make_fock(1), (0, 40), 0.005) for g in gs])
    ok = c[0] >= c[1] >= c[2] >= c[3] and c[0] > c[3]
    record(6, "event count nonincreasing in g", ok, f"counts at g={gs}: {c}")
    assert ok, f"counts {c} are not nonincreasing in g"


def test_07_fig3_detuning_claim():
    ds = (0.3, 0.5, 1.0, 2.0)
    c = counts_for("fig3_delta", [(d, ModelParams(0.1, d), make_fock(1), (0, 40), 0.005) for d in ds])
    ok = all(a <= b for a, b in zip(c, c[1:])) and c[-1] > c[0]
    record(7, "event count nondecreasing in delta", ok, f"counts at delta={ds}: {c}")
    assert ok


def test_08_fig4_photon_number_claim():
    ns = (1, 3, 5, 10, 20)
    c = counts_for("fig4_n", [(n, ModelParams(0.1, 0.3), make_fock(n), (0, 40), 0.005) for n in ns])
    ok = all(a <= b for a, b in zip(c, c[1:])) and c[-1] > c[0]
    record(8, "event count nondecreasing in n", ok, f"counts at n={ns}: {c}")
    assert ok


def test_09_fig7_eta_claim():
    etas = (0.001, 0.8)
    c = counts_for(
        "fig7_eta", [(e, ModelParams(0.01, 0.3), make_binomial(10, e), (0, 100), 0.01) for e in etas]
    )
    ok = abs(c[0] - c[1]) <= 1
    record(9, "event count insensitive to eta", ok, f"counts at eta={etas} (mu=10): {c}")
    assert ok


def test_10_structural_invariants():
    start = time.perf_counter()
    results = {r.name: r for r in verify.battery()}
    elapsed = time.perf_counter() - start
    names = (
        "unitarity",
        "density invariants",
        "overlap normalization",
        "energy and excitation conservation",
        "determinism",
    )
    failed = [n for n in names if not results[n].passed]
    hard_ok = verify.all_hard_pass(list(results.values()))
    ok = not failed and hard_ok and elapsed < 60
    record(10, "structural invariants", ok,
           f"failed={failed or 'none'}; full battery {elapsed:.1f} s (< 60 s)")
    assert ok
