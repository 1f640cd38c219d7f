"""Built-in verification battery behind ``orthospeed verify``."""

from __future__ import annotations

import time
import warnings
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import oracle
from .fieldstates import make_binomial, make_fock
from .orthodetect import PAIRS, DetectorSettings, low_runs, unexplained_runs
from .output import summary_csv
from .propagator import ModelParams, binomial_rho_published, closed_form_rho, evolve_joint, fock_rho_published
from .spectral import overlap_trace
from .sweep import SweepConfig, run_cell, run_sweep


@dataclass
class CheckResult:
    name: str
    passed: bool
    hard: bool
    value: float
    limit: float
    seconds: float = 0.0
    note: str = ""

    @property
    def status(self) -> str:
        if self.passed:
            return "PASS"
        return "FAIL" if self.hard else "FLAG"


def random_cell(rng):
    params = ModelParams(rng.uniform(0, 1), rng.uniform(0, 2))
    if rng.random() < 0.5:
        fld = make_fock(int(rng.integers(0, 21)))
    else:
        fld = make_binomial(int(rng.integers(1, 21)), rng.uniform(0, 0.9))
    return params, fld


def oracle_equivalence(draws: int = 200, seed: int = 7) -> float:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(draws):
        params, fld = random_cell(rng)
        t = rng.uniform(0, 50)
        a = closed_form_rho(params, fld, t).matrix()
        b = oracle.oracle_rho(params, fld, t).matrix()
        worst = max(worst, float(np.max(np.abs(a - b))))
    return worst


def fock_formula_deviation(points: int = 100) -> float:
    t = np.linspace(0, 25, points)
    worst = 0.0
    for delta in (0.0, 0.3, 1.0, 2.0):
        for g in (0.1, 0.5):
            for n in (0, 1, 5):
                p = ModelParams(g, delta)
                a = fock_rho_published(p, n, t).matrix()
                b = closed_form_rho(p, make_fock(n), t).matrix()
                worst = max(worst, float(np.max(np.abs(a - b))))
    return worst


def binomial_formula_deviation() -> float:
    t = np.linspace(0, 50, 501)
    return binomial_rho_published(ModelParams(0.01, 1.0), 10, 0.1, t).max_deviation


def unitarity_error(omega_form: str = "sqrt") -> float:
    t = np.linspace(0, 200, 2001)
    worst = 0.0
    cells = [
        (ModelParams(0.1, 1.0), make_fock(1)),
        (ModelParams(0.5, 0.3), make_fock(20)),
        (ModelParams(0.3, 2.0), make_binomial(20, 0.5)),
        (ModelParams(1.0, 0.0), make_fock(0)),
    ]
    for p, fld in cells:
        norm = evolve_joint(p, fld, None, t, omega_form).norm()
        worst = max(worst, float(np.max(np.abs(norm - 1.0))))
    return worst


def density_violations(cells: int = 40, seed: int = 11) -> float:
    """Largest violation of trace, range and positivity over random traces."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    t = np.linspace(0, 50, 501)
    for _ in range(cells):
        p, fld = random_cell(rng)
        rho = closed_form_rho(p, fld, t)
        r11, r22 = rho.rho11, rho.rho22
        worst = max(
            worst,
            float(np.max(np.abs(r11 + r22 - 1))),
            float(np.max(-np.minimum(r11, r22))),
            float(np.max(np.maximum(r11, r22) - 1)),
            float(np.max(np.abs(rho.rho12) ** 2 - r11 * r22)),
        )
    return max(worst, 0.0)


def overlap_normalization(cells: int = 40, seed: int = 13) -> float:
    rng = np.random.default_rng(seed)
    worst = 0.0
    t = np.linspace(0, 50, 501)
    for _ in range(cells):
        p, fld = random_cell(rng)
        tr = overlap_trace(t, closed_form_rho(p, fld, t))
        sq = tr.sp[~tr.degenerate] ** 2
        worst = max(
            worst,
            float(np.max(np.abs(sq.sum(axis=-1) - 1), initial=0.0)),
            float(np.max(np.abs(sq.sum(axis=-2) - 1), initial=0.0)),
        )
    return worst


def conservation_error(cells: int = 10, seed: int = 17) -> float:
    """Drift of <H> and of the excitation number under dense evolution."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    t = np.linspace(0, 200, 201)
    for _ in range(cells):
        p, fld = random_cell(rng)
        d = fld.amplitudes.size + 1
        H = oracle.build_hamiltonian(p, d)
        psi = oracle.Diagonalized(H).evolve(oracle.product_state(fld, None, d), t)
        for op in (H.matrix, oracle.excitation_number(d)):
            vals = np.einsum("ti,ij,tj->t", psi.conj(), op, psi).real
            worst = max(worst, float(np.max(np.abs(vals - vals[0]))))
    return worst


def g0_law_error(dt: float = 0.005) -> float:
    """Pair-(1,1) event times against (2k+1)pi for g=0, delta=1 on (0, 20)."""
    expected = np.pi * np.array([1, 3, 5])
    worst = 0.0
    for fld in (make_fock(2), make_binomial(10, 0.3)):
        _, rep = run_cell(ModelParams(0.0, 1.0), fld, (0.0, 20.0), dt)
        times = np.array([e.t_event for e in rep.events if e.pair == (1, 1)])
        if times.size != expected.size:
            return np.inf
        worst = max(worst, float(np.max(np.abs(times - expected))))
    return worst


def resonance_law_error(dt: float = 0.005) -> float:
    """Pair-(1,1) events at (2k+1)pi/g for delta=0 and the vacuum field."""
    worst = 0.0
    for g, t1 in ((0.1, 40.0), (1.0, 10 * np.pi)):
        _, rep = run_cell(ModelParams(g, 0.0), make_fock(0), (0.0, t1), dt)
        times = np.array([e.t_event for e in rep.events if e.pair == (1, 1)])
        k = np.arange(times.size)
        expected = (2 * k + 1) * np.pi / g
        if times.size != int(np.floor((t1 * g / np.pi + 1) / 2)):
            return np.inf
        worst = max(worst, float(np.max(np.abs(times - expected))))
    return worst


def completeness_misses(dt: float = 0.005) -> float:
    """Missed analytic events plus unexplained runs of near-zero grid points.

    Uses g=0, delta=8, where |Sp_11| = |cos(4t)| has zeros every pi/4.
    """
    window = (0.0, 10.0)
    det = DetectorSettings()
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        trace, rep = run_cell(ModelParams(0.0, 8.0), make_fock(1), window, dt, det)
    expected = np.pi / 8 * (2 * np.arange(13) + 1)
    expected = expected[expected < window[1]]
    times = np.array([e.t_event for e in rep.events if e.pair == (1, 1)])
    missed = sum(1 for x in expected if times.size == 0 or np.min(np.abs(times - x)) > 1e-6)
    stray = 0
    for i, j in PAIRS:
        ev_t = [e.t_event for e in rep.events if e.pair == (i, j)]
        runs = low_runs(trace.t, trace.sp[:, i - 1, j - 1], det.epsilon_orth / 2)
        stray += len(unexplained_runs(runs, ev_t, dt))
    return float(missed + stray)


def determinism_mismatch(workers: int = 4) -> float:
    cfg = SweepConfig(
        base=ModelParams(0.1, 1.0),
        field_spec={"kind": "fock", "n": 1},
        axis="g",
        values=(0.1, 0.25, 0.35, 0.5),
        window=(0.0, 20.0),
        dt=0.005,
    )
    one = summary_csv("g", run_sweep(cfg, workers=1))
    many = summary_csv("g", run_sweep(cfg, workers=workers))
    return 0.0 if one == many else 1.0


def battery(dt: float = 0.005, omega_form: str = "sqrt") -> list[CheckResult]:
    """Run every check. ``dt`` sets the scan grid of the event checks and
    ``omega_form`` the Rabi-frequency form used in the unitarity check."""
    checks: list[tuple[str, bool, Callable[[], float], float, str]] = [
        ("oracle equivalence", True, oracle_equivalence, 1e-9, "200 random draws"),
        ("published Fock formulas", True, fock_formula_deviation, 1e-12, "24 cells x 100 times"),
        ("published binomial formulas", False, binomial_formula_deviation, 1e-8,
         "delta=1 g=0.01 mu=10 eta=0.1; deviation expected"),
        ("unitarity", True, lambda: unitarity_error(omega_form), 1e-12, f"omega_form={omega_form}"),
        ("density invariants", True, density_violations, 1e-12, "trace/range/positivity"),
        ("overlap normalization", True, overlap_normalization, 1e-10, "rows and columns"),
        ("energy and excitation conservation", True, conservation_error, 1e-10, "dense evolution"),
        ("g=0 event law", True, lambda: g0_law_error(dt), 1e-6, f"dt={dt:g}"),
        ("resonance event law", True, lambda: resonance_law_error(dt), 1e-5, f"dt={dt:g}"),
        ("detector completeness", True, lambda: completeness_misses(dt), 0.5, f"dt={dt:g}"),
        ("determinism", True, determinism_mismatch, 0.5, "1 vs 4 workers"),
    ]
    results = []
    for name, hard, fn, limit, note in checks:
        start = time.perf_counter()
        value = fn()
        results.append(
            CheckResult(name, bool(value < limit), hard, value, limit, time.perf_counter() - start, note)
        )
    return results


def format_table(results: list[CheckResult]) -> str:
    width = max(len(r.name) for r in results)
    lines = [f"{'check':<{width}}  status  {'value':>10}  {'limit':>8}  time[s]  note"]
    for r in results:
        lines.append(
            f"{r.name:<{width}}  {r.status:<6}  {r.value:>10.3g}  {r.limit:>8.0e}  {r.seconds:>7.2f}  {r.note}"
        )
    return "\n".join(lines)


def all_hard_pass(results: list[CheckResult]) -> bool:
    return all(r.passed for r in results if r.hard)
