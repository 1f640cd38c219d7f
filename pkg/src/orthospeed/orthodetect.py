"""Orthogonality events in overlap traces and the resulting speed metrics.

An event is a local minimum of |Sp_ij(t)| that reaches (nearly) zero. Grid
minima are located first, then the time is polished by golden-section
search on |Sp_ij|**2 using a continuous evaluator.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .spectral import OverlapSample, OverlapTrace

PAIRS = ((1, 1), (1, 2), (2, 1), (2, 2))
INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class DetectorSettings:
    epsilon_orth: float = 0.02
    refine_tol: float = 1e-8
    # grid minima above this are not refined
    refine_below: float = 0.25
    max_dt: float = 0.01

    def __post_init__(self):
        if not 0 < self.epsilon_orth <= 0.1:
            raise ValueError(f"epsilon_orth must lie in (0, 0.1], got {self.epsilon_orth!r}")
        if not self.refine_tol > 0:
            raise ValueError("refine_tol must be positive")


@dataclass(frozen=True)
class OrthogonalityEvent:
    pair: tuple[int, int]
    t_event: float
    residual: float


@dataclass(frozen=True)
class SpeedReport:
    window: tuple[float, float]
    counts: dict
    total_events: int
    first_orthogonality_time: Optional[float]
    speed: float
    events: tuple = field(default=(), repr=False)

    def pair_speed(self, i: int, j: int) -> float:
        return self.counts[(i, j)] / (self.window[1] - self.window[0])


def golden_section_min(f: Callable[[float], float], lo: float, hi: float, tol: float):
    """Minimize a unimodal ``f`` on [lo, hi] until the bracket is below ``tol``.

    Returns ``(x, f(x))`` for the best point evaluated.
    """
    a, b = lo, hi
    c = b - INVPHI * (b - a)
    d = a + INVPHI * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - INVPHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + INVPHI * (b - a)
            fd = f(d)
    # the final midpoint is tested too; it is usually the most accurate
    candidates = [(c, fc), (d, fd)]
    m = 0.5 * (a + b)
    candidates.append((m, f(m)))
    return min(candidates, key=lambda p: p[1])


def _as_arrays(trace):
    if isinstance(trace, OverlapTrace) or hasattr(trace, "sp"):
        return np.asarray(trace.t, float), np.asarray(trace.sp, float), np.asarray(trace.degenerate, bool)
    samples = list(trace)
    if not samples:
        return np.empty(0), np.empty((0, 2, 2)), np.empty(0, bool)
    t = np.array([s.t for s in samples], float)
    sp = np.stack([np.broadcast_to(np.asarray(s.sp, float), (2, 2)) for s in samples])
    deg = np.array([bool(s.degenerate) for s in samples])
    return t, sp, deg


def _grid_minima(v, valid, refine_below):
    left, mid, right = v[:-2], v[1:-1], v[2:]
    is_min = (mid <= left) & (mid <= right) & ((mid < left) | (mid < right))
    is_min &= valid[:-2] & valid[1:-1] & valid[2:]
    is_min &= mid < refine_below
    return np.nonzero(is_min)[0] + 1


def scan_events(
    trace: OverlapTrace | Sequence[OverlapSample],
    epsilon_orth: float = 0.02,
    refine_tol: float = 1e-8,
    evaluator: Optional[Callable[[float], OverlapSample]] = None,
    settings: Optional[DetectorSettings] = None,
) -> list[OrthogonalityEvent]:
    """Find orthogonality events of all four pairs (i, j).

    ``evaluator(t)`` must return an :class:`OverlapSample` (or anything with
    an ``sp`` attribute) at arbitrary t; without it the grid minimum is
    reported unrefined. Degenerate samples are skipped. Minima at the first
    or last grid point are not events.
    """
    if settings is None:
        settings = DetectorSettings(epsilon_orth=epsilon_orth, refine_tol=refine_tol)
    eps, tol = settings.epsilon_orth, settings.refine_tol
    t, sp, deg = _as_arrays(trace)
    if t.size < 3:
        return []
    steps = np.diff(t)
    if np.any(steps <= 0):
        raise ValueError("time grid must be strictly increasing")
    if steps.max() > settings.max_dt * (1 + 1e-9):
        warnings.warn(
            f"grid step {steps.max():g} exceeds {settings.max_dt:g}; events may be missed",
            stacklevel=2,
        )
    t0, t1 = t[0], t[-1]
    valid = ~deg
    events = []
    for i, j in PAIRS:
        v = sp[:, i - 1, j - 1]
        found = []
        for k in _grid_minima(v, valid, settings.refine_below):
            if evaluator is None:
                t_star, resid = float(t[k]), float(v[k])
            else:
                def f(x, i=i, j=j):
                    s = evaluator(x)
                    if getattr(s, "degenerate", False):
                        return np.inf
                    return float(np.asarray(s.sp)[i - 1, j - 1]) ** 2

                t_star, f_star = golden_section_min(f, t[k - 1], t[k + 1], tol)
                resid = math.sqrt(f_star) if np.isfinite(f_star) else np.inf
            if resid < eps and t0 < t_star < t1:
                found.append(OrthogonalityEvent((i, j), float(t_star), float(resid)))
        events.extend(_merge(found, 10 * tol))
    events.sort(key=lambda e: (e.t_event, e.pair))
    return events


def _merge(events, min_sep):
    out: list[OrthogonalityEvent] = []
    for ev in sorted(events, key=lambda e: e.t_event):
        if out and ev.t_event - out[-1].t_event < min_sep:
            if ev.residual < out[-1].residual:
                out[-1] = ev
        else:
            out.append(ev)
    return out


def low_runs(t, values, threshold) -> list[tuple[float, float]]:
    """(start, end) times of maximal runs of grid points below ``threshold``.

    Runs touching either end of the window are dropped: boundary minima are
    never events.
    """
    t = np.asarray(t, float)
    low = np.concatenate([[False], np.asarray(values, float) < threshold, [False]])
    edges = np.diff(low.astype(int))
    starts = np.nonzero(edges == 1)[0]
    ends = np.nonzero(edges == -1)[0] - 1
    last = t.size - 1
    return [(float(t[a]), float(t[b])) for a, b in zip(starts, ends) if a > 0 and b < last]


def unexplained_runs(runs, event_times, dt: float) -> list[tuple[float, float]]:
    """Runs with no event inside them or within one grid step of their ends."""
    ev = np.asarray(sorted(event_times), float)
    slack = dt * (1 + 1e-9)
    return [
        (a, b) for a, b in runs
        if not np.any((ev >= a - slack) & (ev <= b + slack))
    ]


def distinct_instants(events: Sequence[OrthogonalityEvent], instant_tol: float = 1e-4) -> list[float]:
    """Event times with coincident events of different pairs counted once."""
    times = sorted(e.t_event for e in events)
    out: list[float] = []
    for x in times:
        if not out or x - out[-1] > instant_tol:
            out.append(x)
    return out


def speed_report(events: Sequence[OrthogonalityEvent], window, instant_tol: float = 1e-4) -> SpeedReport:
    """Summarize events on ``window = (t0, t1)``.

    |Sp_11| = |Sp_22| and |Sp_12| = |Sp_21| for a two-level system, so every
    orthogonality instant shows up in two pairs. ``total_events`` counts
    instants; per-pair counts stay in ``counts``.
    """
    t0, t1 = map(float, window)
    if not t1 > t0:
        raise ValueError("window must satisfy t1 > t0")
    for e in events:
        if not t0 <= e.t_event <= t1:
            raise ValueError(f"event at t={e.t_event} lies outside the window {window}")
    counts = {p: 0 for p in PAIRS}
    for e in events:
        counts[e.pair] += 1
    instants = distinct_instants(events, instant_tol)
    first = instants[0] if instants else None
    return SpeedReport(
        (t0, t1), counts, len(instants), first, len(instants) / (t1 - t0), tuple(events)
    )
