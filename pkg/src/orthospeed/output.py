"""CSV and SVG writers. Floats use 17 significant digits, LF line endings."""

from __future__ import annotations

import io
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .orthodetect import PAIRS, OrthogonalityEvent, SpeedReport
from .spectral import OverlapTrace

TRACE_COLUMNS = (
    "t", "rho11", "rho22", "re_rho12", "im_rho12", "lambda1", "lambda2",
    "sp11", "sp12", "sp21", "sp22", "degenerate",
)
EVENT_COLUMNS = ("pair_i", "pair_j", "t_event", "residual")
SUMMARY_COLUMNS = (
    "axis", "value", "count_11", "count_12", "count_21", "count_22",
    "total_events", "first_orthogonality_time", "speed",
)


def fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, (bool, np.bool_)):
        return "1" if x else "0"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, str):
        return x
    return "%.17g" % float(x)


def _table(header_lines: Iterable[str], columns: Sequence[str], rows: Iterable[Sequence]) -> str:
    buf = io.StringIO()
    for line in header_lines:
        buf.write(line if line.startswith("#") else "# " + line)
        buf.write("\n")
    buf.write(",".join(columns) + "\n")
    for row in rows:
        buf.write(",".join(fmt(x) for x in row) + "\n")
    return buf.getvalue()


def _write(path, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def trace_csv(trace: OverlapTrace, header=(), extra: dict | None = None) -> str:
    """``extra`` maps additional column names to per-sample arrays."""
    rho, sp = trace.rho, trace.sp
    cols = [
        trace.t, rho.rho11, rho.rho22, np.real(rho.rho12), np.imag(rho.rho12),
        trace.spectral.lambda1, trace.spectral.lambda2,
        sp[:, 0, 0], sp[:, 0, 1], sp[:, 1, 0], sp[:, 1, 1],
    ]
    columns = list(TRACE_COLUMNS)
    extra = extra or {}
    columns.extend(extra)
    rows = (
        [float(c[k]) for c in cols] + [bool(trace.degenerate[k])] + [float(v[k]) for v in extra.values()]
        for k in range(len(trace))
    )
    return _table(header, columns, rows)


def events_csv(events: Sequence[OrthogonalityEvent], header=()) -> str:
    rows = ((e.pair[0], e.pair[1], e.t_event, e.residual) for e in events)
    return _table(header, EVENT_COLUMNS, rows)


def summary_csv(axis: str, results: Sequence[tuple[object, SpeedReport]], header=()) -> str:
    rows = (
        [axis, value] + [r.counts[p] for p in PAIRS]
        + [r.total_events, r.first_orthogonality_time, r.speed]
        for value, r in results
    )
    return _table(header, SUMMARY_COLUMNS, rows)


def write_trace_csv(path, trace, header=(), extra=None) -> None:
    _write(path, trace_csv(trace, header, extra))


def write_events_csv(path, events, header=()) -> None:
    _write(path, events_csv(events, header))


def write_summary_csv(path, axis, results, header=()) -> None:
    _write(path, summary_csv(axis, results, header))


SVG_COLORS = {(1, 1): "#1f77b4", (1, 2): "#d62728", (2, 1): "#2ca02c", (2, 2): "#9467bd"}


def svg_text(trace: OverlapTrace, events: Sequence[OrthogonalityEvent] = (), title: str = "") -> str:
    """Line plot of the four |Sp_ij(t)| traces with event markers."""
    if len(trace) < 2:
        raise ValueError("cannot plot a trace with fewer than two samples")
    W, H = 720, 360
    left, right, top, bottom = 60, 20, 30, 40
    pw, ph = W - left - right, H - top - bottom
    t0, t1 = float(trace.t[0]), float(trace.t[-1])

    def x_of(t):
        return left + pw * (np.asarray(t, float) - t0) / (t1 - t0)

    def y_of(v):
        return top + ph * (1.0 - np.asarray(v, float))

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">',
        f'<rect x="{left}" y="{top}" width="{pw}" height="{ph}" fill="none" stroke="#000"/>',
    ]
    for frac in (0.0, 0.5, 1.0):
        y = y_of(frac)
        out.append(f'<text x="{left - 8}" y="{y + 4:.2f}" font-size="11" text-anchor="end">{frac:g}</text>')
    for frac in (0.0, 0.5, 1.0):
        t = t0 + frac * (t1 - t0)
        out.append(
            f'<text x="{x_of(t):.2f}" y="{H - bottom + 16}" font-size="11" text-anchor="middle">{t:g}</text>'
        )
    out.append(f'<text x="{left + pw / 2:.1f}" y="{H - 6}" font-size="12" text-anchor="middle">scaled time</text>')
    if title:
        out.append(f'<text x="{left}" y="{top - 10}" font-size="12">{title}</text>')
    xs = x_of(trace.t)
    for i, j in PAIRS:
        ys = y_of(trace.sp[:, i - 1, j - 1])
        pts = " ".join(f"{x:.2f},{y:.2f}" for x, y in zip(xs, ys))
        out.append(
            f'<polyline id="sp{i}{j}" fill="none" stroke="{SVG_COLORS[(i, j)]}" '
            f'stroke-width="1" points="{pts}"/>'
        )
    for e in events:
        out.append(
            f'<circle cx="{x_of(e.t_event):.2f}" cy="{y_of(e.residual):.2f}" r="3" '
            f'fill="{SVG_COLORS[e.pair]}"/>'
        )
    for k, (i, j) in enumerate(PAIRS):
        x = left + 10 + 70 * k
        out.append(f'<text x="{x}" y="{top + 14}" font-size="11" fill="{SVG_COLORS[(i, j)]}">|Sp{i}{j}|</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def emit_svg(trace: OverlapTrace, path, events=(), title: str = "") -> None:
    _write(Path(path), svg_text(trace, events, title))
