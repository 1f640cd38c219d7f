"""Command-line interface: ``orthospeed simulate|sweep|verify|device``.

Exit codes: 0 success, 2 invalid configuration, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from pathlib import Path

import numpy as np

from . import config as cfgmod
from . import output, verify
from .device import DeviceParams, device_summary
from .oracle import oracle_rho
from .sweep import SweepError, run_cell, run_sweep

EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC = 0, 2, 3


class NumericFailure(RuntimeError):
    pass


def _load(args) -> dict:
    raw = cfgmod.read_config_file(args.config) if args.config else None
    return cfgmod.resolve(raw, args.set or (), args.engine)


def _out_path(args, cfg, key):
    name = cfg["output"][key]
    if name is None:
        return None
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out / name


def cmd_simulate(args) -> int:
    cfg = _load(args)
    params, fld = cfgmod.model_of(cfg), cfgmod.field_of(cfg)
    qubit, window = cfgmod.qubit_of(cfg), cfgmod.window_of(cfg)
    engine = cfg["engine"]
    trace, report = run_cell(
        params, fld, window, cfg["time"]["dt"], cfgmod.detector_of(cfg), qubit,
        "oracle" if engine == "oracle" else "closed_form",
    )
    extra = None
    if engine == "both":
        ref = oracle_rho(params, fld, trace.t, qubit).matrix()
        diff = np.max(np.abs(trace.rho.matrix() - ref), axis=(-1, -2))
        extra = {"max_abs_diff_oracle": diff}
    if not np.all(np.isfinite(trace.sp)):
        raise NumericFailure("non-finite overlaps in trace")
    header = [f"# orthospeed simulate field={fld.describe()}", cfgmod.echo(cfg)]
    output.write_trace_csv(_out_path(args, cfg, "trace_path"), trace, header, extra)
    events_path = _out_path(args, cfg, "events_path")
    if events_path is not None:
        output.write_events_csv(events_path, report.events, header)
    plot_path = _out_path(args, cfg, "plot_path")
    if plot_path is not None:
        title = f"g={params.g:g} delta={params.delta:g} {fld.describe()}"
        output.emit_svg(trace, plot_path, report.events, title)
    first = report.first_orthogonality_time
    print(
        f"events per pair {dict((f'{i}{j}', c) for (i, j), c in report.counts.items())}; "
        f"instants {report.total_events}; speed {report.speed:.6g}; "
        f"first orthogonality {'none' if first is None else f'{first:.10g}'}"
    )
    if extra is not None:
        print(f"max |rho_closed - rho_oracle| = {float(np.max(extra['max_abs_diff_oracle'])):.3e}")
    return EXIT_OK


def cmd_sweep(args) -> int:
    cfg = _load(args)
    sweep_cfg = cfgmod.sweep_of(cfg)
    cfg["sweep"]["values"] = list(sweep_cfg.values)
    results = run_sweep(sweep_cfg)
    header = [
        f"# orthospeed sweep axis={sweep_cfg.axis} field={json.dumps(sweep_cfg.field_spec, sort_keys=True)}",
        cfgmod.echo(cfg),
    ]
    text = output.summary_csv(sweep_cfg.axis, results, header)
    path = _out_path(args, cfg, "summary_path")
    if path is not None:
        Path(path).write_text(text, encoding="utf-8", newline="\n")
    for value, rep in results:
        print(f"{sweep_cfg.axis}={value}: instants {rep.total_events}, speed {rep.speed:.6g}")
    return EXIT_OK


def cmd_verify(args) -> int:
    results = verify.battery(dt=args.dt, omega_form=args.omega_form)
    print(verify.format_table(results))
    ok = verify.all_hard_pass(results)
    print("verify:", "PASS" if ok else "FAIL")
    return EXIT_OK if ok else 1


def cmd_device(args) -> int:
    E_J = args.E_J
    if E_J is None:
        E_J = args.ej_ratio * DeviceParams(1, 1, 1, 1, args.omega).hbar * args.omega
    dev = DeviceParams(C_g=args.C_g, C_J=args.C_J, C_F=args.C_F, E_J=E_J, omega=args.omega)
    info = device_summary(dev)
    if args.json:
        print(json.dumps(info, sort_keys=True))
    else:
        for key, value in info.items():
            print(f"{key:>16}: {value}")
        if not info["regime_ok"]:
            print("warning: charging energy does not dominate E_J and hbar*omega", file=sys.stderr)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="orthospeed", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def run_options(p):
        p.add_argument("--config", help="JSON config, or a CSV written by a previous run")
        p.add_argument("--set", action="append", metavar="KEY=VALUE",
                       help="dotted-path override, e.g. model.g=0.25 (repeatable)")
        p.add_argument("--engine", choices=cfgmod.ENGINE_CHOICES)
        p.add_argument("--out", default=".", help="output directory")

    run_options(sub.add_parser("simulate", help="single run: trace and events CSV"))
    run_options(sub.add_parser("sweep", help="parameter sweep: one summary row per value"))
    p = sub.add_parser("verify", help="run the verification battery")
    p.add_argument("--dt", type=float, default=0.005, help="scan grid step for event checks")
    p.add_argument("--omega-form", choices=("sqrt", "printed"), default="sqrt")
    p = sub.add_parser("device", help="map circuit parameters to (g, delta)")
    p.add_argument("--C-g", dest="C_g", type=float, required=True, help="gate capacitance [F]")
    p.add_argument("--C-J", dest="C_J", type=float, required=True, help="junction capacitance [F]")
    p.add_argument("--C-F", dest="C_F", type=float, required=True, help="field capacitance parameter [F]")
    p.add_argument("--omega", type=float, required=True, help="field angular frequency [rad/s]")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--E-J", dest="E_J", type=float, help="Josephson energy [J]")
    group.add_argument("--ej-ratio", type=float, help="E_J in units of hbar*omega")
    p.add_argument("--json", action="store_true")
    return parser


COMMANDS = {"simulate": cmd_simulate, "sweep": cmd_sweep, "verify": cmd_verify, "device": cmd_device}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    warnings.simplefilter("default")
    try:
        return COMMANDS[args.command](args)
    except (cfgmod.ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (NumericFailure, SweepError, np.linalg.LinAlgError, FloatingPointError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
