"""Command-line front end: single points, sweeps, the golden reference table, self-test.

Exit codes: 0 success, 1 configuration error, 2 physics-domain error,
3 acceptance mismatch.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, replace
from pathlib import Path

from . import __version__
from .config import RunConfig, load, load_preset, preset_names, with_overrides
from .dcs_engine import DcsRequest, idcs_both_dressed, idcs_electron_dressed, prepare, sdcs
from .errors import ConfigError, PhysicsDomainError
from .kinematics import Mode
from .laser_field import LaserField

EXIT_OK, EXIT_CONFIG, EXIT_PHYSICS, EXIT_MISMATCH = 0, 1, 2, 3

SCHEMAS = {
    "point": "emulaser.point/1",
    "sweep": "emulaser.sweep/1",
    "table1": "emulaser.table1/1",
}
SWEEP_COLUMNS = ("series_value", "variable", "value", "mode", "kinetic_energy_ev", "omega_ev",
                 "e0_v_per_cm", "theta_i_deg", "theta_f_deg", "s_min", "s_max", "n_min", "n_max",
                 "dcs_ev2", "converged", "closed")
POINT_COLUMNS = ("mode", "kinetic_energy_ev", "omega_ev", "e0_v_per_cm", "theta_i_deg",
                 "theta_f_deg", "s_min", "s_max", "n_min", "n_max", "sdcs_ev2", "converged",
                 "closed", "channels", "engine_version")
TABLE1_COLUMNS = ("e0_v_per_cm", "mode", "sdcs_ev2", "reference_ev2", "rel_error", "pass")

_ATTR = {"theta_i": "theta_i", "theta_f": "theta_f", "e0": "e0", "omega": "omega", "kinetic_energy": "kinetic_energy"}


def to_request(config: RunConfig) -> DcsRequest:
    mode = Mode(config.mode)
    laser = LaserField(config.omega, config.e0)
    return DcsRequest(mode, config.kinetic_energy, config.geometry(), laser,
                      config.s_range, config.n_range, convention=config.convention,
                      method=config.method)


def _is_forward(config: RunConfig) -> bool:
    g = config.geometry()
    th, ph = g.final_direction
    c = (math.cos(g.theta_i) * math.cos(th)
         + math.sin(g.theta_i) * math.sin(th) * math.cos(ph - g.phi_i))
    return c >= 1.0 - 1e-15


def _channel_key(key) -> str:
    return f"{key[0]}|{key[1]}" if isinstance(key, tuple) else str(key)


def _eval_point(config: RunConfig) -> dict:
    res = sdcs(to_request(config), auto_extend=config.auto_extend)
    closed = set(res.closed_channels)
    n_lo, n_hi = res.n_range if res.n_range else (None, None)
    return {
        "mode": config.mode,
        "kinetic_energy_ev": config.kinetic_energy,
        "omega_ev": config.omega,
        "e0_v_per_cm": config.e0 if config.mode != Mode.LASER_FREE.value else 0.0,
        "theta_i_deg": config.theta_i,
        "theta_f_deg": config.theta_f,
        "s_min": res.s_range[0],
        "s_max": res.s_range[1],
        "n_min": n_lo,
        "n_max": n_hi,
        "sdcs_ev2": res.total,
        "converged": res.converged,
        "closed": len(closed),
        "per_channel": [{"channel": _channel_key(k), "idcs_ev2": v, "closed": k in closed}
                        for k, v in res.per_channel.items()],
    }


def _eval_sweep_node(task) -> dict:
    config, variable, value, series = task
    row = {"series_value": series, "variable": variable, "value": value}
    if variable == "s":
        req = to_request(config)
        inc = prepare(req)
        s = int(value)
        if req.mode is Mode.BOTH_DRESSED:
            lo, hi = req.n_range
            val = math.fsum(idcs_both_dressed(s, n, req, inc) for n in range(lo, hi + 1))
        elif req.mode is Mode.ELECTRON_DRESSED:
            val = idcs_electron_dressed(s, req, inc)
        else:
            val = sdcs(req).total if s == 0 else 0.0
        row.update(mode=config.mode, kinetic_energy_ev=config.kinetic_energy, omega_ev=config.omega,
                   e0_v_per_cm=config.e0, theta_i_deg=config.theta_i, theta_f_deg=config.theta_f,
                   s_min=s, s_max=s, n_min=req.n_range[0] if req.mode is Mode.BOTH_DRESSED else None,
                   n_max=req.n_range[1] if req.mode is Mode.BOTH_DRESSED else None,
                   dcs_ev2=val, converged=None, closed=int(val == 0.0))
        return row
    pt = _eval_point(config)
    row.update({k: pt[k] for k in ("mode", "kinetic_energy_ev", "omega_ev", "e0_v_per_cm",
                                   "theta_i_deg", "theta_f_deg", "s_min", "s_max", "n_min", "n_max")})
    row.update(dcs_ev2=pt["sdcs_ev2"], converged=pt["converged"], closed=pt["closed"])
    return row


def _run_tasks(fn, tasks: list, threads: int) -> list:
    """Evaluate in a worker pool; results always come back in task order."""
    if threads <= 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, tasks))


def _apply(config: RunConfig, variable: str, value) -> RunConfig:
    if variable == "s":
        return config
    return replace(config, **{_ATTR[variable]: float(value)})


def run_point(config: RunConfig) -> dict:
    config.validate()
    if _is_forward(config):
        raise PhysicsDomainError("exact forward direction: the photon propagator diverges")
    return _eval_point(config)


def run_sweep(config: RunConfig) -> list[dict]:
    config.validate()
    if config.sweep_variable is None:
        raise ConfigError("no sweep variable configured", field="variable")
    series = config.series_values or (None,)
    tasks = []
    for sv in series:
        base = config if sv is None else _apply(config, config.series_variable, sv)
        for v in config.sweep_grid():
            node = _apply(base, config.sweep_variable, v)
            if config.sweep_variable != "s" and _is_forward(node):
                continue  # exact-forward nodes are excluded from scan grids
            tasks.append((node, config.sweep_variable, v, sv))
    return _run_tasks(_eval_sweep_node, tasks, config.threads)


def _table1_task(task) -> float:
    config, mode, e0 = task
    return sdcs(to_request(replace(config, mode=mode, e0=e0))).total


def run_table1(config: RunConfig) -> tuple[list[dict], bool]:
    config.validate()
    modes = config.table_modes or ("electron_dressed", "both_dressed")
    refs = {"electron_dressed": config.ref_electron, "both_dressed": config.ref_both}
    tasks = [(config, m, e0) for e0 in config.table_e0 for m in modes]
    values = _run_tasks(_table1_task, tasks, config.threads)
    rows, ok = [], True
    for (_, mode, e0), val in zip(tasks, values):
        ref_list = refs.get(mode, ())
        i = config.table_e0.index(e0)
        ref = ref_list[i] if i < len(ref_list) else None
        err = abs(val - ref) / ref if ref else None
        passed = None if err is None else err <= config.table_tolerance
        ok = ok and passed is not False
        rows.append({"e0_v_per_cm": e0, "mode": mode, "sdcs_ev2": val, "reference_ev2": ref,
                     "rel_error": err, "pass": passed})
    return rows, ok


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "1" if v else "0"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        return f"{v:.8e}"
    return str(v)


def render_csv(kind: str, columns, rows) -> str:
    buf = io.StringIO()
    buf.write(f"# schema={SCHEMAS[kind]} engine={__version__}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_cell(row.get(c)) for c in columns])
    return buf.getvalue()


def render_json(kind: str, config: RunConfig, payload) -> str:
    doc = {"schema": SCHEMAS[kind], "engine_version": __version__,
           "config": asdict(config), "result": payload}
    return json.dumps(doc, indent=2) + "\n"


def _point_row(rec: dict) -> dict:
    row = dict(rec)
    row["channels"] = ";".join(f"{c['channel']}:{c['idcs_ev2']:.8e}" for c in rec["per_channel"])
    row["engine_version"] = __version__
    return row


def _emit(text: str, output: str | None):
    if output in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(output).write_text(text)


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="INI configuration file")
    common.add_argument("--preset", help=f"shipped preset name ({', '.join(preset_names())})")
    common.add_argument("--output", help="output path (default stdout)")
    common.add_argument("--format", choices=("csv", "json"))
    common.add_argument("--mode", choices=[m.value for m in Mode])
    common.add_argument("--e0", type=float, help="field strength in V/cm")
    common.add_argument("--omega-ev", type=float, help="photon energy in eV")
    common.add_argument("--ekin-ev", type=float, help="electron kinetic energy in eV")
    common.add_argument("--theta-i-deg", type=float)
    common.add_argument("--theta-f-deg", type=float)
    common.add_argument("--smax", type=int)
    common.add_argument("--nmax", type=int)
    common.add_argument("--threads", type=int)
    parser = argparse.ArgumentParser(prog="emulaser", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("point", parents=[common], help="one DCS evaluation")
    sub.add_parser("sweep", parents=[common], help="parameter sweep dataset")
    sub.add_parser("table1", parents=[common], help="golden reference table (six fields, two modes)")
    st = sub.add_parser("selftest", parents=[common], help="oracle and invariant checks")
    st.add_argument("--quick", action="store_true", help="fewer random points")
    return parser


def resolve_config(args) -> RunConfig:
    if args.preset and args.config:
        raise ConfigError("use either --preset or --config, not both")
    if args.preset:
        config = load_preset(args.preset)
    elif args.config:
        config = load(args.config)
    elif args.command == "table1":
        config = load_preset("table1")
    else:
        config = RunConfig()
    return with_overrides(
        config, mode=args.mode, e0=args.e0, omega=args.omega_ev, kinetic_energy=args.ekin_ev,
        theta_i=args.theta_i_deg, theta_f=args.theta_f_deg, smax=args.smax, nmax=args.nmax,
        threads=args.threads, output=args.output, format=args.format)


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        config = resolve_config(args)
        if args.command == "selftest":
            from .selftest import run_all
            ok = run_all(quick=args.quick, stream=sys.stdout)
            return EXIT_OK if ok else EXIT_MISMATCH
        if args.command == "point":
            rec = run_point(config)
            text = (render_json("point", config, rec) if config.format == "json"
                    else render_csv("point", POINT_COLUMNS, [_point_row(rec)]))
            _emit(text, config.output)
            return EXIT_OK
        if args.command == "sweep":
            rows = run_sweep(config)
            text = (render_json("sweep", config, rows) if config.format == "json"
                    else render_csv("sweep", SWEEP_COLUMNS, rows))
            _emit(text, config.output)
            return EXIT_OK
        rows, ok = run_table1(config)
        text = (render_json("table1", config, rows) if config.format == "json"
                else render_csv("table1", TABLE1_COLUMNS, rows))
        _emit(text, config.output)
        for r in rows:
            flag = "ok" if r["pass"] else ("--" if r["pass"] is None else "MISMATCH")
            err = "" if r["rel_error"] is None else f" rel_err={r['rel_error']:.2e}"
            print(f"table1 E0={r['e0_v_per_cm']:.0e} {r['mode']}: {r['sdcs_ev2']:.6e}{err} {flag}",
                  file=sys.stderr)
        return EXIT_OK if ok else EXIT_MISMATCH
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except PhysicsDomainError as exc:
        print(f"physics-domain error: {exc}", file=sys.stderr)
        return EXIT_PHYSICS
    except ValueError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
