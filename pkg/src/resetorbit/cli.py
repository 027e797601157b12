"""Command-line front end.

    resetorbit simulate       trajectories as CSV + phase-plot SVG
    resetorbit orbit          the periodic orbit: summary, CSV, JSON arc
    resetorbit lyapunov-field V on a grid (CSV with ``nan`` outside the domain)
    resetorbit verify         all certificates; exit 0 iff every one passes

A run is described by one JSON config (file, or ``-`` for stdin); flags
override its fields.
"""
from __future__ import annotations

import argparse
import copy
import json
import math
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .dynamics import State, SystemParams, as_state, in_flow_set, in_jump_set, make_params
from .energy import lyapunov
from .errors import ResetOrbitError
from .hybridsim import HybridArc, LawKind, ResetLaw, simulate
from .io import write_arc_csv, write_arc_json, write_csv
from .orbit import find_periodic_orbit
from .verify import (
    CertReport,
    certify_convergence,
    certify_lemma1,
    certify_lyapunov,
    certify_orbit,
    reports_to_json,
    reports_to_text,
)

EXIT_OK, EXIT_FAILED, EXIT_CONFIG = 0, 1, 2

DEFAULT_CONFIG: dict = {
    "params": {"m": 1.0, "c": 0.3, "k": 1.0, "theta_hat": 0.3},
    "law": {"kind": "centered", "eps_phi": 0.0},
    "initial_conditions": [[0.1, -0.05], [0.5, -0.05]],
    "t_max": None,
    "j_max": 20,
    "samples_per_segment": 512,
    "seed": 42,
    "out": "out",
    "grid": {"x1": [-1.0, 1.0, 101], "x2": [-1.0, 1.0, 101]},
    "verify": {
        "dissipation_samples": 100,
        "dissipation_steps": 100_000,
        "dissipation_tol": 1e-5,
        "flow_arcs": 100,
        "flow_tol": 1e-8,
        "jump_samples": 300,
        "orbit_tol": 1e-10,
        "convergence_jmax": 100,
        "convergence_tol": 1e-3,
    },
}


class ConfigError(ResetOrbitError, ValueError):
    pass


@dataclass
class RunConfig:
    params: SystemParams
    law: ResetLaw
    initial_conditions: list[State]
    t_max: float
    j_max: int | None
    samples_per_segment: int
    seed: int
    out: Path
    grid: dict
    verify: dict


def _merge(base: dict, new: dict) -> dict:
    out = copy.deepcopy(base)
    for key, val in new.items():
        if isinstance(val, dict) and isinstance(out.get(key), dict):
            out[key] = _merge(out[key], val)
        else:
            out[key] = val
    return out


def load_config(source: str | None = None, overrides: dict | None = None) -> RunConfig:
    """Read, merge with defaults, apply overrides and validate."""
    raw: dict = {}
    if source == "-":
        raw = json.load(sys.stdin)
    elif source:
        try:
            raw = json.loads(Path(source).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {source}: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError("config must be a JSON object")
    doc = _merge(_merge(DEFAULT_CONFIG, raw), overrides or {})

    pr = doc["params"]
    try:
        params = make_params(pr["m"], pr["c"], pr["k"], pr["theta_hat"])
        law = ResetLaw.from_dict(doc["law"]) if doc["law"]["kind"] != "centered" else ResetLaw.centered()
        law.check(params)
        ics = [as_state(x) for x in doc["initial_conditions"]]
    except (KeyError, TypeError) as exc:
        raise ConfigError(f"malformed config: {exc}") from exc
    if law.kind is LawKind.CENTERED:
        for x in ics:
            if not (in_flow_set(params, x) or in_jump_set(x)):
                raise ConfigError(f"initial condition ({x.x1}, {x.x2}) is outside the flow and jump sets")
    t_max = math.inf if doc["t_max"] is None else float(doc["t_max"])
    j_max = None if doc["j_max"] is None else int(doc["j_max"])
    if math.isinf(t_max) and j_max is None:
        raise ConfigError("set t_max or j_max")
    return RunConfig(
        params=params,
        law=law,
        initial_conditions=ics,
        t_max=t_max,
        j_max=j_max,
        samples_per_segment=int(doc["samples_per_segment"]),
        seed=int(doc["seed"]),
        out=Path(doc["out"]),
        grid=doc["grid"],
        verify=doc["verify"],
    )


def lyapunov_series(p: SystemParams, arc: HybridArc) -> tuple[np.ndarray, np.ndarray]:
    """V is constant on each flow segment: two points per segment."""
    t, v = [], []
    for seg in arc.segments:
        if seg.start == (0.0, 0.0):
            continue
        val = lyapunov(p, seg.start)
        t += [seg.t_start, seg.t_end]
        v += [val, val]
    return np.array(t), np.array(v)


def cmd_simulate(cfg: RunConfig) -> list[Path]:
    from .plotting import phase_plot

    cfg.out.mkdir(parents=True, exist_ok=True)
    written, arcs, series = [], [], []
    for i, x0 in enumerate(cfg.initial_conditions):
        arc = simulate(cfg.params, cfg.law, x0, t_max=cfg.t_max, j_max=cfg.j_max,
                       n_samples=cfg.samples_per_segment)
        arcs.append(arc)
        path = cfg.out / f"trajectory_{i}.csv"
        write_arc_csv(path, arc)
        written.append(path)
        if cfg.law.kind is LawKind.CENTERED:
            t, v = lyapunov_series(cfg.params, arc)
            series.append((t, v))
            path = cfg.out / f"lyapunov_{i}.csv"
            write_csv(path, ("t", "V"), zip(t, v))
            written.append(path)
    orbit = None
    if cfg.law.kind is LawKind.CENTERED:
        orbit = find_periodic_orbit(cfg.params).polyline()
    path = cfg.out / "phase.svg"
    phase_plot(path, cfg.params, arcs, orbit=orbit, v_series=series or None, law=cfg.law)
    written.append(path)
    return written


def orbit_summary(cfg: RunConfig) -> tuple[str, HybridArc]:
    p = cfg.params
    orb = find_periodic_orbit(p)
    arc = simulate(p, None, orb.post_jump_state, j_max=orb.period_J, n_samples=cfg.samples_per_segment)
    lines = [
        f"v_star            {orb.v_star:.17g}",
        f"tau_star          {orb.tau_star:.17g}",
        f"period_T          {orb.period_T:.17g}",
        f"period_J          {orb.period_J}",
        f"balance_residual  {orb.balance_residual:.3e}",
        f"fixed_point_resid {orb.fixed_point_residual:.3e}",
    ]
    return "\n".join(lines) + "\n", arc


def cmd_orbit(cfg: RunConfig, stream=None) -> list[Path]:
    stream = stream or sys.stdout
    cfg.out.mkdir(parents=True, exist_ok=True)
    text, arc = orbit_summary(cfg)
    stream.write(text)
    csv_path, json_path = cfg.out / "orbit.csv", cfg.out / "orbit.json"
    write_arc_csv(csv_path, arc)
    write_arc_json(json_path, arc)
    return [csv_path, json_path]


def lyapunov_grid(p: SystemParams, grid: dict) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """V on a tensor grid; NaN where V is undefined (origin, open wedges)."""
    x1 = np.linspace(*grid["x1"][:2], int(grid["x1"][2]))
    x2 = np.linspace(*grid["x2"][:2], int(grid["x2"][2]))
    V = np.full((x1.size, x2.size), np.nan)
    for i, a in enumerate(x1):
        for j, b in enumerate(x2):
            x = State(float(a), float(b))
            if (a == 0.0 and b == 0.0) or not (in_flow_set(p, x) or in_jump_set(x)):
                continue
            V[i, j] = lyapunov(p, x)
    return x1, x2, V


def cmd_lyapunov_field(cfg: RunConfig) -> list[Path]:
    from .plotting import field_plot

    cfg.out.mkdir(parents=True, exist_ok=True)
    x1, x2, V = lyapunov_grid(cfg.params, cfg.grid)
    rows = ((a, b, V[i, j]) for i, a in enumerate(x1) for j, b in enumerate(x2))
    csv_path, svg_path = cfg.out / "lyapunov_field.csv", cfg.out / "lyapunov_field.svg"
    write_csv(csv_path, ("x1", "x2", "V"), rows)
    field_plot(svg_path, cfg.params, x1, x2, V)
    return [csv_path, svg_path]


def run_certificates(cfg: RunConfig) -> list[CertReport]:
    p, v = cfg.params, cfg.verify
    flow, jump = certify_lyapunov(p, n_flow=v["flow_arcs"], n_jump=v["jump_samples"], seed=cfg.seed + 1,
                                  flow_tol=v["flow_tol"])
    return [
        certify_lemma1(p, n_samples=v["dissipation_samples"], seed=cfg.seed, n_steps=v["dissipation_steps"],
                       tol=v["dissipation_tol"]),
        flow,
        jump,
        certify_orbit(p, tol=v["orbit_tol"]),
        certify_convergence(p, cfg.initial_conditions, j_max=v["convergence_jmax"],
                            dist_tol=v["convergence_tol"]),
    ]


def cmd_verify(cfg: RunConfig, stream=None) -> tuple[bool, list[Path]]:
    stream = stream or sys.stdout
    cfg.out.mkdir(parents=True, exist_ok=True)
    reports = run_certificates(cfg)
    json_path, txt_path = cfg.out / "verify_report.json", cfg.out / "verify_report.txt"
    json_path.write_text(reports_to_json(reports), encoding="utf-8")
    text = reports_to_text(reports)
    txt_path.write_text(text, encoding="utf-8")
    stream.write(text)
    failed = [r.name for r in reports if not r.passed]
    if failed:
        stream.write("failed: " + ", ".join(failed) + "\n")
    return not failed, [json_path, txt_path]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="resetorbit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("simulate", "orbit", "lyapunov-field", "verify"):
        sp = sub.add_parser(name)
        sp.add_argument("--config", help="JSON config file, or - for stdin")
        sp.add_argument("--out", help="output directory")
        sp.add_argument("--seed", type=int)
        sp.add_argument("--law", choices=[k.value for k in LawKind])
        sp.add_argument("--eps-phi", type=float)
        sp.add_argument("--theta-hat", type=float)
        sp.add_argument("--jmax", type=int)
        sp.add_argument("--tmax", type=float)
    return parser


def _overrides(args: argparse.Namespace) -> dict:
    o: dict = {}
    if args.out is not None:
        o["out"] = args.out
    if args.seed is not None:
        o["seed"] = args.seed
    if args.law is not None:
        o.setdefault("law", {})["kind"] = args.law
    if args.eps_phi is not None:
        o.setdefault("law", {})["eps_phi"] = args.eps_phi
    if args.theta_hat is not None:
        o["params"] = {"theta_hat": args.theta_hat}
    if args.jmax is not None:
        o["j_max"] = args.jmax
    if args.tmax is not None:
        o["t_max"] = args.tmax
    return o


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config, _overrides(args))
    except ValueError as exc:
        print(f"resetorbit: config error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        if args.command == "simulate":
            cmd_simulate(cfg)
        elif args.command == "orbit":
            cmd_orbit(cfg)
        elif args.command == "lyapunov-field":
            cmd_lyapunov_field(cfg)
        else:
            ok, _ = cmd_verify(cfg)
            return EXIT_OK if ok else EXIT_FAILED
    except ResetOrbitError as exc:
        print(f"resetorbit: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAILED
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
