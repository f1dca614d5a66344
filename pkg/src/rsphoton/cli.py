"""``rsphoton`` command line: verification suites and simulations.

Exit codes: 0 pass, 1 check failure, 2 usage or configuration error.
Reports are canonical JSON; wall-clock timings go to separate
``*.timing.json`` files so that reports stay byte-identical across runs.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from importlib import resources
from pathlib import Path

import jsonschema
import numpy as np

from .constants import preset
from .dynamics import (EvolutionPlan, PulseScenario, build_pulse, causality_scan, field_energy,
                       kspace_norm, radial_profile, render, schrodinger_residual)
from .em.grid import Grid
from .errors import RSPhotonError
from .io import SnapshotFormatError, read_snapshot, write_profile_csv, write_report, write_snapshot
from .modes import ModeExpansion, expand_rs, project_modes
from .quantum.products import KSpaceState
from .verify import RUNNERS, Context, run

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2
DEFAULT_L = {"natural": 32.0, "SI": 1e-6}


class ConfigError(Exception):
    pass


def load_schema(name: str) -> dict:
    text = resources.files("rsphoton").joinpath("schemas", name).read_text()
    return json.loads(text)


def config_schema() -> dict:
    """Config schema with the mode-expansion reference inlined."""
    schema = load_schema("config.schema.json")
    schema["properties"]["modes"] = load_schema("mode-expansion.schema.json")
    return schema


def load_config(path: str | None) -> dict:
    if path is None:
        cfg = {}
    else:
        try:
            cfg = json.loads(Path(path).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
    try:
        jsonschema.validate(cfg, config_schema())
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise ConfigError(f"config violates schema at {where}: {exc.message}") from exc
    return cfg


def make_grid(cfg: dict) -> Grid:
    units = cfg.get("units", "natural")
    g = cfg.get("grid", {})
    try:
        return Grid(int(g.get("n", 32)), float(g.get("L", DEFAULT_L[units])))
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def make_context(cfg: dict, seed: int | None) -> Context:
    consts = preset(cfg.get("units", "natural"))
    seed = cfg.get("seed", 42) if seed is None else seed
    fixture = cfg.get("fixture")
    if fixture is not None:
        try:
            read_snapshot(fixture)
        except (OSError, SnapshotFormatError) as exc:
            raise ConfigError(f"cannot load fixture {fixture}: {exc}") from exc
    return Context(make_grid(cfg), consts, int(seed), dict(cfg.get("tolerances", {})),
                   fixture, dict(cfg.get("pulse", {})))


def _write_timing(out: Path, stem: str, seconds: float):
    (out / f"{stem}.timing.json").write_text(json.dumps({"wall_time_s": seconds}) + "\n")


def cmd_verify(args) -> int:
    cfg = load_config(args.config)
    ctx = make_context(cfg, args.seed)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    start = time.perf_counter()
    result = run(args.suite, ctx)
    write_report(out / f"verify-{args.suite}.json", result)
    _write_timing(out, f"verify-{args.suite}", time.perf_counter() - start)
    for ch in result["checks"]:
        status = "PASS" if ch["pass"] else "FAIL"
        extra = f" ({ch['error']})" if "error" in ch else ""
        print(f"{status} {ch['name']} measured={ch['measured']} tolerance={ch['tolerance']}{extra}")
    if not result["pass"]:
        failed = [ch["name"] for ch in result["checks"] if not ch["pass"]]
        print(f"failing checks: {', '.join(failed)}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def simulate_modes(cfg: dict, out: Path) -> int:
    consts = preset(cfg.get("units", "natural"))
    grid = make_grid(cfg)
    if "modes" not in cfg:
        raise ConfigError("simulate modes needs a 'modes' list")
    try:
        exp = ModeExpansion.from_records(cfg["modes"])
        exp.check_lattice(grid)
    except (ValueError, RSPhotonError) as exc:
        raise ConfigError(f"invalid mode list: {exc}") from exc
    ev = cfg.get("evolution", {})
    default_dt = grid.L / consts.c / 16
    plan = EvolutionPlan(exp, float(ev.get("t0", 0.0)), float(ev.get("dt", default_dt)),
                         int(ev.get("steps", 16)), int(ev.get("stride", 1)))
    series = []
    for i, t in enumerate(plan.times()):
        F = render(plan, grid, consts, t)
        state = KSpaceState.from_expansion(project_modes(F, consts), grid)
        series.append({"t": float(t), "norm": kspace_norm(state),
                       "schrodinger_residual": schrodinger_residual(F, consts),
                       "energy": field_energy(F, consts)})
        if cfg.get("write_snapshots", False):
            write_snapshot(out / f"snapshot_{i:04d}.bin", F)
    norms = np.array([s["norm"] for s in series])
    drift = float(np.max(np.abs(norms - norms[0])) / norms[0]) if norms[0] else 0.0
    write_report(out / "modes.json", exp.to_records())
    write_report(out / "series.json", {"norm_drift": drift, "series": series})
    print(f"modes: {len(exp)} snapshots: {len(series)} norm drift: {drift:.3e}")
    return EXIT_OK


def simulate_pulse(cfg: dict, out: Path) -> int:
    consts = preset(cfg.get("units", "natural"))
    grid = make_grid(cfg)
    p = dict(cfg.get("pulse", {}))
    snapshots = int(p.pop("snapshots", 8))
    bins = int(p.pop("profile_bins", 32))
    p.setdefault("sigma", 2.5 * grid.dx)
    try:
        sc = PulseScenario(n=grid.n, L=grid.L, **{k: tuple(v) if isinstance(v, list) else v
                                                  for k, v in p.items()})
        exp = build_pulse(sc, consts)
        times = np.linspace(0.0, sc.contact_time(consts.c), snapshots, endpoint=False)
        report = causality_scan(exp, sc, times, consts)
    except (ValueError, RSPhotonError) as exc:
        raise ConfigError(f"unresolvable pulse scenario: {exc}") from exc
    tol = float(cfg.get("tolerances", {}).get("dynamics.pulse_causality", 1e-6))
    doc = report.as_dict()
    expected_tail = sc.construction == "positive-frequency-only"
    doc.update(expected_tail=expected_tail, tolerance=tol, modes=len(exp))
    doc["pass"] = True if expected_tail else bool(max(report.exterior) <= tol)
    write_report(out / "causality.json", doc)
    for i, t in enumerate(report.times):
        F = expand_rs(exp, grid, t, consts, normalized=False)
        r, enclosed = radial_profile(F, consts, sc.origin, bins)
        write_profile_csv(out / f"profile_{i:04d}.csv", r, enclosed)
        if cfg.get("write_snapshots", False):
            write_snapshot(out / f"snapshot_{i:04d}.bin", F)
    worst = max(report.exterior)
    note = " (superluminal tail expected for positive-frequency-only)" if expected_tail else ""
    print(f"pulse {sc.construction}: max exterior fraction {worst:.3e}{note}")
    return EXIT_OK if doc["pass"] else EXIT_FAIL


def cmd_simulate(args) -> int:
    cfg = load_config(args.config)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    start = time.perf_counter()
    code = simulate_modes(cfg, out) if args.kind == "modes" else simulate_pulse(cfg, out)
    _write_timing(out, f"simulate-{args.kind}", time.perf_counter() - start)
    return code


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rsphoton", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", choices=sorted(RUNNERS) + ["all"])
    v.add_argument("--config")
    v.add_argument("--seed", type=int)
    v.add_argument("--out", default="rsphoton-out")
    v.set_defaults(func=cmd_verify)
    s = sub.add_parser("simulate", help="run a simulation and write artifacts")
    s.add_argument("kind", choices=["modes", "pulse"])
    s.add_argument("--config", required=True)
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_simulate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
