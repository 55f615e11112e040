"""Command-line front end.

    scfgame simulate|equilibria|classify|sweep [--config PATH] [--out DIR] [--svg]

Exit status: 0 on success, 1 on invalid input, 2 on runtime failure.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from scfgame.dynamics import IntegrationError, detect_convergence, integrate
from scfgame.equilibria import classify, enumerate_equilibria, scenario_report, stability_table
from scfgame.model import ATTR_TO_CONFIG, BASELINE, ParameterError
from scfgame.serialize import (
    ConfigError,
    RunConfig,
    fmt,
    parse_config,
    write_equilibria_report,
    write_trajectory_csv,
)
from scfgame.svg import render_svg_plot
from scfgame.sweeps import SWEPT, SweepSpec, builtin_experiments, run_sweep

DEFAULT_OUT = "out"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="scfgame", description="Replicator dynamics of the bank / A / B supply chain finance game.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", type=Path, help="JSON run configuration (default: baseline parameters)")
        p.add_argument("--out", type=Path, help=f"output directory (default: config out_dir or ./{DEFAULT_OUT})")
        p.add_argument("--svg", action="store_true", help="also write SVG charts")

    common(sub.add_parser("simulate", help="integrate from each initial state; write trajectory CSVs"))
    common(sub.add_parser("equilibria", help="write the equilibria / stability report CSV"))
    common(sub.add_parser("classify", help="print the scenario report to standard output"))
    sw = sub.add_parser("sweep", help="run builtin or custom one-parameter sweeps")
    common(sw)
    sw.add_argument("--name", default="all", help=f"builtin sweep ({', '.join(SWEPT)}) or 'all'")
    sw.add_argument("--param", help="custom sweep: parameter to vary (e.g. Cg or C_g)")
    sw.add_argument("--values", help="custom sweep: comma-separated increasing values")
    sw.add_argument("--workers", type=int, default=1, help="threads for independent cells")
    sw.add_argument("--use-config-initial", action="store_true",
                    help="use the config's initial states instead of the default lattice")
    return parser


def _load(args) -> RunConfig:
    if args.config is None:
        return RunConfig(BASELINE)
    try:
        text = args.config.read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read config: {exc}") from None
    return parse_config(text)


def _out_dir(args, cfg: RunConfig) -> Path:
    out = args.out or (Path(cfg.out_dir) if cfg.out_dir else Path(DEFAULT_OUT))
    out.mkdir(parents=True, exist_ok=True)
    return out


def _write_text(path: Path, writer, *items, **kw) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        writer(*items, fh, **kw)


def cmd_simulate(args, cfg: RunConfig) -> None:
    out = _out_dir(args, cfg)
    many = len(cfg.initial) > 1
    for k, s0 in enumerate(cfg.initial):
        traj = integrate(cfg.params, s0, cfg.integration)
        stem = f"trajectory_{k:02d}" if many else "trajectory"
        _write_text(out / f"{stem}.csv", write_trajectory_csv, traj)
        rep = detect_convergence(traj)
        print(
            f"{stem}: start={s0.astuple()} end=({fmt(rep.terminal_state.x)}, {fmt(rep.terminal_state.y)}, "
            f"{fmt(rep.terminal_state.z)}) speed={rep.terminal_speed:.3e} converged={rep.converged} "
            f"nearest={rep.nearest_equilibrium} distance={rep.distance if rep.distance is None else f'{rep.distance:.6g}'}"
        )
        if args.svg:
            series = [(name, traj.times, traj.states[:, i]) for i, name in enumerate("xyz")]
            _write_text(out / f"{stem}.svg", render_svg_plot, series, "t", "probability")


def _equilibria(cfg: RunConfig):
    points = enumerate_equilibria(cfg.params)
    verdicts = [classify(cfg.params, pt) if pt.defined else None for pt in points]
    return points, verdicts


def cmd_equilibria(args, cfg: RunConfig) -> None:
    out = _out_dir(args, cfg)
    points, verdicts = _equilibria(cfg)
    path = out / "equilibria.csv"
    _write_text(path, write_equilibria_report, points, verdicts, scenario_report(cfg.params))
    print(path)


def cmd_classify(args, cfg: RunConfig) -> None:
    points, verdicts = _equilibria(cfg)
    table = stability_table(cfg.params)
    for pt, verdict in zip(points, verdicts):
        if verdict is None:
            print(f"{pt.label}: undefined")
            continue
        eigs = ", ".join(f"{lam.real:.6g}" if lam.imag == 0 else f"{lam:.6g}" for lam in verdict.eigenvalues)
        extra = "" if pt.valid else " (outside the cube)"
        print(f"{pt.label} {tuple(round(c, 6) for c in pt.coords)}{extra}: {verdict.classification} [{eigs}]")
        if pt.label in table:
            print("    closed form: " + ", ".join(f"{v:.6g}" for v in table[pt.label]))
    for cond in scenario_report(cfg.params):
        ops = ", ".join(f"{expr} = {val:.6g}" for expr, val in cond.operands)
        print(f"{cond.name} ({cond.point} stable): {'true' if cond.holds else 'false'}  [{ops}]")


def _sweep_specs(args, cfg: RunConfig) -> list[SweepSpec]:
    init = cfg.initial if args.use_config_initial else None
    extra = {"integration": cfg.integration}
    if init is not None:
        extra["initial_states"] = init
    if args.param or args.values:
        if not (args.param and args.values):
            raise UsageError("--param and --values must be given together")
        try:
            values = tuple(float(v) for v in args.values.split(","))
        except ValueError:
            raise UsageError(f"bad --values {args.values!r}") from None
        return [SweepSpec(cfg.params, args.param, values, **extra)]
    specs = builtin_experiments()
    if args.name != "all":
        specs = [s for s in specs if args.name in (s.parameter, ATTR_TO_CONFIG[s.parameter])]
        if not specs:
            raise UsageError(f"unknown builtin sweep {args.name!r}")
    return [SweepSpec(cfg.params, s.parameter, s.values, **extra) for s in specs]


def write_sweep_outputs(result, out: Path, svg: bool = False) -> Path:
    """Per-cell trajectory CSVs, ``summary.csv``, ``claims.csv`` and optional SVGs."""
    spec = result.spec
    label = ATTR_TO_CONFIG[spec.parameter]
    folder = out / f"sweep_{label}"
    folder.mkdir(parents=True, exist_ok=True)
    rows = ["value,initial,x0,y0,z0,x_end,y_end,z_end,converged,speed,nearest,distance,mean_x,mean_y,mean_z"]
    for cell in result.cells:
        _write_text(folder / f"cell_v{cell.value_index}_i{cell.initial_index:02d}.csv",
                    write_trajectory_csv, cell.trajectory)
        rep = cell.convergence
        rows.append(",".join([
            fmt(cell.value), str(cell.initial_index), *map(fmt, cell.initial.astuple()),
            *map(fmt, rep.terminal_state.astuple()), "true" if rep.converged else "false",
            fmt(rep.terminal_speed), rep.nearest_equilibrium or "",
            "" if rep.distance is None else fmt(rep.distance), *map(fmt, cell.means),
        ]))
    (folder / "summary.csv").write_text("\n".join(rows) + "\n", encoding="utf-8")
    claims = ["claim,gating,passed,numbers"]
    for c in result.claims:
        nums = ";".join(f"{k}={fmt(v)}" for k, v in c.numbers)
        passed = "reported" if c.passed is None else ("true" if c.passed else "false")
        claims.append(f"{c.name},{'true' if c.gating else 'false'},{passed},{nums}")
    (folder / "claims.csv").write_text("\n".join(claims) + "\n", encoding="utf-8")
    if svg:
        ref = next((i for i, s in enumerate(spec.initial_states) if s.astuple() == (0.5, 0.5, 0.5)), 0)
        cells = result.cells_for(ref)
        for axis, coord in enumerate("xyz"):
            series = [(f"{label}={c.value!r}", c.trajectory.times, c.trajectory.states[:, axis]) for c in cells]
            _write_text(folder / f"{coord}.svg", render_svg_plot, series, "t", coord,
                        title=f"{coord}(t) across {label}")
    return folder


def cmd_sweep(args, cfg: RunConfig) -> None:
    specs = _sweep_specs(args, cfg)
    out = _out_dir(args, cfg)
    for spec in specs:
        result = run_sweep(spec, workers=args.workers)
        folder = write_sweep_outputs(result, out, args.svg)
        n_conv = sum(c.convergence.converged for c in result.cells)
        failed = [c.name for c in result.claims if c.gating and not c.passed]
        print(f"{folder}: {len(result.cells)} cells, {n_conv} converged, "
              f"{len(result.cells) - n_conv} not converged, gating claims failed: {len(failed)}")
        for name in failed:
            print(f"  FAILED {name}")


COMMANDS = {
    "simulate": cmd_simulate,
    "equilibria": cmd_equilibria,
    "classify": cmd_classify,
    "sweep": cmd_sweep,
}


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        cfg = _load(args)
        COMMANDS[args.command](args, cfg)
    except (UsageError, ConfigError, ParameterError, ValueError) as exc:
        print(f"scfgame: error: {exc}", file=sys.stderr)
        return 1
    except (IntegrationError, OSError) as exc:
        print(f"scfgame: runtime error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())

