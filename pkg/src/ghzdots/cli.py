"""Command line entry point: ``python -m ghzdots {simulate,fig1,fig2,validate}``.

Exit codes: 0 success, 1 validation failure, 2 configuration error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .model import Hamiltonian4
from .runner.config import ConfigError, parse_config
from .runner.output import emit_csv, emit_svg
from .runner.simulate import figure_config, run_simulation, validate_suite

EXIT_OK, EXIT_VALIDATION, EXIT_CONFIG = 0, 1, 2

_FIGURE_TITLES = {
    "fig1": "GHZ overlap, resonant drive (eta = 0.1, delta = 0)",
    "fig2": "GHZ overlap, detuned drive (eta = 0.1, Omega = 0.05 rad/fs)",
}


def _csv_path(prefix: str, traj, swept: bool) -> Path:
    if not swept:
        return Path(f"{prefix}.csv")
    axis, value = traj.label.split("=")
    return Path(f"{prefix}_{axis}_{value}.csv")


def _write_outputs(cfg, trajectories, prefix, svg, title=""):
    written = []
    if "csv" in cfg.outputs:
        for traj in trajectories:
            written.append(emit_csv(traj, _csv_path(prefix, traj, cfg.sweep is not None),
                                    cfg.emit_scaled_time))
    if svg:
        legend = f"sweep: {cfg.sweep.axis}" if cfg.sweep else ""
        written.append(emit_svg(trajectories, Path(f"{prefix}.svg"), title, legend))
    for path in written:
        print(path)
    for traj in trajectories:
        if "max_oracle_deviation" in traj.metadata:
            print(f"{traj.label or 'run'}: max oracle deviation {traj.metadata['max_oracle_deviation']}")


def _run(cfg, args, title=""):
    prefix = args.out or cfg.output_prefix
    svg = "svg" in cfg.outputs if args.svg is None else args.svg
    trajectories = run_simulation(cfg, solver="oracle" if args.oracle else None)
    _write_outputs(cfg, trajectories, prefix, svg, title)
    return EXIT_OK


def _perturb(eps):
    def hook(h):
        m = h.elements.copy()
        m[0, 0] += eps
        return Hamiltonian4(m)
    return hook


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ghzdots", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def output_flags(p):
        p.add_argument("--out", help="output path prefix")
        p.add_argument("--svg", action=argparse.BooleanOptionalAction, default=None,
                       help="write an SVG plot (default: per config)")
        p.add_argument("--oracle", action="store_true",
                       help="propagate with the RK4 integrator instead of the spectral solution")

    p = sub.add_parser("simulate", help="run a configuration file")
    p.add_argument("config", type=Path)
    output_flags(p)
    for name in ("fig1", "fig2"):
        output_flags(sub.add_parser(name, help=f"reproduce {name} (built-in sweep)"))
    p = sub.add_parser("validate", help="spectral vs RK4 agreement on all figure curves")
    p.add_argument("--perturb", type=float, default=0.0, help=argparse.SUPPRESS)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "simulate":
            try:
                text = args.config.read_text(encoding="utf-8")
            except OSError as exc:
                print(f"error: cannot read {args.config}: {exc.strerror}", file=sys.stderr)
                return EXIT_CONFIG
            return _run(parse_config(text), args)
        if args.command in ("fig1", "fig2"):
            return _run(figure_config(args.command), args, _FIGURE_TITLES[args.command])
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    report = validate_suite(hamiltonian_hook=_perturb(args.perturb) if args.perturb else None)
    for line in report.lines():
        print(line)
    return EXIT_OK if report.passed else EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
