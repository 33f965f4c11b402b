"""Command-line sweeps over temperature and field, writing CSV.

Examples
--------
    mixedgp sweep-temp --preset fig1 --output fig1.csv
    mixedgp sweep-field --j 1 --temp 1 2 --c-min -3 --c-max 3 --c-steps 121 --order 2
    mixedgp point --j 1 --c 1 --temp 1 --order 2 --pair 1,2 --form both
    mixedgp mixedness
"""
from __future__ import annotations

import argparse
import csv
import math
import sys
from dataclasses import dataclass, replace
from typing import Iterable, Sequence, TextIO

import numpy as np

from . import hydrogen
from .exceptions import GeometricPhaseError, NodalPoint
from .holonomy import DEFAULT_NODAL_TOL
from .quantum import mixedness

HEADER = ("sweep_var", "J", "C", "T", "l", "arg_gamma", "re_gamma", "im_gamma",
          "magnitude_raw", "nodal", "mixedness")

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_VERIFY = 3

MIXEDNESS_TOL = 1e-10
HIGH_T_TOL = 1e-8
DEFAULT_MIX_J = (0.5, 1.0, 2.0)
DEFAULT_MIX_T = (0.25, 0.5, 1.0, 2.0, 5.0, 10.0)

PRESETS = {
    "fig1": dict(subcommand="sweep-temp", order=1, t_range=(0.25, 5.0, 100), c_values=(1.0, 2.0, 3.0)),
    "fig2": dict(subcommand="sweep-field", order=1, c_range=(-3.0, 3.0, 121), t_values=(1.0, 2.0, 3.0, 4.0)),
    "fig3": dict(subcommand="sweep-temp", order=2, t_range=(0.25, 5.0, 100), c_values=(1.0, 2.0, 3.0)),
    "fig4": dict(subcommand="sweep-field", order=2, c_range=(-3.0, 3.0, 121), t_values=(1.0, 2.0, 3.0, 4.0)),
}


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class SweepConfig:
    subcommand: str
    j_values: tuple[float, ...] = (1.0,)
    c_values: tuple[float, ...] = ()
    c_range: tuple[float, float, int] | None = None
    t_values: tuple[float, ...] = ()
    t_range: tuple[float, float, int] | None = None
    order: int = 1
    pair: tuple[int, int] = (1, 2)
    form: str = "product"
    n: int = 1
    steps: int | None = None
    cluster_tol: float | None = None
    nodal_tol: float = DEFAULT_NODAL_TOL
    output: str | None = None

    def indices(self) -> tuple[int, ...]:
        return (1,) if self.order == 1 else self.pair

    def forms(self) -> tuple[str, ...]:
        return ("product", "sum") if self.form == "both" else (self.form,)


@dataclass(frozen=True)
class SweepRecord:
    sweep_value: float
    J: float
    C: float
    T: float
    l: int
    arg_gamma: float
    re_gamma: float
    im_gamma: float
    magnitude_raw: float
    nodal: bool
    mixedness: float

    def row(self) -> list[str]:
        return [_fmt(self.sweep_value), _fmt(self.J), _fmt(self.C), _fmt(self.T), str(self.l),
                _fmt(self.arg_gamma), _fmt(self.re_gamma), _fmt(self.im_gamma),
                _fmt(self.magnitude_raw), "true" if self.nodal else "false", _fmt(self.mixedness)]


def _fmt(x: float) -> str:
    if math.isnan(x):
        return "NaN"
    # + 0.0 folds negative zero
    return f"{x + 0.0:.11e}"


def _grid(spec: tuple[float, float, int], name: str) -> np.ndarray:
    lo, hi, steps = spec
    if steps < 2:
        raise ConfigError(f"--{name}-steps must be at least 2")
    if not lo < hi:
        raise ConfigError(f"--{name}-min must be smaller than --{name}-max")
    return np.linspace(lo, hi, int(steps))


def validate(config: SweepConfig) -> SweepConfig:
    if config.order not in (1, 2):
        raise ConfigError("--order must be 1 or 2")
    if config.order == 2:
        a, b = config.pair
        if a == b or not (1 <= a <= 4 and 1 <= b <= 4):
            raise ConfigError(f"--pair must be two distinct indices in 1..4, got {a},{b}")
    if config.form not in ("product", "sum", "both"):
        raise ConfigError("--form must be product, sum or both")
    if config.n < 1:
        raise ConfigError("--n must be a positive integer")
    if config.steps is not None and config.steps < 1:
        raise ConfigError("--steps must be a positive integer")
    if config.nodal_tol < 0 or (config.cluster_tol is not None and config.cluster_tol <= 0):
        raise ConfigError("tolerances must be positive")
    if config.subcommand == "sweep-temp":
        if config.t_range is None:
            raise ConfigError("sweep-temp needs --t-min, --t-max and --t-steps (or --preset)")
        if not config.c_values:
            raise ConfigError("sweep-temp needs at least one --c value")
        if config.t_range[0] <= 0:
            raise ConfigError("--t-min must be positive")
        _grid(config.t_range, "t")
    elif config.subcommand == "sweep-field":
        if config.c_range is None:
            raise ConfigError("sweep-field needs --c-min, --c-max and --c-steps (or --preset)")
        if not config.t_values:
            raise ConfigError("sweep-field needs at least one --temp value")
        _grid(config.c_range, "c")
    elif config.subcommand == "point":
        if len(config.j_values) != 1 or len(config.c_values) != 1 or len(config.t_values) != 1:
            raise ConfigError("point needs exactly one value each for --j, --c and --temp")
    if any(t <= 0 for t in config.t_values):
        raise ConfigError("--temp values must be positive")
    return config


def evaluate(config: SweepConfig, J: float, C: float, T: float, sweep_value: float) -> list[SweepRecord]:
    params = hydrogen.ModelParams(J=J, C=C, T=T, n=config.n)
    mix = mixedness(hydrogen.initial_state(params))
    l = config.order
    records = []
    for form in config.forms():
        try:
            gamma = hydrogen.geometric_phase(params, config.indices(), form, config.cluster_tol,
                                             config.nodal_tol, config.steps)
        except NodalPoint as exc:
            nan = float("nan")
            records.append(SweepRecord(sweep_value, J, C, T, l, nan, nan, nan, exc.magnitude, True, mix))
        else:
            records.append(SweepRecord(sweep_value, J, C, T, l, gamma.argument, gamma.real,
                                       gamma.imag, gamma.magnitude_raw, False, mix))
    return records


def run(config: SweepConfig) -> list[SweepRecord]:
    """All records for a sweep or point, in deterministic grid order."""
    validate(config)
    records: list[SweepRecord] = []
    if config.subcommand == "sweep-temp":
        for J in config.j_values:
            for C in config.c_values:
                for T in _grid(config.t_range, "t"):
                    records += evaluate(config, J, C, float(T), float(T))
    elif config.subcommand == "sweep-field":
        for J in config.j_values:
            for T in config.t_values:
                for C in _grid(config.c_range, "c"):
                    records += evaluate(config, J, float(C), T, float(C))
    elif config.subcommand == "point":
        J, C, T = config.j_values[0], config.c_values[0], config.t_values[0]
        records += evaluate(config, J, C, T, T)
    else:
        raise ConfigError(f"unknown subcommand {config.subcommand!r}")
    return records


def write_csv(records: Iterable[SweepRecord], stream: TextIO) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(HEADER)
    for record in records:
        writer.writerow(record.row())


def verify_mixedness(j_values: Sequence[float], t_values: Sequence[float], stream: TextIO) -> bool:
    """Compare numerical and closed-form mixedness over a grid; print a report."""
    worst = 0.0
    stream.write("J,T,numerical,closed_form,abs_diff\n")
    for J in j_values:
        for T in t_values:
            params = hydrogen.ModelParams(J=J, C=0.0, T=T)
            numerical = mixedness(hydrogen.initial_state(params))
            closed = hydrogen.mixedness_closed_form(J, T)
            diff = abs(numerical - closed)
            worst = max(worst, diff)
            stream.write(f"{_fmt(J)},{_fmt(T)},{_fmt(numerical)},{_fmt(closed)},{_fmt(diff)}\n")
    grid_ok = worst <= MIXEDNESS_TOL
    stream.write(f"max |numerical - closed form| = {worst:.3e} (tolerance {MIXEDNESS_TOL:g}): "
                 f"{'PASS' if grid_ok else 'FAIL'}\n")

    hot = mixedness(hydrogen.initial_state(hydrogen.ModelParams(J=1.0, C=0.0, T=1e9)))
    hot_ok = abs(hot - 0.75) <= HIGH_T_TOL
    stream.write(f"J=1 T=1e9: mixedness = {hot:.12f}, |V - 3/4| = {abs(hot - 0.75):.3e} "
                 f"(tolerance {HIGH_T_TOL:g}): {'PASS' if hot_ok else 'FAIL'}\n")
    unit = mixedness(hydrogen.initial_state(hydrogen.ModelParams(J=1.0, C=0.0, T=1.0)))
    stream.write(f"J=1 T=1: mixedness = {unit:.6f}\n")
    ok = grid_ok and hot_ok
    stream.write("PASS\n" if ok else "FAIL\n")
    return ok


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def _pair(text: str) -> tuple[int, int]:
    parts = text.replace(" ", "").split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError("expected two comma-separated indices, e.g. 1,2")
    try:
        return int(parts[0]), int(parts[1])
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid index pair {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="mixedgp", description=(
        "Diagonal and off-diagonal geometric phases of the thermal hydrogen "
        "hyperfine state in a magnetic field."))
    sub = parser.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)

    common = _Parser(add_help=False)
    common.add_argument("--j", type=float, nargs="+", help="hyperfine coupling J (default 1)")
    common.add_argument("--c", type=float, nargs="+", help="fixed field energy C = g mu_B B")
    common.add_argument("--c-min", type=float)
    common.add_argument("--c-max", type=float)
    common.add_argument("--c-steps", type=int)
    common.add_argument("--temp", type=float, nargs="+", help="fixed temperature(s), k_B = 1")
    common.add_argument("--t-min", type=float)
    common.add_argument("--t-max", type=float)
    common.add_argument("--t-steps", type=int)
    common.add_argument("--order", type=int, help="phase order l (1 or 2)")
    common.add_argument("--pair", type=_pair, help="family indices for l = 2 (default 1,2)")
    common.add_argument("--form", choices=("product", "sum", "both"), default="product")
    common.add_argument("--n", type=int, default=1, help="number of recurrence periods")
    common.add_argument("--steps", type=int,
                        help="use the time-ordered transport product with this many steps")
    common.add_argument("--cluster-tol", type=float)
    common.add_argument("--nodal-tol", type=float, default=DEFAULT_NODAL_TOL)
    common.add_argument("--output", help="output path (default stdout)")
    common.add_argument("--preset", choices=sorted(PRESETS))

    sub.add_parser("sweep-temp", parents=[common], help="sweep temperature at fixed C")
    sub.add_parser("sweep-field", parents=[common], help="sweep C at fixed temperature")
    sub.add_parser("point", parents=[common], help="evaluate a single parameter point")
    sub.add_parser("mixedness", parents=[common], help="check the closed-form mixedness")
    return parser


def _merge_range(current, given, name):
    """Fill unset range flags from ``current`` (a preset), if any."""
    if all(v is None for v in given):
        return current
    merged = tuple(g if g is not None else (current[i] if current else None) for i, g in enumerate(given))
    if None in merged:
        raise ConfigError(f"--{name}-min, --{name}-max and --{name}-steps must be given together")
    return merged


def config_from_args(args: argparse.Namespace) -> SweepConfig:
    config = SweepConfig(subcommand=args.subcommand)
    if args.preset:
        preset = dict(PRESETS[args.preset])
        if preset.pop("subcommand") != args.subcommand:
            raise ConfigError(f"--preset {args.preset} belongs to {PRESETS[args.preset]['subcommand']}")
        config = replace(config, **preset)
    ranges = {
        "t_range": _merge_range(config.t_range, (args.t_min, args.t_max, args.t_steps), "t"),
        "c_range": _merge_range(config.c_range, (args.c_min, args.c_max, args.c_steps), "c"),
    }
    overrides = dict(ranges, form=args.form, n=args.n, steps=args.steps,
                     cluster_tol=args.cluster_tol, nodal_tol=args.nodal_tol, output=args.output)
    if args.j is not None:
        overrides["j_values"] = tuple(args.j)
    if args.c is not None:
        overrides["c_values"] = tuple(args.c)
    elif config.subcommand == "sweep-temp" and not config.c_values:
        overrides["c_values"] = (1.0,)
    if args.temp is not None:
        overrides["t_values"] = tuple(args.temp)
    if args.order is not None:
        overrides["order"] = args.order
    if args.pair is not None:
        overrides["pair"] = args.pair
    return validate(replace(config, **overrides))


def _open_output(path: str | None):
    if path is None:
        return sys.stdout, False
    return open(path, "w", encoding="utf-8", newline=""), True


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.subcommand == "mixedness":
            j_values = tuple(args.j) if args.j else DEFAULT_MIX_J
            t_values = tuple(args.temp) if args.temp else DEFAULT_MIX_T
            if any(t <= 0 for t in t_values):
                raise ConfigError("--temp values must be positive")
            stream, close = _open_output(args.output)
            try:
                ok = verify_mixedness(j_values, t_values, stream)
            finally:
                if close:
                    stream.close()
            return EXIT_OK if ok else EXIT_VERIFY
        config = config_from_args(args)
        records = run(config)
    except (ConfigError, GeometricPhaseError, ValueError) as exc:
        print(f"mixedgp: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    stream, close = _open_output(config.output)
    try:
        write_csv(records, stream)
    finally:
        if close:
            stream.close()
    return EXIT_OK


def entry_point() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry_point()
