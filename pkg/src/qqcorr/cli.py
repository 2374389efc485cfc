"""Command-line front end: single points, sweeps, thresholds and figure presets.

Exit codes: 0 success, 2 config error, 3 no threshold bracket, 4 numerical
failure (grid-point diagnostics go to stderr).
"""

from __future__ import annotations

import argparse
import sys

from .errors import ConfigError, NoBracket, QQCorrError, SweepPointError, UnknownPreset
from .model import ModelParams
from .sweep import (MEASURE_NAMES, PRESET_NAMES, SweepRow, figure_preset, find_threshold,
                    format_csv, parse_config_text, params_from_config, run_point, run_sweep,
                    sweep_spec_from_config, threshold_query_from_config, _fmt)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NO_BRACKET = 3
EXIT_NUMERICAL = 4


def _read_config(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            return parse_config_text(fh.read())
    except OSError as exc:
        raise ConfigError(f"cannot read config {path!r}: {exc}") from None


def _parse_measures_flag(raw) -> tuple:
    if raw is None:
        return None
    names = tuple(m.strip() for m in raw.split(",") if m.strip())
    unknown = set(names) - set(MEASURE_NAMES)
    if unknown:
        raise ConfigError(f"unknown measures {sorted(unknown)}")
    return names


def _emit(text: str, out_path) -> None:
    if out_path is None:
        sys.stdout.write(text)
    else:
        with open(out_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _cmd_point(args) -> int:
    cfg = _read_config(args.config)
    known = set(ModelParams().as_dict()) | {"temperature"}
    unknown = set(cfg) - known
    if unknown:
        raise ConfigError(f"unknown config keys for point: {sorted(unknown)}")
    if "temperature" not in cfg:
        raise ConfigError("point config needs a 'temperature' key")
    params = params_from_config(cfg)
    temperature = float(cfg["temperature"])
    measures = _parse_measures_flag(args.measures) or MEASURE_NAMES
    report = run_point(params, temperature, measures)
    row = SweepRow(axis="", series_name=None, series_value=None,
                   params=params, temperature=temperature, report=report)
    _emit(format_csv([row]), args.out)
    return EXIT_OK


def _cmd_sweep(args) -> int:
    cfg = _read_config(args.config)
    spec = sweep_spec_from_config(cfg, steps=args.steps,
                                  measures=_parse_measures_flag(args.measures))
    rows = run_sweep(spec, jobs=args.jobs)
    _emit(format_csv(rows), args.out)
    return EXIT_OK


def _cmd_threshold(args) -> int:
    cfg = _read_config(args.config)
    query = threshold_query_from_config(cfg)
    crossing = find_threshold(query)
    text = "axis,measure,level,crossing\n" + ",".join(
        [query.spec.axis, query.measure, _fmt(query.level), _fmt(crossing)]) + "\n"
    _emit(text, args.out)
    return EXIT_OK


def _cmd_preset(args) -> int:
    spec = figure_preset(args.name, steps=args.steps,
                         measures=_parse_measures_flag(args.measures) or MEASURE_NAMES)
    rows = run_sweep(spec, jobs=args.jobs)
    _emit(format_csv(rows), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qqcorr",
        description="Thermal quantum correlations of the axially symmetric "
                    "qubit-qutrit model: points, sweeps, thresholds, figure presets.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(sp, config=True):
        if config:
            sp.add_argument("--config", required=True, help="key = value config file")
        sp.add_argument("--out", default=None, help="output path (default stdout)")
        sp.add_argument("--measures", default=None,
                        help="comma list from: " + ",".join(MEASURE_NAMES))

    sp = sub.add_parser("point", help="evaluate one (params, T) point")
    add_common(sp)
    sp.set_defaults(func=_cmd_point)

    sp = sub.add_parser("sweep", help="run a sweep described by a config file")
    add_common(sp)
    sp.add_argument("--steps", type=int, default=None, help="grid size override")
    sp.add_argument("--jobs", type=int, default=1, help="worker threads (order-invariant)")
    sp.set_defaults(func=_cmd_sweep)

    sp = sub.add_parser("threshold", help="find a sudden-death or level crossing")
    add_common(sp)
    sp.set_defaults(func=_cmd_threshold)

    sp = sub.add_parser("preset", help="run one of the built-in figure scans")
    sp.add_argument("name", choices=list(PRESET_NAMES))
    add_common(sp, config=False)
    sp.add_argument("--steps", type=int, default=None, help="grid size override")
    sp.add_argument("--jobs", type=int, default=1, help="worker threads (order-invariant)")
    sp.set_defaults(func=_cmd_preset)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, UnknownPreset) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NoBracket as exc:
        print(f"no bracket: {exc}", file=sys.stderr)
        return EXIT_NO_BRACKET
    except SweepPointError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except QQCorrError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    raise SystemExit(main())
