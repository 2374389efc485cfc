"""Parameter sweeps, threshold finding and CSV emission.

A sweep walks one axis (T or any coupling) over a uniform grid, optionally
once per series value (a second quantity overridden per curve), evaluating
the requested correlation measures on the thermal state at every point.
Output rows are ordered (series, axis) and carry a full parameter echo, so
every CSV row is self-describing.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .chsh import chsh_optimize
from .errors import ConfigError, NoBracket, SweepPointError, UnknownPreset
from .gibbs import gibbs_analytic
from .measures import CorrelationReport, min_measure, negativity, uin
from .model import PARAM_NAMES, ModelParams

MEASURE_NAMES = ("negativity", "min", "uin", "chsh")

CSV_HEADER = ("axis,series_name,series_value,T,B1,B2,J,Jz,K,K1,K2,Dz,Gamma,Lambda,"
              "negativity,min,uin,chsh_max")

# A measure at or below this is dead (exact zero for sudden-death reporting).
DEATH_TOL = 1e-12
# Absolute axis tolerance of the threshold bisection.
BISECT_TOL = 1e-6
PRESCAN_POINTS = 64

PRESET_NAMES = ("fig1", "fig2", "fig3", "fig4", "fig5", "fig6")


@dataclass(frozen=True)
class SweepSpec:
    """One sweep: base parameters, swept axis, optional series and measure set."""

    base: ModelParams
    temperature: float
    axis: str
    start: float
    stop: float
    steps: int
    series_name: Optional[str] = None
    series_values: tuple = ()
    measures: tuple = MEASURE_NAMES

    def __post_init__(self):
        if self.axis != "T" and self.axis not in PARAM_NAMES:
            raise ConfigError(f"unknown axis {self.axis!r}")
        if not (self.start < self.stop):
            raise ConfigError("sweep range must satisfy start < stop")
        if self.steps < 2:
            raise ConfigError("steps must be at least 2")
        if self.series_name is not None:
            if self.series_name == self.axis:
                raise ConfigError("axis and series must name distinct quantities")
            if self.series_name != "T" and self.series_name not in PARAM_NAMES:
                raise ConfigError(f"unknown series quantity {self.series_name!r}")
            if not self.series_values:
                raise ConfigError("series needs at least one value")
        unknown = set(self.measures) - set(MEASURE_NAMES)
        if unknown:
            raise ConfigError(f"unknown measures {sorted(unknown)}")
        if self.axis == "T" and self.start <= 0:
            raise ConfigError("temperature sweeps need start > 0")

    def grid(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.steps)


@dataclass(frozen=True)
class ThresholdQuery:
    """Find where one measure crosses a level along a single swept axis."""

    spec: SweepSpec
    measure: str
    level: float

    def __post_init__(self):
        if self.spec.series_name is not None:
            raise ConfigError("threshold queries take a spec without a series")
        if self.measure not in MEASURE_NAMES:
            raise ConfigError(f"unknown measure {self.measure!r}")


@dataclass(frozen=True)
class SweepRow:
    """One evaluated grid point: coordinates, full parameter echo, measures."""

    axis: str
    series_name: Optional[str]
    series_value: Optional[float]
    params: ModelParams
    temperature: float
    report: CorrelationReport


def run_point(p: ModelParams, t: float, measures=MEASURE_NAMES) -> CorrelationReport:
    """Thermal state at (p, T) and every requested measure; deterministic."""
    rho = gibbs_analytic(p, t)
    neg = negativity(rho) if "negativity" in measures else None
    mn = min_measure(rho) if "min" in measures else None
    ui = uin(rho) if "uin" in measures else None
    ch = rot = agree = None
    if "chsh" in measures:
        res = chsh_optimize(rho)
        ch, rot, agree = res.value, res.rotation, res.restarts_agreeing
    return CorrelationReport(negativity=neg, min_value=mn, uin_value=ui,
                             chsh_max=ch, chsh_rotation=rot,
                             chsh_restarts_agreeing=agree)


def _point_coordinates(spec: SweepSpec, series_value: Optional[float],
                       axis_value: float) -> tuple[ModelParams, float]:
    p, t = spec.base, spec.temperature
    if spec.series_name is not None:
        if spec.series_name == "T":
            t = float(series_value)
        else:
            p = p.with_value(spec.series_name, series_value)
    if spec.axis == "T":
        t = float(axis_value)
    else:
        p = p.with_value(spec.axis, axis_value)
    return p, t


def run_sweep(spec: SweepSpec, jobs: int = 1) -> list[SweepRow]:
    """Evaluate the grid; rows ordered (series, axis) regardless of jobs."""
    series = list(spec.series_values) if spec.series_name is not None else [None]
    coords = [(sv, av) for sv in series for av in spec.grid()]

    def evaluate(coord):
        sv, av = coord
        p, t = _point_coordinates(spec, sv, av)
        try:
            report = run_point(p, t, spec.measures)
        except Exception as exc:
            raise SweepPointError(
                f"measure evaluation failed at {spec.axis}={av:g}"
                + (f", {spec.series_name}={sv:g}" if sv is not None else "")
                + f": {exc}",
                series_value=sv, axis_value=av) from exc
        return SweepRow(axis=spec.axis, series_name=spec.series_name,
                        series_value=sv, params=p, temperature=t, report=report)

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(evaluate, coords))
    return [evaluate(c) for c in coords]


def _fmt(value) -> str:
    if value is None:
        return ""
    v = float(value)
    if v == 0.0:
        v = 0.0  # normalize -0.0
    return format(v, ".12g")


def format_csv(rows: list[SweepRow]) -> str:
    """Fixed-header CSV, floats at 12 significant digits; byte-stable."""
    lines = [CSV_HEADER]
    for row in rows:
        d = row.params.as_dict()
        cells = [
            row.axis,
            row.series_name or "",
            _fmt(row.series_value),
            _fmt(row.temperature),
        ]
        cells += [_fmt(d[n]) for n in PARAM_NAMES]
        r = row.report
        cells += [_fmt(r.negativity), _fmt(r.min_value), _fmt(r.uin_value), _fmt(r.chsh_max)]
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def _measure_value(report: CorrelationReport, measure: str) -> float:
    return {"negativity": report.negativity, "min": report.min_value,
            "uin": report.uin_value, "chsh": report.chsh_max}[measure]


def prescan_and_bisect(f: Callable[[float], float], lo: float, hi: float,
                       level: float, n_scan: int = PRESCAN_POINTS,
                       tol: float = BISECT_TOL) -> float:
    """Locate a crossing of f through level on [lo, hi] to absolute tolerance tol.

    level == 0 means a death point: the smallest axis value where f <= 1e-12,
    bisected on the first alive/dead bracket of the pre-scan.  Otherwise the
    bisection runs on the last sign-change bracket of f - level.  Raises
    NoBracket when the pre-scan finds no crossing.
    """
    grid = np.linspace(lo, hi, n_scan)
    vals = np.array([f(t) for t in grid])

    if level == 0.0:
        dead = vals <= DEATH_TOL
        bracket = None
        for i in range(1, n_scan):
            if not dead[i - 1] and dead[i]:
                bracket = (grid[i - 1], grid[i])
                break
        if bracket is None:
            raise NoBracket("no death point inside the scan range")
        alive, deadpt = bracket
        while deadpt - alive > tol:
            mid = 0.5 * (alive + deadpt)
            if f(mid) <= DEATH_TOL:
                deadpt = mid
            else:
                alive = mid
        return 0.5 * (alive + deadpt)

    sign = np.sign(vals - level)
    bracket = None
    for i in range(1, n_scan):
        if sign[i - 1] != sign[i] and sign[i - 1] != 0:
            bracket = (grid[i - 1], grid[i])
    if bracket is None:
        raise NoBracket(f"measure never crosses level {level:g} inside the scan range")
    a, b = bracket
    fa = f(a) - level
    while b - a > tol:
        mid = 0.5 * (a + b)
        fm = f(mid) - level
        if (fa < 0) == (fm < 0):
            a, fa = mid, fm
        else:
            b = mid
    return 0.5 * (a + b)


def find_threshold(q: ThresholdQuery) -> float:
    """Axis value where the queried measure crosses the level (tolerance 1e-6)."""
    spec = q.spec

    def f(axis_value: float) -> float:
        p, t = _point_coordinates(spec, None, axis_value)
        return _measure_value(run_point(p, t, (q.measure,)), q.measure)

    return prescan_and_bisect(f, spec.start, spec.stop, q.level)


# Shared couplings of the field-scan figures (3 and 4).
_FIELD_SCAN_BASE = dict(J=-2.5, Jz=-1.0, K=0.2, K1=-0.1, K2=0.22,
                        Dz=0.32, Gamma=-0.87, Lambda=0.31)
# Shared couplings of the anisotropy-scan figures (5 and 6).
_ANISO_SCAN_BASE = dict(B1=0.3, B2=-0.7, J=-1.4, Jz=1.0, K=0.2,
                        Dz=0.32, Gamma=-0.87, Lambda=0.31)

_TEMPERATURE_SERIES = (0.5, 1.0, 1.5)

# Axis ranges and grid sizes are artifact conventions chosen wide enough to
# contain every visible feature: T in [0.05, 3], fields/anisotropies in
# [-3, 3] with an even point count so the grid is mirror-symmetric without a
# self-mirrored point.
_T_RANGE = (0.05, 3.0, 30)
_FIELD_RANGE = (-3.0, 3.0, 32)


def figure_preset(name: str, steps: Optional[int] = None,
                  measures=MEASURE_NAMES) -> SweepSpec:
    """Sweep specs reproducing the six reference scans (fig1..fig6)."""
    if name == "fig1":
        base = ModelParams(B1=0.3, B2=-0.7, J=0.0, Jz=1.0, K=0.2, K1=-0.1,
                           K2=0.22, Dz=0.32, Gamma=-0.87, Lambda=0.31)
        axis, rng, series = "T", _T_RANGE, ("Jz", (1.0, 2.0, 3.0))
        temperature = 1.0
    elif name == "fig2":
        base = ModelParams(B1=0.3, B2=-0.7, J=0.0, Jz=1.0, K=0.2, K1=-0.1,
                           K2=0.22, Dz=0.32, Gamma=-0.87, Lambda=0.31)
        # Series values span antiferromagnetic to ferromagnetic transverse
        # exchange, including the uncoupled point.
        axis, rng, series = "T", _T_RANGE, ("J", (0.7, 0.0, -0.7, -1.4))
        temperature = 1.0
    elif name == "fig3":
        base = ModelParams(B1=0.0, B2=0.0, **_FIELD_SCAN_BASE)
        axis, rng, series = "B1", _FIELD_RANGE, ("T", _TEMPERATURE_SERIES)
        temperature = 0.5
    elif name == "fig4":
        base = ModelParams(B1=0.0, B2=0.0, **_FIELD_SCAN_BASE)
        axis, rng, series = "B2", _FIELD_RANGE, ("T", _TEMPERATURE_SERIES)
        temperature = 0.5
    elif name == "fig5":
        base = ModelParams(K1=-0.1, K2=0.22, **_ANISO_SCAN_BASE)
        axis, rng, series = "K1", _FIELD_RANGE, ("T", _TEMPERATURE_SERIES)
        temperature = 0.5
    elif name == "fig6":
        base = ModelParams(K1=-0.1, K2=0.22, **_ANISO_SCAN_BASE)
        # Wider range so the ground-level crossing near K2 ~ -3.4 (the sharp
        # transition in Negativity and CHSH) sits inside the scan.
        axis, rng, series = "K2", (-6.0, 6.0, 32), ("T", _TEMPERATURE_SERIES)
        temperature = 0.5
    else:
        raise UnknownPreset(f"unknown preset {name!r}; expected one of {PRESET_NAMES}")
    start, stop, default_steps = rng
    return SweepSpec(base=base, temperature=temperature, axis=axis,
                     start=start, stop=stop,
                     steps=int(steps) if steps is not None else default_steps,
                     series_name=series[0], series_values=tuple(series[1]),
                     measures=tuple(measures))


# --- config-file parsing (plain "key = value" lines, '#' comments) ---------


def parse_config_text(text: str) -> dict:
    """Parse key = value lines into a raw string dict."""
    out = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, value = line.split("=", 1)
        key = key.strip()
        if not key:
            raise ConfigError(f"line {lineno}: empty key")
        if key in out:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        out[key] = value.strip()
    return out


def _parse_float(raw: str, key: str) -> float:
    try:
        return float(raw)
    except ValueError:
        raise ConfigError(f"value for {key!r} is not a number: {raw!r}") from None


def params_from_config(cfg: dict) -> ModelParams:
    kwargs = {n: _parse_float(cfg[n], n) for n in PARAM_NAMES if n in cfg}
    try:
        return ModelParams(**kwargs)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def _parse_measures(raw: str) -> tuple:
    names = tuple(m.strip() for m in raw.split(",") if m.strip())
    unknown = set(names) - set(MEASURE_NAMES)
    if unknown:
        raise ConfigError(f"unknown measures {sorted(unknown)}")
    return names


def sweep_spec_from_config(cfg: dict, steps: Optional[int] = None,
                           measures: Optional[tuple] = None) -> SweepSpec:
    """Build a SweepSpec from a parsed config.

    Recognized keys: the ten coupling names, temperature, axis,
    range = lo, hi; steps; series = NAME=v1,v2,...; measures = list.
    """
    known = set(PARAM_NAMES) | {"temperature", "axis", "range", "steps",
                                "series", "measures", "measure", "level"}
    unknown = set(cfg) - known
    if unknown:
        raise ConfigError(f"unknown config keys {sorted(unknown)}")
    if "axis" not in cfg:
        raise ConfigError("sweep config needs an 'axis' key")
    if "range" not in cfg:
        raise ConfigError("sweep config needs a 'range = lo, hi' key")
    parts = [s for s in cfg["range"].split(",") if s.strip()]
    if len(parts) != 2:
        raise ConfigError(f"range must be two numbers, got {cfg['range']!r}")
    start, stop = (_parse_float(s, "range") for s in parts)

    series_name, series_values = None, ()
    if "series" in cfg:
        if "=" not in cfg["series"]:
            raise ConfigError("series must look like 'series = NAME=v1,v2,...'")
        series_name, values = cfg["series"].split("=", 1)
        series_name = series_name.strip()
        series_values = tuple(_parse_float(v, "series") for v in values.split(",") if v.strip())

    if measures is None:
        measures = _parse_measures(cfg["measures"]) if "measures" in cfg else MEASURE_NAMES
    if steps is None:
        steps = int(_parse_float(cfg.get("steps", "64"), "steps"))

    return SweepSpec(
        base=params_from_config(cfg),
        temperature=_parse_float(cfg.get("temperature", "1"), "temperature"),
        axis=cfg["axis"].strip(),
        start=start, stop=stop, steps=steps,
        series_name=series_name, series_values=series_values,
        measures=tuple(measures),
    )


def threshold_query_from_config(cfg: dict) -> ThresholdQuery:
    """Build a ThresholdQuery; needs 'measure' and 'level' on top of sweep keys."""
    if "measure" not in cfg:
        raise ConfigError("threshold config needs a 'measure' key")
    if "level" not in cfg:
        raise ConfigError("threshold config needs a 'level' key")
    measure = cfg["measure"].strip()
    level = _parse_float(cfg["level"], "level")
    spec = sweep_spec_from_config(cfg, measures=(measure,) if measure in MEASURE_NAMES else None)
    if spec.series_name is not None:
        raise ConfigError("threshold config must not define a series")
    return ThresholdQuery(spec=spec, measure=measure, level=level)
