"""Declarative parameter sweeps producing plot-ready CSV."""
from __future__ import annotations

import csv
import io
import itertools
import json
import math
import sys
import warnings
from dataclasses import dataclass, field
from typing import Iterable, Mapping, TextIO

import numpy as np

from .config import ConfigError, fmt, parse_number
from .dynamics import IntegrationError, creation_lhs, evolve
from .equilibrium import equilibrium_report
from .model import CODATA, UNBOUNDED, AtomPairGeometry, ThermalBath
from .spectral import kossakowski, ratio_A_near_boundary, ratio_A_squared, ratio_B_squared, sinc
from .states import BlochState, bloch_to_matrix, concurrence
from .thresholds import critical_beta_omega, critical_temperature_kelvin

AXIS_NAMES = ("omegaL", "zOverL", "betaOmega", "time")
OUTPUTS = (
    "ratioA", "ratioB", "conditionLHS", "creationFlag", "criticalBetaOmega", "criticalTemperatureK",
    "concurrenceTrajectory", "equilibriumConcurrence", "ratioANearBoundary", "ratioAUnbounded",
)
FIXED_KEYS = ("omegaL", "zOverL", "betaOmega", "time", "zOmega", "n", "tol", "timeScale")
SI_KEYS = ("omega_rad_per_s", "L_m", "z_m")


class SpecError(ConfigError):
    def __init__(self, field_name: str, message: str):
        super().__init__(f"{field_name}: {message}")
        self.field = field_name


@dataclass(frozen=True)
class Axis:
    name: str
    min: float = 0.0
    max: float = 0.0
    count: int = 0
    spacing: str = "linear"
    values: tuple[float, ...] | None = None

    def grid(self) -> np.ndarray:
        if self.values is not None:
            return np.array(self.values, dtype=float)
        if self.spacing == "log":
            return np.geomspace(self.min, self.max, self.count)
        return np.linspace(self.min, self.max, self.count)


@dataclass(frozen=True)
class SIBlock:
    omega_rad_per_s: float
    L_m: float | None = None
    z_m: float | None = None


@dataclass(frozen=True)
class SweepSpec:
    axes: tuple[Axis, ...]
    outputs: tuple[str, ...]
    fixed: Mapping[str, object] = field(default_factory=dict)
    si: SIBlock | None = None

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        if not 1 <= len(self.axes) <= 2:
            raise SpecError("axes", f"need 1 or 2 axes, got {len(self.axes)}")
        seen = set()
        for k, ax in enumerate(self.axes):
            where = f"axes[{k}]"
            if ax.name not in AXIS_NAMES:
                raise SpecError(f"{where}.name", f"unknown axis {ax.name!r}; choose from {AXIS_NAMES}")
            if ax.name in seen:
                raise SpecError(f"{where}.name", f"axis {ax.name!r} repeated")
            seen.add(ax.name)
            if ax.values is not None:
                if len(ax.values) < 1:
                    raise SpecError(f"{where}.values", "must be non-empty")
                continue
            if ax.count < 2:
                raise SpecError(f"{where}.count", f"must be >= 2, got {ax.count}")
            if not ax.min < ax.max:
                raise SpecError(f"{where}.min", f"min ({ax.min}) must be below max ({ax.max})")
            if ax.spacing not in ("linear", "log"):
                raise SpecError(f"{where}.spacing", f"must be 'linear' or 'log', got {ax.spacing!r}")
            if ax.spacing == "log" and ax.min <= 0:
                raise SpecError(f"{where}.min", "log spacing requires min > 0")
        if not self.outputs:
            raise SpecError("outputs", "at least one output is required")
        for name in self.outputs:
            if name not in OUTPUTS:
                raise SpecError("outputs", f"unknown output {name!r}; choose from {OUTPUTS}")
        for key in self.fixed:
            if key not in FIXED_KEYS:
                raise SpecError(f"fixed.{key}", f"unknown parameter; choose from {FIXED_KEYS}")
            if key in seen:
                raise SpecError(f"fixed.{key}", "also given as an axis")
        if "criticalTemperatureK" in self.outputs and self.si is None:
            raise SpecError("si", "criticalTemperatureK needs an si block with omega_rad_per_s")
        if "concurrenceTrajectory" in self.outputs and "time" not in seen and "time" not in self.fixed:
            raise SpecError("outputs", "concurrenceTrajectory needs a time axis or fixed time")
        names = seen | set(self.fixed)
        if "omegaL" not in names and not (self.si and self.si.L_m is not None):
            raise SpecError("fixed.omegaL", "omegaL must be an axis, fixed, or derived from si.L_m")
        if self.fixed.get("timeScale", "omega") not in ("omega", "A1"):
            raise SpecError("fixed.timeScale", "must be 'omega' or 'A1'")

    @property
    def header(self) -> list[str]:
        return [ax.name for ax in self.axes] + list(self.outputs)


def _axis_from_mapping(d: Mapping, where: str) -> Axis:
    if "name" not in d:
        raise SpecError(f"{where}.name", "missing")
    try:
        if "values" in d:
            return Axis(name=str(d["name"]), values=tuple(float(v) for v in d["values"]))
        return Axis(name=str(d["name"]), min=float(d["min"]), max=float(d["max"]),
                    count=int(d["count"]), spacing=str(d.get("spacing", "linear")))
    except KeyError as exc:
        raise SpecError(f"{where}.{exc.args[0]}", "missing") from None
    except (TypeError, ValueError) as exc:
        raise SpecError(where, str(exc)) from None


def _fixed_value(key: str, value):
    if key == "n":
        vec = value if isinstance(value, (list, tuple)) else str(value).split(",")
        return tuple(parse_number(str(v), "fixed.n") for v in vec)
    if key == "timeScale":
        return str(value)
    return parse_number(str(value), f"fixed.{key}")


def spec_from_dict(data: Mapping) -> SweepSpec:
    axes_raw = data.get("axes")
    if not isinstance(axes_raw, list):
        raise SpecError("axes", "must be a list of axis objects")
    axes = tuple(_axis_from_mapping(a, f"axes[{k}]") for k, a in enumerate(axes_raw))
    outputs = data.get("outputs", [])
    if isinstance(outputs, str):
        outputs = [o.strip() for o in outputs.split(",") if o.strip()]
    fixed = {k: _fixed_value(k, v) for k, v in dict(data.get("fixed", {})).items()}
    si = None
    if data.get("si") is not None:
        si_raw = dict(data["si"])
        for k in si_raw:
            if k not in SI_KEYS:
                raise SpecError(f"si.{k}", f"unknown key; choose from {SI_KEYS}")
        if "omega_rad_per_s" not in si_raw:
            raise SpecError("si.omega_rad_per_s", "missing")
        si = SIBlock(**{k: parse_number(str(v), f"si.{k}") for k, v in si_raw.items()})
    return SweepSpec(axes, tuple(outputs), fixed, si)


def parse_axis_text(name: str, text: str, where: str | None = None) -> dict:
    """``min:max:count[:spacing]`` or ``[v1, v2, ...]`` to an axis mapping."""
    where = where or f"axis.{name}"
    v = text.strip()
    if v.startswith("["):
        return {"name": name, "values": [parse_number(x, where) for x in v.strip("[]").split(",")]}
    parts = v.split(":")
    if len(parts) not in (3, 4):
        raise SpecError(where, "expected min:max:count[:spacing]")
    try:
        count = int(parts[2])
    except ValueError:
        raise SpecError(f"{where}.count", f"not an integer: {parts[2]!r}") from None
    return {"name": name, "min": parse_number(parts[0], where), "max": parse_number(parts[1], where),
            "count": count, "spacing": parts[3] if len(parts) == 4 else "linear"}


def spec_from_keyvalue(kv: Mapping[str, str]) -> SweepSpec:
    """Flat form: ``axis.<name> = min:max:count[:spacing]`` or ``axis.<name> = [v1, v2, ...]``,
    ``fixed.<key> = value``, ``outputs = a,b``, ``si.<key> = value``."""
    data: dict = {"axes": [], "fixed": {}, "outputs": kv.get("outputs", "")}
    si: dict = {}
    for key, value in kv.items():
        if key == "outputs":
            continue
        head, _, name = key.partition(".")
        if head == "axis" and name:
            data["axes"].append(parse_axis_text(name, value, key))
        elif head == "fixed" and name:
            data["fixed"][name] = value
        elif head == "si" and name:
            si[name] = value
        else:
            raise SpecError(key, "unknown key (expected axis.*, fixed.*, si.* or outputs)")
    if si:
        data["si"] = si
    return spec_from_dict(data)


def _format(value) -> str:
    if isinstance(value, np.bool_):
        value = bool(value)
    return fmt(value)


def _point_geometry(p: Mapping, spec: SweepSpec) -> tuple[AtomPairGeometry, ThermalBath]:
    omegaL = p.get("omegaL")
    zOverL = p.get("zOverL")
    si = spec.si
    if omegaL is None and si is not None and si.L_m is not None:
        omegaL = si.omega_rad_per_s * si.L_m / CODATA.c_light
    if zOverL is None:
        if si is not None and si.z_m is not None and si.L_m:
            zOverL = si.z_m / si.L_m
        else:
            zOverL = UNBOUNDED
    n = p.get("n", (0.0, 0.0, 1.0))
    geometry = AtomPairGeometry.from_dimensionless(float(omegaL), float(zOverL), n=n,
                                                   z_omega=p.get("zOmega"))
    return geometry, ThermalBath(float(p.get("betaOmega", math.inf)))


class _Evaluator:
    def __init__(self, spec: SweepSpec):
        self.spec = spec
        self._traj_cache: dict = {}

    def trajectory_concurrence(self, p: Mapping, geometry, bath) -> float:
        coeffs = kossakowski(geometry, bath)
        key = tuple(sorted((k, v) for k, v in p.items() if k != "time"))
        if key not in self._traj_cache:
            times = self._times_for(p)
            scale = 1.0 / coeffs.A1 if self.spec.fixed.get("timeScale") == "A1" else 1.0
            ts = np.array(sorted(set(times))) * scale
            tol = float(self.spec.fixed.get("tol", 1e-10))
            n = geometry.n
            initial = BlochState.product(n, -n)
            pos = ts[ts > 0]
            values = {0.0: concurrence(bloch_to_matrix(initial))}
            if len(pos):
                traj = evolve(initial, coeffs, n, t_end=float(pos[-1]), tol=tol, t_eval=pos)
                for t, comp in zip(traj.times[1:], traj.components[1:]):
                    values[float(t)] = concurrence(bloch_to_matrix(BlochState.from_vector(comp)))
            self._traj_cache[key] = (scale, values)
        scale, values = self._traj_cache[key]
        return values[float(p["time"]) * scale]

    def _times_for(self, p: Mapping) -> list[float]:
        for ax in self.spec.axes:
            if ax.name == "time":
                return [float(t) for t in ax.grid()]
        return [float(p["time"])]

    def row(self, p: Mapping) -> list:
        geometry, bath = _point_geometry(p, self.spec)
        omegaL = geometry.omega * geometry.L
        cache: dict = {}

        def ratio_a():
            if "a" not in cache:
                cache["a"] = ratio_A_squared(geometry)
            return cache["a"]

        out = []
        for name in self.spec.outputs:
            if name == "ratioA":
                out.append(ratio_a())
            elif name == "ratioB":
                out.append(ratio_B_squared(bath, geometry.omega))
            elif name == "conditionLHS":
                out.append(creation_lhs(geometry, bath))
            elif name == "creationFlag":
                out.append(creation_lhs(geometry, bath) > 1.0)
            elif name == "criticalBetaOmega":
                out.append(critical_beta_omega(ratio_a()))
            elif name == "criticalTemperatureK":
                out.append(critical_temperature_kelvin(self.spec.si.omega_rad_per_s, ratio_a()))
            elif name == "ratioANearBoundary":
                out.append(ratio_A_near_boundary(omegaL) if omegaL > 0 else 1.0)
            elif name == "ratioAUnbounded":
                out.append(sinc(omegaL) ** 2)
            elif name == "equilibriumConcurrence":
                out.append(equilibrium_report(geometry, bath).concurrence)
            elif name == "concurrenceTrajectory":
                out.append(self.trajectory_concurrence(p, geometry, bath))
        return out


def grid_points(spec: SweepSpec) -> Iterable[dict]:
    """Grid points with the first axis varying slowest."""
    grids = [ax.grid() for ax in spec.axes]
    for combo in itertools.product(*grids):
        point = dict(spec.fixed)
        point.update({ax.name: float(v) for ax, v in zip(spec.axes, combo)})
        yield point


@dataclass
class SweepResult:
    csv: str
    rows: int
    failed: int


def run_sweep(spec: SweepSpec, stderr: TextIO | None = None) -> SweepResult:
    """Evaluate every grid point; failures become NaN rows with a warning on stderr."""
    err = stderr if stderr is not None else sys.stderr
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(spec.header)
    evaluator = _Evaluator(spec)
    rows = failed = 0
    for p in grid_points(spec):
        axis_vals = [p[ax.name] for ax in spec.axes]
        try:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                values = evaluator.row(p)
        except (ValueError, ArithmeticError, IntegrationError) as exc:
            failed += 1
            values = [math.nan] * len(spec.outputs)
            where = ", ".join(f"{k}={_format(v)}" for k, v in zip(spec.header, axis_vals))
            print(f"warning: grid point {where} failed: {exc}", file=err)
        writer.writerow([_format(v) for v in axis_vals + list(values)])
        rows += 1
    return SweepResult(buf.getvalue(), rows, failed)


# canonical figure recipes
FIG4_OMEGA_L = (0.5, 1.0, 1.5, 2.027, 2.8)


def figure_spec(name: str) -> SweepSpec:
    if name == "fig2":
        return SweepSpec((Axis("omegaL", 0.01, 10.0, 1000),),
                         ("ratioANearBoundary", "ratioAUnbounded"))
    if name == "fig3":
        return SweepSpec((Axis("zOverL", 0.05, 8.0, 80), Axis("omegaL", 0.01, 8.0, 80)), ("ratioA",))
    if name == "fig4":
        return SweepSpec((Axis("omegaL", values=FIG4_OMEGA_L), Axis("zOverL", 0.05, 8.0, 400)),
                         ("ratioA", "ratioAUnbounded"))
    raise SpecError("figure", f"unknown figure {name!r}; choose from {FIGURES}")


FIGURES = ("fig2", "fig3", "fig4", "hydrogen-example")


def spec_to_dict(spec: SweepSpec) -> dict:
    axes = []
    for ax in spec.axes:
        if ax.values is not None:
            axes.append({"name": ax.name, "values": list(ax.values)})
        else:
            axes.append({"name": ax.name, "min": ax.min, "max": ax.max, "count": ax.count,
                         "spacing": ax.spacing})
    out = {"axes": axes, "outputs": list(spec.outputs), "fixed": dict(spec.fixed)}
    if spec.si is not None:
        out["si"] = {k: getattr(spec.si, k) for k in SI_KEYS if getattr(spec.si, k) is not None}
    return out


def spec_json(spec: SweepSpec) -> str:
    return json.dumps(spec_to_dict(spec), indent=2)
