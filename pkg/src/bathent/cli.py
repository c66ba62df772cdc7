"""Command-line front end: ``sweep``, ``critical-temp``, ``reproduce`` and ``evolve``."""
from __future__ import annotations

import argparse
import csv
import io
import math
import sys
import warnings
from pathlib import Path

import numpy as np

from .config import ConfigError, fmt, load_config, parse_number
from .dynamics import IntegrationError, evolve
from .equilibrium import equilibrium_report
from .model import CODATA, UNBOUNDED, AtomPairGeometry, ThermalBath, from_si
from .reproduce import reproduce
from .spectral import kossakowski, ratio_A_squared
from .states import BlochState, bloch_to_matrix, concurrence, ppt_min_eigenvalue
from .sweep import (FIGURES, figure_spec, parse_axis_text, run_sweep, spec_from_dict, spec_from_keyvalue,
                    spec_json, spec_to_dict)
from .thresholds import critical_beta_omega, critical_temperature

EXIT_OK, EXIT_USAGE, EXIT_NUMERICAL = 0, 1, 2

BLOCH_COLUMNS = ([f"rho0{i}" for i in (1, 2, 3)] + [f"rho{i}0" for i in (1, 2, 3)]
                 + [f"rho{i}{j}" for i in (1, 2, 3) for j in (1, 2, 3)])
EVOLVE_KEYS = ("omegaL", "zOverL", "zOmega", "betaOmega", "n", "initial", "rho0i", "rhoi0", "rhoij",
               "tEnd", "tol", "tUnit", "samples")
INITIAL_STATES = ("excited-ground", "ground-ground", "excited-excited", "maximally-mixed")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


# ---- sweep ---------------------------------------------------------------

def _cmd_sweep(args) -> int:
    data: dict = {"axes": [], "fixed": {}, "outputs": []}
    if args.spec:
        raw, kind = load_config(args.spec)
        data = spec_to_dict(spec_from_dict(raw) if kind == "json" else spec_from_keyvalue(raw))
    for item in args.axis or []:
        name, _, text = item.partition("=")
        data["axes"].append(parse_axis_text(name, text, f"--axis {name}"))
    for item in args.fixed or []:
        key, _, value = item.partition("=")
        data["fixed"][key] = value
    if args.outputs:
        data["outputs"] = [o.strip() for o in args.outputs.split(",") if o.strip()]
    for item in args.si or []:
        key, _, value = item.partition("=")
        data["si"] = dict(data.get("si") or {}, **{key: value})
    spec = spec_from_dict(data)
    result = run_sweep(spec)
    _emit(result.csv, args.out)
    if result.rows and result.failed == result.rows:
        return EXIT_NUMERICAL
    return EXIT_OK


# ---- critical temperature -------------------------------------------------

def _cmd_critical(args) -> int:
    if args.omega_rad_per_s is not None:
        if args.L_m is None:
            raise UsageError("--L-m is required with --omega-rad-per-s")
        z = UNBOUNDED if args.z_m is None else args.z_m
        geometry, _ = from_si(args.omega_rad_per_s, args.L_m, z, 0.0)
        t_k = critical_temperature(geometry, CODATA)
    elif args.omegaL is not None:
        geometry = AtomPairGeometry.from_dimensionless(args.omegaL, args.zOverL, z_omega=args.zOmega)
        t_k = None
    else:
        raise UsageError("give either --omegaL or --omega-rad-per-s/--L-m")
    ratio = ratio_A_squared(geometry)
    x = critical_beta_omega(ratio)
    t_nat = math.inf if x == 0 else (0.0 if math.isinf(x) else 1.0 / x)
    cols = ["omegaL", "ratioA", "criticalBetaOmega", "criticalTemperatureOverOmega"]
    vals = [geometry.omega * geometry.L, ratio, x, t_nat]
    if t_k is not None:
        cols.append("criticalTemperatureK")
        vals.append(t_k)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(cols)
    w.writerow([fmt(v) for v in vals])
    _emit(buf.getvalue(), args.out)
    if math.isinf(t_nat):
        print("always entangled: (A2/A1)^2 = 1, no finite critical temperature", file=sys.stderr)
    return EXIT_OK


# ---- reproduce ------------------------------------------------------------

def _cmd_reproduce(args) -> int:
    if args.figure not in FIGURES:
        raise UsageError(f"unknown figure {args.figure!r}; choose from {', '.join(FIGURES)}")
    if args.print_spec:
        if args.figure == "hydrogen-example":
            raise UsageError("hydrogen-example is not a sweep; it has no spec")
        _emit(spec_json(figure_spec(args.figure)) + "\n", args.out)
        return EXIT_OK
    text, summary = reproduce(args.figure)
    _emit(text, args.out)
    print(summary, file=sys.stderr)
    return EXIT_OK


# ---- evolve ---------------------------------------------------------------

def _vector(text, where, size):
    items = text if isinstance(text, (list, tuple)) else str(text).replace(";", ",").split(",")
    vals = [parse_number(str(v), where) for v in items]
    if len(vals) != size:
        raise ConfigError(f"{where}: expected {size} numbers, got {len(vals)}")
    return np.array(vals)


def _initial_state(cfg: dict, n: np.ndarray) -> BlochState:
    if "rho0i" in cfg or "rhoi0" in cfg or "rhoij" in cfg:
        missing = [k for k in ("rho0i", "rhoi0", "rhoij") if k not in cfg]
        if missing:
            raise ConfigError(f"{missing[0]}: required when giving explicit Bloch components")
        state = BlochState(_vector(cfg["rho0i"], "rho0i", 3), _vector(cfg["rhoi0"], "rhoi0", 3),
                           _vector(cfg["rhoij"], "rhoij", 9).reshape(3, 3))
        if np.linalg.eigvalsh(bloch_to_matrix(state))[0] < -1e-10:
            raise ConfigError("rhoij: Bloch components do not describe a positive state")
        return state
    kind = str(cfg.get("initial", "excited-ground"))
    if kind == "excited-ground":
        return BlochState.product(n, -n)
    if kind == "ground-ground":
        return BlochState.product(-n, -n)
    if kind == "excited-excited":
        return BlochState.product(n, n)
    if kind == "maximally-mixed":
        return BlochState.maximally_mixed()
    raise ConfigError(f"initial: unknown state {kind!r}; choose from {INITIAL_STATES}")


def load_evolve_config(path) -> dict:
    cfg, _ = load_config(path)
    for key in cfg:
        if key not in EVOLVE_KEYS:
            raise ConfigError(f"{path}: {key}: unknown key; choose from {EVOLVE_KEYS}")
    if "omegaL" not in cfg:
        raise ConfigError(f"{path}: omegaL: required")
    return cfg


def evolve_csv(cfg: dict, t_end=None, tol=None, t_unit=None, samples=None) -> tuple[str, float]:
    """Run one evolution described by an evolve config; returns ``(csv_text, final_concurrence)``."""
    num = lambda k, default: parse_number(str(cfg[k]), k) if k in cfg else default  # noqa: E731
    n = _vector(cfg.get("n", "0,0,1"), "n", 3)
    n = n / np.linalg.norm(n)
    z_omega = num("zOmega", None)
    geometry = AtomPairGeometry.from_dimensionless(num("omegaL", 0.0), num("zOverL", UNBOUNDED), n=n,
                                                   z_omega=z_omega)
    bath = ThermalBath(num("betaOmega", math.inf))
    coeffs = kossakowski(geometry, bath)
    t_end = t_end if t_end is not None else num("tEnd", None)
    if t_end is None:
        raise ConfigError("tEnd: required (config key or --t-end)")
    tol = tol if tol is not None else num("tol", 1e-10)
    t_unit = t_unit or str(cfg.get("tUnit", "omega"))
    if t_unit not in ("omega", "A1"):
        raise ConfigError("tUnit: must be 'omega' or 'A1'")
    scale = 1.0 / coeffs.A1 if t_unit == "A1" else 1.0
    samples = samples if samples is not None else (int(num("samples", 0)) or None)
    initial = _initial_state(cfg, n)
    t_stop = t_end * scale
    t_eval = None if not samples else np.linspace(0, t_stop, samples + 1)[1:]
    traj = evolve(initial, coeffs, n, t_end=t_stop, tol=tol, t_eval=t_eval)

    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        eq = equilibrium_report(geometry, bath, initial).state
    residual = float(np.max(np.abs(traj.components[-1] - eq.to_vector())))

    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["t", "concurrence", "pptMinEig", "tau"] + BLOCH_COLUMNS + ["equilibriumResidual"])
    last = len(traj.times) - 1
    final_c = 0.0
    for k, (t, comp) in enumerate(zip(traj.times, traj.components)):
        rho = bloch_to_matrix(BlochState.from_vector(comp))
        c = concurrence(rho)
        final_c = c
        tau = comp[6] + comp[10] + comp[14]
        row = [t, c, ppt_min_eigenvalue(rho), tau] + list(comp)
        w.writerow([fmt(v) for v in row] + [fmt(residual) if k == last else ""])
    return buf.getvalue(), final_c


def _cmd_evolve(args) -> int:
    cfg = load_evolve_config(args.config)
    text, _ = evolve_csv(cfg, args.t_end, args.tol, args.t_unit, args.samples)
    _emit(text, args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="bathent", description="Entanglement birth between two atoms in a thermal bath near a reflecting plane.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("sweep", help="evaluate outputs over a 1-D or 2-D parameter grid")
    s.add_argument("--spec", help="sweep spec file (JSON or key=value)")
    s.add_argument("--axis", action="append", metavar="NAME=MIN:MAX:COUNT[:SPACING]")
    s.add_argument("--fixed", action="append", metavar="KEY=VALUE")
    s.add_argument("--outputs", metavar="A,B,...")
    s.add_argument("--si", action="append", metavar="KEY=VALUE")
    s.add_argument("--out", help="write CSV here instead of stdout")
    s.set_defaults(func=_cmd_sweep)

    c = sub.add_parser("critical-temp", help="temperature below which entanglement is born")
    c.add_argument("--omegaL", type=float)
    c.add_argument("--zOverL", type=lambda v: parse_number(v, "--zOverL"), default=UNBOUNDED)
    c.add_argument("--zOmega", type=float)
    c.add_argument("--omega-rad-per-s", type=float)
    c.add_argument("--L-m", type=float)
    c.add_argument("--z-m", type=lambda v: parse_number(v, "--z-m"))
    c.add_argument("--out")
    c.set_defaults(func=_cmd_critical)

    r = sub.add_parser("reproduce", help=f"regenerate figure data: {', '.join(FIGURES)}")
    r.add_argument("figure")
    r.add_argument("--print-spec", action="store_true", help="print the sweep spec instead of running it")
    r.add_argument("--out")
    r.set_defaults(func=_cmd_reproduce)

    e = sub.add_parser("evolve", help="integrate the master equation from a config file")
    e.add_argument("--config", required=True)
    e.add_argument("--t-end", type=float)
    e.add_argument("--tol", type=float)
    e.add_argument("--t-unit", choices=("omega", "A1"))
    e.add_argument("--samples", type=int, help="output this many equally spaced times")
    e.add_argument("--out")
    e.set_defaults(func=_cmd_evolve)
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:  # argparse usage errors and --help
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (UsageError, ConfigError) as exc:
        print(f"bathent {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (IntegrationError, ArithmeticError) as exc:
        print(f"bathent {args.command}: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except ValueError as exc:
        print(f"bathent {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
