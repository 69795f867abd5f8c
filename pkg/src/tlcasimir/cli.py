"""Command-line front end.

Subcommands:
    force      one force evaluation, JSON or CSV report
    sweep      force along one swept parameter (l, uC, uL, R, T), CSV
    spectrum   noise / energy-density spectra over an omega grid, CSV
    validate   run the invariant suite on a netlist pair

Option resolution order: command-line flags, then TLCASIMIR_* environment
variables, then the --config file (key = value lines), then defaults.
All floats are printed with 12 significant digits in scientific notation
so output is bit-deterministic for identical inputs.
"""

from __future__ import annotations

import argparse
import csv
import math
import os
import sys
from dataclasses import dataclass, replace

import numpy as np

from .circuit import (
    Capacitor,
    Inductor,
    LineSpec,
    Resistor,
    eval_impedance_imaginary,
    format_netlist,
    parse_netlist,
)
from .errors import (
    InvariantViolationError,
    NetlistError,
    PassivityError,
    QuadratureError,
    ResonanceError,
)
from .fdt import energy_density_dual, input_spectrum_line, input_spectrum_resistor, nyquist_current_spectrum
from .force import QuadratureConfig, force_finite_temperature, force_zero_temperature
from .mirrors import (
    MirrorFlavor,
    energy_identity_residual,
    reflect_termination,
    reflection_imaginary_axis,
)
from .qed import ThermalSpec

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_NUMERICAL = 3
EXIT_INVARIANT = 4

ENV_PREFIX = "TLCASIMIR_"

_DEFAULTS = {
    "z0": 50.0,
    "c": 2.998e8,
    "l": None,
    "temperature": 0.0,
    "flavor": "terminating",
    "format": None,  # per-command default
    "rel_tol": 1e-9,
    "abs_tol": 1e-12,
    "max_subdivisions": 2000,
}

_FLOAT_KEYS = {
    "z0", "c", "l", "temperature", "rel_tol", "abs_tol",
    "sweep_min", "sweep_max", "omega_min", "omega_max", "resistance",
}
_INT_KEYS = {"max_subdivisions", "sweep_points", "omega_points"}


def fmt(x) -> str:
    """Deterministic 12-significant-digit scientific formatting."""
    if x is None:
        return ""
    return format(float(x), ".11e")


def _json_dump(obj, out: list[str], indent: int = 0) -> None:
    pad = "  " * indent
    if isinstance(obj, dict):
        out.append("{\n")
        items = list(obj.items())
        for i, (key, value) in enumerate(items):
            out.append(f'{pad}  "{key}": ')
            _json_dump(value, out, indent + 1)
            out.append(",\n" if i < len(items) - 1 else "\n")
        out.append(pad + "}")
    elif isinstance(obj, (list, tuple)):
        out.append("[")
        for i, value in enumerate(obj):
            _json_dump(value, out, indent)
            if i < len(obj) - 1:
                out.append(", ")
        out.append("]")
    elif obj is None:
        out.append("null")
    elif isinstance(obj, bool):
        out.append("true" if obj else "false")
    elif isinstance(obj, int):
        out.append(str(obj))
    elif isinstance(obj, float):
        out.append(fmt(obj))
    else:
        out.append('"' + str(obj).replace("\\", "\\\\").replace('"', '\\"') + '"')


def to_json(obj) -> str:
    """JSON text with fixed float formatting (see fmt)."""
    out: list[str] = []
    _json_dump(obj, out)
    return "".join(out) + "\n"


# ---------------------------------------------------------------------------
# Option resolution
# ---------------------------------------------------------------------------

def _read_config_file(path: str) -> dict:
    values = {}
    with open(path, encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise NetlistError(f"config line {lineno} is not 'key = value'", 0)
            key, _, value = line.partition("=")
            values[key.strip().lower().replace("-", "_")] = value.strip()
    return values


def _coerce(key: str, value):
    if value is None or not isinstance(value, str):
        return value
    if key in _FLOAT_KEYS:
        return float(value)
    if key in _INT_KEYS:
        return int(value)
    return value


def resolve_option(key: str, cli_value, file_values: dict, default=None):
    """flags > environment > config file > default."""
    if cli_value is not None:
        return cli_value
    env = os.environ.get(ENV_PREFIX + key.upper())
    if env is not None:
        return _coerce(key, env)
    if key in file_values:
        return _coerce(key, file_values[key])
    return default


@dataclass(frozen=True)
class RunConfig:
    z1_netlist: str | None
    z2_netlist: str | None
    z0: float
    c: float
    l: float | None
    temperature: float
    flavor: str
    fmt: str
    rel_tol: float
    abs_tol: float
    max_subdivisions: int
    sweep_param: str | None = None
    sweep_min: float | None = None
    sweep_max: float | None = None
    sweep_points: int | None = None
    sweep_scale: str = "linear"
    quantity: str | None = None
    resistance: float | None = None
    omega_min: float | None = None
    omega_max: float | None = None
    omega_points: int | None = None
    omega_scale: str = "log"

    @property
    def line(self) -> LineSpec:
        return LineSpec(z0=self.z0, c=self.c)

    @property
    def thermal(self) -> ThermalSpec:
        return ThermalSpec(temperature=self.temperature)

    @property
    def quadrature(self) -> QuadratureConfig:
        return QuadratureConfig(
            rel_tol=self.rel_tol,
            abs_tol=self.abs_tol,
            max_subdivisions=self.max_subdivisions,
        )

    @property
    def mirror_flavor(self) -> MirrorFlavor:
        return MirrorFlavor(self.flavor)


def _build_config(args: argparse.Namespace, default_format: str) -> RunConfig:
    file_values = _read_config_file(args.config) if args.config else {}

    def get(key, default=None):
        return resolve_option(key, getattr(args, key, None), file_values, default)

    cfg = RunConfig(
        z1_netlist=get("z1"),
        z2_netlist=get("z2"),
        z0=float(get("z0", _DEFAULTS["z0"])),
        c=float(get("c", _DEFAULTS["c"])),
        l=(lambda v: None if v is None else float(v))(get("l")),
        temperature=float(get("temperature", _DEFAULTS["temperature"])),
        flavor=str(get("flavor", _DEFAULTS["flavor"])).lower(),
        fmt=str(get("format", default_format)).lower(),
        rel_tol=float(get("rel_tol", _DEFAULTS["rel_tol"])),
        abs_tol=float(get("abs_tol", _DEFAULTS["abs_tol"])),
        max_subdivisions=int(get("max_subdivisions", _DEFAULTS["max_subdivisions"])),
        sweep_param=get("sweep_param"),
        sweep_min=get("sweep_min"),
        sweep_max=get("sweep_max"),
        sweep_points=get("sweep_points"),
        sweep_scale=str(get("sweep_scale", "linear")).lower(),
        quantity=get("quantity"),
        resistance=get("resistance"),
        omega_min=get("omega_min"),
        omega_max=get("omega_max"),
        omega_points=get("omega_points"),
        omega_scale=str(get("omega_scale", "log")).lower(),
    )
    if cfg.flavor not in ("terminating", "embedded"):
        raise ValueError(f"flavor must be terminating or embedded, got {cfg.flavor!r}")
    if cfg.fmt not in ("json", "csv"):
        raise ValueError(f"format must be json or csv, got {cfg.fmt!r}")
    return cfg


# ---------------------------------------------------------------------------
# force
# ---------------------------------------------------------------------------

def _derived_u_values(cfg: RunConfig) -> tuple[float | None, float | None]:
    """u_C and u_L when a side is a bare capacitor/inductor."""
    u_c = u_l = None
    for text in (cfg.z1_netlist, cfg.z2_netlist):
        expr = parse_netlist(text)
        if isinstance(expr, Capacitor):
            u_c = (cfg.l / cfg.c) / (cfg.z0 * expr.farads)
        elif isinstance(expr, Inductor):
            u_l = (cfg.l / cfg.c) * cfg.z0 / expr.henries
    return u_c, u_l


_SIGN_GRID = np.logspace(-3, 1.5, 41)


def _sign_summary(z1, z2, line, l, flavor: MirrorFlavor) -> str:
    signs = set()
    for u in _SIGN_GRID:
        xi = u * line.c / l
        product = reflection_imaginary_axis(z1, line, xi, flavor) * reflection_imaginary_axis(
            z2, line, xi, flavor
        )
        if product != 0.0:
            signs.add(1 if product > 0 else -1)
    if not signs:
        return "neutral"
    if signs == {1}:
        return "attractive"
    if signs == {-1}:
        return "repulsive"
    return "mixed"


def run_force(cfg: RunConfig) -> dict:
    """One force evaluation; returns the report dict."""
    if cfg.z1_netlist is None or cfg.z2_netlist is None or cfg.l is None:
        raise ValueError("force requires --z1, --z2 and --l")
    z1 = parse_netlist(cfg.z1_netlist)
    z2 = parse_netlist(cfg.z2_netlist)
    line = cfg.line
    if cfg.temperature > 0:
        result = force_finite_temperature(
            z1, z2, line, cfg.l, cfg.thermal, cfg.quadrature, cfg.mirror_flavor
        )
    else:
        result = force_zero_temperature(
            z1, z2, line, cfg.l, cfg.quadrature, cfg.mirror_flavor
        )
    u_c, u_l = _derived_u_values(cfg)
    return {
        "f_si_newtons": result.force_si,
        "f_over_f0": result.f_normalized,
        "error_estimate": result.error_estimate,
        "u_C": u_c,
        "u_L": u_l,
        "sign_summary": _sign_summary(z1, z2, line, cfg.l, cfg.mirror_flavor),
        "diagnostics": {
            "evaluations": result.diagnostics["evaluations"],
            "matsubara_terms": result.diagnostics["matsubara_terms"],
            "u_max": result.diagnostics["u_max"],
            "tail_bound": result.diagnostics["tail_bound"],
        },
    }


_FORCE_CSV_HEADER = ["f_si_newtons", "f_over_f0", "error_estimate", "u_C", "u_L", "sign_summary"]


def _emit_force(report: dict, cfg: RunConfig, out) -> None:
    if cfg.fmt == "json":
        out.write(to_json(report))
    else:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(_FORCE_CSV_HEADER)
        writer.writerow(
            [fmt(report["f_si_newtons"]), fmt(report["f_over_f0"]),
             fmt(report["error_estimate"]), fmt(report["u_C"]), fmt(report["u_L"]),
             report["sign_summary"]]
        )


# ---------------------------------------------------------------------------
# sweep
# ---------------------------------------------------------------------------

def _sweep_grid(cfg: RunConfig) -> np.ndarray:
    if cfg.sweep_min is None or cfg.sweep_max is None or cfg.sweep_points is None:
        raise ValueError("sweep requires --sweep-min, --sweep-max and --sweep-points")
    if not (cfg.sweep_min < cfg.sweep_max):
        raise ValueError("sweep range must have min < max")
    if cfg.sweep_points < 2:
        raise ValueError("sweep needs at least 2 points")
    if cfg.sweep_scale == "log":
        if cfg.sweep_min <= 0:
            raise ValueError("log sweep requires min > 0")
        return np.logspace(math.log10(cfg.sweep_min), math.log10(cfg.sweep_max), cfg.sweep_points)
    return np.linspace(cfg.sweep_min, cfg.sweep_max, cfg.sweep_points)


def _rebind_unique(expr, kind, value):
    """Replace the value of the unique leaf of the given kind in the tree."""
    from .circuit import Parallel, Series

    if isinstance(expr, kind):
        if kind is Resistor:
            return Resistor(value), 1
        if kind is Inductor:
            return Inductor(value), 1
        return Capacitor(value), 1
    if isinstance(expr, (Series, Parallel)):
        new_children = []
        hits = 0
        for child in expr.children:
            new_child, n = _rebind_unique(child, kind, value)
            new_children.append(new_child)
            hits += n
        rebuilt = type(expr)(tuple(new_children))
        return rebuilt, hits
    return expr, 0


def _apply_sweep_value(cfg: RunConfig, value: float) -> RunConfig:
    param = cfg.sweep_param
    if param == "l":
        return replace(cfg, l=value)
    if param == "T":
        return replace(cfg, temperature=value)

    z1 = parse_netlist(cfg.z1_netlist)
    z2 = parse_netlist(cfg.z2_netlist)
    if param == "uC":
        farads = (cfg.l / cfg.c) / (cfg.z0 * value)
        kind, element_value = Capacitor, farads
    elif param == "uL":
        henries = (cfg.l / cfg.c) * cfg.z0 / value
        kind, element_value = Inductor, henries
    elif param == "R":
        kind, element_value = Resistor, value
    else:
        raise ValueError(f"unknown sweep parameter {param!r}")
    new_z1, hits1 = _rebind_unique(z1, kind, element_value)
    new_z2, hits2 = _rebind_unique(z2, kind, element_value)
    if hits1 + hits2 != 1:
        raise ValueError(
            f"sweep parameter {param} needs exactly one {kind.__name__} leaf "
            f"across the pair, found {hits1 + hits2}"
        )
    return replace(cfg, z1_netlist=format_netlist(new_z1), z2_netlist=format_netlist(new_z2))


def run_sweep(cfg: RunConfig) -> list[dict]:
    """Force at each grid point; failures recorded per row, sweep continues."""
    if cfg.sweep_param is None:
        raise ValueError("sweep requires --sweep-param")
    if cfg.z1_netlist is None or cfg.z2_netlist is None or cfg.l is None:
        raise ValueError("sweep requires --z1, --z2 and --l")
    rows = []
    for value in _sweep_grid(cfg):
        row = {"param": cfg.sweep_param, "value": float(value)}
        try:
            point_cfg = _apply_sweep_value(cfg, float(value))
            report = run_force(point_cfg)
            row["f_si"] = report["f_si_newtons"]
            row["f_over_f0"] = report["f_over_f0"]
            row["err"] = report["error_estimate"]
        except (NetlistError, ValueError, QuadratureError, ResonanceError,
                InvariantViolationError, PassivityError) as exc:
            row["f_si"] = None
            row["f_over_f0"] = None
            row["err"] = f"FAILED: {exc}"
        rows.append(row)
    return rows


_SWEEP_CSV_HEADER = ["param", "value", "f_si", "f_over_f0", "err"]


def _emit_sweep(rows: list[dict], cfg: RunConfig, out) -> None:
    if cfg.fmt == "json":
        out.write(to_json(rows))
        return
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(_SWEEP_CSV_HEADER)
    for row in rows:
        err = row["err"]
        writer.writerow(
            [row["param"], fmt(row["value"]), fmt(row["f_si"]), fmt(row["f_over_f0"]),
             err if isinstance(err, str) else fmt(err)]
        )


# ---------------------------------------------------------------------------
# spectrum
# ---------------------------------------------------------------------------

def _omega_grid(cfg: RunConfig) -> np.ndarray:
    if cfg.omega_min is None or cfg.omega_max is None or cfg.omega_points is None:
        raise ValueError("spectrum requires --omega-min, --omega-max and --omega-points")
    if not (0 < cfg.omega_min < cfg.omega_max):
        raise ValueError("omega grid requires 0 < min < max")
    if cfg.omega_points < 1:
        raise ValueError("omega grid needs at least 1 point")
    if cfg.omega_scale == "log":
        return np.logspace(math.log10(cfg.omega_min), math.log10(cfg.omega_max), cfg.omega_points)
    return np.linspace(cfg.omega_min, cfg.omega_max, cfg.omega_points)


def run_spectrum(cfg: RunConfig) -> tuple[list[str], list[list]]:
    """Rows of the requested spectrum over the omega grid."""
    grid = _omega_grid(cfg)
    th = cfg.thermal
    line = cfg.line
    if cfg.quantity == "nyquist":
        if cfg.resistance is None:
            raise ValueError("nyquist spectrum requires --resistance")
        header = ["omega", "value"]
        rows = [
            [w, nyquist_current_spectrum(cfg.resistance, w, th).value] for w in grid
        ]
    elif cfg.quantity == "input":
        if cfg.resistance is None:
            raise ValueError("input spectrum requires --resistance")
        header = ["omega", "value", "value_qed", "abs_diff"]
        rows = []
        for w in grid:
            fdt_value = input_spectrum_resistor(cfg.resistance, line, w, th).value
            qed_value = input_spectrum_line(cfg.resistance, line, w, th).value
            rows.append([w, fdt_value, qed_value, abs(fdt_value - qed_value)])
    elif cfg.quantity == "energy_density":
        if cfg.z1_netlist is None or cfg.z2_netlist is None or cfg.l is None:
            raise ValueError("energy_density spectrum requires --z1, --z2 and --l")
        z1 = parse_netlist(cfg.z1_netlist)
        z2 = parse_netlist(cfg.z2_netlist)
        header = ["omega", "value", "value_closed", "abs_diff"]
        rows = []
        for w in grid:
            folded, closed = energy_density_dual(z1, z2, line, cfg.l, w, th)
            rows.append([w, folded, closed, abs(folded - closed)])
    else:
        raise ValueError(f"unknown spectrum quantity {cfg.quantity!r}")
    return header, [[float(x) for x in row] for row in rows]


def _emit_spectrum(header: list[str], rows: list[list], cfg: RunConfig, out) -> None:
    if cfg.fmt == "json":
        out.write(to_json([dict(zip(header, row)) for row in rows]))
        return
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt(x) for x in row])


# ---------------------------------------------------------------------------
# validate
# ---------------------------------------------------------------------------

def run_validate(cfg: RunConfig, out) -> bool:
    """Deterministic invariant suite on the configured netlist pair."""
    if cfg.z1_netlist is None or cfg.z2_netlist is None:
        raise ValueError("validate requires --z1 and --z2")
    l = cfg.l if cfg.l is not None else 0.01
    line = cfg.line
    z1 = parse_netlist(cfg.z1_netlist)
    z2 = parse_netlist(cfg.z2_netlist)
    rng = np.random.default_rng(0)
    ok = True

    def check(name: str, passed: bool, detail: str = "") -> None:
        nonlocal ok
        ok = ok and passed
        status = "PASS" if passed else "FAIL"
        out.write(f"{status} {name}" + (f" ({detail})" if detail else "") + "\n")

    for label, expr, text in (("z1", z1, cfg.z1_netlist), ("z2", z2, cfg.z2_netlist)):
        check(f"{label} parse round trip", parse_netlist(format_netlist(expr)) == expr)

    u_grid = np.logspace(-3, 2, 200)
    worst_im = 0.0
    all_passive = True
    all_bounded = True
    min_den = math.inf
    for u in u_grid:
        xi = u * line.c / l
        for expr in (z1, z2):
            z_val = eval_impedance_imaginary(expr, xi)
            all_passive = all_passive and (z_val >= 0)
            raw = reflect_termination(expr, line, 1j * xi).r
            worst_im = max(worst_im, abs(raw.imag))
        r1 = reflection_imaginary_axis(z1, line, xi)
        r2 = reflection_imaginary_axis(z2, line, xi)
        all_bounded = all_bounded and abs(r1) <= 1 and abs(r2) <= 1
        min_den = min(min_den, 1.0 - r1 * r2 * math.exp(-2.0 * u))
    check("impedances nonnegative on imaginary axis", all_passive)
    check("reflections real and within [-1, 1]", all_bounded and worst_im <= 1e-13,
          f"max imag residue {worst_im:.1e}")
    check("force denominator positive", min_den > 0, f"min denominator {min_den:.3e}")

    worst_residual = 0.0
    for _ in range(200):
        omega = 10 ** rng.uniform(3, 12)
        for expr in (z1, z2):
            worst_residual = max(worst_residual, energy_identity_residual(expr, line, omega))
    check("energy balance identity", worst_residual <= 1e-12,
          f"max residual {worst_residual:.3e}")

    r1_zero = reflection_imaginary_axis(z1, line, 0.0)
    r2_zero = reflection_imaginary_axis(z2, line, 0.0)
    check("zero-frequency reflection limits finite",
          math.isfinite(r1_zero) and math.isfinite(r2_zero),
          f"r1(i0)={r1_zero:+.3f} r2(i0)={r2_zero:+.3f}")
    return ok


# ---------------------------------------------------------------------------
# argument parsing and entry point
# ---------------------------------------------------------------------------

def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--z1", help="netlist of the first termination")
    parser.add_argument("--z2", help="netlist of the second termination")
    parser.add_argument("--z0", type=float, help="line impedance in ohms (default 50)")
    parser.add_argument("--c", type=float, help="propagation speed in m/s (default 2.998e8)")
    parser.add_argument("--l", type=float, help="separation in meters")
    parser.add_argument("-T", "--temperature", type=float, help="temperature in kelvin (default 0)")
    parser.add_argument("--flavor", choices=["terminating", "embedded"],
                        help="reflection flavor (default terminating)")
    parser.add_argument("--format", choices=["json", "csv"], help="output format")
    parser.add_argument("--rel-tol", dest="rel_tol", type=float)
    parser.add_argument("--abs-tol", dest="abs_tol", type=float)
    parser.add_argument("--max-subdivisions", dest="max_subdivisions", type=int)
    parser.add_argument("--config", help="key = value config file merged under flags")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tlcasimir",
        description="Casimir force between impedances terminating a transmission line",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_force = sub.add_parser("force", help="single force evaluation")
    _add_common(p_force)

    p_sweep = sub.add_parser("sweep", help="force along a swept parameter")
    _add_common(p_sweep)
    p_sweep.add_argument("--sweep-param", dest="sweep_param",
                         choices=["l", "uC", "uL", "R", "T"])
    p_sweep.add_argument("--sweep-min", dest="sweep_min", type=float)
    p_sweep.add_argument("--sweep-max", dest="sweep_max", type=float)
    p_sweep.add_argument("--sweep-points", dest="sweep_points", type=int)
    p_sweep.add_argument("--sweep-scale", dest="sweep_scale", choices=["linear", "log"])

    p_spec = sub.add_parser("spectrum", help="noise or energy-density spectrum")
    _add_common(p_spec)
    p_spec.add_argument("--quantity", choices=["nyquist", "input", "energy_density"])
    p_spec.add_argument("--resistance", type=float, help="resistor value for noise spectra")
    p_spec.add_argument("--omega-min", dest="omega_min", type=float)
    p_spec.add_argument("--omega-max", dest="omega_max", type=float)
    p_spec.add_argument("--omega-points", dest="omega_points", type=int)
    p_spec.add_argument("--omega-scale", dest="omega_scale", choices=["linear", "log"])

    p_val = sub.add_parser("validate", help="invariant suite for a netlist pair")
    _add_common(p_val)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = sys.stdout
    try:
        if args.command == "force":
            cfg = _build_config(args, default_format="json")
            report = run_force(cfg)
            _emit_force(report, cfg, out)
        elif args.command == "sweep":
            cfg = _build_config(args, default_format="csv")
            rows = run_sweep(cfg)
            _emit_sweep(rows, cfg, out)
        elif args.command == "spectrum":
            cfg = _build_config(args, default_format="csv")
            header, rows = run_spectrum(cfg)
            _emit_spectrum(header, rows, cfg, out)
        elif args.command == "validate":
            cfg = _build_config(args, default_format="json")
            if not run_validate(cfg, out):
                return EXIT_INVARIANT
        else:  # pragma: no cover
            parser.error(f"unknown command {args.command}")
    except NetlistError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (QuadratureError, ResonanceError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (InvariantViolationError, PassivityError) as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
