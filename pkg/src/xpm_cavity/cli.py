"""Command-line front end.

    xpm-cavity presets [NAME]
    xpm-cavity eval --delta1 1 --delta2 0 --intensity 10 [--reflectivity 0.99]
    xpm-cavity optimize --fun f --od 100
    xpm-cavity sweep fig2 --format csv --output out/
    xpm-cavity tradeoff --eps 0.1 0.2 --od 1 --reflectivity 0.999

Exit codes: 0 success, 2 configuration error, 3 computation error, 4 I/O error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import warnings
from dataclasses import dataclass, field
from pathlib import Path

from . import cavity as cav
from . import core
from .constants import (intensity_from_display, intensity_to_display,
                        phase_per_intensity_to_display, rad_to_mrad)
from .figures import FIGURES
from .optimizer import (BranchNotFoundError, find_far_detuned_min_f,
                        find_local_min_g, maximize_f, maximize_g,
                        sweep_f_vs_od, sweep_min_vs_od)
from .presets import PresetError, available_presets, load_preset, read_preset
from .tables import FORMATS, render, write_table

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_COMPUTE = 3
EXIT_IO = 4

_SYSTEM_FIELDS = ("mu1", "mu2", "gamma1", "gamma2", "lambda_c", "lambda_p")


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    preset_name: str | None = None
    explicit: dict = field(default_factory=dict)
    od: float | None = None
    number_density: float | None = None
    length: float | None = None
    reflectivity: float = 0.0
    cavity_length: float = 1e-2
    roundtrip_phase: float = 0.0
    output_format: str = "csv"
    output_path: str | None = None

    def __post_init__(self):
        if self.preset_name is not None and self.explicit:
            raise ConfigError("give either --preset or explicit system fields, not both")
        if self.preset_name is None and not self.explicit:
            self.preset_name = "rb87"
        if self.explicit:
            missing = [k for k in _SYSTEM_FIELDS if k not in self.explicit]
            if missing:
                raise ConfigError(f"explicit system is missing --{', --'.join(m.replace('_', '-') for m in missing)}")
        if self.output_format not in FORMATS:
            raise ConfigError(f"output format must be one of {FORMATS}")

    def system(self) -> core.LadderSystem:
        if self.preset_name is not None:
            return load_preset(self.preset_name, od=self.od,
                               number_density=self.number_density, length=self.length)
        length = self.length if self.length is not None else 1e-3
        density = self.number_density
        if density is None:
            density = core.number_density_for_od(15.0 if self.od is None else self.od,
                                                 length, self.explicit["lambda_c"])
        try:
            return core.LadderSystem(number_density=density, length=length, **self.explicit)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc

    def cavity(self) -> cav.CavityConfig:
        try:
            return cav.CavityConfig(self.reflectivity, self.cavity_length, self.roundtrip_phase)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc


def _add_system_args(p):
    g = p.add_argument_group("ladder system")
    g.add_argument("--preset", help="preset name or path to a .preset file (default rb87)")
    for name in _SYSTEM_FIELDS:
        g.add_argument(f"--{name.replace('_', '-')}", type=float, dest=name,
                       help=f"explicit {name} (SI)")
    g.add_argument("--od", type=float, help="on-resonance optical depth (default 15)")
    g.add_argument("--density", type=float, dest="number_density", help="atoms/m^3")
    g.add_argument("--length", type=float, help="medium length, m")


def _add_cavity_args(p, default_r=0.0):
    g = p.add_argument_group("cavity")
    g.add_argument("-R", "--reflectivity", type=float, default=default_r)
    g.add_argument("--cavity-length", type=float, default=1e-2, help="m")
    g.add_argument("--kcl", type=float, default=0.0, dest="roundtrip_phase",
                   help="k_c L mod 2pi, rad")


def _config(args) -> RunConfig:
    explicit = {k: getattr(args, k) for k in _SYSTEM_FIELDS if getattr(args, k, None) is not None}
    fmt = getattr(args, "format", None)
    return RunConfig(
        preset_name=getattr(args, "preset", None), explicit=explicit,
        od=getattr(args, "od", None), number_density=getattr(args, "number_density", None),
        length=getattr(args, "length", None),
        reflectivity=getattr(args, "reflectivity", 0.0) or 0.0,
        cavity_length=getattr(args, "cavity_length", 1e-2),
        roundtrip_phase=getattr(args, "roundtrip_phase", 0.0),
        output_format=fmt if fmt in FORMATS else "csv",
        output_path=getattr(args, "output", None),
    )


def _emit(report: list, fmt: str, out):
    """``report`` is a list of (key, value, unit) triples."""
    if fmt == "json":
        json.dump({k: (None if isinstance(v, float) and not math.isfinite(v) else v)
                   for k, v, _ in report}, out, indent=1)
        out.write("\n")
        return
    width = max(len(k) for k, _, _ in report)
    for key, value, unit in report:
        text = f"{value:.10g}" if isinstance(value, (int, float)) else str(value)
        out.write(f"{key:<{width}}  {text} {unit}".rstrip() + "\n")


def evaluate_point(cfg: RunConfig, det: core.Detuning, intensity: float) -> list:
    sys_ = cfg.system()
    field_ = core.ControlField(intensity)
    od = core.on_resonance_od(sys_)
    x = core.od_detuned(od, det)
    f = core.f_factor(det, od)
    pmax = core.phi_max(sys_, field_)
    per_i = core.phi_max_per_intensity(sys_)
    pnc = core.phi_nc(sys_, field_, det)
    ppp = core.phi_per_photon(sys_)
    report = [
        ("od", od, ""), ("delta1", det.delta1, ""), ("delta2", det.delta2, ""),
        ("od_nc", x, ""),
        ("intensity", intensity, "W/m^2"),
        ("intensity_display", intensity_to_display(intensity), "nW/um^2"),
        ("f", f, ""),
        ("phi_max_per_intensity", per_i, "rad/(W/m^2)"),
        ("phi_max_per_intensity_display", phase_per_intensity_to_display(per_i), "rad/(nW/um^2)"),
        ("phi_max", pmax, "rad"),
        ("phi_nc", pnc, "rad"),
        ("phi_per_photon", ppp, "rad"),
        ("phi_per_photon_display", rad_to_mrad(ppp), "mrad"),
        ("transmission_single_pass", math.exp(-x), ""),
    ]
    ccfg = cfg.cavity()
    R = ccfg.reflectivity
    if R > 0:
        F = ccfg.finesse
        g = cav.g_factor(det, od, R)
        phases = cav.pass_phases(ccfg, x, pnc)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", cav.ValidityWarning)
            linear = cav.phi_cavity_linear(ccfg, phases)
        check = cav.cavity_bandwidth_check(sys_, ccfg)
        tc = float(cav.control_transmission(ccfg, x))
        report += [
            ("reflectivity", R, ""), ("finesse", F, ""),
            ("alpha", float(cav.alpha_factor(x, R)), ""),
            ("g", g, ""),
            ("phi1", phases.phi1, "rad"), ("phi2", phases.phi2, "rad"),
            ("phi_c_exact", cav.phi_cavity_exact(ccfg, phases), "rad"),
            ("phi_c_linear", linear, "rad"),
            ("phi_c_linear_valid", int(phases.small), ""),
            ("phi_c_per_photon", g * ppp, "rad"),
            ("phi_c_per_photon_display", rad_to_mrad(g * ppp), "mrad"),
            ("control_transmission", tc, ""),
            ("od_c", float(cav.od_cavity(R, x)), ""),
            ("eta_eff", float(cav.eta_effective(od, det.delta1, F)), ""),
            ("bandwidth_ok", int(check.ok), ""),
            ("bandwidth_margin", check.margin, ""),
        ]
    return report


def _extremum_rows(result, label, extra=()):
    return [(f"{label}.{k}", v, "") for k, v in (
        ("kind", result.kind), ("delta1", result.location.delta1),
        ("delta2", result.location.delta2), ("value", result.value),
        ("transmission", result.transmission), ("gradient_norm", result.gradient_norm),
        ("converged", int(result.converged)), *extra)]


def cmd_eval(args, out) -> int:
    cfg = _config(args)
    if args.intensity_display is not None:
        intensity = intensity_from_display(args.intensity_display)
    else:
        intensity = args.intensity
    try:
        det = core.Detuning(args.delta1, args.delta2)
        core.ControlField(intensity)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    _emit(evaluate_point(cfg, det, intensity), args.format or "text", out)
    return EXIT_OK


def cmd_optimize(args, out) -> int:
    od, R = args.od if args.od is not None else 15.0, args.reflectivity
    if not (math.isfinite(od) and od > 0):
        raise ConfigError("--od must be finite and > 0")
    report = [("od", od, "")]
    flagged = False
    if args.fun == "f":
        top = maximize_f(od)
        report += _extremum_rows(top, "global_max")
        report += _extremum_rows(top.mirrored(), "global_min")
        try:
            low = find_far_detuned_min_f(od)
            report += _extremum_rows(low, "far_detuned_min")
            flagged |= not low.converged
        except BranchNotFoundError:
            report.append(("far_detuned_min", "not found", ""))
        flagged |= not top.converged
    else:
        if not 0 < R < 1:
            raise ConfigError("g needs a cavity: give --reflectivity in (0, 1)")
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", cav.ValidityWarning)
            asym = cav.g_max_asymptotic(od, R)
        top = maximize_g(od, R)
        x = core.detuned_od(od, top.location.delta1)
        F = float(cav.finesse_from_reflectivity(R))
        report += [("reflectivity", R, ""), ("finesse", F, "")]
        report += _extremum_rows(top, "global_max", extra=(
            ("asymptotic_value", asym.g),
            ("asymptotic_delta1", asym.detuning.delta1),
            ("asymptotic_delta2", asym.detuning.delta2),
            ("value_ratio", top.value / asym.g),
            ("delta1_ratio", top.location.delta1 / asym.detuning.delta1),
            ("asymptotic_valid", int(asym.valid)),
            ("od_c", float(cav.od_cavity(R, x))),
            ("eta_eff", float(cav.eta_effective(od, top.location.delta1, F))),
        ))
        low = find_local_min_g(od, R)
        report += _extremum_rows(low, "diagonal_min")
        flagged |= not top.converged
    if flagged:
        print("warning: optimizer did not converge; best point reported", file=sys.stderr)
    _emit(report, args.format or "text", out)
    return EXIT_OK


def _sweep_tables(args) -> dict:
    if args.name in FIGURES:
        return FIGURES[args.name]()
    if not args.od_values:
        raise ConfigError(f"sweep {args.name} needs --od-values")
    if not all(math.isfinite(v) and v > 0 for v in args.od_values):
        raise ConfigError("--od-values must be finite and > 0")
    values = sorted(set(args.od_values))
    if args.name == "f-max":
        return {"f_max": sweep_f_vs_od(values)}
    return {"f_min": sweep_min_vs_od(values)}


def cmd_sweep(args, out) -> int:
    fmt = args.format or "csv"
    if fmt not in FORMATS:
        raise ConfigError(f"--format must be one of {FORMATS}")
    tables = _sweep_tables(args)
    if args.output is None:
        for name, table in tables.items():
            if len(tables) > 1:
                out.write(f"# {name}\n")
            out.write(render(table, fmt))
        return EXIT_OK
    target = Path(args.output)
    for name, table in tables.items():
        path = write_table(table, target / f"{name}.{fmt}", fmt)
        print(path, file=sys.stderr)
    return EXIT_OK


def cmd_tradeoff(args, out) -> int:
    R, od = args.reflectivity, args.od if args.od is not None else 1.0
    if not 0 < R < 1:
        raise ConfigError("--reflectivity must lie in (0, 1)")
    bad = [e for e in args.eps if not 0 < e < 1]
    if bad:
        raise ConfigError(f"epsilon outside (0, 1): {bad}")
    rows = []
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", cav.ValidityWarning)
        for eps in args.eps:
            t = cav.transmission_tradeoff(eps, od, R)
            rows.append({"epsilon": t.epsilon, "transmission": t.transmission,
                         "g_eps": t.g, "g_ratio": t.g_ratio, "delta1_eps": t.delta1,
                         "delta1_ratio": t.delta1_ratio, "valid": int(t.valid)})
    fmt = args.format or "text"
    if fmt == "text":
        cols = list(rows[0])
        out.write("  ".join(f"{c:>13}" for c in cols) + "\n")
        for row in rows:
            out.write("  ".join(f"{row[c]:>13.8g}" for c in cols) + "\n")
    else:
        out.write(render(rows, fmt))
    return EXIT_OK


def cmd_presets(args, out) -> int:
    if args.name is None:
        for name in available_presets():
            out.write(f"{name}\t{read_preset(name).get('description', '')}\n")
        return EXIT_OK
    fields = read_preset(args.name)
    for key, value in fields.items():
        out.write(f"{key} = {value}\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="xpm-cavity", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate phases and cavity figures at one detuning")
    _add_system_args(p)
    _add_cavity_args(p)
    p.add_argument("--delta1", type=float, required=True)
    p.add_argument("--delta2", type=float, required=True)
    p.add_argument("--intensity", type=float, default=10.0, help="control intensity, W/m^2")
    p.add_argument("--intensity-display", type=float, help="control intensity, nW/um^2")
    p.add_argument("--format", choices=("text", "json"))
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("optimize", help="locate extrema of f or g")
    p.add_argument("--fun", choices=("f", "g"), default="f")
    p.add_argument("--od", type=float)
    _add_cavity_args(p)
    p.add_argument("--format", choices=("text", "json"))
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("sweep", help="write figure data as CSV or JSON")
    p.add_argument("name", choices=(*FIGURES, "f-max", "f-min"))
    p.add_argument("--od-values", type=float, nargs="+")
    p.add_argument("--format", choices=FORMATS)
    p.add_argument("-o", "--output", help="output directory (default: stdout)")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("tradeoff", help="phase lost for higher control transmission")
    p.add_argument("--eps", type=float, nargs="+", required=True)
    p.add_argument("--od", type=float)
    _add_cavity_args(p, default_r=0.999)
    p.add_argument("--format", choices=("text", *FORMATS))
    p.set_defaults(func=cmd_tradeoff)

    p = sub.add_parser("presets", help="list presets or show one")
    p.add_argument("name", nargs="?")
    p.set_defaults(func=cmd_presets)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except (ConfigError, PresetError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ArithmeticError, RuntimeError, ValueError) as exc:
        print(f"computation failed: {exc}", file=sys.stderr)
        return EXIT_COMPUTE


if __name__ == "__main__":
    sys.exit(main())
