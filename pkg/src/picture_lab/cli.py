"""Command-line front end: config-driven runs, exports, and sweeps.

Configs are INI-style key-value files with sections; the full schema is
listed in CONFIG_SCHEMA below and in the README.  Unknown sections or
keys are hard errors, and every physical value is validated before any
engine runs.  Exit codes: 0 all verdicts pass, 2 a verdict failed,
1 configuration or execution error.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import configparser
import sys
from dataclasses import dataclass, replace
from pathlib import Path

from .classical import InitialConditions
from .errors import ConfigInvalid, PictureLabError
from .lab import Scenario, run_equivalence
from .model import FieldModel, OscillatorParams, TimeGrid
from .serialize import (atomic_write_text, write_fock_moments_csv,
                        write_report_json, write_series_csv, write_snapshot_csv,
                        write_trajectory_csv)

BUNDLED_DIR = Path(__file__).parent / "configs"

_BOOL_STRINGS = {"true": True, "yes": True, "1": True, "on": True,
                 "false": False, "no": False, "0": False, "off": False}

# section -> key -> (type tag, default); None default means "optional, unset"
CONFIG_SCHEMA = {
    "oscillator": {
        "mass": ("float", 1.0),
        "omega0": ("float", 1.0),
        "charge": ("float", 1.0),
        "hbar": ("float", 1.0),
    },
    "field": {
        "kind": ("str", "zero"),
        "gamma": ("float", 0.0),
        "amplitude": ("float", None),
        "omega": ("float", None),
        "phase": ("float", None),
        "amplitudes": ("floats", None),
        "omegas": ("floats", None),
        "phases": ("floats", None),
        "seed": ("int", 0),
    },
    "initial": {
        "q0": ("float", 0.0),
        "v0": ("float", 0.0),
    },
    "time": {
        "t0": ("float", 0.0),
        "t1": ("float", None),
        "periods": ("float", None),
        "n_steps": ("int", None),
    },
    "grid": {
        "n_points": ("int", 2048),
        "padding_sigmas": ("float", 11.0),
    },
    "fock": {
        "n_fock": ("int", 64),
        "oracle": ("bool", True),
        "oracle_steps_per_period": ("int", 1000),
    },
    "run": {
        "name": ("str", None),
        "record_every": ("int", 1),
        "match_quantum_ics": ("bool", True),
        "tol_equivalence": ("float", 1e-5),
        "decay_threshold": ("float", 1e-3),
        "export_series": ("bool", True),
        "export_report": ("bool", True),
        "export_trajectory": ("bool", False),
        "export_snapshots": ("bool", False),
        "export_fock_moments": ("bool", False),
        "verbosity": ("int", 1),
    },
}

_FIELD_KEYS = {
    "zero": {"kind", "gamma"},
    "monochromatic": {"kind", "gamma", "amplitude", "omega", "phase"},
    "mode_sum": {"kind", "gamma", "amplitudes", "omegas", "phases", "seed"},
}

SWEEP_AXES = ("e", "gamma", "dt", "n_points", "n_fock")


@dataclass(frozen=True)
class RunConfig:
    scenario: Scenario
    export_series: bool = True
    export_report: bool = True
    export_trajectory: bool = False
    export_snapshots: bool = False
    export_fock_moments: bool = False
    verbosity: int = 1


def _convert(section, key, kind, raw):
    try:
        if kind == "float":
            return float(raw)
        if kind == "int":
            value = float(raw)
            if value != int(value):
                raise ValueError("not an integer")
            return int(value)
        if kind == "bool":
            flag = _BOOL_STRINGS.get(raw.strip().lower())
            if flag is None:
                raise ValueError("not a boolean")
            return flag
        if kind == "floats":
            parts = [p for p in raw.replace(",", " ").split() if p]
            return tuple(float(p) for p in parts)
        return raw.strip()
    except ValueError as exc:
        raise ConfigInvalid(f"[{section}] {key}: cannot parse {raw!r} ({exc})") from None


def _read_config(path) -> dict:
    parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"),
                                       interpolation=None)
    try:
        with open(path) as handle:
            parser.read_file(handle)
    except OSError as exc:
        raise ConfigInvalid(f"cannot read config {path}: {exc}") from None
    except configparser.Error as exc:
        raise ConfigInvalid(f"malformed config {path}: {exc}") from None

    values = {section: {k: d for k, (_, d) in schema.items()}
              for section, schema in CONFIG_SCHEMA.items()}
    for section in parser.sections():
        if section not in CONFIG_SCHEMA:
            raise ConfigInvalid(f"unknown section [{section}]")
        schema = CONFIG_SCHEMA[section]
        for key, raw in parser.items(section):
            if key not in schema:
                raise ConfigInvalid(f"unknown key '{key}' in section [{section}]")
            values[section][key] = _convert(section, key, schema[key][0], raw)
    return values


def _build_field(cfg: dict) -> FieldModel:
    fsec = cfg["field"]
    kind = fsec["kind"]
    if kind not in _FIELD_KEYS:
        raise ConfigInvalid(f"[field] kind: must be one of {sorted(_FIELD_KEYS)}, "
                            f"got {kind!r}")
    set_keys = {k for k, v in fsec.items() if v is not None and k != "seed"}
    extraneous = set_keys - _FIELD_KEYS[kind] - {"gamma"}
    if extraneous:
        raise ConfigInvalid(f"[field] keys {sorted(extraneous)} are not valid for "
                            f"kind '{kind}'")
    try:
        if kind == "zero":
            return FieldModel.zero(gamma=fsec["gamma"])
        if kind == "monochromatic":
            for key in ("amplitude", "omega"):
                if fsec[key] is None:
                    raise ConfigInvalid(f"[field] {key} is required for kind "
                                        f"'monochromatic'")
            return FieldModel.monochromatic(fsec["amplitude"], fsec["omega"],
                                            fsec["phase"] or 0.0, gamma=fsec["gamma"])
        for key in ("amplitudes", "omegas"):
            if fsec[key] is None:
                raise ConfigInvalid(f"[field] {key} is required for kind 'mode_sum'")
        return FieldModel.mode_sum(fsec["amplitudes"], fsec["omegas"], fsec["phases"],
                                   seed=fsec["seed"], gamma=fsec["gamma"])
    except ValueError as exc:
        raise ConfigInvalid(f"[field] {exc}") from None


def load_config(path) -> RunConfig:
    """Parse and validate a config file into a runnable scenario."""
    cfg = _read_config(path)
    try:
        params = OscillatorParams(**cfg["oscillator"])
    except ValueError as exc:
        raise ConfigInvalid(f"[oscillator] {exc}") from None
    field = _build_field(cfg)
    try:
        ics = InitialConditions(**cfg["initial"])
    except ValueError as exc:
        raise ConfigInvalid(f"[initial] {exc}") from None

    tsec = cfg["time"]
    if tsec["n_steps"] is None:
        raise ConfigInvalid("[time] n_steps is required")
    if (tsec["t1"] is None) == (tsec["periods"] is None):
        raise ConfigInvalid("[time] exactly one of t1 or periods must be set")
    t1 = tsec["t1"] if tsec["t1"] is not None else \
        tsec["t0"] + tsec["periods"] * params.period
    try:
        grid = TimeGrid(tsec["t0"], t1, tsec["n_steps"])
    except ValueError as exc:
        raise ConfigInvalid(f"[time] {exc}") from None

    rsec = cfg["run"]
    name = rsec["name"] or Path(path).stem
    try:
        scenario = Scenario(
            name=name, params=params, field=field, ics=ics, time_grid=grid,
            n_points=cfg["grid"]["n_points"],
            padding_sigmas=cfg["grid"]["padding_sigmas"],
            n_fock=cfg["fock"]["n_fock"],
            fock_oracle=cfg["fock"]["oracle"],
            oracle_steps_per_period=cfg["fock"]["oracle_steps_per_period"],
            record_every=rsec["record_every"],
            match_quantum_ics=rsec["match_quantum_ics"],
            tol_equivalence=rsec["tol_equivalence"],
            decay_threshold=rsec["decay_threshold"])
    except ValueError as exc:
        raise ConfigInvalid(str(exc)) from None
    return RunConfig(scenario=scenario,
                     export_series=rsec["export_series"],
                     export_report=rsec["export_report"],
                     export_trajectory=rsec["export_trajectory"],
                     export_snapshots=rsec["export_snapshots"],
                     export_fock_moments=rsec["export_fock_moments"],
                     verbosity=rsec["verbosity"])


def resolve_config_path(arg: str) -> Path:
    """Accept a filesystem path or the bare name of a bundled config."""
    path = Path(arg)
    if path.exists():
        return path
    bundled = BUNDLED_DIR / (arg if arg.endswith(".cfg") else arg + ".cfg")
    if bundled.exists():
        return bundled
    raise ConfigInvalid(f"config not found: {arg} (bundled: "
                        f"{', '.join(sorted(p.stem for p in BUNDLED_DIR.glob('*.cfg')))})")


def _export(config: RunConfig, report, out_dir: Path):
    name = report.scenario.name
    if config.export_series:
        write_series_csv(report, out_dir / f"{name}_series.csv")
    if config.export_report:
        write_report_json(report, out_dir / f"{name}_report.json")
    if config.export_trajectory:
        write_trajectory_csv(report, out_dir / f"{name}_trajectory.csv")
    if config.export_fock_moments:
        write_fock_moments_csv(report, out_dir / f"{name}_fock_moments.csv")
    if config.export_snapshots:
        write_snapshot_csv(report, out_dir / f"{name}_final_state.csv")


def run_command(config_path, out_dir=None, verbosity=None) -> int:
    try:
        path = resolve_config_path(config_path)
        config = load_config(path)
    except ConfigInvalid as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if verbosity is None:
        verbosity = config.verbosity
    out = Path(out_dir) if out_dir else Path(f"{config.scenario.name}_run")
    try:
        report = run_equivalence(config.scenario)
        _export(config, report, out)
    except PictureLabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if verbosity >= 1:
        for line in report.summary_lines():
            print(line)
        print(f"  artifacts -> {out}")
        print(f"verdict: {'ALL PASS' if report.all_pass else 'FAIL'}")
    return 0 if report.all_pass else 2


def _apply_axis(config: RunConfig, axis: str, value: float) -> RunConfig:
    s = config.scenario
    if axis == "e":
        s = replace(s, params=replace(s.params, charge=float(value)))
    elif axis == "gamma":
        s = replace(s, field=replace(s.field, gamma=float(value)))
    elif axis == "dt":
        grid = s.time_grid
        n = max(1, int(round((grid.t1 - grid.t0) / float(value))))
        s = replace(s, time_grid=TimeGrid(grid.t0, grid.t1, n))
    elif axis == "n_points":
        s = replace(s, n_points=int(value))
    elif axis == "n_fock":
        s = replace(s, n_fock=int(value))
    else:
        raise ConfigInvalid(f"unknown sweep axis '{axis}'")
    s = replace(s, name=f"{s.name}_{axis}={value:g}")
    return replace(config, scenario=s)


def _sweep_entry(entry):
    config, out_dir = entry
    report = run_equivalence(config.scenario)
    _export(config, report, Path(out_dir))
    return {
        "name": report.scenario.name,
        "n_steps": report.scenario.time_grid.n_steps,
        "dt": report.scenario.time_grid.dt,
        "sup_discrepancy": report.sup_discrepancy,
        "ehrenfest_sup": report.ehrenfest_sup,
        "decomposition_sup": report.decomposition_sup,
        "residual_min": report.residual_min,
        "residual_max": report.residual_max,
        "vacuum_term": report.vacuum_term,
        "q_c_final": float(report.q_c[-1]),
        "x2_s_final": float(report.x2_s[-1]),
        "all_pass": report.all_pass,
    }


def sweep_command(config_path, axis, values, out_dir=None, jobs=1) -> int:
    if axis not in SWEEP_AXES:
        print(f"error: axis must be one of {SWEEP_AXES}", file=sys.stderr)
        return 1
    if not values:
        print("error: no sweep values", file=sys.stderr)
        return 1
    try:
        path = resolve_config_path(config_path)
        base = load_config(path)
        if axis in ("n_points", "n_fock"):
            parsed = []
            for v in values:
                if float(v) != int(float(v)):
                    raise ConfigInvalid(f"axis {axis} needs integer values, got {v}")
                parsed.append(int(float(v)))
            values = parsed
        else:
            values = [float(v) for v in values]
        entries = []
        out = Path(out_dir) if out_dir else Path(f"{base.scenario.name}_sweep_{axis}")
        for v in values:
            entries.append((_apply_axis(base, axis, v), out / f"{axis}={v:g}"))
    except ConfigInvalid as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    rows = []
    try:
        if jobs and jobs > 1:
            with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as pool:
                rows = list(pool.map(_sweep_entry, entries))
        else:
            rows = [_sweep_entry(entry) for entry in entries]
    except PictureLabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    header = ["axis", "value", "n_steps", "dt", "sup_discrepancy", "ehrenfest_sup",
              "decomposition_sup", "residual_min", "residual_max", "vacuum_term",
              "q_c_final", "x2_s_final", "all_pass"]
    lines = [",".join(header)]
    for v, row in zip(values, rows):
        lines.append(",".join([axis, repr(float(v)), str(row["n_steps"]),
                               repr(row["dt"])] +
                              [repr(float(row[k])) for k in
                               ("sup_discrepancy", "ehrenfest_sup",
                                "decomposition_sup", "residual_min", "residual_max",
                                "vacuum_term", "q_c_final", "x2_s_final")] +
                              [str(row["all_pass"]).lower()]))
    atomic_write_text(out / "sweep_summary.csv", "\n".join(lines) + "\n")

    for v, row in zip(values, rows):
        print(f"{axis}={v:g}: sup discrepancy {row['sup_discrepancy']:.3e}, "
              f"{'pass' if row['all_pass'] else 'FAIL'}")
    if axis == "dt" and len(rows) >= 3:
        _print_dt_orders(values, rows)
    print(f"summary -> {out / 'sweep_summary.csv'}")
    return 0 if all(r["all_pass"] for r in rows) else 2


def _print_dt_orders(values, rows):
    """Observed orders from endpoint Richardson differences."""
    import math as _math
    order = sorted(range(len(values)), key=lambda i: -values[i])
    dts = [rows[i]["dt"] for i in order]
    qf = [rows[i]["q_c_final"] for i in order]
    x2f = [rows[i]["x2_s_final"] for i in order]
    for label, series in (("classical trajectory", qf), ("split-step <x^2>", x2f)):
        diffs = [abs(series[i] - series[i + 1]) for i in range(len(series) - 1)]
        slopes = []
        for i in range(len(diffs) - 1):
            if diffs[i] > 0 and diffs[i + 1] > 0:
                ratio = _math.log(diffs[i] / diffs[i + 1])
                step = _math.log(dts[i] / dts[i + 1])
                slopes.append(ratio / step)
        if slopes:
            mean = sum(slopes) / len(slopes)
            print(f"observed order ({label}): {mean:.2f}")


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="picture-lab",
        description="Schrodinger vs Heisenberg picture laboratory for a driven "
                    "charged oscillator")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run one configured scenario")
    p_run.add_argument("config", help="config path or bundled name "
                                      "(free, driven, mode_sum, damped)")
    p_run.add_argument("--out", default=None, help="output directory")
    p_run.add_argument("--jobs", type=int, default=1,
                       help="worker pool size (used by sweep)")
    p_run.add_argument("--quiet", action="store_true", help="suppress the summary")

    p_sweep = sub.add_parser("sweep", help="run a scenario across an axis")
    p_sweep.add_argument("config")
    p_sweep.add_argument("--axis", required=True, choices=SWEEP_AXES)
    p_sweep.add_argument("--values", required=True,
                         help="comma-separated values, e.g. 0,0.01,0.1")
    p_sweep.add_argument("--out", default=None)
    p_sweep.add_argument("--jobs", type=int, default=1)

    args = parser.parse_args(argv)
    if args.command == "run":
        return run_command(args.config, args.out, 0 if args.quiet else None)
    values = [v for v in args.values.split(",") if v.strip()]
    return sweep_command(args.config, args.axis, values, args.out, args.jobs)


if __name__ == "__main__":
    sys.exit(main())
