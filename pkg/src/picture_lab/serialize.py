"""Flat-file export of reports, series, and snapshots.

All writers are deterministic (fixed column order, repr-roundtrip float
formatting, sorted JSON keys, no timestamps) and atomic: content goes to
a temporary file in the target directory which is then renamed, so an
interrupted run never leaves a partial artifact at a final path.
"""

from __future__ import annotations

import json
import os
from dataclasses import asdict
from pathlib import Path

import numpy as np

from .lab import EquivalenceReport, Scenario


def _fmt(value: float) -> str:
    return repr(float(value))


def atomic_write_text(path, text: str):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(text)
    os.replace(tmp, path)


def write_csv(path, header, columns):
    """Write columns of equal length under a fixed header."""
    columns = [np.asarray(c) for c in columns]
    rows = [",".join(header)]
    for i in range(len(columns[0])):
        rows.append(",".join(_fmt(c[i]) for c in columns))
    atomic_write_text(path, "\n".join(rows) + "\n")


def write_series_csv(report: EquivalenceReport, path):
    """Moment series in the fixed order t, q_c, x2_S, x2_H, vacuum, residual."""
    n = len(report.times)
    vacuum = np.full(n, report.vacuum_term)
    write_csv(path,
              ["t", "q_c", "x2_schrodinger", "x2_heisenberg", "vacuum_term",
               "residual_5_1"],
              [report.times, report.q_c, report.x2_s, report.x2_h, vacuum,
               report.residual_5_1])


def write_trajectory_csv(report: EquivalenceReport, path):
    write_csv(path, ["t", "q_c", "qdot_c"],
              [report.times, report.q_c, report.qdot_c])


def write_fock_moments_csv(report: EquivalenceReport, path):
    write_csv(path, ["t", "x_heisenberg", "x2_heisenberg", "xi"],
              [report.times, report.x_h, report.x2_h, report.xi])


def write_snapshot_csv(report: EquivalenceReport, path):
    psi = report.final_state
    write_csv(path, ["x", "re_psi", "im_psi", "density"],
              [psi.grid.x, psi.psi.real, psi.psi.imag, psi.density()])


def scenario_dict(s: Scenario) -> dict:
    """Plain-data echo of a scenario, sufficient to reproduce the run."""
    d = asdict(s)
    for key in ("amplitudes", "omegas", "phases"):
        d["field"][key] = list(d["field"][key])
    return d


def report_dict(report: EquivalenceReport) -> dict:
    return {
        "scenario": scenario_dict(report.scenario),
        "tolerances": dict(report.tolerances),
        "series": {
            "t": report.times.tolist(),
            "q_c": report.q_c.tolist(),
            "x2_schrodinger": report.x2_s.tolist(),
            "x2_heisenberg": report.x2_h.tolist(),
            "residual_5_1": report.residual_5_1.tolist(),
        },
        "results": {
            "n_samples": int(len(report.times)),
            "vacuum_term": report.vacuum_term,
            "sup_discrepancy": report.sup_discrepancy,
            "ehrenfest_sup": report.ehrenfest_sup,
            "decomposition_sup": report.decomposition_sup,
            "residual_min": report.residual_min,
            "residual_max": report.residual_max,
            "flawed_eq6_value": report.flawed_eq6_value,
            "norm_error_max": report.norm_error_max,
            "decay_time": report.decay_time,
            "oracle_matrix_sup": report.oracle_matrix_sup,
            "oracle_moment_sup": report.oracle_moment_sup,
        },
        "verdicts": {
            "equivalence_pass": report.equivalence_pass,
            "eq51_falsified": report.eq51_falsified,
            "residual_matches_vacuum": report.residual_matches_vacuum,
            "all_pass": report.all_pass,
        },
    }


def write_report_json(report: EquivalenceReport, path):
    text = json.dumps(report_dict(report), indent=2, sort_keys=True)
    atomic_write_text(path, text + "\n")
