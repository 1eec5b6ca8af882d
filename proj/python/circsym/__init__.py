"""Optimal tests of circular reflective symmetry about a known centre."""

import json

from ._core import (
    BaseDensity,
    ConvergenceError,
    DataError,
    DegenerateInformation,
    DegenerateSample,
    EmptySample,
    cross_corr,
    efficient_central_sequence,
    fisher_matrix,
    local_power,
    modified_runs_test,
    parametric_statistic,
    power_curve,
    rayleigh_cardioid_test,
    sample_moebius,
    sample_sine_skewed,
    sample_skewed_mixture,
    score_location,
    singularity_report,
    symmetry_test,
    wrap,
)
from ._core import run_preset_json as _run_preset_json


def run_preset(name, reps=1000, seed=1, threads=0):
    """Rejection-frequency tables for a named preset, as a dict."""
    return json.loads(_run_preset_json(name, reps, seed, threads))


__all__ = [name for name in dir() if not name.startswith("_")]
