"""Measurement-driven three-stroke thermal machine on a double-quantum-dot qubit.

The cycle alternates one thermalization stroke with two nonselective
measurement strokes and can act as an engine, refrigerator, accelerator or
heater depending on the measurement strengths. This package computes the
stroke energetics along two independent routes (closed forms and explicit
density matrices), classifies operating regimes against analytic thresholds,
and sweeps parameter grids into plot-ready CSV/JSON maps.
"""

from .channels import KrausSet, MeasurementChannel, Orientation, apply_channel, kraus_operators
from .qdot import DotParams, Spectrum, gibbs_state, hamiltonian, spectrum
from .regimes import Branch, Classification, Mode, classify, kappa
from .sweep import AxisSpec, GridSpec, SweepResult, run_sweep
from .thermo import CycleInputs, StrokeLedger, run_cycle_closed_form, run_cycle_matrix

__version__ = "0.1.0"

__all__ = [
    "AxisSpec",
    "Branch",
    "Classification",
    "CycleInputs",
    "DotParams",
    "GridSpec",
    "KrausSet",
    "MeasurementChannel",
    "Mode",
    "Orientation",
    "Spectrum",
    "StrokeLedger",
    "SweepResult",
    "apply_channel",
    "classify",
    "gibbs_state",
    "hamiltonian",
    "kappa",
    "kraus_operators",
    "run_cycle_closed_form",
    "run_cycle_matrix",
    "run_sweep",
    "spectrum",
]
