"""Operating-regime classification and constrained one-parameter branches.

The machine exchanges three energy currents per cycle. Identifying the
thermalization stroke with the cold flow, one measurement stroke with the hot
flow and the remaining stroke with work, the sign pattern (Qh, Qc, W) sorts
every operating point into one of four useful regimes:

    ============  ====  ====  ====  ==============================
    mode          Qh    Qc    W     figure of merit
    ============  ====  ====  ====  ==============================
    engine         +     -     -    efficiency  eta = |W / Qh|
    refrigerator   -     +     +    COP = |Qc / W|
    accelerator    +     -     +    COP = |Qh / W|
    heater         -     -     +    COP = |Qh / W|
    ============  ====  ====  ====  ==============================

W < 0 means net work is extracted. Any other sign pattern, or any current
indistinguishable from zero at ``zero_tol``, is Undefined. COP-type figures
are mapped onto the compact scale kappa = COP / (1 + COP) in (0, 1] so the
three COP regimes can share one color bar; efficiency stays as eta.

Three one-parameter families slice the (a, b) square:

* ``engine`` branch, b = a: work stroke W = dU3 = 2 epsilon (1 - 2a), hot
  stroke Qh = dU2, cold stroke Qc = dU1. Interval structure over a in [0, 1]:
  heater for a < (1 - (E/eps) tanh(E/T))/2, engine for
  1/2 <= a < (1 + (E/eps) tanh(E/T))/2, accelerator between those windows.
  (The b = 1 - a family also closes the cycle but exchanges no work at all,
  so it is not exposed here.)
* ``refrigerator-plus`` branch, a pinned to (1 + tanh(E/T))/2 so that the
  A-stroke is pure work input: Qc = dU1, W = dU2, Qh = dU3. Cooling requires
  b > (1 + (E/eps) tanh(E/T))/2; small b < (1 - tanh(E/T))/2 accelerates.
* ``refrigerator-minus`` branch, a pinned to (1 - tanh(E/T))/2: same stroke
  roles with W = (E - eps) tanh(E/T), which vanishes at tau = 0 -- the whole
  branch is then Undefined. Accelerator below b = (1 + tanh(E/T))/2,
  refrigerator above b = (1 + (E/eps) tanh(E/T))/2.

All branch operations require epsilon > 0: the thresholds carry E/epsilon and
the regime geometry is stated for positive detuning.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

from .qdot import DotParams, spectrum
from .thermo import CycleInputs, run_cycle_closed_form


class Mode(Enum):
    ENGINE = "engine"
    REFRIGERATOR = "refrigerator"
    ACCELERATOR = "accelerator"
    HEATER = "heater"
    UNDEFINED = "undefined"


class Branch(Enum):
    ENGINE = "engine"
    REFRIGERATOR_PLUS = "refrigerator-plus"
    REFRIGERATOR_MINUS = "refrigerator-minus"


class EngineThresholds(NamedTuple):
    """Critical strengths a splitting the engine branch, clamped to [0, 1]."""

    heater_max: float
    engine_min: float
    engine_max: float


class RefrigeratorThresholds(NamedTuple):
    """Critical strengths b splitting a refrigerator branch, clamped to [0, 1]."""

    accelerator_max: float
    refrigerator_min: float


@dataclass(frozen=True)
class Classification:
    """Outcome of classifying one operating point."""

    mode: Mode
    Qh: float
    Qc: float
    W: float
    performance: float | None
    raw_cop: float | None


def classify_from_signs(Qh: float, Qc: float, W: float, zero_tol: float = 1e-12) -> Mode:
    """Sign-pattern lookup; currents within ``zero_tol`` of zero are ambiguous."""
    if zero_tol < 0.0:
        raise ValueError("zero_tol must be nonnegative")
    if min(abs(Qh), abs(Qc), abs(W)) <= zero_tol:
        return Mode.UNDEFINED
    if Qh > 0 and Qc < 0 and W < 0:
        return Mode.ENGINE
    if Qh < 0 and Qc > 0 and W > 0:
        return Mode.REFRIGERATOR
    if Qh > 0 and Qc < 0 and W > 0:
        return Mode.ACCELERATOR
    if Qh < 0 and Qc < 0 and W > 0:
        return Mode.HEATER
    return Mode.UNDEFINED


def kappa(cop: float) -> float:
    """Compress a coefficient of performance onto (0, 1]: kappa = COP/(1+COP)."""
    if math.isnan(cop) or cop <= 0.0:
        raise ValueError("cop must be positive")
    if math.isinf(cop):
        warnings.warn("infinite COP mapped to kappa = 1.0", RuntimeWarning, stacklevel=2)
        return 1.0
    return cop / (1.0 + cop)


def performance(
    mode: Mode, Qh: float, Qc: float, W: float, zero_tol: float = 1e-12
) -> float | None:
    """Figure of merit on the common scale: eta for engines, kappa otherwise.

    Returns None when the relevant denominator is below ``zero_tol`` (the
    ratio is not meaningful there). Undefined mode has no figure of merit.
    """
    if mode is Mode.UNDEFINED:
        raise ValueError("no figure of merit for undefined mode")
    if mode is Mode.ENGINE:
        if abs(Qh) <= zero_tol:
            return None
        return abs(W / Qh)
    num = Qc if mode is Mode.REFRIGERATOR else Qh
    if abs(W) <= zero_tol:
        return None
    return kappa(abs(num / W))


def classify(Qh: float, Qc: float, W: float, zero_tol: float = 1e-12) -> Classification:
    """Bundle sign classification with the matching figure of merit."""
    mode = classify_from_signs(Qh, Qc, W, zero_tol)
    if mode is Mode.UNDEFINED:
        return Classification(mode, Qh, Qc, W, None, None)
    perf = performance(mode, Qh, Qc, W, zero_tol)
    raw = None
    if perf is not None and mode is not Mode.ENGINE:
        num = Qc if mode is Mode.REFRIGERATOR else Qh
        raw = abs(num / W)
    return Classification(mode, Qh, Qc, W, perf, raw)


def _require_positive_detuning(params: DotParams):
    if params.epsilon <= 0.0:
        raise ValueError("branch operations require epsilon > 0")


def _tanh_gap(params: DotParams, temperature: float) -> tuple[float, float]:
    if not (math.isfinite(temperature) and temperature > 0.0):
        raise ValueError("temperature must be positive")
    gap = spectrum(params).gap
    return gap, math.tanh(gap / temperature)


def _clamp01(x: float) -> float:
    return min(1.0, max(0.0, x))


# ---------------------------------------------------------------------------
# engine branch (b = a)


def engine_branch_quantities(
    params: DotParams, temperature: float, a: float
) -> tuple[float, float, float]:
    """(Qc, Qh, W) on the b = a branch: cold = stroke 1, hot = stroke 2, work = stroke 3."""
    _require_positive_detuning(params)
    ledger = run_cycle_closed_form(CycleInputs(params, temperature, a=a, b=a))
    return ledger.dU1, ledger.dU2, ledger.dU3


def engine_branch_thresholds(params: DotParams, temperature: float) -> EngineThresholds:
    """Regime boundaries in a: heater / accelerator / engine / accelerator."""
    _require_positive_detuning(params)
    gap, t = _tanh_gap(params, temperature)
    ratio = gap / params.epsilon * t
    return EngineThresholds(
        heater_max=_clamp01(0.5 * (1.0 - ratio)),
        engine_min=0.5,
        engine_max=_clamp01(0.5 * (1.0 + ratio)),
    )


# ---------------------------------------------------------------------------
# refrigerator branches (a pinned by the thermal population)


def constrained_strength(params: DotParams, temperature: float, branch: Branch) -> float:
    """The pinned channel-A strength a = (1 +- tanh(E/T))/2 of a refrigerator branch."""
    _require_positive_detuning(params)
    _, t = _tanh_gap(params, temperature)
    if branch is Branch.REFRIGERATOR_PLUS:
        return 0.5 * (1.0 + t)
    if branch is Branch.REFRIGERATOR_MINUS:
        return 0.5 * (1.0 - t)
    raise ValueError("constrained strength only exists for refrigerator branches")


def refrigerator_plus_quantities(
    params: DotParams, temperature: float, b: float
) -> tuple[float, float, float]:
    """(Qc, W, Qh) with a = (1 + tanh(E/T))/2: work input W = (E + eps) tanh(E/T)."""
    _require_positive_detuning(params)
    a = constrained_strength(params, temperature, Branch.REFRIGERATOR_PLUS)
    ledger = run_cycle_closed_form(CycleInputs(params, temperature, a=a, b=b))
    return ledger.dU1, ledger.dU2, ledger.dU3


def refrigerator_minus_quantities(
    params: DotParams, temperature: float, b: float
) -> tuple[float, float, float]:
    """(Qc, W, Qh) with a = (1 - tanh(E/T))/2: work input W = (E - eps) tanh(E/T)."""
    _require_positive_detuning(params)
    a = constrained_strength(params, temperature, Branch.REFRIGERATOR_MINUS)
    ledger = run_cycle_closed_form(CycleInputs(params, temperature, a=a, b=b))
    return ledger.dU1, ledger.dU2, ledger.dU3


def refrigerator_branch_thresholds(
    params: DotParams, temperature: float, branch: Branch
) -> RefrigeratorThresholds:
    """Regime boundaries in b for a refrigerator branch.

    Below ``accelerator_max`` the point accelerates, above ``refrigerator_min``
    it refrigerates; the band between is heater territory.
    """
    _require_positive_detuning(params)
    gap, t = _tanh_gap(params, temperature)
    if branch is Branch.REFRIGERATOR_PLUS:
        accel = 0.5 * (1.0 - t)
    elif branch is Branch.REFRIGERATOR_MINUS:
        accel = 0.5 * (1.0 + t)
    else:
        raise ValueError("thresholds only exist for refrigerator branches")
    refmin = 0.5 * (1.0 + gap / params.epsilon * t)
    return RefrigeratorThresholds(
        accelerator_max=_clamp01(accel),
        refrigerator_min=_clamp01(refmin),
    )
