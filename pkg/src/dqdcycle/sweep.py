"""Grid sweeps over (measurement strength, detuning) for one branch.

A sweep fixes the branch, tunneling and temperature, then classifies every
cell of a rectangular grid: detuning epsilon on one axis, the branch's free
measurement strength (a on the engine branch, b on the refrigerator branches)
on the other. The output is the regime map plus per-cell figures of merit --
the raw material for the phase-diagram and performance figures.

Cells are evaluated in a fixed row-major order (epsilon outer, strength
inner) regardless of ``workers``, so runs are reproducible bit for bit; the
thread pool only splits whole epsilon-rows and results are reassembled in
order. Each cell is a pure function of its coordinates, so this is safe.

Serialization: ``write_csv`` emits the exact column set

    strength,epsilon,mode,performance,Qh,Qc,W

with floats in scientific notation at 13 significant digits and an empty
performance field for undefined cells; ``to_json_document`` wraps the same
rows in a versioned document with the grid spec, per-mode counts and area
fractions, and a note on which figure-of-merit convention each mode uses.
"""

from __future__ import annotations

import csv
import math
from concurrent.futures import ThreadPoolExecutor
from collections import Counter
from dataclasses import dataclass
from typing import IO

import numpy as np

from .qdot import DotParams
from .regimes import (
    Branch,
    Classification,
    Mode,
    classify,
    engine_branch_quantities,
    refrigerator_minus_quantities,
    refrigerator_plus_quantities,
)

CSV_COLUMNS = ("strength", "epsilon", "mode", "performance", "Qh", "Qc", "W")

PERFORMANCE_CONVENTION = {
    "engine": "eta",
    "refrigerator": "kappa",
    "accelerator": "kappa",
    "heater": "kappa",
}


@dataclass(frozen=True)
class AxisSpec:
    """Inclusive linear axis: ``steps`` points from ``start`` to ``stop``."""

    start: float
    stop: float
    steps: int

    def points(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.steps)


@dataclass(frozen=True)
class GridSpec:
    """Everything needed to reproduce one sweep."""

    branch: Branch
    strength_axis: AxisSpec
    epsilon_axis: AxisSpec
    tau: float
    temperature: float
    zero_tol: float = 1e-12

    def __post_init__(self):
        for axis, name in ((self.strength_axis, "strength"), (self.epsilon_axis, "epsilon")):
            if axis.steps < 2:
                raise ValueError(f"{name} axis needs at least 2 steps")
            if not (axis.start < axis.stop):
                raise ValueError(f"{name} axis must have start < stop")
        if not (0.0 <= self.strength_axis.start and self.strength_axis.stop <= 1.0):
            raise ValueError("strength axis must lie within [0, 1]")
        if self.epsilon_axis.start <= 0.0:
            raise ValueError("epsilon axis must be positive")
        if not (math.isfinite(self.temperature) and self.temperature > 0.0):
            raise ValueError("temperature must be positive")
        if self.zero_tol < 0.0:
            raise ValueError("zero_tol must be nonnegative")


@dataclass(frozen=True)
class SweepCell:
    strength: float
    epsilon: float
    result: Classification


@dataclass(frozen=True)
class SweepResult:
    spec: GridSpec
    cells: list[SweepCell]
    counts: dict[Mode, int]


def _branch_currents(branch: Branch, params: DotParams, temperature: float, strength: float):
    """(Qh, Qc, W) for one cell, from the branch's stroke-role assignment."""
    if branch is Branch.ENGINE:
        qc, qh, w = engine_branch_quantities(params, temperature, strength)
    elif branch is Branch.REFRIGERATOR_PLUS:
        qc, w, qh = refrigerator_plus_quantities(params, temperature, strength)
    else:
        qc, w, qh = refrigerator_minus_quantities(params, temperature, strength)
    return qh, qc, w


def evaluate_cell(spec: GridSpec, strength: float, epsilon: float) -> SweepCell:
    params = DotParams(epsilon=epsilon, tau=spec.tau)
    qh, qc, w = _branch_currents(spec.branch, params, spec.temperature, strength)
    return SweepCell(strength, epsilon, classify(qh, qc, w, spec.zero_tol))


def run_sweep(spec: GridSpec, workers: int = 1) -> SweepResult:
    """Evaluate the full grid; ``workers`` > 1 parallelizes over epsilon-rows."""
    if workers < 1:
        raise ValueError("workers must be >= 1")
    strengths = spec.strength_axis.points()
    epsilons = spec.epsilon_axis.points()

    def row(eps: float) -> list[SweepCell]:
        return [evaluate_cell(spec, float(s), float(eps)) for s in strengths]

    if workers == 1:
        rows = [row(eps) for eps in epsilons]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(row, epsilons))

    cells = [cell for r in rows for cell in r]
    counts = Counter(cell.result.mode for cell in cells)
    return SweepResult(spec, cells, {m: counts.get(m, 0) for m in Mode})


def mode_area_fractions(result: SweepResult) -> dict[Mode, float]:
    """Fraction of grid cells in each mode (equal cell weighting)."""
    total = len(result.cells)
    return {m: result.counts[m] / total for m in Mode}


def _fmt(x: float) -> str:
    return f"{x:.12e}"


def write_csv(result: SweepResult, stream: IO[str]) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for cell in result.cells:
        c = cell.result
        perf = "" if c.performance is None else _fmt(c.performance)
        writer.writerow(
            [_fmt(cell.strength), _fmt(cell.epsilon), c.mode.value,
             perf, _fmt(c.Qh), _fmt(c.Qc), _fmt(c.W)]
        )


def to_json_document(result: SweepResult) -> dict:
    """JSON-ready document: schema tag, grid spec, summary, then the rows."""
    spec = result.spec
    fractions = mode_area_fractions(result)
    return {
        "schema": 1,
        "grid": {
            "branch": spec.branch.value,
            "strength": {"start": spec.strength_axis.start,
                         "stop": spec.strength_axis.stop,
                         "steps": spec.strength_axis.steps},
            "epsilon": {"start": spec.epsilon_axis.start,
                        "stop": spec.epsilon_axis.stop,
                        "steps": spec.epsilon_axis.steps},
            "tau": spec.tau,
            "temperature": spec.temperature,
            "zero_tol": spec.zero_tol,
        },
        "performance_convention": dict(PERFORMANCE_CONVENTION),
        "summary": {
            "counts": {m.value: result.counts[m] for m in Mode},
            "area_fractions": {m.value: fractions[m] for m in Mode},
        },
        "cells": [
            {
                "strength": cell.strength,
                "epsilon": cell.epsilon,
                "mode": cell.result.mode.value,
                "performance": cell.result.performance,
                "Qh": cell.result.Qh,
                "Qc": cell.result.Qc,
                "W": cell.result.W,
            }
            for cell in result.cells
        ],
    }
