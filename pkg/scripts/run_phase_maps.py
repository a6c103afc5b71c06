#!/usr/bin/env python3
"""Regenerate the standard operating-regime map families.

Sweeps the three branches over (strength, epsilon) grids at the usual
tunneling/temperature combinations and writes one CSV per map plus a JSON
summary of per-mode area fractions:

    engine branch     tau = 0     T = 1, 2      localized-limit engine maps
    engine branch     tau = 0.2   T = 1, 2      finite-tunneling engine maps
    plus branch       tau = 0     T = 1, 3      refrigerator maps
    plus branch       tau = 0.1   T = 1,2,4,6   temperature trend of cooling
    minus branch      tau = 0.2, 0.5  T = 2, 4  weak-work refrigerator maps

CSVs are plot-ready (columns strength,epsilon,mode,performance,Qh,Qc,W);
rendering is left to whatever plotting stack sits downstream.
"""

import argparse
import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from dqdcycle.regimes import Branch
from dqdcycle.sweep import AxisSpec, GridSpec, mode_area_fractions, run_sweep, write_csv

FAMILIES = [
    (Branch.ENGINE, 0.0, (1.0, 2.0)),
    (Branch.ENGINE, 0.2, (1.0, 2.0)),
    (Branch.REFRIGERATOR_PLUS, 0.0, (1.0, 3.0)),
    (Branch.REFRIGERATOR_PLUS, 0.1, (1.0, 2.0, 4.0, 6.0)),
    (Branch.REFRIGERATOR_MINUS, 0.2, (2.0, 4.0)),
    (Branch.REFRIGERATOR_MINUS, 0.5, (2.0, 4.0)),
]


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--outdir", type=Path, default=Path("maps"))
    parser.add_argument("--steps", type=int, default=201, help="grid points per axis")
    parser.add_argument("--epsilon-max", type=float, default=3.0)
    parser.add_argument("--workers", type=int, default=4)
    args = parser.parse_args(argv)

    args.outdir.mkdir(parents=True, exist_ok=True)
    summary = []
    for branch, tau, temperatures in FAMILIES:
        for temperature in temperatures:
            spec = GridSpec(
                branch=branch,
                strength_axis=AxisSpec(0.0, 1.0, args.steps),
                epsilon_axis=AxisSpec(0.1, args.epsilon_max, args.steps),
                tau=tau,
                temperature=temperature,
            )
            result = run_sweep(spec, workers=args.workers)
            name = f"{branch.value}_tau{tau:g}_T{temperature:g}.csv"
            with open(args.outdir / name, "w", encoding="utf-8", newline="") as fh:
                write_csv(result, fh)
            fractions = {m.value: f for m, f in mode_area_fractions(result).items()}
            summary.append(
                {"file": name, "branch": branch.value, "tau": tau,
                 "temperature": temperature, "area_fractions": fractions}
            )
            shares = "  ".join(f"{k}={v:.3f}" for k, v in fractions.items() if v > 0)
            print(f"{name:<40s} {shares}")

    with open(args.outdir / "summary.json", "w", encoding="utf-8") as fh:
        json.dump({"schema": 1, "maps": summary}, fh, indent=2)
    print(f"\n{len(summary)} maps -> {args.outdir}/ (+ summary.json)")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
