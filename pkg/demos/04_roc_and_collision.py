"""Operating curves and the collision comparison.

The empirical curve reuses one set of trials for every threshold
(common random numbers), so it is monotone by construction and lines
up with the closed form point by point. The collision sweep then
contrasts the double detector with its bisection-resolved variant on
the published threshold pairs.
"""

from __future__ import annotations

import numpy as np

from crn_sense import (
    GenerativeModel,
    ThresholdPair,
    TrialConfig,
    collision_sweep,
    roc_analytic,
    roc_empirical,
)
from crn_sense.signal_model import SensingParams

PAIRS = [
    ThresholdPair(12.0, 18.0),
    ThresholdPair(8.0, 20.0),
    ThresholdPair(7.0, 22.0),
    ThresholdPair(5.0, 25.0),
]


def main() -> None:
    config = TrialConfig(num_trials=50_000, seed=3, model=GenerativeModel.CHISQ)
    grid = np.linspace(2.0, 26.0, 9)

    analytic = roc_analytic(grid, SensingParams(), form="gamma-marcum")
    empirical = roc_empirical(grid, config)
    print("single-threshold operating curve, closed form vs shared-trial estimate")
    print(f"{'lambda':>7} {'pf':>9} {'pd':>9} {'pf_emp':>9} {'pd_emp':>9}")
    for a, e in zip(analytic.points, empirical.points):
        print(f"{a.threshold:7.2f} {a.pf:9.5f} {a.pd:9.5f} {e.pf:9.5f} {e.pd:9.5f}")
    print("shared trials keep the empirical curve monotone, no crossings to explain")

    rows = collision_sweep(PAIRS, [14.5], config)
    print("\ncollision with the primary user, sensed energy 14.5 in every band")
    print(f"{'band':>12} {'lam_opt':>8} {'pc_double':>10} {'pc_optimum':>11} {'pf':>9}")
    for row in rows:
        band = f"[{row.pair.lambda_low:g}, {row.pair.lambda_high:g}]"
        print(f"{band:>12} {row.lambda_opt:8.4f} {row.pc_double.rate:10.5f} "
              f"{row.pc_optimum.rate:11.5f} {row.pf.rate:9.5f}")
    print("resolving fuzzy trials instead of abstaining trades a wider band's")
    print("protection for throughput; the sign of the change is reported, not assumed")


if __name__ == "__main__":
    main()
