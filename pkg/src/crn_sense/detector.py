"""Energy detection decision rules.

Three detectors share the energy statistic T = (1/M) sum |y(n)|^2:

* single threshold: compare T against one level;
* double threshold: an inclusive fuzzy band [lambda_low, lambda_high]
  where the detector abstains;
* bisection-resolved double threshold: a fuzzy energy is resolved by
  bisecting the band toward the energy itself and comparing against
  the final midpoint.

The bisection is deliberately a fixed-step procedure, not a root
finder from a library: its output after max_iter halvings is part of
the observable behaviour (tables of resolved thresholds depend on the
exact midpoint sequence), so the loop is spelled out here.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "Decision",
    "ThresholdPair",
    "BisectionConfig",
    "BisectionResult",
    "energy_statistic",
    "single_threshold_decide",
    "double_threshold_decide",
    "bisection_optimum_threshold",
    "resolve_fuzzy",
]


class Decision(enum.Enum):
    """Outcome of one sensing decision."""

    IDLE = "idle"
    OCCUPIED = "occupied"
    FUZZY = "fuzzy"


@dataclass(frozen=True)
class ThresholdPair:
    """Lower and upper decision levels of a double-threshold detector.

    Equal levels are allowed; the band then degenerates to a single
    threshold and no energy is ever fuzzy under strict-inside tests,
    while the inclusive band of double_threshold_decide collapses to
    the single point lambda_low == lambda_high.
    """

    lambda_low: float
    lambda_high: float

    def __post_init__(self) -> None:
        for name, value in (("lambda_low", self.lambda_low), ("lambda_high", self.lambda_high)):
            if not (math.isfinite(value) and value >= 0.0):
                raise ValueError(f"{name} must be finite and >= 0, got {value!r}")
        if self.lambda_low > self.lambda_high:
            raise ValueError(
                f"lambda_low must not exceed lambda_high, "
                f"got {self.lambda_low!r} > {self.lambda_high!r}"
            )

    @property
    def width(self) -> float:
        return self.lambda_high - self.lambda_low


@dataclass(frozen=True)
class BisectionConfig:
    """Iteration budget and early-exit tolerance for the band bisection.

    min_tol = 0 disables the early exit, so exactly max_iter midpoints
    are produced; that is the configuration all published threshold
    tables use.
    """

    max_iter: int = 4
    min_tol: float = 0.0

    def __post_init__(self) -> None:
        if self.max_iter < 1:
            raise ValueError(f"max_iter must be >= 1, got {self.max_iter!r}")
        if not (math.isfinite(self.min_tol) and self.min_tol >= 0.0):
            raise ValueError(f"min_tol must be finite and >= 0, got {self.min_tol!r}")


@dataclass(frozen=True)
class BisectionResult:
    """Resolved threshold plus the midpoint trace that produced it."""

    lambda_opt: float
    iterations_used: int
    trace: tuple[float, ...] = field(default_factory=tuple)


def energy_statistic(block: np.ndarray) -> float:
    """Average per-sample energy of a window: (1/M) sum |y(n)|^2."""
    samples = np.asarray(block, dtype=float)
    if samples.ndim != 1 or samples.size == 0:
        raise ValueError("block must be a non-empty 1-D array")
    if not np.all(np.isfinite(samples)):
        raise ValueError("block contains non-finite samples")
    return float(np.mean(np.square(samples)))


def _check_energy(energy: float) -> None:
    if not (math.isfinite(energy) and energy >= 0.0):
        raise ValueError(f"energy must be finite and >= 0, got {energy!r}")


def single_threshold_decide(energy: float, threshold: float) -> Decision:
    """Occupied iff the energy strictly exceeds the threshold."""
    _check_energy(energy)
    if not (math.isfinite(threshold) and threshold >= 0.0):
        raise ValueError(f"threshold must be finite and >= 0, got {threshold!r}")
    return Decision.OCCUPIED if energy > threshold else Decision.IDLE


def double_threshold_decide(energy: float, pair: ThresholdPair) -> Decision:
    """Idle below the band, occupied above it, fuzzy inside (inclusive)."""
    _check_energy(energy)
    if energy < pair.lambda_low:
        return Decision.IDLE
    if energy > pair.lambda_high:
        return Decision.OCCUPIED
    return Decision.FUZZY


def bisection_optimum_threshold(
    pair: ThresholdPair,
    energy: float,
    config: BisectionConfig = BisectionConfig(),
) -> BisectionResult:
    """Resolve a threshold inside [lambda_low, lambda_high] for one energy.

    Starting from low = lambda_low, high = lambda_high, each step takes
    mid = (low + high) / 2 and keeps the half interval whose endpoints
    bracket the energy: if (low - energy) and (mid - energy) have
    opposite signs the upper end moves down to mid, otherwise the lower
    end moves up to mid. A zero product (energy equal to an endpoint or
    to the midpoint) takes the otherwise branch, moving low. The
    resolved threshold is the last midpoint computed.

    With min_tol > 0 the loop stops early once the bracket is narrower
    than min_tol after an update.
    """
    _check_energy(energy)
    if not pair.lambda_low <= energy <= pair.lambda_high:
        raise ValueError(
            f"energy {energy!r} outside the fuzzy band "
            f"[{pair.lambda_low!r}, {pair.lambda_high!r}]"
        )
    low = pair.lambda_low
    high = pair.lambda_high
    trace: list[float] = []
    iterations = 0
    for _ in range(config.max_iter):
        mid = (low + high) / 2.0
        trace.append(mid)
        iterations += 1
        if (low - energy) * (mid - energy) < 0.0:
            high = mid
        else:
            low = mid
        if config.min_tol > 0.0 and (high - low) < config.min_tol:
            break
    return BisectionResult(lambda_opt=trace[-1], iterations_used=iterations, trace=tuple(trace))


def resolve_fuzzy(
    energy: float,
    pair: ThresholdPair,
    config: BisectionConfig = BisectionConfig(),
) -> Decision:
    """Final verdict for a fuzzy energy via the bisection threshold.

    Energies outside the band keep their ordinary double-threshold
    verdict; inside it the single-threshold rule is applied at the
    resolved lambda_opt.
    """
    first_pass = double_threshold_decide(energy, pair)
    if first_pass is not Decision.FUZZY:
        return first_pass
    result = bisection_optimum_threshold(pair, energy, config)
    return single_threshold_decide(energy, result.lambda_opt)
