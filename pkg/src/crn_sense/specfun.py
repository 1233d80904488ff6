"""Scalar special functions backing the detection probability formulas.

Self-contained on purpose: only the standard library is used, so the
probability stack has no numerical dependency to drift under it. The
accuracy target throughout is absolute error well below 1e-8 over the
argument ranges a detection problem produces.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "Tolerance",
    "DEFAULT_TOLERANCE",
    "ConvergenceError",
    "gaussian_q",
    "gaussian_q_inv",
    "reg_upper_gamma",
    "marcum_q",
]

_SQRT2 = math.sqrt(2.0)
_SQRT_2PI = math.sqrt(2.0 * math.pi)


class ConvergenceError(ArithmeticError):
    """A series or iteration exhausted its term budget before converging."""


@dataclass(frozen=True)
class Tolerance:
    """Convergence control for the iterative evaluations.

    abs_tol is the stopping threshold (used relative to the running sum
    where that sum is of order one); max_terms caps series length and
    iteration counts before ConvergenceError is raised.
    """

    abs_tol: float = 1e-12
    max_terms: int = 10000

    def __post_init__(self) -> None:
        if not (math.isfinite(self.abs_tol) and self.abs_tol > 0.0):
            raise ValueError(f"abs_tol must be positive and finite, got {self.abs_tol!r}")
        if self.max_terms < 1:
            raise ValueError(f"max_terms must be >= 1, got {self.max_terms!r}")


DEFAULT_TOLERANCE = Tolerance()


def gaussian_q(x: float) -> float:
    """Upper tail of the standard normal, Q(x) = Pr[Z > x].

    Evaluated through the complementary error function:
    Q(x) = erfc(x / sqrt(2)) / 2.
    """
    if not math.isfinite(x):
        raise ValueError(f"gaussian_q needs a finite argument, got {x!r}")
    return 0.5 * math.erfc(x / _SQRT2)


def gaussian_q_inv(p: float, tol: Tolerance = DEFAULT_TOLERANCE) -> float:
    """Inverse of gaussian_q on (0, 1).

    Newton steps with a bisection safeguard on [-40, 40]; the bracket
    covers tail probabilities far beyond double-precision relevance.
    """
    if not (0.0 < p < 1.0):
        raise ValueError(f"gaussian_q_inv needs 0 < p < 1, got {p!r}")
    lo, hi = -40.0, 40.0
    x = 0.0
    for _ in range(tol.max_terms):
        err = gaussian_q(x) - p
        if err > 0.0:
            lo = x  # Q decreasing: Q(x) still above p, move right
        elif err < 0.0:
            hi = x
        else:
            return x
        pdf = math.exp(-0.5 * x * x) / _SQRT_2PI
        cand = x + err / pdf if pdf > 0.0 else math.nan
        if not math.isfinite(cand) or not (lo < cand < hi):
            cand = 0.5 * (lo + hi)
        if abs(cand - x) <= 1e-13 * max(1.0, abs(x)):
            return cand
        x = cand
    raise ConvergenceError(f"gaussian_q_inv did not converge for p={p!r}")


def reg_upper_gamma(u: float, x: float, tol: Tolerance = DEFAULT_TOLERANCE) -> float:
    """Regularized upper incomplete gamma, Gamma(u, x) / Gamma(u).

    Integer orders take the closed-form finite sum
    exp(-x) * sum_{k=0}^{u-1} x^k / k!; other orders use the usual
    lower-series / continued-fraction split at x = u + 1.
    """
    if not (math.isfinite(u) and u > 0.0):
        raise ValueError(f"reg_upper_gamma needs u > 0, got {u!r}")
    if not (math.isfinite(x) and x >= 0.0):
        raise ValueError(f"reg_upper_gamma needs x >= 0, got {x!r}")
    if x == 0.0:
        return 1.0
    # exp(-x) underflows near 709; beyond that the finite sum cannot be
    # built term by term, so fall through to the continued fraction.
    if u == math.floor(u) and u <= 1e6 and x < 700.0:
        return _upper_gamma_finite_sum(int(u), x)
    if x < u + 1.0:
        return _clip_unit(1.0 - _lower_gamma_series(u, x, tol))
    return _clip_unit(_upper_gamma_cf(u, x, tol))


def _clip_unit(v: float) -> float:
    return min(1.0, max(0.0, v))


def _upper_gamma_finite_sum(n: int, x: float) -> float:
    # Running product keeps every term in range even when x^k alone
    # would overflow (n, x up to several hundred).
    term = math.exp(-x)
    total = term
    for k in range(1, n):
        term *= x / k
        total += term
    return _clip_unit(total)


def _lower_gamma_series(u: float, x: float, tol: Tolerance) -> float:
    ap = u
    term = 1.0 / u
    total = term
    for _ in range(tol.max_terms):
        ap += 1.0
        term *= x / ap
        total += term
        if abs(term) < abs(total) * tol.abs_tol:
            return total * math.exp(-x + u * math.log(x) - math.lgamma(u))
    raise ConvergenceError(f"lower gamma series stalled at u={u!r}, x={x!r}")


def _upper_gamma_cf(u: float, x: float, tol: Tolerance) -> float:
    # Modified Lentz evaluation of the standard continued fraction.
    tiny = 1e-300
    b = x + 1.0 - u
    c = 1.0 / tiny
    d = 1.0 / b if b != 0.0 else 1.0 / tiny
    h = d
    for i in range(1, tol.max_terms + 1):
        an = -i * (i - u)
        b += 2.0
        d = an * d + b
        if abs(d) < tiny:
            d = tiny
        c = b + an / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < tol.abs_tol:
            return h * math.exp(-x + u * math.log(x) - math.lgamma(u))
    raise ConvergenceError(f"upper gamma continued fraction stalled at u={u!r}, x={x!r}")


def marcum_q(u: float, a: float, b: float, tol: Tolerance = DEFAULT_TOLERANCE) -> float:
    """Generalized Marcum Q of order u >= 1, Q_u(a, b).

    Canonical series: Q_u(a, b) = sum_k Pois(k; a^2/2) *
    reg_upper_gamma(u + k, b^2/2). Truncation stops once the remaining
    Poisson mass cannot move the result past the tolerance (every gamma
    tail factor is at most one).
    """
    if not (math.isfinite(u) and u >= 1.0):
        raise ValueError(f"marcum_q needs order u >= 1, got {u!r}")
    if not (math.isfinite(a) and a >= 0.0):
        raise ValueError(f"marcum_q needs a >= 0, got {a!r}")
    if not (math.isfinite(b) and b >= 0.0):
        raise ValueError(f"marcum_q needs b >= 0, got {b!r}")
    if b == 0.0:
        return 1.0
    if a == 0.0:
        return reg_upper_gamma(u, 0.5 * b * b, tol)
    h = 0.5 * a * a
    x = 0.5 * b * b
    pois = math.exp(-h)
    if pois == 0.0:
        raise ConvergenceError(f"noncentrality a={a!r} too large for the series start")
    mass = pois
    total = pois * reg_upper_gamma(u, x, tol)
    for k in range(1, tol.max_terms + 1):
        pois *= h / k
        mass += pois
        total += pois * reg_upper_gamma(u + k, x, tol)
        if 1.0 - mass <= tol.abs_tol * (1.0 + total):
            return _clip_unit(total)
    raise ConvergenceError(f"marcum_q series stalled at u={u!r}, a={a!r}, b={b!r}")
