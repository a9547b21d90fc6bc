"""The weighted geometric mean transform, computed stably in log-domain.

For positive u_k and weights p_k the transform is
w_n = (prod_{k<=n} u_k^{p_k})^(1/P_n), i.e. log w_n is the p-weighted
running average of log u_k. Cancellation-heavy inputs (alternating logs
of size n) are the normal case here, so prefix sums are carried in
extended precision.
"""

import math
from typing import Sequence

import numpy as np

from .mcore import LogReal, MTolerance, TailWindow, Verdict, log_array, star_converges_to
from .weights import WeightSequence, lambda_index

__all__ = [
    "GeoMeanState",
    "weighted_geo_means",
    "transform_log_values",
    "gbar_limit_estimate",
    "decomposition_identity_check",
]


class GeoMeanState:
    """Incremental accumulator for the running weighted geometric mean.

    Keeps L = sum p_k log u_k and P = P_n with Kahan compensation so the
    incremental path agrees with fresh summation. `n` is the index of
    the last element consumed (-1 before the first push).
    """

    def __init__(self):
        self.L = 0.0
        self.P = 0.0
        self.n = -1
        self._comp_L = 0.0
        self._comp_P = 0.0

    @staticmethod
    def _kahan(total: float, comp: float, term: float) -> tuple[float, float]:
        y = term - comp
        t = total + y
        comp = (t - total) - y
        return t, comp

    def push(self, u: LogReal, p: float) -> LogReal:
        """Consume the next (u_n, p_n) pair and return the current mean."""
        if not (p >= 0 and math.isfinite(p)):
            raise ValueError(f"weight must be finite and nonnegative, got {p}")
        if self.n < 0 and not p > 0:
            raise ValueError("the first weight p_0 must be strictly positive")
        self.L, self._comp_L = self._kahan(self.L, self._comp_L, p * u.log_value)
        self.P, self._comp_P = self._kahan(self.P, self._comp_P, p)
        self.n += 1
        return self.mean

    @property
    def mean(self) -> LogReal:
        if self.n < 0:
            raise ValueError("no elements consumed yet")
        return LogReal(self.L / self.P)


def transform_log_values(log_u: np.ndarray, w: WeightSequence) -> np.ndarray:
    """log w_n for every prefix, from raw log values (array-level view)."""
    log_u = np.asarray(log_u, dtype=np.float64)
    if log_u.size == 0:
        raise ValueError("cannot transform an empty sequence")
    if len(w) < log_u.size:
        raise ValueError(
            f"weights of length {len(w)} are shorter than the sequence ({log_u.size})"
        )
    p = w.p[: log_u.size].astype(np.longdouble)
    prefix = np.cumsum(p * log_u.astype(np.longdouble))
    return (prefix / w.P[: log_u.size].astype(np.longdouble)).astype(np.float64)


def weighted_geo_means(u: Sequence[LogReal], w: WeightSequence) -> list[LogReal]:
    """The mean sequence (w_n); indices with p_k = 0 contribute nothing."""
    logs = transform_log_values(log_array(u), w)
    return [LogReal(float(lv)) for lv in logs]


def gbar_limit_estimate(
    u: Sequence[LogReal],
    w: WeightSequence,
    tol: MTolerance | None = None,
    window: TailWindow | None = None,
) -> Verdict:
    """Estimate the transform's limit from the window and test stability.

    The estimate is the mean at the window end; the verdict is true iff
    every mean in the window stays within `tol` of it (multiplicatively).
    """
    if tol is None:
        tol = MTolerance.default()
    means = weighted_geo_means(u, w)
    if window is None:
        window = TailWindow.last_half(len(means))
    window.check_fits(len(means))
    estimate = means[window.end_index]
    passed = star_converges_to(means, estimate, tol, window)
    return Verdict(passed=passed, limit=estimate, window=window, tolerance=tol.value)


def decomposition_identity_check(
    u: Sequence[LogReal],
    w: WeightSequence,
    lam: float,
    n: int,
) -> LogReal:
    """Evaluate both sides of the block decomposition of u_n/w_n.

    For lambda > 1 (requires P_{lambda_n} > P_n):
        u_n/w_n = (w_{lambda_n}/w_n)^(P_{lambda_n}/(P_{lambda_n}-P_n))
                  / {prod_{k=n+1}^{lambda_n} (u_k/u_n)^{p_k}}^(1/(P_{lambda_n}-P_n))
    and the mirrored identity for 0 < lambda < 1 (requires P_n > P_{lambda_n}).

    Returns the multiplicative distance between the two sides; it should
    be 1 up to floating slack whenever the preconditions hold.
    """
    if lam == 1.0:
        raise ValueError("lambda must differ from 1")
    ln = lambda_index(lam, n)
    hi = max(n, ln)
    if hi >= len(u):
        raise IndexError(
            f"identity at (lambda={lam}, n={n}) needs index {hi}, "
            f"sequence has length {len(u)}"
        )
    logs = log_array(u[: hi + 1])
    means = transform_log_values(logs, w)
    P = w.P
    p = w.p

    lhs = logs[n] - means[n]
    if lam > 1:
        if not P[ln] > P[n]:
            raise ValueError(
                f"precondition P_lambda_n > P_n violated at (lambda={lam}, n={n})"
            )
        dP = P[ln] - P[n]
        block = math.fsum(
            p[k] * (logs[k] - logs[n]) for k in range(n + 1, ln + 1)
        )
        rhs = (P[ln] / dP) * (means[ln] - means[n]) - block / dP
    else:
        if not P[n] > P[ln]:
            raise ValueError(
                f"precondition P_n > P_lambda_n violated at (lambda={lam}, n={n})"
            )
        dP = P[n] - P[ln]
        block = math.fsum(
            p[k] * (logs[n] - logs[k]) for k in range(ln + 1, n + 1)
        )
        rhs = (P[ln] / dP) * (means[n] - means[ln]) + block / dP
    return LogReal(abs(lhs - rhs))
