"""Estimators for the conditions under which mean convergence of a
positive sequence can be upgraded to plain convergence.

All quantities are finite-window, finite-grid stand-ins for the
asymptotic definitions: liminf over lambda becomes a min over a
LambdaGrid branch, limsup over n becomes a max over a TailWindow. The
report keeps the raw per-lambda curves so the trend stays visible, not
just the scalar.
"""

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .mcore import (
    LogReal,
    MTolerance,
    TailWindow,
    Verdict,
    log_array,
)
from .weights import LambdaGrid, WeightSequence
from .gmean import gbar_limit_estimate

__all__ = [
    "TauberReport",
    "ReportThresholds",
    "slow_oscillation_curve",
    "slow_oscillation_estimate",
    "tauber_condition_curve",
    "tauber_con1_estimate",
    "tauber_con2_estimate",
    "landau_estimates",
    "recoverability_report",
]


def _safe_exp(x: float) -> float:
    # Multiplicative estimates can exceed exp(709); saturate honestly.
    return math.exp(x) if x < 709.0 else math.inf


def _check_lambda_bounds(lam: float, window: TailWindow, length: int) -> None:
    top = math.floor(lam * window.end_index)
    if top >= length:
        raise ValueError(
            f"lambda index floor({lam} * {window.end_index}) = {top} exceeds "
            f"the materialized sequence length {length}"
        )


def slow_oscillation_curve(
    u: Sequence[LogReal],
    grid: LambdaGrid,
    window: TailWindow,
    backward: bool = False,
) -> dict[float, float]:
    """Per-lambda max over the window of the in-block ratio bound.

    Forward (lambda > 1): max_{n < m <= lambda_n} |u_m/u_n|*.
    Backward (lambda < 1): max_{lambda_n < m <= n} |u_n/u_m|*.
    Lambdas whose blocks are empty for every n in the window are omitted.
    """
    window.check_fits(len(u))
    x = log_array(u)
    branch = grid.below_one if backward else grid.above_one
    curve: dict[float, float] = {}
    for lam in branch:
        if not backward:
            _check_lambda_bounds(lam, window, len(u))
        worst = -math.inf
        for n in window.indices():
            ln = math.floor(lam * n)
            lo, hi = (ln, n) if backward else (n, ln)
            if hi <= lo:
                continue
            block = x[lo + 1 : hi + 1]
            dev = max(block.max() - x[n], x[n] - block.min())
            if dev > worst:
                worst = dev
        if worst > -math.inf:
            curve[lam] = _safe_exp(worst)
    return curve


def slow_oscillation_estimate(
    u: Sequence[LogReal],
    grid: LambdaGrid | None = None,
    window: TailWindow | None = None,
    backward: bool = False,
) -> float:
    """Min over the lambda branch of the per-lambda block-ratio maxima.

    A value of 1 means the window evidence is consistent with the
    in-block ratios flattening out as lambda approaches 1.
    """
    if grid is None:
        grid = LambdaGrid.default()
    if window is None:
        window = TailWindow.last_half(len(u))
    curve = slow_oscillation_curve(u, grid, window, backward=backward)
    if not curve:
        raise ValueError(
            "every lambda in the grid had an empty block range for this window"
        )
    return min(curve.values())


def _weighted_prefixes(
    u: Sequence[LogReal], w: WeightSequence
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    x = log_array(u)
    if len(w) < x.size:
        raise ValueError(
            f"weights of length {len(w)} are shorter than the sequence ({x.size})"
        )
    S = np.cumsum(w.p[: x.size].astype(np.longdouble) * x.astype(np.longdouble))
    return x, S, w.P[: x.size].astype(np.longdouble)


def tauber_condition_curve(
    u: Sequence[LogReal],
    w: WeightSequence,
    grid: LambdaGrid,
    window: TailWindow,
    side: int,
) -> dict[float, float]:
    """Per-lambda maxima of the normalized weighted block means.

    side 1 (lambda > 1): {|prod_{k=n+1}^{lambda_n} (u_k/u_n)^{p_k}|*}^(1/(P_{lambda_n}-P_n))
    side 2 (lambda < 1): {|prod_{k=lambda_n+1}^{n} (u_n/u_k)^{p_k}|*}^(1/(P_n-P_{lambda_n}))

    (lambda, n) pairs with equal partial sums are skipped; a lambda with
    no usable n is omitted from the curve.
    """
    if side not in (1, 2):
        raise ValueError("side must be 1 or 2")
    window.check_fits(len(u))
    x, S, P = _weighted_prefixes(u, w)
    ns = np.arange(window.start_index, window.end_index + 1, dtype=np.int64)
    branch = grid.above_one if side == 1 else grid.below_one
    curve: dict[float, float] = {}
    for lam in branch:
        if side == 1:
            _check_lambda_bounds(lam, window, len(u))
        lns = np.floor(lam * ns).astype(np.int64)
        if side == 1:
            dP = P[lns] - P[ns]
            numer = np.abs((S[lns] - S[ns]) - dP * x[ns])
        else:
            dP = P[ns] - P[lns]
            numer = np.abs(dP * x[ns] - (S[ns] - S[lns]))
        valid = dP > 0
        if not np.any(valid):
            continue
        curve[lam] = _safe_exp(float(np.max(numer[valid] / dP[valid])))
    return curve


def _condition_estimate(curve: dict[float, float]) -> float:
    if not curve:
        raise ValueError(
            "no (lambda, n) pair was usable: the partial sums never move "
            "across any block (degenerate weights or one-sided grid)"
        )
    return min(curve.values())


def tauber_con1_estimate(
    u: Sequence[LogReal],
    w: WeightSequence,
    grid: LambdaGrid | None = None,
    window: TailWindow | None = None,
) -> float:
    """Forward recovery condition estimate (lambda > 1 branch)."""
    if grid is None:
        grid = LambdaGrid.default()
    if window is None:
        window = TailWindow.last_half(len(u))
    return _condition_estimate(tauber_condition_curve(u, w, grid, window, side=1))


def tauber_con2_estimate(
    u: Sequence[LogReal],
    w: WeightSequence,
    grid: LambdaGrid | None = None,
    window: TailWindow | None = None,
) -> float:
    """Backward recovery condition estimate (lambda < 1 branch)."""
    if grid is None:
        grid = LambdaGrid.default()
    if window is None:
        window = TailWindow.last_half(len(u))
    return _condition_estimate(tauber_condition_curve(u, w, grid, window, side=2))


def landau_estimates(
    u: Sequence[LogReal],
    window: TailWindow,
    vanish_tol: MTolerance | None = None,
) -> tuple[float, bool]:
    """Diagnostics for the auxiliary sequence ((u_n/u_{n-1})^n).

    Returns (bound_estimate, vanish): the max of |(u_n/u_{n-1})^n|* over
    the window, and whether that auxiliary sequence stays within
    `vanish_tol` of 1 across the window.
    """
    if window.start_index < 1:
        raise ValueError("window must start at index >= 1")
    window.check_fits(len(u))
    if vanish_tol is None:
        vanish_tol = MTolerance.default()
    x = log_array(u)
    ns = np.arange(window.start_index, window.end_index + 1, dtype=np.int64)
    aux = ns * (x[ns] - x[ns - 1])
    worst = float(np.max(np.abs(aux)))
    return _safe_exp(worst), worst < vanish_tol.log


@dataclass(frozen=True)
class ReportThresholds:
    """Pass thresholds for the recoverability report."""

    theta: float = 1.05
    gbar_tol: MTolerance = field(default_factory=MTolerance.default)
    vanish_tol: MTolerance = field(default_factory=MTolerance.default)

    def __post_init__(self):
        if not self.theta >= 1:
            raise ValueError(f"theta must be >= 1, got {self.theta}")


@dataclass(frozen=True)
class TauberReport:
    """Combined windowed evidence for recoverability of a sequence limit
    from its weighted geometric means."""

    gbar_verdict: Verdict
    con1_estimate: float
    con2_estimate: float
    slow_osc_estimate: float
    slow_osc_backward_estimate: float
    landau_bound_estimate: float
    landau_vanish: bool
    recovery_verdict: bool
    theta: float
    window: TailWindow
    curves: dict[str, dict[float, float]]
    skipped_lambdas: dict[str, tuple[float, ...]]


def default_report_window(length: int, grid: LambdaGrid) -> TailWindow:
    """Last half of the index range that keeps every lambda_n in bounds."""
    end = min(length - 1, int((length - 1) / grid.max_lambda))
    if end < 1:
        raise ValueError(
            f"sequence of length {length} is too short for lambda grid "
            f"max {grid.max_lambda}"
        )
    return TailWindow(max(1, end // 2), end)


def recoverability_report(
    u: Sequence[LogReal],
    w: WeightSequence,
    grid: LambdaGrid | None = None,
    window: TailWindow | None = None,
    thresholds: ReportThresholds | None = None,
) -> TauberReport:
    """Assemble all estimates into one evidence report.

    recovery_verdict is true iff the mean sequence stabilizes in the
    window AND at least one of the two condition estimates stays below
    theta. The slow-oscillation and auxiliary-ratio diagnostics are
    reported alongside as the stronger sufficient-evidence flags.

    When `window` is omitted it defaults to the last half of the index
    range usable under the grid (all lambda_n in bounds); an explicit
    window is used as given and must satisfy the bounds itself.
    """
    if grid is None:
        grid = LambdaGrid.default()
    if thresholds is None:
        thresholds = ReportThresholds()
    if window is None:
        window = default_report_window(len(u), grid)

    gbar = gbar_limit_estimate(u, w, thresholds.gbar_tol, window)

    con1_curve = tauber_condition_curve(u, w, grid, window, side=1)
    con2_curve = tauber_condition_curve(u, w, grid, window, side=2)
    so_fwd = slow_oscillation_curve(u, grid, window, backward=False)
    so_back = slow_oscillation_curve(u, grid, window, backward=True)
    con1 = min(con1_curve.values()) if con1_curve else math.inf
    con2 = min(con2_curve.values()) if con2_curve else math.inf

    landau_window = TailWindow(max(1, window.start_index), window.end_index)
    landau_bound, landau_vanish = landau_estimates(
        u, landau_window, thresholds.vanish_tol
    )

    recovery = bool(gbar.passed and (con1 <= thresholds.theta or con2 <= thresholds.theta))

    def _skipped(branch: tuple[float, ...], curve: dict[float, float]) -> tuple[float, ...]:
        return tuple(lam for lam in branch if lam not in curve)

    return TauberReport(
        gbar_verdict=gbar,
        con1_estimate=con1,
        con2_estimate=con2,
        slow_osc_estimate=min(so_fwd.values()) if so_fwd else math.inf,
        slow_osc_backward_estimate=min(so_back.values()) if so_back else math.inf,
        landau_bound_estimate=landau_bound,
        landau_vanish=landau_vanish,
        recovery_verdict=recovery,
        theta=thresholds.theta,
        window=window,
        curves={
            "con1": con1_curve,
            "con2": con2_curve,
            "slow_osc_forward": so_fwd,
            "slow_osc_backward": so_back,
        },
        skipped_lambdas={
            "con1": _skipped(grid.above_one, con1_curve),
            "con2": _skipped(grid.below_one, con2_curve),
            "slow_osc_forward": _skipped(grid.above_one, so_fwd),
            "slow_osc_backward": _skipped(grid.below_one, so_back),
        },
    )
