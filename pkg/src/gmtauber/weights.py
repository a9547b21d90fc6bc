"""Weight sequences p_n, their partial sums P_n, and the lambda-index map.

Also hosts an empirical membership diagnostic for the class of weights
whose partial-sum ratios P_{lambda_n}/P_n stay bounded away from 1 for
every lambda != 1 (the hypothesis under which the recovery conditions
in `tauber` are necessary and sufficient).
"""

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

import numpy as np

from .mcore import TailWindow

__all__ = [
    "WeightSequence",
    "LambdaGrid",
    "SvaPlusEstimate",
    "lambda_index",
    "partial_sum",
    "sva_plus_estimate",
]


def lambda_index(lam: float, n: int) -> int:
    """floor(lambda * n) for lambda > 0."""
    if not lam > 0:
        raise ValueError(f"lambda must be positive, got {lam}")
    return math.floor(lam * n)


class WeightSequence:
    """Nonnegative weights p_n with p_0 > 0 and cumulative sums P_n.

    P is accumulated in extended precision so that long prefixes agree
    with fresh summation to near machine accuracy.
    """

    def __init__(self, p: Iterable[float]):
        p_arr = np.asarray(list(p) if not isinstance(p, np.ndarray) else p, dtype=np.float64)
        if p_arr.ndim != 1 or p_arr.size == 0:
            raise ValueError("weights must be a non-empty 1-d sequence")
        if not np.all(np.isfinite(p_arr)):
            raise ValueError("weights must be finite")
        if np.any(p_arr < 0):
            raise ValueError("weights must be nonnegative")
        if not p_arr[0] > 0:
            raise ValueError("the first weight p_0 must be strictly positive")
        self.p = p_arr
        self.P = np.cumsum(p_arr, dtype=np.longdouble).astype(np.float64)

    def __len__(self) -> int:
        return len(self.p)

    def __repr__(self) -> str:
        return f"WeightSequence(n={len(self.p)}, P_end={self.P[-1]!r})"

    # Families constructible by name from the CLI.
    @classmethod
    def ones(cls, length: int) -> "WeightSequence":
        return cls(np.ones(length))

    @classmethod
    def harmonic(cls, length: int) -> "WeightSequence":
        """p_n = 1/(n+1)."""
        return cls(1.0 / (np.arange(length, dtype=np.float64) + 1.0))

    @classmethod
    def alternating(cls, length: int, a: float, b: float) -> "WeightSequence":
        """p = (a, b, a, b, ...)."""
        p = np.empty(length, dtype=np.float64)
        p[0::2] = a
        p[1::2] = b
        return cls(p)

    @classmethod
    def from_file(cls, path: str | Path) -> "WeightSequence":
        """One decimal weight per line."""
        lines = [ln.strip() for ln in Path(path).read_text().splitlines()]
        return cls([float(ln) for ln in lines if ln])


def partial_sum(w: WeightSequence, n: int) -> float:
    """P_n = sum of p_0..p_n."""
    if n < 0 or n >= len(w):
        raise IndexError(f"index {n} out of range for weights of length {len(w)}")
    return float(w.P[n])


@dataclass(frozen=True)
class LambdaGrid:
    """Finite sample of lambda values, all positive and != 1.

    The two branches approach 1 from above and from below; estimators
    take a min over a branch as the finite stand-in for liminf.
    """

    values: tuple[float, ...]

    def __post_init__(self):
        if not self.values:
            raise ValueError("lambda grid must be non-empty")
        for lam in self.values:
            if not (lam > 0 and math.isfinite(lam)):
                raise ValueError(f"lambda values must be positive reals, got {lam}")
            if lam == 1.0:
                raise ValueError("lambda = 1 is not allowed in the grid")
        dupes = len(self.values) - len(set(self.values))
        if dupes:
            raise ValueError("lambda grid contains duplicate values")

    @classmethod
    def default(cls) -> "LambdaGrid":
        """{1 +- 2^-j : j = 1..6} plus {1/2, 2} (0.5 deduplicated)."""
        vals = sorted(
            {1.0 + 2.0**-j for j in range(1, 7)}
            | {1.0 - 2.0**-j for j in range(1, 7)}
            | {0.5, 2.0}
        )
        return cls(tuple(vals))

    @classmethod
    def of(cls, values: Iterable[float]) -> "LambdaGrid":
        return cls(tuple(float(v) for v in values))

    @property
    def above_one(self) -> tuple[float, ...]:
        """Branch lambda > 1, descending toward 1."""
        return tuple(sorted((v for v in self.values if v > 1), reverse=True))

    @property
    def below_one(self) -> tuple[float, ...]:
        """Branch lambda < 1, ascending toward 1."""
        return tuple(sorted(v for v in self.values if v < 1))

    @property
    def max_lambda(self) -> float:
        return max(self.values)


@dataclass(frozen=True)
class SvaPlusEstimate:
    """Per-lambda infima of |P_{lambda_n}/P_n - 1| over a window.

    The verdict is finite-window evidence for membership, not a proof:
    true iff every per-lambda estimate exceeds the floor.
    """

    per_lambda: dict[float, float]
    floor: float
    verdict: bool
    window: TailWindow


def sva_plus_estimate(
    w: WeightSequence,
    grid: LambdaGrid | None = None,
    window: TailWindow | None = None,
    floor: float = 1e-3,
) -> SvaPlusEstimate:
    """Estimate how far the partial-sum ratios stay from 1 per lambda."""
    if grid is None:
        grid = LambdaGrid.default()
    if window is None:
        window = TailWindow.last_half(len(w))
    window.check_fits(len(w), "weights")

    ns = np.arange(window.start_index, window.end_index + 1, dtype=np.int64)
    per_lambda: dict[float, float] = {}
    for lam in grid.values:
        lns = np.floor(lam * ns).astype(np.int64)
        if lns.max(initial=0) >= len(w):
            raise ValueError(
                f"lambda index floor({lam} * {window.end_index}) exceeds the "
                f"materialized weight length {len(w)}"
            )
        per_lambda[lam] = float(np.min(np.abs(w.P[lns] / w.P[ns] - 1.0)))
    verdict = all(est > floor for est in per_lambda.values())
    return SvaPlusEstimate(per_lambda=per_lambda, floor=floor, verdict=verdict, window=window)
