"""The rho-weighted angle distance assembled from suffix-engine aggregates."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal, NamedTuple

import numpy as np

from .strings import HALF_PI, Str, angle_from_products, as_strs
from .suffix import AggregatedStats, pair_stats

TailPolicy = Literal["exact", "bounded-interval"]


class Interval(NamedTuple):
    lo: float
    hi: float

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def __contains__(self, x) -> bool:
        return self.lo <= x <= self.hi


@dataclass(frozen=True)
class DistanceOptions:
    """``rho`` plus an optional truncation scale.

    With ``max_n`` set, ``tail_policy="exact"`` returns the truncated partial
    sum as a float and ``"bounded-interval"`` returns an :class:`Interval`
    that is guaranteed to contain the full distance.  Truncation needs
    ``rho < 1``; there is no geometric tail bound otherwise.
    """

    rho: float
    max_n: int | None = None
    tail_policy: TailPolicy = "exact"

    def __post_init__(self):
        if not self.rho > 0:
            raise ValueError(f"rho must be positive, got {self.rho}")
        if self.max_n is not None:
            if self.max_n < 1:
                raise ValueError(f"max_n must be >= 1, got {self.max_n}")
            if self.rho >= 1:
                raise ValueError("truncation (max_n) requires rho < 1")
        if self.tail_policy not in ("exact", "bounded-interval"):
            raise ValueError(f"unknown tail policy {self.tail_policy!r}")


def _as_options(opts) -> DistanceOptions:
    if isinstance(opts, DistanceOptions):
        return opts
    return DistanceOptions(float(opts))


def theta_from_stats(stats: AggregatedStats, n: int) -> float:
    if n < 1:
        raise ValueError(f"scale must be >= 1, got {n}")
    a_s, a_t, b = stats.at(n)
    return angle_from_products(b, a_s, a_t)


def thetas_from_stats(stats: AggregatedStats) -> np.ndarray:
    """All theta_n for n = 1..l_max, vectorized over the aggregate arrays."""
    a_s, a_t, b = stats.a_s, stats.a_t, stats.b
    if stats.l_max == 0:
        return np.zeros(0)
    # products past int64 (only at the smallest scales of long inputs) go through Python ints
    big = np.flatnonzero(a_s.astype(float) * a_t.astype(float) >= 2.0 ** 62)
    safe_s, safe_t, safe_b = a_s.copy(), a_t.copy(), b.copy()
    safe_s[big] = safe_t[big] = safe_b[big] = 0
    det = (safe_s * safe_t - safe_b * safe_b).astype(float)
    for i in big:
        det[i] = float(int(a_s[i]) * int(a_t[i]) - int(b[i]) * int(b[i]))
    out = np.arctan2(np.sqrt(np.maximum(det, 0.0)), b.astype(float))
    zs, zt = a_s == 0, a_t == 0
    out[zs & zt] = 0.0
    out[zs ^ zt] = HALF_PI
    return out


def weighted_sum(thetas: np.ndarray, rho: float) -> float:
    if thetas.shape[0] == 0:
        return 0.0
    weights = rho ** np.arange(1, thetas.shape[0] + 1, dtype=float)
    return math.fsum(weights * thetas)


def geometric_tail(rho: float, start: int) -> float:
    """``(pi/2) * sum_{n >= start} rho**n`` for ``0 < rho < 1``."""
    return HALF_PI * rho ** start / (1.0 - rho)


def dist_to_empty(S: Str | int, rho: float) -> float:
    """Distance from ``S`` to the empty string: ``(pi/2) * sum_{k=1}^{|S|} rho**k``."""
    if not rho > 0:
        raise ValueError(f"rho must be positive, got {rho}")
    n = S if isinstance(S, int) else len(S)
    if n == 0:
        return 0.0
    if rho == 1.0:
        return HALF_PI * n
    return HALF_PI * rho * (1.0 - rho ** n) / (1.0 - rho)


def recover_length(d: float, rho: float) -> int:
    """Invert :func:`dist_to_empty`: the length of the string at distance ``d`` from epsilon."""
    if not rho > 0:
        raise ValueError(f"rho must be positive, got {rho}")
    if d < -1e-9:
        raise ValueError(f"distance must be nonnegative, got {d}")
    d = max(d, 0.0)
    if rho == 1.0:
        x = d / HALF_PI
    else:
        sup = HALF_PI * rho / (1.0 - rho) if rho < 1 else math.inf
        if d > sup * (1 + 1e-12):
            raise ValueError(f"distance {d} is not attainable from epsilon at rho={rho}")
        arg = 1.0 - d / sup if rho < 1 else 1.0 + (rho - 1.0) * d / (HALF_PI * rho)
        x = math.log(arg) / math.log(rho) if arg > 0 else math.inf
    if rho < 1 and (not math.isfinite(x) or HALF_PI * rho ** (round(x) + 1) <= 64 * math.ulp(d)):
        # rho**n has fallen below double resolution; neighbouring lengths collide
        raise ValueError(f"length is not resolvable from {d} at rho={rho} in double precision")
    n = round(x)
    if abs(dist_to_empty(n, rho) - d) > 1e-6 * max(1.0, d):
        raise ValueError(f"distance {d} is not dist_to_empty of any length at rho={rho}")
    return n


def pair_thetas(S, T) -> np.ndarray:
    S, T = as_strs(S, T)
    return thetas_from_stats(pair_stats(S, T))


def theta_all(S, T) -> np.ndarray:
    """theta_n(S, T) for n = 1..max(|S|, |T|)."""
    return pair_thetas(S, T)


def dist(S, T, opts=0.5):
    """rho-weighted angle distance ``sum_n rho**n * theta_n(S, T)``.

    ``opts`` is a :class:`DistanceOptions` or a bare ``rho``.  Plain text
    operands are encoded over a shared inferred alphabet.
    """
    opts = _as_options(opts)
    S, T = as_strs(S, T)
    rho = opts.rho
    if len(S) == 0 or len(T) == 0:
        n = len(S) + len(T)
        if opts.max_n is None:
            return dist_to_empty(n, rho)
        partial = dist_to_empty(min(n, opts.max_n), rho)
    else:
        stats = pair_stats(S, T, opts.max_n)
        partial = weighted_sum(thetas_from_stats(stats), rho)
        if opts.max_n is None:
            return partial
    if opts.tail_policy == "exact":
        return partial
    return Interval(partial, partial + geometric_tail(rho, opts.max_n + 1))


def dist_from_stats(stats: AggregatedStats, rho: float) -> float:
    return weighted_sum(thetas_from_stats(stats), rho)
