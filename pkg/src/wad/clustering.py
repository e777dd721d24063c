"""DBSCAN on precomputed distances, label-free tuning and external scores."""

from __future__ import annotations

import math
import time
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from sklearn.metrics import adjusted_rand_score, normalized_mutual_info_score

from . import baselines
from .metric import DistanceOptions, dist, thetas_from_stats, weighted_sum
from .strings import Str
from .suffix import pair_stats

MIN_SAMPLES_GRID = (3, 5, 8, 13)
EPS_GRID_SIZE = 25
EPS_QUANTILES = (0.02, 0.20)
RHO_SWEEP = tuple(round(0.1 * i, 1) for i in range(1, 11))
DEFAULT_MAX_N = 60


@dataclass(frozen=True)
class DistanceMatrix:
    values: np.ndarray
    provenance: dict = field(default_factory=dict)

    def __post_init__(self):
        v = self.values
        if v.ndim != 2 or v.shape[0] != v.shape[1]:
            raise ValueError("distance matrix must be square")
        if not np.array_equal(v, v.T):
            raise ValueError("distance matrix must be exactly symmetric")
        if np.any(np.diag(v) != 0):
            raise ValueError("distance matrix must have a zero diagonal")
        if np.any(v < 0):
            raise ValueError("distances must be nonnegative")

    @property
    def size(self) -> int:
        return self.values.shape[0]

    def upper(self) -> np.ndarray:
        return self.values[np.triu_indices(self.size, k=1)]


@dataclass
class TrialRecord:
    eps: float
    min_samples: int
    silhouette: float
    n_clusters: int
    noise_frac: float
    ari: float = math.nan
    nmi: float = math.nan
    wall_time_s: float = 0.0


# -- distance roster ----------------------------------------------------------


def _weighted_angle(rho: float = 0.5, max_n: int | None = None):
    if max_n is None and rho < 1:
        max_n = DEFAULT_MAX_N
    opts = DistanceOptions(rho, max_n if rho < 1 else None)
    return lambda s, t: dist(s, t, opts)


DISTANCES: dict[str, Callable[..., Callable]] = {
    "weighted_angle": _weighted_angle,
    "kgram_angle": lambda k=3: (lambda s, t: baselines.kgram_angle(s, t, int(k))),
    "kgram_js": lambda k=3: (lambda s, t: baselines.kgram_js(s, t, int(k))),
    "levenshtein": lambda: baselines.levenshtein,
    "damerau_levenshtein": lambda restricted=False: (
        lambda s, t: baselines.damerau_levenshtein(s, t, restricted=bool(restricted))),
    "lcs": lambda: baselines.lcs_distance,
}

EDIT_FAMILY = ("levenshtein", "damerau_levenshtein", "lcs")


def parse_distance(spec: str) -> tuple[str, dict]:
    """``"NAME[:k=v,...]"`` -> ``(NAME, params)`` with numeric values converted."""
    name, _, rest = spec.partition(":")
    if name not in DISTANCES:
        raise KeyError(name)
    params = {}
    for item in filter(None, rest.split(",")):
        k, _, v = item.partition("=")
        params[k.strip()] = _number(v.strip())
    return name, params


def _number(v: str):
    for cast in (int, float):
        try:
            return cast(v)
        except ValueError:
            pass
    if v.lower() in ("true", "false"):
        return v.lower() == "true"
    return v


def format_params(params: dict) -> str:
    return ";".join(f"{k}={v}" for k, v in params.items())


def _fill(n: int, pair: Callable[[int, int], float], threads: int) -> np.ndarray:
    out = np.zeros((n, n))
    rows = list(range(n))

    def row(i):
        return i, [pair(i, j) for j in range(i + 1, n)]

    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            results = list(pool.map(row, rows))
    else:
        results = [row(i) for i in rows]
    for i, vals in results:
        out[i, i + 1:] = vals
        out[i + 1:, i] = vals
    return out


def distance_matrix(seqs: Sequence[Str], name: str, params: dict | None = None,
                    *, threads: int = 1) -> DistanceMatrix:
    """Full pairwise matrix; row order follows ``seqs`` whatever the thread count."""
    params = dict(params or {})
    fn = DISTANCES[name](**params)
    values = _fill(len(seqs), lambda i, j: float(fn(seqs[i], seqs[j])), threads)
    return DistanceMatrix(values, {"distance": name, **params})


def weighted_angle_matrices(seqs: Sequence[Str], rhos: Sequence[float] = RHO_SWEEP,
                            *, max_n: int | None = DEFAULT_MAX_N,
                            threads: int = 1) -> dict[float, DistanceMatrix]:
    """One matrix per ``rho``, sharing a single suffix-engine pass per pair.

    For ``rho < 1`` the sum is truncated at ``max_n``; ``rho >= 1`` is exact.
    """
    n = len(seqs)
    thetas: dict[tuple[int, int], np.ndarray] = {}

    def pair(i, j):
        thetas[i, j] = thetas_from_stats(pair_stats(seqs[i], seqs[j]))
        return 0.0

    _fill(n, pair, threads)
    out = {}
    for rho in rhos:
        cut = max_n if (max_n is not None and rho < 1) else None
        values = np.zeros((n, n))
        for (i, j), th in thetas.items():
            values[i, j] = values[j, i] = weighted_sum(th[:cut] if cut else th, rho)
        out[rho] = DistanceMatrix(values, {"distance": "weighted_angle", "rho": rho})
    return out


# -- clustering ---------------------------------------------------------------


def _values(D) -> np.ndarray:
    return D.values if isinstance(D, DistanceMatrix) else np.asarray(D, dtype=float)


def dbscan(D, eps: float, min_samples: int) -> np.ndarray:
    """DBSCAN on a precomputed matrix.

    A point is core when at least ``min_samples`` points (itself included)
    lie within distance ``<= eps``.  Clusters are grown breadth-first from
    the lowest-index unvisited core point, so labels are deterministic;
    a border point reachable from two clusters joins the first one found.
    Noise is labelled -1.
    """
    if eps < 0 or min_samples < 1:
        raise ValueError("need eps >= 0 and min_samples >= 1")
    X = _values(D)
    n = X.shape[0]
    within = X <= eps
    core = within.sum(axis=1) >= min_samples
    labels = np.full(n, -2, dtype=np.int64)
    cluster = 0
    for i in range(n):
        if labels[i] != -2:
            continue
        if not core[i]:
            labels[i] = -1
            continue
        labels[i] = cluster
        queue = deque(np.flatnonzero(within[i]))
        while queue:
            j = queue.popleft()
            if labels[j] == -1:
                labels[j] = cluster
            if labels[j] != -2:
                continue
            labels[j] = cluster
            if core[j]:
                queue.extend(np.flatnonzero(within[j]))
        cluster += 1
    return labels


def silhouette_non_noise(D, labels) -> float:
    """Mean silhouette over non-noise points; -1 with fewer than two clusters or points."""
    X = _values(D)
    labels = np.asarray(labels)
    keep = np.flatnonzero(labels != -1)
    lab = labels[keep]
    ids = np.unique(lab)
    if keep.size < 2 or ids.size < 2:
        return -1.0
    sub = X[np.ix_(keep, keep)]
    onehot = (lab[:, None] == ids[None, :]).astype(float)
    sizes = onehot.sum(axis=0)
    sums = sub @ onehot
    own = np.searchsorted(ids, lab)
    own_size = sizes[own]
    a = np.where(own_size > 1, sums[np.arange(keep.size), own] / np.maximum(own_size - 1, 1), 0.0)
    mean_other = sums / sizes[None, :]
    mean_other[np.arange(keep.size), own] = np.inf
    b = mean_other.min(axis=1)
    denom = np.maximum(a, b)
    s = np.where((own_size > 1) & (denom > 0), (b - a) / np.where(denom > 0, denom, 1.0), 0.0)
    return float(s.mean())


def _noise_as_cluster(labels) -> np.ndarray:
    labels = np.asarray(labels).copy()
    if np.any(labels == -1):
        labels[labels == -1] = labels.max() + 1 if labels.max() >= 0 else 0
    return labels


def ari(a, b) -> float:
    if len(a) != len(b):
        raise ValueError(f"label arrays differ in length: {len(a)} vs {len(b)}")
    return float(adjusted_rand_score(_noise_as_cluster(a), _noise_as_cluster(b)))


def nmi(a, b) -> float:
    if len(a) != len(b):
        raise ValueError(f"label arrays differ in length: {len(a)} vs {len(b)}")
    return float(normalized_mutual_info_score(_noise_as_cluster(a), _noise_as_cluster(b),
                                              average_method="arithmetic"))


def eps_grid(D) -> np.ndarray:
    """25 evenly spaced eps values between the 2% and 20% quantiles of the pairwise distances."""
    upper = D.upper() if isinstance(D, DistanceMatrix) else _values(D)[
        np.triu_indices(_values(D).shape[0], k=1)]
    lo, hi = np.quantile(upper, EPS_QUANTILES)
    if not hi > lo:
        return np.array([lo])
    return np.linspace(lo, hi, EPS_GRID_SIZE)


def _trial(D, eps, ms, labels_true=None) -> tuple[TrialRecord, np.ndarray]:
    t0 = time.perf_counter()
    labels = dbscan(D, eps, ms)
    sil = silhouette_non_noise(D, labels)
    rec = TrialRecord(
        eps=float(eps), min_samples=ms, silhouette=sil,
        n_clusters=int(labels.max() + 1), noise_frac=float(np.mean(labels == -1)))
    if labels_true is not None:
        rec.ari = ari(labels_true, labels)
        rec.nmi = nmi(labels_true, labels)
    rec.wall_time_s = time.perf_counter() - t0
    return rec, labels


def tune(D, seed: int = 0, labels_true=None) -> tuple[TrialRecord, list[TrialRecord]]:
    """Grid search over eps x min_samples maximizing the non-noise silhouette.

    The grid is deterministic, so ``seed`` does not change the outcome; it
    is accepted so callers can record it alongside stochastic samplers.
    Ties go to the lower eps, then the lower min_samples.
    """
    X = _values(D)
    if X.shape[0] < 3:
        raise ValueError("tuning needs at least 3 points")
    trials = []
    best = None
    for eps in eps_grid(D):
        for ms in MIN_SAMPLES_GRID:
            rec, _ = _trial(X, eps, ms, labels_true)
            trials.append(rec)
            if best is None or rec.silhouette > best.silhouette:
                best = rec
    return best, trials


def evaluate(D, labels_true, seed: int = 0) -> TrialRecord:
    """Tune on silhouette alone, refit at the chosen parameters, then score against labels."""
    X = _values(D)
    if len(labels_true) != X.shape[0]:
        raise ValueError("labels_true must have one entry per point")
    t0 = time.perf_counter()
    best, _ = tune(X, seed)
    rec, _ = _trial(X, best.eps, best.min_samples, _encode(labels_true))
    rec.wall_time_s = time.perf_counter() - t0
    return rec


def _encode(labels) -> np.ndarray:
    _, inv = np.unique(np.asarray(labels), return_inverse=True)
    return inv
