"""Comparison distances: the edit family and fixed-scale k-gram distances."""

from __future__ import annotations

import math
from collections import Counter

from .strings import Str, angle_from_products


def _seq(x):
    return x.symbols if isinstance(x, Str) else x


def levenshtein(S, T) -> int:
    """Minimum number of single-symbol insertions, deletions and substitutions."""
    s, t = _seq(S), _seq(T)
    if len(s) < len(t):
        s, t = t, s
    prev = list(range(len(t) + 1))
    for i, a in enumerate(s, start=1):
        cur = [i]
        for j, b in enumerate(t, start=1):
            cur.append(min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (a != b)))
        prev = cur
    return prev[-1]


def damerau_levenshtein(S, T, *, restricted: bool = False) -> int:
    """Damerau-Levenshtein distance.

    By default the unrestricted variant (Lowrance-Wagner), which is a true
    metric.  ``restricted=True`` gives optimal string alignment (OSA), where
    no substring is edited more than once.
    """
    s, t = _seq(S), _seq(T)
    if restricted:
        return _osa(s, t)
    n, m = len(s), len(t)
    big = n + m
    last_row = {}
    # d has a guard row/column of `big` in front of the usual DP table
    d = [[big] * (m + 2) for _ in range(n + 2)]
    for i in range(n + 1):
        d[i + 1][1] = i
    for j in range(m + 1):
        d[1][j + 1] = j
    for i in range(1, n + 1):
        last_col = 0
        for j in range(1, m + 1):
            i1 = last_row.get(t[j - 1], 0)
            j1 = last_col
            cost = 1
            if s[i - 1] == t[j - 1]:
                cost = 0
                last_col = j
            d[i + 1][j + 1] = min(
                d[i][j] + cost,
                d[i + 1][j] + 1,
                d[i][j + 1] + 1,
                d[i1][j1] + (i - i1 - 1) + 1 + (j - j1 - 1),
            )
        last_row[s[i - 1]] = i
    return d[n + 1][m + 1]


def _osa(s, t) -> int:
    n, m = len(s), len(t)
    d = [[0] * (m + 1) for _ in range(n + 1)]
    for i in range(n + 1):
        d[i][0] = i
    for j in range(m + 1):
        d[0][j] = j
    for i in range(1, n + 1):
        for j in range(1, m + 1):
            cost = 0 if s[i - 1] == t[j - 1] else 1
            v = min(d[i - 1][j] + 1, d[i][j - 1] + 1, d[i - 1][j - 1] + cost)
            if i > 1 and j > 1 and s[i - 1] == t[j - 2] and s[i - 2] == t[j - 1]:
                v = min(v, d[i - 2][j - 2] + 1)
            d[i][j] = v
    return d[n][m]


def lcs_length(S, T) -> int:
    s, t = _seq(S), _seq(T)
    if len(s) < len(t):
        s, t = t, s
    prev = [0] * (len(t) + 1)
    for a in s:
        cur = [0]
        for j, b in enumerate(t, start=1):
            cur.append(prev[j - 1] + 1 if a == b else max(prev[j], cur[j - 1]))
        prev = cur
    return prev[-1]


def lcs_distance(S, T) -> int:
    """Insert/delete-only edit distance ``|S| + |T| - 2 * LCS(S, T)``."""
    return len(_seq(S)) + len(_seq(T)) - 2 * lcs_length(S, T)


def _kgrams(s, k: int) -> Counter:
    return Counter(tuple(s[i:i + k]) for i in range(len(s) - k + 1))


def kgram_angle(S, T, k: int) -> float:
    """Angle between the k-gram count vectors (theta_k of the weighted distance)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    cs, ct = _kgrams(_seq(S), k), _kgrams(_seq(T), k)
    dot = sum(c * ct.get(w, 0) for w, c in cs.items())
    return angle_from_products(dot, sum(c * c for c in cs.values()),
                               sum(c * c for c in ct.values()))


def kgram_js(S, T, k: int, *, base: float = 2.0, sqrt: bool = True) -> float:
    """Jensen-Shannon distance between empirical k-gram distributions.

    Defaults: base-2 logarithms and the square root applied, giving a metric
    with values in [0, 1].  One empty profile gives 1, two give 0.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    cs, ct = _kgrams(_seq(S), k), _kgrams(_seq(T), k)
    ns, nt = sum(cs.values()), sum(ct.values())
    if ns == 0 and nt == 0:
        return 0.0
    if ns == 0 or nt == 0:
        return 1.0 if sqrt else math.log(2, base)
    terms = []
    for w in set(cs) | set(ct):
        p, q = cs.get(w, 0) / ns, ct.get(w, 0) / nt
        m = p + q
        if p:
            terms.append(p * math.log(2 * p / m, base))
        if q:
            terms.append(q * math.log(2 * q / m, base))
    jsd = max(0.0, 0.5 * math.fsum(terms))
    return math.sqrt(jsd) if sqrt else jsd
