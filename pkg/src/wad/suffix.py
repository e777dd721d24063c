"""Generalized suffix structure of ``U = S#T$`` and per-scale n-gram aggregates.

The suffix array is built by induced sorting (SA-IS), the LCP array by
Kasai's method, and the LCP-interval tree by a single stack sweep over the
LCP array.  Leaves (single suffixes) are kept as nodes alongside the
internal intervals so that every distinct substring of ``U`` is covered by
exactly one node edge.

Aggregation turns the node list into

    A_S[n] = sum_W mult_S(W)**2,  A_T[n] = sum_W mult_T(W)**2,
    B[n]   = sum_W mult_S(W) * mult_T(W)

for every n = 1..L_max at once, via range-adds on difference arrays.

Everything here is O(|S| + |T|).  The hot loops are compiled with numba.
"""

from __future__ import annotations

from dataclasses import dataclass

import numba
import numpy as np

from .strings import Str, check_same_alphabet

_jit = numba.njit(cache=True, nogil=True)

# engine ranks: '#' -> 0, '$' -> 1, symbol r -> r + 2, so # < $ < every symbol
_HASH, _DOLLAR, _SHIFT = 0, 1, 2


@_jit
def _ls_types(s):
    n = s.shape[0]
    ls = np.zeros(n, dtype=np.bool_)
    for i in range(n - 2, -1, -1):
        if s[i] == s[i + 1]:
            ls[i] = ls[i + 1]
        else:
            ls[i] = s[i] < s[i + 1]
    return ls


@_jit
def _bucket_bounds(s, ls, upper):
    sum_l = np.zeros(upper + 2, dtype=np.int64)
    sum_s = np.zeros(upper + 2, dtype=np.int64)
    for i in range(s.shape[0]):
        if not ls[i]:
            sum_s[s[i]] += 1
        else:
            sum_l[s[i] + 1] += 1
    for i in range(upper + 1):
        sum_s[i] += sum_l[i]
        if i < upper:
            sum_l[i + 1] += sum_s[i]
    return sum_l, sum_s


@_jit
def _induce(s, ls, sum_l, sum_s, lms, sa):
    n = s.shape[0]
    sa[:] = -1
    buf = sum_s.copy()
    for j in range(lms.shape[0]):
        d = lms[j]
        if d == n:
            continue
        sa[buf[s[d]]] = d
        buf[s[d]] += 1
    buf = sum_l.copy()
    sa[buf[s[n - 1]]] = n - 1
    buf[s[n - 1]] += 1
    for i in range(n):
        v = sa[i]
        if v >= 1 and not ls[v - 1]:
            sa[buf[s[v - 1]]] = v - 1
            buf[s[v - 1]] += 1
    buf = sum_l.copy()
    for i in range(n - 1, -1, -1):
        v = sa[i]
        if v >= 1 and ls[v - 1]:
            buf[s[v - 1] + 1] -= 1
            sa[buf[s[v - 1] + 1]] = v - 1


@_jit
def _lms_positions(ls):
    n = ls.shape[0]
    lms_map = np.full(n + 1, -1, dtype=np.int32)
    m = 0
    for i in range(1, n):
        if not ls[i - 1] and ls[i]:
            lms_map[i] = m
            m += 1
    lms = np.empty(m, dtype=np.int32)
    m = 0
    for i in range(1, n):
        if not ls[i - 1] and ls[i]:
            lms[m] = i
            m += 1
    return lms_map, lms


@_jit
def _reduce(s, sa, lms_map, lms):
    """Name the sorted LMS substrings; returns (sorted_lms, reduced string, max name)."""
    n = s.shape[0]
    m = lms.shape[0]
    sorted_lms = np.empty(m, dtype=np.int32)
    k = 0
    for i in range(n):
        v = sa[i]
        if lms_map[v] != -1:
            sorted_lms[k] = v
            k += 1
    rec = np.zeros(m, dtype=np.int32)
    upper = 0
    rec[lms_map[sorted_lms[0]]] = 0
    for i in range(1, m):
        l = sorted_lms[i - 1]
        r = sorted_lms[i]
        end_l = lms[lms_map[l] + 1] if lms_map[l] + 1 < m else n
        end_r = lms[lms_map[r] + 1] if lms_map[r] + 1 < m else n
        same = True
        if end_l - l != end_r - r:
            same = False
        else:
            while l < end_l:
                if s[l] != s[r]:
                    break
                l += 1
                r += 1
            if l == n or s[l] != s[r]:
                same = False
        if not same:
            upper += 1
        rec[lms_map[sorted_lms[i]]] = upper
    return sorted_lms, rec, upper


def suffix_array(s: np.ndarray, upper: int) -> np.ndarray:
    """Suffix array of an integer sequence with values in ``0..upper`` (SA-IS).

    A proper prefix sorts before any of its extensions.
    """
    s = np.ascontiguousarray(s, dtype=np.int32)
    n = s.shape[0]
    if n == 0:
        return np.empty(0, dtype=np.int32)
    if n == 1:
        return np.zeros(1, dtype=np.int32)
    if n == 2:
        return np.array([0, 1] if s[0] < s[1] else [1, 0], dtype=np.int32)
    ls = _ls_types(s)
    sum_l, sum_s = _bucket_bounds(s, ls, upper)
    lms_map, lms = _lms_positions(ls)
    sa = np.empty(n, dtype=np.int32)
    _induce(s, ls, sum_l, sum_s, lms, sa)
    if lms.shape[0]:
        sorted_lms, rec, rec_upper = _reduce(s, sa, lms_map, lms)
        rec_sa = suffix_array(rec, rec_upper)
        sorted_lms = lms[rec_sa]
        _induce(s, ls, sum_l, sum_s, sorted_lms, sa)
    return sa


@_jit
def lcp_array(s, sa):
    """Kasai: ``lcp[i]`` = common prefix of suffixes ``sa[i-1]`` and ``sa[i]``; ``lcp[0] = 0``."""
    n = s.shape[0]
    rank = np.empty(n, dtype=np.int32)
    for i in range(n):
        rank[sa[i]] = i
    lcp = np.zeros(n, dtype=np.int32)
    h = 0
    for i in range(n):
        if h > 0:
            h -= 1
        r = rank[i]
        if r == 0:
            h = 0
            continue
        j = sa[r - 1]
        while i + h < n and j + h < n and s[i + h] == s[j + h]:
            h += 1
        lcp[r] = h
    return lcp


@_jit
def _interval_nodes(sa, lcp, len_s):
    """Leaves and internal LCP intervals of ``U = S#T$`` (root excluded).

    Returns arrays (depth, parent_depth, lplus, occ_s, occ_t, start, is_leaf).
    ``lplus`` is the longest sentinel-free prefix length of the node label.
    """
    n = sa.shape[0]
    cap = 2 * n
    depth = np.empty(cap, dtype=np.int32)
    pdepth = np.empty(cap, dtype=np.int32)
    lplus = np.empty(cap, dtype=np.int32)
    occ_s = np.empty(cap, dtype=np.int32)
    occ_t = np.empty(cap, dtype=np.int32)
    start = np.empty(cap, dtype=np.int32)
    is_leaf = np.empty(cap, dtype=np.bool_)
    k = 0

    # stack of open intervals; slot 0 is the root
    st_depth = np.zeros(n + 1, dtype=np.int32)
    st_s = np.zeros(n + 1, dtype=np.int32)
    st_t = np.zeros(n + 1, dtype=np.int32)
    st_start = np.zeros(n + 1, dtype=np.int32)
    top = 0

    for i in range(n):
        p = sa[i]
        h = lcp[i + 1] if i + 1 < n else 0
        if p < len_s:
            cs, ct, lp = 1, 0, len_s - p
        elif p == len_s or p == n - 1:
            cs, ct, lp = 0, 0, 0
        else:
            cs, ct, lp = 0, 1, n - 1 - p
        depth[k] = n - p
        pdepth[k] = max(lcp[i], h)
        lplus[k] = lp
        occ_s[k] = cs
        occ_t[k] = ct
        start[k] = p
        is_leaf[k] = True
        k += 1

        # close every interval that ends at rank i, then attach the carry
        carry_s, carry_t, carry_start = cs, ct, p
        while h < st_depth[top]:
            cs2 = st_s[top] + carry_s
            ct2 = st_t[top] + carry_t
            d = st_depth[top]
            sp = st_start[top]
            top -= 1
            depth[k] = d
            pdepth[k] = max(h, st_depth[top])
            lplus[k] = d
            occ_s[k] = cs2
            occ_t[k] = ct2
            start[k] = sp
            is_leaf[k] = False
            k += 1
            carry_s, carry_t, carry_start = cs2, ct2, sp
        if h > st_depth[top]:
            top += 1
            st_depth[top] = h
            st_s[top] = carry_s
            st_t[top] = carry_t
            st_start[top] = carry_start
        else:
            st_s[top] += carry_s
            st_t[top] += carry_t
    return (depth[:k], pdepth[:k], lplus[:k], occ_s[:k], occ_t[:k],
            start[:k], is_leaf[:k])


@_jit
def _range_add(pdepth, lplus, occ_s, occ_t, lmax):
    ds = np.zeros(lmax + 2, dtype=np.int64)
    dt = np.zeros(lmax + 2, dtype=np.int64)
    dst = np.zeros(lmax + 2, dtype=np.int64)
    for v in range(pdepth.shape[0]):
        lo = pdepth[v] + 1
        hi = lplus[v]
        if hi < lo or lo > lmax:
            continue
        cs = np.int64(occ_s[v])
        ct = np.int64(occ_t[v])
        a = cs * cs
        b = ct * ct
        c = cs * ct
        ds[lo] += a
        dt[lo] += b
        dst[lo] += c
        if hi + 1 <= lmax + 1:
            ds[hi + 1] -= a
            dt[hi + 1] -= b
            dst[hi + 1] -= c
    return np.cumsum(ds)[1:lmax + 1], np.cumsum(dt)[1:lmax + 1], np.cumsum(dst)[1:lmax + 1]


@dataclass(frozen=True)
class GeneralizedSuffixStructure:
    """Suffix array, LCP array and interval-tree nodes of ``U = S#T$``.

    ``text`` uses the alphabet's own ranks with ``#`` and ``$`` at
    ``alphabet.size`` and ``alphabet.size + 1``.  Node arrays are parallel;
    leaves are included with ``occ`` equal to ``(1, 0)``, ``(0, 1)`` or
    ``(0, 0)`` for the two sentinel suffixes.
    """

    text: np.ndarray
    len_s: int
    len_t: int
    sa: np.ndarray
    lcp: np.ndarray
    depth: np.ndarray
    parent_depth: np.ndarray
    lplus: np.ndarray
    occ_s: np.ndarray
    occ_t: np.ndarray
    start: np.ndarray
    is_leaf: np.ndarray

    @property
    def n_nodes(self) -> int:
        return int(self.depth.shape[0])

    def label(self, v: int) -> np.ndarray:
        s = int(self.start[v])
        return self.text[s:s + int(self.depth[v])]

    def find(self, word) -> int | None:
        """Index of the node whose edge carries ``word`` (a rank sequence), or None."""
        word = np.asarray(word, dtype=np.int64)
        n = len(word)
        for v in range(self.n_nodes):
            if self.parent_depth[v] < n <= self.lplus[v]:
                s = int(self.start[v])
                if np.array_equal(self.text[s:s + n], word):
                    return v
        return None


@dataclass(frozen=True)
class AggregatedStats:
    """Per-scale aggregates for n = 1..l_max (index ``n - 1`` in each array)."""

    l_max: int
    a_s: np.ndarray
    a_t: np.ndarray
    b: np.ndarray

    def at(self, n: int) -> tuple[int, int, int]:
        if n < 1 or n > self.l_max:
            return 0, 0, 0
        return int(self.a_s[n - 1]), int(self.a_t[n - 1]), int(self.b[n - 1])


def _engine_text(S: Str, T: Str) -> np.ndarray:
    m = len(S)
    u = np.empty(m + len(T) + 2, dtype=np.int32)
    u[:m] = S.symbols
    u[m] = _HASH
    u[m + 1:-1] = T.symbols
    u[-1] = _DOLLAR
    u[:m] += _SHIFT
    u[m + 1:-1] += _SHIFT
    return u


def build(S: Str, T: Str) -> GeneralizedSuffixStructure:
    check_same_alphabet(S, T)
    if len(S) == 0 or len(T) == 0:
        raise ValueError("suffix structure needs two nonempty strings")
    u = _engine_text(S, T)
    sa = suffix_array(u, S.alphabet.size + _SHIFT - 1)
    lcp = lcp_array(u, sa)
    nodes = _interval_nodes(sa, lcp, len(S))
    k = S.alphabet.size
    text = u - _SHIFT
    text[len(S)] = k
    text[-1] = k + 1
    return GeneralizedSuffixStructure(text, len(S), len(T), sa, lcp, *nodes)


def aggregate(gss: GeneralizedSuffixStructure, max_n: int | None = None) -> AggregatedStats:
    """A_S, A_T and B for n = 1..L_max (or 1..max_n when that is smaller)."""
    lmax = max(gss.len_s, gss.len_t)
    if max_n is not None:
        lmax = min(lmax, max_n)
    a_s, a_t, b = _range_add(gss.parent_depth, gss.lplus, gss.occ_s, gss.occ_t, lmax)
    return AggregatedStats(lmax, a_s, a_t, b)


def pair_stats(S: Str, T: Str, max_n: int | None = None) -> AggregatedStats:
    """Aggregates for any pair, including empty operands."""
    check_same_alphabet(S, T)
    if len(S) == 0 or len(T) == 0:
        lmax = max(len(S), len(T))
        if max_n is not None:
            lmax = min(lmax, max_n)
        zeros = np.zeros(lmax, dtype=np.int64)
        other = S if len(S) else T
        sq = _self_squares(other, lmax)
        if len(S):
            return AggregatedStats(lmax, sq, zeros, zeros.copy())
        return AggregatedStats(lmax, zeros, sq, zeros.copy())
    return aggregate(build(S, T), max_n)


def _self_squares(S: Str, lmax: int) -> np.ndarray:
    if lmax == 0:
        return np.zeros(0, dtype=np.int64)
    u = np.empty(len(S) + 1, dtype=np.int32)
    u[:-1] = S.symbols
    u[:-1] += _SHIFT
    u[-1] = _DOLLAR
    sa = suffix_array(u, S.alphabet.size + _SHIFT - 1)
    lcp = lcp_array(u, sa)
    # treat the lone '$' as the T-block: it carries no symbols
    depth, pdepth, lplus, occ_s, occ_t, _, _ = _interval_nodes(sa, lcp, len(S))
    a_s, _, _ = _range_add(pdepth, lplus, occ_s, occ_t, lmax)
    return a_s
