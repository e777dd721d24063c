"""Brute-force evaluation of theta_n and d_rho from explicit n-gram maps.

Slow on purpose.  Every faster path in the package is tested against
these functions.
"""

from __future__ import annotations

from collections import Counter

from .strings import Str, angle_from_products, check_same_alphabet

MAX_ORACLE_LENGTH = 2000


def _as_text(S: Str) -> str:
    # one code point per rank; slicing str is much cheaper than slicing tuples
    return "".join(map(chr, S.symbols))


def _counts(text: str, n: int) -> Counter:
    return Counter(text[i:i + n] for i in range(len(text) - n + 1))


def _guard(*strs: Str, cap: int) -> None:
    for s in strs:
        if len(s) > cap:
            raise ValueError(f"oracle input of length {len(s)} exceeds cap {cap}")


def naive_theta_n(S: Str, T: Str, n: int, *, cap: int = MAX_ORACLE_LENGTH) -> float:
    check_same_alphabet(S, T)
    _guard(S, T, cap=cap)
    return _theta(_as_text(S), _as_text(T), n)


def _theta(s: str, t: str, n: int) -> float:
    cs, ct = _counts(s, n), _counts(t, n)
    dot = sum(c * ct.get(w, 0) for w, c in cs.items())
    return angle_from_products(
        dot, sum(c * c for c in cs.values()), sum(c * c for c in ct.values()))


def naive_products(S: Str, T: Str, *, cap: int = MAX_ORACLE_LENGTH):
    """Per-scale ``(sum mult_S^2, sum mult_T^2, sum mult_S*mult_T)`` for n = 1..max(|S|,|T|)."""
    check_same_alphabet(S, T)
    _guard(S, T, cap=cap)
    s, t = _as_text(S), _as_text(T)
    a_s, a_t, b = [], [], []
    for n in range(1, max(len(s), len(t)) + 1):
        cs, ct = _counts(s, n), _counts(t, n)
        a_s.append(sum(c * c for c in cs.values()))
        a_t.append(sum(c * c for c in ct.values()))
        b.append(sum(c * ct.get(w, 0) for w, c in cs.items()))
    return a_s, a_t, b


def naive_thetas(S: Str, T: Str, *, cap: int = MAX_ORACLE_LENGTH) -> list[float]:
    return [angle_from_products(b, x, y) for x, y, b in zip(*naive_products(S, T, cap=cap))]


def naive_dist(S: Str, T: Str, rho: float, *, cap: int = MAX_ORACLE_LENGTH) -> float:
    """``sum_n rho**n * theta_n(S, T)`` over n = 1..max(|S|, |T|)."""
    if not rho > 0:
        raise ValueError(f"rho must be positive, got {rho}")
    total = 0.0
    for n, th in enumerate(naive_thetas(S, T, cap=cap), start=1):
        total += rho ** n * th
    return total
