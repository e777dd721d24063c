"""Closed-form stability bounds for the weighted angle distance.

All bounds assume ``0 < rho < 1`` unless noted.  ``insertion_bound`` and
``substitution_bound`` bound ``d(PaQ, PQ)`` and ``d(PaQ, PbQ)`` for
``|P| = m``, ``|Q| = n``; ``stutter_bound`` bounds ``d(P1 Q P2, P1 Q^ell P2)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .strings import HALF_PI


def _check_rho(rho: float) -> None:
    if not 0 < rho < 1:
        raise ValueError(f"rho must lie in (0, 1), got {rho}")


@dataclass(frozen=True)
class EditBoundInputs:
    m: int
    n: int
    rho: float

    def __post_init__(self):
        if self.m < 0 or self.n < 0:
            raise ValueError("lengths must be nonnegative")
        _check_rho(self.rho)

    @property
    def L(self) -> int:
        return self.m + self.n

    @property
    def K(self) -> int:
        return self.L // 2

    @property
    def M(self) -> int:
        return min(self.m + 1, self.n + 1)


@dataclass(frozen=True)
class StutterBoundInputs:
    m1: int
    n: int
    m2: int
    ell: int
    rho: float

    def __post_init__(self):
        if min(self.m1, self.n, self.m2) < 0:
            raise ValueError("lengths must be nonnegative")
        if self.ell < 1:
            raise ValueError("ell must be a positive integer")
        _check_rho(self.rho)

    @property
    def L(self) -> int:
        return self.m1 + self.n + self.m2

    @property
    def r(self) -> int:
        return (self.ell - 1) * self.n

    @property
    def K(self) -> int:
        return self.L // 2

    @property
    def M(self) -> int:
        return min(self.m1 + self.n + 1, self.m2 + 1)


def a_m_rho(M: int, rho: float) -> float:
    """Closed form of ``sum_{k>=1} rho**k * min(k, M)``."""
    if M < 1:
        raise ValueError(f"M must be >= 1, got {M}")
    _check_rho(rho)
    head = rho * (1 - (M + 1) * rho ** M + M * rho ** (M + 1)) / (1 - rho) ** 2
    return head + M * rho ** (M + 1) / (1 - rho)


def a_m_rho_series(M: int, rho: float, tol: float = 1e-17) -> float:
    """The same quantity by direct summation, stopped once the remaining tail is below ``tol``."""
    total = 0.0
    k = 1
    while True:
        term = rho ** k * min(k, M)
        total += term
        # tail after k is at most M * rho**(k+1) / (1 - rho) once k >= M
        if k >= M and M * rho ** (k + 1) / (1 - rho) < tol:
            return total
        k += 1


def _tail(rho: float, start: int) -> float:
    return HALF_PI * rho ** start / (1 - rho)


def insertion_bound(inp: EditBoundInputs) -> float:
    """Upper bound on ``d(PaQ, PQ)`` (single insertion or deletion)."""
    if inp.L == 0:
        raise ValueError("bound undefined for |P| = |Q| = 0")
    rho = inp.rho
    return (math.pi * math.sqrt(2) / math.sqrt(inp.L) * a_m_rho(inp.M, rho)
            + _tail(rho, inp.K + 1)
            + HALF_PI * rho ** (inp.L + 1))


def substitution_bound(inp: EditBoundInputs) -> float:
    """Upper bound on ``d(PaQ, PbQ)`` (single substitution)."""
    if inp.L == 0:
        raise ValueError("bound undefined for |P| = |Q| = 0")
    rho = inp.rho
    return math.pi / math.sqrt(inp.L) * a_m_rho(inp.M, rho) + _tail(rho, inp.K + 1)


def stutter_bound(inp: StutterBoundInputs) -> float:
    """Upper bound on ``d(P1 Q P2, P1 Q^ell P2)``."""
    if inp.L < 1:
        raise ValueError("stutter bound needs |P1 Q P2| >= 1")
    rho, L, r = inp.rho, inp.L, inp.r
    main = math.pi / math.sqrt(2 * L) * (3 * a_m_rho(inp.M, rho) + rho / (1 - rho) * r)
    return main + _tail(rho, inp.K + 1) + HALF_PI * rho ** (L + 1) * (1 - rho ** r) / (1 - rho)


def window_counts(kind: str, *, k: int, m: int = 0, n: int = 0,
                  p: int = 0, q: int = 0, r: int = 0) -> int:
    """Window counts used by the edit and stutter bounds.

    ``insert_c``: windows of ``PQ`` crossing the P|Q junction (``m, n``).
    ``insert_d``: windows of ``PaQ`` containing the inserted symbol (``m, n``).
    ``subst_e``: windows of ``PaQ`` containing ``a`` (``m, n``).
    ``stutter_c``: windows of ``U`` crossing the junction after ``p`` symbols (``p, q``).
    ``stutter_d``: windows of ``V`` meeting the inserted block of length ``r`` (``p, q, r``).
    """
    if kind == "insert_c":
        v = min(m, k - 1) - max(1, k - n) + 1
    elif kind == "insert_d":
        v = min(m, k - 1) - max(0, k - n - 1) + 1
    elif kind == "subst_e":
        v = min(m, m + n - k + 1) - max(0, m - k + 1) + 1
    elif kind == "stutter_c":
        v = min(p, k - 1) - max(1, k - q) + 1
    elif kind == "stutter_d":
        L = p + q
        v = min(p + r, L + r - k + 1) - max(1, p - k + 2) + 1
    else:
        raise ValueError(f"unknown window kind {kind!r}")
    return max(0, v)


def min_separation(s_len: int, rho: float) -> float:
    """Lower bound on ``d(S, T)`` over all ``T != S`` with ``|S| = s_len``; any ``rho > 0``."""
    if not rho > 0:
        raise ValueError(f"rho must be positive, got {rho}")
    return HALF_PI * min(rho ** s_len, rho ** (s_len + 1))


def uniform_bound(rho: float) -> float:
    """``(pi/2) * rho / (1 - rho)``, the supremum of the distance over all pairs."""
    _check_rho(rho)
    return HALF_PI * rho / (1 - rho)
