"""Finite-depth model of the completion of (strings, d_rho).

Shift-invariant measures are represented by their cylinder marginals up to
a finite depth (:class:`MeasureSketch`).  Distances that involve a sketch
are returned as intervals: scales beyond the sketch depth are unknown and
contribute anywhere between 0 and pi/2 each.
"""

from __future__ import annotations

import io
import math
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping, Union

from .metric import Interval, dist, dist_to_empty, recover_length
from .strings import HALF_PI, Alphabet, Str, all_words, check_same_alphabet

Marginal = Mapping[tuple[int, ...], "float | Fraction"]


@dataclass(frozen=True)
class MeasureSketch:
    """Cylinder marginals ``p_1..p_depth`` of a shift-invariant measure.

    ``marginals[n - 1]`` maps length-n words (rank tuples) to probabilities;
    absent words have probability zero.
    """

    alphabet: Alphabet
    marginals: tuple[Marginal, ...]
    consistency_tol: float = 1e-9

    @property
    def depth(self) -> int:
        return len(self.marginals)

    def p(self, n: int) -> Marginal:
        return self.marginals[n - 1]


CompletionPoint = Union[Str, MeasureSketch]


@dataclass(frozen=True)
class ConsistencyReport:
    ok: bool
    worst: float
    where: str = ""

    def __bool__(self):
        return self.ok


class Infeasible(ValueError):
    """No string within the configured caps meets the requested accuracy."""

    def __init__(self, msg: str, best: float):
        super().__init__(msg)
        self.best = best


def from_periodic(word: Str, depth: int) -> MeasureSketch:
    """Marginals of the periodic orbit of ``word``: cyclic window frequencies."""
    if len(word) == 0:
        raise ValueError("periodic word must be nonempty")
    if depth < 1:
        raise ValueError("depth must be >= 1")
    w = word.symbols
    L = len(w)
    margs = []
    for n in range(1, depth + 1):
        ext = (w * (n // L + 2))
        counts = Counter(ext[i:i + n] for i in range(L))
        margs.append({k: Fraction(c, L) for k, c in counts.items()})
    return MeasureSketch(word.alphabet, tuple(margs))


def empirical(S: Str, depth: int) -> MeasureSketch:
    """Empirical block distributions ``mult_S(W) / (|S| - n + 1)``; needs ``|S| >= depth``."""
    if len(S) < depth:
        raise ValueError(f"string of length {len(S)} has no {depth}-grams")
    s = S.symbols
    margs = []
    for n in range(1, depth + 1):
        total = len(s) - n + 1
        counts = Counter(s[i:i + n] for i in range(total))
        margs.append({k: Fraction(c, total) for k, c in counts.items()})
    return MeasureSketch(S.alphabet, tuple(margs))


def check_consistency(sketch: MeasureSketch, tol: float | None = None) -> ConsistencyReport:
    """Check normalization and both prefix and suffix marginal relations at every depth."""
    tol = sketch.consistency_tol if tol is None else tol
    worst, where = 0, ""
    for n in range(1, sketch.depth + 1):
        p = sketch.p(n)
        if any(v < 0 for v in p.values()):
            return ConsistencyReport(False, math.inf, f"negative mass at depth {n}")
        err = abs(sum(p.values()) - 1)
        if err > worst:
            worst, where = err, f"total mass at depth {n}"
    for n in range(1, sketch.depth):
        p, q = sketch.p(n), sketch.p(n + 1)
        pre, suf = defaultdict(int), defaultdict(int)
        for w, v in q.items():
            pre[w[:-1]] += v
            suf[w[1:]] += v
        for name, agg in (("prefix", pre), ("suffix", suf)):
            for w in set(agg) | set(p):
                err = abs(agg.get(w, 0) - p.get(w, 0))
                if err > worst:
                    worst, where = err, f"{name} relation at depth {n}, word {w}"
    return ConsistencyReport(worst <= tol, float(worst), where)


def _unit(vec: Mapping) -> dict:
    norm = math.sqrt(math.fsum(float(v) ** 2 for v in vec.values()))
    return {k: float(v) / norm for k, v in vec.items() if v}


def _sphere_angle(a: Mapping, b: Mapping) -> float:
    # 2*atan2(|a-b|, |a+b|) keeps precision near 0 unlike arccos of the dot product
    keys = set(a) | set(b)
    diff = math.fsum((a.get(k, 0.0) - b.get(k, 0.0)) ** 2 for k in keys)
    summ = math.fsum((a.get(k, 0.0) + b.get(k, 0.0)) ** 2 for k in keys)
    return 2.0 * math.atan2(math.sqrt(diff), math.sqrt(summ))


def _string_vector(S: Str, n: int) -> dict:
    s = S.symbols
    return Counter(s[i:i + n] for i in range(len(s) - n + 1))


def extended_thetas(X: CompletionPoint, Y: CompletionPoint, n_max: int) -> list[float]:
    """theta_1..theta_{n_max} between two completion points (sketch depths must cover n_max)."""
    out = []
    for n in range(1, n_max + 1):
        vx = _string_vector(X, n) if isinstance(X, Str) else X.p(n)
        vy = _string_vector(Y, n) if isinstance(Y, Str) else Y.p(n)
        zx, zy = not any(vx.values()), not any(vy.values())
        if zx and zy:
            out.append(0.0)
        elif zx or zy:
            out.append(HALF_PI)
        else:
            out.append(_sphere_angle(_unit(vx), _unit(vy)))
    return out


def _check_rho(rho: float) -> None:
    if not 0 < rho < 1:
        raise ValueError(f"rho must lie in (0, 1), got {rho}")


def extended_dist(X: CompletionPoint, Y: CompletionPoint, rho: float) -> Interval:
    """Interval enclosing the extended distance between strings and/or measure sketches."""
    _check_rho(rho)
    if isinstance(X, Str) and isinstance(Y, Str):
        d = dist(X, Y, rho)
        return Interval(d, d)
    check_same_alphabet(X, Y)
    if isinstance(X, Str) or isinstance(Y, Str):
        S, mu = (X, Y) if isinstance(X, Str) else (Y, X)
        L, N = len(S), mu.depth
        known = min(L, N)
        th = extended_thetas(S, mu, known)
        lo = math.fsum(rho ** n * t for n, t in enumerate(th, start=1))
        # past |S| the string's vectors vanish while the measure's never do
        lo += HALF_PI * rho ** (L + 1) / (1 - rho)
        unknown = HALF_PI * (rho ** (N + 1) - rho ** (L + 1)) / (1 - rho) if L > N else 0.0
        return Interval(lo, lo + unknown)
    N = min(X.depth, Y.depth)
    th = extended_thetas(X, Y, N)
    lo = math.fsum(rho ** n * t for n, t in enumerate(th, start=1))
    return Interval(lo, lo + HALF_PI * rho ** (N + 1) / (1 - rho))


# -- density: approximating a measure by a finite string ---------------------


def _cycle_decomposition(weights: Mapping[tuple, float], tol: float) -> list[tuple[list, float]]:
    """Split a circulation on the de Bruijn graph into weighted directed cycles.

    Edges are length-N words running from their (N-1)-prefix to their
    (N-1)-suffix.  Deterministic: always extends along the smallest word.
    """
    w = {k: v for k, v in weights.items() if v > tol}
    out_edges = defaultdict(list)
    for e in sorted(w):
        out_edges[e[:-1]].append(e)
    cycles = []
    while w:
        first = min(w)
        path, seen = [], {}
        v = first[:-1]
        e = first
        while True:
            if v in seen:
                cyc = path[seen[v]:]
                break
            seen[v] = len(path)
            if e is None:
                nxt = [x for x in out_edges[v] if x in w]
                if not nxt:
                    cyc = None
                    break
                e = nxt[0]
            path.append(e)
            v = e[1:]
            e = None
        if cyc is None:
            # dead end from rounding noise in an inexact sketch: drop the path
            for x in path:
                w.pop(x, None)
            continue
        c = min(w[x] for x in cyc)
        cycles.append((cyc, c))
        for x in cyc:
            w[x] -= c
            if w[x] <= tol:
                del w[x]
    return cycles


def _eulerian_words(mult: Mapping[tuple, int]) -> list[tuple[tuple, tuple]]:
    """Hierholzer on each connected piece of a balanced multigraph.

    Returns ``(start_vertex, symbols)`` per piece, where ``symbols`` are the
    last letters of the circuit's edges in order.
    """
    remaining = {e: c for e, c in mult.items() if c > 0}
    out_edges = defaultdict(list)
    for e in sorted(remaining):
        out_edges[e[:-1]].append(e)
    pieces = []
    while remaining:
        start = min(remaining)[:-1]
        ptr = defaultdict(int)
        stack = [(start, None)]
        circuit = []
        while stack:
            v, via = stack[-1]
            edges = out_edges[v]
            i = ptr[v]
            while i < len(edges) and remaining.get(edges[i], 0) == 0:
                i += 1
            ptr[v] = i
            if i < len(edges):
                e = edges[i]
                remaining[e] -= 1
                if remaining[e] == 0:
                    del remaining[e]
                stack.append((e[1:], e))
            else:
                stack.pop()
                if via is not None:
                    circuit.append(via)
        circuit.reverse()
        pieces.append((start, tuple(e[-1] for e in circuit)))
    return pieces


def _assemble(pieces, k: int, alphabet: Alphabet) -> Str:
    syms = []
    for start, cyc in pieces:
        syms.extend(start)
        syms.extend(cyc * k)
    return Str(tuple(syms), alphabet)


def approximate_measure_by_string(
    sketch: MeasureSketch,
    eps: float,
    rho: float,
    *,
    max_denominator: int = 1024,
    max_repeats: int = 512,
    max_length: int = 1 << 18,
) -> Str:
    """A finite string whose extended distance to ``sketch`` is verified below ``eps``.

    The depth-N marginal is a circulation on the de Bruijn graph; it is
    split into cycles, the cycle weights are scaled by a denominator and
    rounded, and an Eulerian circuit of the resulting multigraph is read off
    and repeated ``k`` times.  Denominators and repeat counts are searched in
    doubling order.  Raises :class:`Infeasible` with the best verified upper
    bound when nothing within the caps gets below ``eps``.
    """
    _check_rho(rho)
    if not eps > 0:
        raise ValueError("eps must be positive")
    report = check_consistency(sketch)
    if not report:
        raise ValueError(f"sketch is not consistent: {report.where} off by {report.worst:g}")
    N = sketch.depth
    floor = HALF_PI * rho ** (N + 1) / (1 - rho)
    if floor >= eps:
        raise Infeasible(f"sketch depth {N} leaves an unknown tail of {floor:.6g} >= eps", floor)

    exact = all(isinstance(v, Fraction) for v in sketch.p(N).values())
    cycles = _cycle_decomposition(sketch.p(N), 0 if exact else 1e-12)
    best, best_str = math.inf, None
    M = 1
    while M <= max_denominator:
        mult = defaultdict(int)
        for cyc, c in cycles:
            r = round(c * M)
            for e in cyc:
                mult[e] += r
        if any(mult.values()):
            pieces = _eulerian_words(mult)
            period = sum(len(c) for _, c in pieces)
            k = 1
            while k <= max_repeats and period * k + len(pieces) * (N - 1) <= max_length:
                S = _assemble(pieces, k, sketch.alphabet)
                hi = extended_dist(S, sketch, rho).hi
                if hi < best:
                    best, best_str = hi, S
                if hi < eps:
                    return S
                k *= 2
        M *= 2
    raise Infeasible(f"best verified bound {best:.6g} does not reach eps={eps}", best)


# -- recovering theta_n from distances alone ---------------------------------


def recover_theta(dist_fn: Callable[[Str, Str], float], S: Str, T: Str, n: int, rho: float,
                  *, max_scale: int = 3, max_alphabet: int = 4) -> float:
    """Rebuild theta_n(S, T) using only distances to strings of length <= n.

    Lengths come from distances to the empty string.  For a word ``W`` of
    length ``j``, theta_j(X, W) is peeled off ``dist_fn(X, W)`` after
    subtracting the lower scales (recursively recovered) and the known
    tail of pi/2 terms for scales in ``(j, |X|]``.  Cosines against all
    basis words ``W`` then form a unit vector per string, and theta_n is
    the angle between those vectors.
    """
    check_same_alphabet(S, T)
    alphabet = S.alphabet
    if n < 1:
        raise ValueError("scale must be >= 1")
    if n > max_scale or alphabet.size > max_alphabet:
        raise ValueError(
            f"recovery needs all {alphabet.size}**{n} basis words; caps are n <= {max_scale}, "
            f"|alphabet| <= {max_alphabet}")
    eps_str = Str.empty(alphabet)
    d_empty: dict = {}
    cos_cache: dict = {}

    def to_empty(X: Str) -> float:
        if X not in d_empty:
            d_empty[X] = dist_fn(eps_str, X)
        return d_empty[X]

    def length(X: Str) -> int:
        return recover_length(to_empty(X), rho)

    def cosines(X: Str, j: int) -> tuple[float, ...] | None:
        """cos theta_j(X, W) for every W in Sigma^j, or None if X has no j-grams."""
        key = (X, j)
        if key in cos_cache:
            return cos_cache[key]
        if length(X) < j:
            cos_cache[key] = None
            return None
        vals = []
        for w in all_words(alphabet, j):
            W = Str(w, alphabet)
            lower = math.fsum(rho ** i * theta(X, W, i) for i in range(1, j))
            tail = max(0.0, to_empty(X) - to_empty(W))
            th = (dist_fn(X, W) - lower - tail) / rho ** j
            vals.append(math.cos(min(max(th, 0.0), HALF_PI)))
        norm = math.sqrt(math.fsum(v * v for v in vals))
        cos_cache[key] = tuple(v / norm for v in vals)
        return cos_cache[key]

    def theta(X: Str, Y: Str, j: int) -> float:
        a, b = cosines(X, j), cosines(Y, j)
        if a is None and b is None:
            return 0.0
        if a is None or b is None:
            return HALF_PI
        return _sphere_angle(dict(enumerate(a)), dict(enumerate(b)))

    return theta(S, T, n)


# -- plain-text serialization -------------------------------------------------


def _gram_text(w: tuple, alphabet: Alphabet) -> str:
    if _single_char(alphabet):
        return "".join(alphabet.symbols[r] for r in w)
    return ".".join(str(r) for r in w)


def _single_char(alphabet: Alphabet) -> bool:
    return alphabet.symbols is not None and all(len(s) == 1 and not s.isspace()
                                                for s in alphabet.symbols)


def dumps_sketch(sketch: MeasureSketch) -> str:
    """Header ``depth N alphabet k [symbols ...]`` then ``n<TAB>gram<TAB>probability`` rows."""
    a = sketch.alphabet
    header = f"depth {sketch.depth} alphabet {a.size}"
    if _single_char(a):
        header += " symbols " + "".join(a.symbols)
    lines = [header]
    for n in range(1, sketch.depth + 1):
        for w in sorted(sketch.p(n)):
            lines.append(f"{n}\t{_gram_text(w, a)}\t{float(sketch.p(n)[w]):.17g}")
    return "\n".join(lines) + "\n"


def loads_sketch(text: str) -> MeasureSketch:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty sketch file")
    head = lines[0].split()
    if len(head) < 4 or head[0] != "depth" or head[2] != "alphabet":
        raise ValueError(f"bad sketch header: {lines[0]!r}")
    depth, size = int(head[1]), int(head[3])
    if len(head) >= 6 and head[4] == "symbols":
        alphabet = Alphabet(size, tuple(head[5]))
    else:
        alphabet = Alphabet(size)
    margs = [dict() for _ in range(depth)]
    for lineno, ln in enumerate(lines[1:], start=2):
        parts = ln.split("\t")
        if len(parts) != 3:
            raise ValueError(f"line {lineno}: expected 3 tab-separated fields")
        n, gram, prob = int(parts[0]), parts[1], float(parts[2])
        if alphabet.symbols is not None:
            w = tuple(alphabet.rank(c) for c in gram)
        else:
            w = tuple(int(x) for x in gram.split("."))
        if len(w) != n or not 1 <= n <= depth:
            raise ValueError(f"line {lineno}: gram {gram!r} does not have length {n}")
        margs[n - 1][w] = prob
    return MeasureSketch(alphabet, tuple(margs))


def write_sketch(sketch: MeasureSketch, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(dumps_sketch(sketch))


def read_sketch(path) -> MeasureSketch:
    with open(path, encoding="utf-8") as fh:
        return loads_sketch(fh.read())
