"""Alphabets, rank-encoded strings, n-gram count vectors and the angle pseudometric."""

from __future__ import annotations

import math
import string
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

HALF_PI = math.pi / 2

_DEFAULT_NAMES = string.ascii_lowercase + string.ascii_uppercase + string.digits


class AlphabetMismatch(ValueError):
    pass


@dataclass(frozen=True)
class Alphabet:
    """A finite alphabet of ``size`` symbols with ranks ``0..size-1``.

    Ranks ``size`` and ``size + 1`` are reserved for the two sentinels used
    by the suffix engine and never appear in string content.
    """

    size: int
    symbols: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.size < 1:
            raise ValueError(f"alphabet size must be >= 1, got {self.size}")
        if self.symbols is not None:
            if len(self.symbols) != self.size:
                raise ValueError("need exactly one display name per rank")
            if len(set(self.symbols)) != self.size:
                raise ValueError("display names must be distinct")

    @classmethod
    def letters(cls, size: int) -> "Alphabet":
        names = tuple(_DEFAULT_NAMES[:size]) if size <= len(_DEFAULT_NAMES) else None
        return cls(size, names)

    @classmethod
    def from_text(cls, *texts: str) -> "Alphabet":
        chars = sorted(set().union(*(set(t) for t in texts)))
        if not chars:
            chars = ["a"]
        return cls(len(chars), tuple(chars))

    @property
    def sentinels(self) -> tuple[int, int]:
        return self.size, self.size + 1

    def rank(self, symbol: str) -> int:
        if self.symbols is None:
            raise ValueError("alphabet has no display names")
        try:
            return self._index[symbol]
        except KeyError:
            raise ValueError(f"symbol {symbol!r} not in alphabet") from None

    @property
    def _index(self) -> dict[str, int]:
        # cached lazily; frozen dataclass so go through object.__setattr__
        idx = self.__dict__.get("_index_cache")
        if idx is None:
            idx = {s: i for i, s in enumerate(self.symbols or ())}
            object.__setattr__(self, "_index_cache", idx)
        return idx

    def encode(self, text: str) -> "Str":
        return Str(tuple(self.rank(c) for c in text), self)

    def name(self, rank: int) -> str:
        if self.symbols is None:
            return str(rank)
        return self.symbols[rank]


@dataclass(frozen=True)
class Str:
    """Immutable string of symbol ranks over an :class:`Alphabet`."""

    symbols: tuple[int, ...]
    alphabet: Alphabet

    def __post_init__(self):
        if not isinstance(self.symbols, tuple):
            object.__setattr__(self, "symbols", tuple(int(s) for s in self.symbols))
        k = self.alphabet.size
        for s in self.symbols:
            if not 0 <= s < k:
                raise ValueError(f"rank {s} outside alphabet of size {k}")

    @classmethod
    def empty(cls, alphabet: Alphabet) -> "Str":
        return cls((), alphabet)

    def __len__(self):
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    def __getitem__(self, item):
        if isinstance(item, slice):
            return Str(self.symbols[item], self.alphabet)
        return self.symbols[item]

    def __add__(self, other: "Str") -> "Str":
        check_same_alphabet(self, other)
        return Str(self.symbols + other.symbols, self.alphabet)

    def __mul__(self, times: int) -> "Str":
        return Str(self.symbols * times, self.alphabet)

    __rmul__ = __mul__

    def reversed(self) -> "Str":
        return Str(self.symbols[::-1], self.alphabet)

    def permuted(self, perm: Sequence[int]) -> "Str":
        """Apply the symbol permutation ``rank -> perm[rank]``."""
        return Str(tuple(perm[s] for s in self.symbols), self.alphabet)

    @property
    def text(self) -> str:
        if self.alphabet.symbols is None:
            return ".".join(str(s) for s in self.symbols)
        return "".join(self.alphabet.symbols[s] for s in self.symbols)

    def __repr__(self):
        return f"Str({self.text!r})"


def check_same_alphabet(*strs: Str) -> None:
    first = strs[0].alphabet
    for s in strs[1:]:
        if s.alphabet != first:
            raise AlphabetMismatch(f"alphabet mismatch: {first} vs {s.alphabet}")


def as_strs(*items, alphabet: Alphabet | None = None) -> tuple[Str, ...]:
    """Coerce plain text and/or :class:`Str` values onto one shared alphabet.

    Text arguments are encoded with ``alphabet`` if given, else with the
    alphabet of the first ``Str`` argument, else with an alphabet inferred
    from all the text arguments.
    """
    if alphabet is None:
        for it in items:
            if isinstance(it, Str):
                alphabet = it.alphabet
                break
    if alphabet is None:
        alphabet = Alphabet.from_text(*items)
    out = []
    for it in items:
        if isinstance(it, Str):
            out.append(it)
        else:
            out.append(alphabet.encode(it))
    check_same_alphabet(*out)
    return tuple(out)


@dataclass(frozen=True)
class NGramVector:
    """Sparse count vector over length-``scale`` rank sequences (zeros omitted)."""

    scale: int
    counts: Mapping[tuple[int, ...], int]

    def dot(self, other: "NGramVector") -> int:
        if self.scale != other.scale:
            raise ValueError(f"scale mismatch: {self.scale} vs {other.scale}")
        a, b = self.counts, other.counts
        if len(a) > len(b):
            a, b = b, a
        return sum(c * b.get(k, 0) for k, c in a.items())

    def norm2(self) -> int:
        return sum(c * c for c in self.counts.values())

    def total(self) -> int:
        return sum(self.counts.values())

    def __getitem__(self, key) -> int:
        return self.counts.get(tuple(key), 0)

    def __len__(self):
        return len(self.counts)

    def scaled(self, c: int) -> "NGramVector":
        return NGramVector(self.scale, {k: c * v for k, v in self.counts.items()})


def multiplicity(S: Str, Q: Str) -> int:
    """Number of splittings ``S = P1 Q P2``; ``|S| + 1`` for the empty ``Q``."""
    check_same_alphabet(S, Q)
    s, q = S.symbols, Q.symbols
    n = len(q)
    if n == 0:
        return len(s) + 1
    return sum(1 for i in range(len(s) - n + 1) if s[i:i + n] == q)


def ngram_counts(S: Str, n: int) -> NGramVector:
    if n < 1:
        raise ValueError(f"scale must be >= 1, got {n}")
    s = S.symbols
    return NGramVector(n, dict(Counter(s[i:i + n] for i in range(len(s) - n + 1))))


def angle_from_products(dot, nu2, nv2) -> float:
    """Angle between two nonnegative vectors given ``u.v``, ``|u|^2`` and ``|v|^2``.

    Integer inputs are handled exactly up to the final square root:
    ``sin`` is taken from the Lagrange identity ``|u|^2|v|^2 - (u.v)^2``
    so angles near zero keep full relative precision.  Equals
    ``arccos(clamp(u.v / (|u||v|)))`` in exact arithmetic.
    """
    if nu2 == 0 and nv2 == 0:
        return 0.0
    if nu2 == 0 or nv2 == 0:
        return HALF_PI
    det = nu2 * nv2 - dot * dot
    if det <= 0:
        return 0.0
    return math.atan2(math.sqrt(det), dot)


def angle(u: NGramVector, v: NGramVector) -> float:
    """Angle distance in ``[0, pi/2]`` between two count vectors of equal scale."""
    return angle_from_products(u.dot(v), u.norm2(), v.norm2())


def all_words(alphabet: Alphabet, n: int) -> Iterable[tuple[int, ...]]:
    """Every rank sequence of length ``n`` in lexicographic order."""
    if n == 0:
        yield ()
        return
    for head in all_words(alphabet, n - 1):
        for a in range(alphabet.size):
            yield head + (a,)
