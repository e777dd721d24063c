import itertools
import math

import pytest
from hypothesis import given, strategies as st
from scipy.spatial.distance import jensenshannon

from wad import naive_theta_n
from wad.baselines import (damerau_levenshtein, kgram_angle, kgram_js, lcs_distance,
                           lcs_length, levenshtein)

from conftest import enc, str_pairs

words = st.text("abc", max_size=7)


def exhaustive_edit(s, t, *, transpose=False, limit=6):
    """Breadth-first search over edit scripts; only for tiny inputs."""
    alphabet = sorted(set(s) | set(t))
    frontier, seen = {s}, {s}
    for steps in range(limit + 1):
        if t in frontier:
            return steps
        nxt = set()
        for w in frontier:
            cands = [w[:i] + w[i + 1:] for i in range(len(w))]
            cands += [w[:i] + c + w[i:] for i in range(len(w) + 1) for c in alphabet]
            cands += [w[:i] + c + w[i + 1:] for i in range(len(w)) for c in alphabet]
            if transpose:
                cands += [w[:i] + w[i + 1] + w[i] + w[i + 2:] for i in range(len(w) - 1)]
            for c in cands:
                if c not in seen and len(c) <= max(len(s), len(t)) + 1:
                    seen.add(c)
                    nxt.add(c)
        frontier = nxt
    raise AssertionError("limit too small")


def test_levenshtein_examples():
    assert levenshtein("kitten", "sitting") == 3
    assert levenshtein("abc", "abc") == 0
    assert levenshtein("ab" * 4, "ab" * 20) == 32


def test_damerau_examples():
    assert damerau_levenshtein("ab", "ba") == 1
    assert damerau_levenshtein("abc", "abc") == 0
    assert damerau_levenshtein("ca", "abc") == 2
    assert damerau_levenshtein("ca", "abc", restricted=True) == 3


def test_lcs_examples():
    assert lcs_distance("ab", "ba") == 2
    assert lcs_distance("abc", "") == 3
    assert lcs_distance("abcd", "abd") == 1 and lcs_length("abcd", "abd") == 3


@pytest.mark.parametrize("s,t", list(itertools.product(["", "ab", "ba", "abc", "cab"], repeat=2)))
def test_edit_distances_against_exhaustive_search(s, t):
    assert levenshtein(s, t) == exhaustive_edit(s, t)
    assert damerau_levenshtein(s, t) == exhaustive_edit(s, t, transpose=True)


@given(words, words, words)
def test_edit_family_metric(s, t, u):
    for f in (levenshtein, damerau_levenshtein, lcs_distance):
        assert f(s, t) == f(t, s)
        assert (f(s, t) == 0) == (s == t)
        assert f(s, u) <= f(s, t) + f(t, u)


@given(words, words)
def test_distance_orderings(s, t):
    assert damerau_levenshtein(s, t) <= damerau_levenshtein(s, t, restricted=True) <= levenshtein(s, t)
    assert levenshtein(s, t) <= lcs_distance(s, t)


def test_accepts_encoded_strings():
    S, T = enc("kitten", "sitting")
    assert levenshtein(S, T) == 3


@given(str_pairs(max_len=10), st.integers(1, 4))
def test_kgram_angle_is_theta_k(pair, k):
    S, T = pair
    assert kgram_angle(S, T, k) == pytest.approx(naive_theta_n(S, T, k), abs=1e-12)


def test_kgram_js_examples():
    assert kgram_js("abab", "abab", 2) == 0
    assert kgram_js("ab", "ba", 2) == pytest.approx(1.0)
    ref = jensenshannon([2 / 3, 1 / 3, 0], [1 / 3, 1 / 3, 1 / 3], base=2)
    assert kgram_js("abab", "abba", 2) == pytest.approx(ref, abs=1e-12)
    assert kgram_js("a", "abc", 2) == 1.0 and kgram_js("a", "b", 2) == 0.0


@given(words, words, st.integers(1, 3))
def test_kgram_js_range(s, t, k):
    assert 0 <= kgram_js(s, t, k) <= 1 + 1e-12
    with pytest.raises(ValueError):
        kgram_js(s, t, 0)
