import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from wad import (DistanceOptions, Interval, dist, dist_to_empty, naive_dist, naive_thetas,
                 pair_stats, recover_length, theta_all)
from wad.metric import theta_from_stats

from conftest import enc, str_pairs, str_triples

HALF_PI = math.pi / 2
STUTTER_GOLDEN = 0.05338045092195452  # d_0.5((ab)^4, (ab)^20), reference oracle


def test_theta_from_stats_examples():
    stats = pair_stats(*enc("ab", "ba"))
    assert theta_from_stats(stats, 1) == 0.0
    assert theta_from_stats(stats, 2) == HALF_PI
    assert theta_from_stats(stats, 7) == 0.0


def test_dist_examples():
    assert dist("ab", "ba", 0.5) == pytest.approx(math.pi / 8, abs=1e-15)
    assert dist("abcabc", "abcabc", 0.9) == 0.0
    v = dist("ab" * 4, "ab" * 20, DistanceOptions(0.5))
    assert v == pytest.approx(STUTTER_GOLDEN, abs=1e-15)
    assert v < math.pi / 8


def test_golden_agrees_with_oracle(ab):
    assert naive_dist(ab.encode("ab" * 4), ab.encode("ab" * 20), 0.5) == pytest.approx(
        STUTTER_GOLDEN, abs=1e-15)


def test_dist_to_empty_examples(ab):
    assert dist_to_empty(ab.encode(""), 0.5) == 0.0
    assert dist_to_empty(ab.encode("aba"), 0.5) == pytest.approx(HALF_PI * 0.875, abs=1e-15)
    assert dist_to_empty(3, 1.0) == pytest.approx(3 * HALF_PI, abs=1e-15)


def test_recover_length_examples():
    assert recover_length(0.0, 0.5) == 0
    assert recover_length(HALF_PI * 0.875, 0.5) == 3
    assert recover_length(3 * HALF_PI, 1.0) == 3
    with pytest.raises(ValueError):
        recover_length(HALF_PI * 1.5, 0.5)


@given(st.integers(0, 40), st.sampled_from([0.2, 0.5, 0.8, 1.0, 1.3]))
def test_recover_length_inverts_dist_to_empty(n, rho):
    d = dist_to_empty(n, rho)
    try:
        assert recover_length(d, rho) == n
    except ValueError as exc:
        # refusing is only allowed once the next term is below double resolution
        assert "resolvable" in str(exc)
        assert HALF_PI * rho ** (n + 1) < 1e-12


def test_theta_all_examples():
    assert theta_all("ab", "ba").tolist() == [0.0, HALF_PI]
    assert not np.any(theta_all("abba", "abba"))
    S, T = enc("abab", "abba")
    assert theta_all(S, T) == pytest.approx(naive_thetas(S, T), abs=1e-15)


def test_empty_operands(ab):
    assert dist(ab.encode(""), ab.encode(""), 0.5) == 0.0
    assert dist(ab.encode("aba"), ab.encode(""), 0.5) == pytest.approx(dist_to_empty(3, 0.5))


def test_options_validation():
    with pytest.raises(ValueError):
        DistanceOptions(0.0)
    with pytest.raises(ValueError):
        DistanceOptions(1.0, max_n=5)
    with pytest.raises(ValueError):
        DistanceOptions(0.5, max_n=0)
    with pytest.raises(ValueError):
        DistanceOptions(0.5, tail_policy="guess")


def test_truncated_interval_contains_full_distance():
    full = dist("abab", "baba", 0.5)
    iv = dist("abab", "baba", DistanceOptions(0.5, 2, "bounded-interval"))
    assert isinstance(iv, Interval)
    assert full in iv
    assert iv.width == pytest.approx(HALF_PI * 0.5 ** 3 / 0.5)
    assert dist("abab", "baba", DistanceOptions(0.5, 2)) == iv.lo


@given(str_pairs(max_len=20), st.sampled_from([0.3, 0.6, 0.9, 1.0, 1.5]))
def test_matches_oracle(pair, rho):
    S, T = pair
    assert dist(S, T, rho) == pytest.approx(naive_dist(S, T, rho), abs=1e-9)


@given(str_triples(), st.sampled_from([0.4, 1.0, 2.0]))
def test_metric_axioms(triple, rho):
    S, T, U = triple
    d_st, d_tu, d_su = dist(S, T, rho), dist(T, U, rho), dist(S, U, rho)
    assert d_st == dist(T, S, rho)
    assert (d_st == 0) == (S == T)
    assert d_su <= d_st + d_tu + 1e-9


@given(str_pairs(max_len=15, max_size=4), st.randoms())
def test_isometries(pair, rnd):
    S, T = pair
    perm = list(range(S.alphabet.size))
    rnd.shuffle(perm)
    d = dist(S, T, 0.7)
    assert dist(S.permuted(perm), T.permuted(perm), 0.7) == d
    assert dist(S.reversed(), T.reversed(), 0.7) == d


@given(str_pairs(max_len=15), st.sampled_from([0.3, 0.7]))
def test_bounded_by_uniform_bound(pair, rho):
    assert dist(*pair, rho) <= HALF_PI * rho / (1 - rho) + 1e-12
