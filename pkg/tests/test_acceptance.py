"""Acceptance gate: one test per criterion, one PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py -v`` (the summary lines are
printed at the end of the module) or directly with ``python tests/test_acceptance.py``.
"""

import math
import random
import statistics
import time
from contextlib import contextmanager

import numpy as np
import pytest

from wad import Alphabet, DistanceOptions, Str, dist, pair_stats, thetas_from_stats, weighted_sum
from wad.baselines import levenshtein
from wad.bounds import (EditBoundInputs, StutterBoundInputs, insertion_bound, min_separation,
                        stutter_bound, substitution_bound, uniform_bound)
from wad.clustering import (EDIT_FAMILY, RHO_SWEEP, ari, distance_matrix, evaluate, nmi,
                            weighted_angle_matrices)
from wad.completion import (approximate_measure_by_string, extended_dist, from_periodic,
                            recover_theta)
from wad.dataset_io import StutterSynthConfig, synth_stutter
from wad.oracle import naive_dist, naive_products, naive_theta_n

import partition_oracle as oracle

HALF_PI = math.pi / 2
TOL = 1e-9
# d_0.5((ab)^4, (ab)^20) from the reference oracle, fixed before trusting the suffix path
STUTTER_GOLDEN = 0.05338045092195452

VERDICTS: dict[int, tuple[bool, str, str]] = {}


@contextmanager
def criterion(number: int, title: str):
    detail = {"text": ""}
    try:
        yield detail
    except BaseException:
        VERDICTS[number] = (False, title, detail["text"])
        raise
    VERDICTS[number] = (True, title, detail["text"])


@pytest.fixture(scope="module", autouse=True)
def report(request):
    yield
    tr = request.config.pluginmanager.get_plugin("terminalreporter")
    write = tr.write_line if tr else print
    write("")
    write("acceptance criteria")
    for n in sorted(VERDICTS):
        ok, title, text = VERDICTS[n]
        write(f"  [{'PASS' if ok else 'FAIL'}] {n:>2}. {title}" + (f" ({text})" if text else ""))


def random_str(rng: random.Random, alphabet: Alphabet, max_len: int, min_len: int = 0) -> Str:
    n = rng.randint(min_len, max_len)
    return Str(tuple(rng.randrange(alphabet.size) for _ in range(n)), alphabet)


def test_c01_oracle_equivalence():
    with criterion(1, "suffix engine equals reference oracle") as note:
        t0 = time.perf_counter()
        rng = random.Random(101)
        rhos = (0.3, 0.6, 0.9, 1.0)
        worst, pairs = 0.0, 0
        for k in (1, 2, 4, 20):
            alph = Alphabet.letters(k)
            for _ in range(1000):
                S, T = random_str(rng, alph, 300), random_str(rng, alph, 300)
                a_s, a_t, b = naive_products(S, T)
                stats = pair_stats(S, T)
                assert stats.a_s.tolist() == a_s and stats.a_t.tolist() == a_t
                assert stats.b.tolist() == b
                fast = thetas_from_stats(stats)
                for rho in rhos:
                    slow = naive_dist(S, T, rho) if pairs % 50 == 0 else math.fsum(
                        rho ** n * th for n, th in enumerate(_thetas(a_s, a_t, b), start=1))
                    worst = max(worst, abs(weighted_sum(fast, rho) - slow))
                pairs += 1
        elapsed = time.perf_counter() - t0
        note["text"] = f"{pairs} pairs, max |diff| {worst:.1e}, {elapsed:.0f}s"
        assert worst <= TOL
        assert elapsed <= 120


def _thetas(a_s, a_t, b):
    from wad.strings import angle_from_products
    return [angle_from_products(z, x, y) for x, y, z in zip(a_s, a_t, b)]


def test_c02_paper_example():
    with criterion(2, "d(ab, ba) = rho^2 * pi/2 over the sweep") as note:
        worst = max(abs(dist("ab", "ba", rho) - rho ** 2 * HALF_PI) for rho in RHO_SWEEP)
        note["text"] = f"max |diff| {worst:.1e}"
        assert worst <= 1e-12


def test_c03_metric_axioms():
    with criterion(3, "metric axioms on 10,000 triples") as note:
        rng = random.Random(303)
        violations = 0
        for i in range(10_000):
            alph = Alphabet.letters(rng.randint(1, 4))
            S, T, U = (random_str(rng, alph, 14) for _ in range(3))
            if i % 4 == 0:
                U = S  # exercise identity on equal operands
            rho = rng.choice((0.3, 0.6, 0.9, 1.0, 1.5))
            st, ts = dist(S, T, rho), dist(T, S, rho)
            tu, su = dist(T, U, rho), dist(S, U, rho)
            violations += abs(st - ts) > TOL
            violations += (su <= TOL) != (S == U)
            violations += su > st + tu + TOL
        note["text"] = f"{violations} violations"
        assert violations == 0


def test_c04_bound_fuzzing():
    with criterion(4, "stability, uniform and separation bounds over 10,000 cases each") as note:
        rng = random.Random(404)
        counts = dict.fromkeys(("insertion", "substitution", "stutter", "uniform", "separation"), 0)
        alph = Alphabet.letters(3)

        def word(max_len, k=3):
            return Str(tuple(rng.randrange(k) for _ in range(rng.randint(0, max_len))), alph)

        for _ in range(10_000):
            rho = rng.uniform(0.05, 0.95)
            P, Q = word(12), word(12)
            if len(P) + len(Q) == 0:
                Q = word(12) + Str((0,), alph)
            a, b = rng.sample(range(3), 2)
            A, Bs = Str((a,), alph), Str((b,), alph)
            inp = EditBoundInputs(len(P), len(Q), rho)
            counts["insertion"] += dist(P + A + Q, P + Q, rho) > insertion_bound(inp) + TOL
            counts["substitution"] += dist(P + A + Q, P + Bs + Q, rho) > substitution_bound(inp) + TOL

            P1, Q2, P2 = word(6, 2), word(4, 2), word(6, 2)
            if len(P1) + len(Q2) + len(P2) == 0:
                P2 = Str((1,), alph)
            ell = rng.randint(1, 8)
            sinp = StutterBoundInputs(len(P1), len(Q2), len(P2), ell, rho)
            counts["stutter"] += (dist(P1 + Q2 + P2, P1 + Q2 * ell + P2, rho)
                                  > stutter_bound(sinp) + TOL)

            S, T = word(15), word(15)
            counts["uniform"] += dist(S, T, rho) > uniform_bound(rho) + TOL

            # separation: random T half the time, a one-symbol edit of S otherwise
            sep_rho = rng.choice((rho, 1.0, 1.0 + rho))
            if rng.random() < 0.5 and len(S):
                i = rng.randrange(len(S))
                T = rng.choice((S[:i] + S[i + 1:], S[:i] + A + S[i:], S + A))
            if T != S:
                counts["separation"] += dist(S, T, sep_rho) < min_separation(len(S), sep_rho) - TOL
        note["text"] = ", ".join(f"{k} {v}" for k, v in counts.items())
        assert not any(counts.values())


def test_c05_stutter_headline():
    with criterion(5, "stutter headline: d((ab)^4, (ab)^20) < pi/8, levenshtein 32") as note:
        alph = Alphabet.from_text("ab")
        S, T = alph.encode("ab" * 4), alph.encode("ab" * 20)
        slow = naive_dist(S, T, 0.5)
        assert abs(slow - STUTTER_GOLDEN) <= 1e-15
        fast = dist(S, T, 0.5)
        note["text"] = f"d = {fast:.12f} vs pi/8 = {math.pi / 8:.12f}"
        assert abs(fast - STUTTER_GOLDEN) <= 1e-12
        assert fast < dist("ab", "ba", 0.5)
        assert levenshtein(S, T) == 32


def test_c06_isometry_invariance():
    with criterion(6, "invariance under symbol permutation and reversal") as note:
        rng = random.Random(606)
        mismatches = 0
        for _ in range(1000):
            k = rng.randint(1, 6)
            alph = Alphabet.letters(k)
            S, T = random_str(rng, alph, 40), random_str(rng, alph, 40)
            perm = list(range(k))
            rng.shuffle(perm)
            rho = rng.choice(RHO_SWEEP)
            d = dist(S, T, rho)
            mismatches += dist(S.permuted(perm), T.permuted(perm), rho) != d
            mismatches += dist(S.reversed(), T.reversed(), rho) != d
        note["text"] = f"{mismatches} inexact"
        assert mismatches == 0


def test_c07_completion():
    with criterion(7, "periodic powers approach their measure; density construction") as note:
        alph = Alphabet.from_text("ab")
        mu = from_periodic(alph.encode("ab"), 8)
        hit = None
        k = 1
        while k <= 512:
            if extended_dist(alph.encode("ab") * k, mu, 0.5).hi < 0.02:
                hit = k
                break
            k *= 2
        assert hit is not None
        target = from_periodic(alph.encode("aab"), 8)
        S = approximate_measure_by_string(target, 0.05, 0.5)
        bound = extended_dist(S, target, 0.5).hi
        note["text"] = f"(ab)^{hit} below 0.02; |S| = {len(S)} with bound {bound:.4f}"
        assert bound < 0.05


def test_c08_theta_recovery():
    with criterion(8, "theta_n recovered from distances alone") as note:
        rng = random.Random(808)
        worst = 0.0
        for _ in range(200):
            alph = Alphabet.letters(rng.randint(1, 3))
            S, T = random_str(rng, alph, 10), random_str(rng, alph, 10)
            n = rng.randint(1, 2)
            rho = rng.choice((0.3, 0.5, 0.7))
            got = recover_theta(lambda x, y: dist(x, y, rho), S, T, n, rho)
            worst = max(worst, abs(got - naive_theta_n(S, T, n)))
        note["text"] = f"max |diff| {worst:.1e}"
        assert worst <= 1e-6


def test_c09_linear_scaling():
    with criterion(9, "doubling the length at most 2.6x the time") as note:
        t_start = time.perf_counter()
        rng = np.random.default_rng(909)
        alph = Alphabet.letters(4)
        dist("ab", "ba", 0.5)  # compile outside the timed region

        def median_time(n):
            S = Str(tuple(rng.integers(0, 4, n).tolist()), alph)
            T = Str(tuple(rng.integers(0, 4, n).tolist()), alph)
            times = []
            for _ in range(5):
                t0 = time.perf_counter()
                dist(S, T, 0.5)
                times.append(time.perf_counter() - t0)
            return statistics.median(times)

        small, large = median_time(100_000), median_time(200_000)
        ratio = large / small
        note["text"] = f"{small:.3f}s -> {large:.3f}s, ratio {ratio:.2f}"
        assert ratio <= 2.6
        assert time.perf_counter() - t_start <= 60


def test_c10_clustering_pipeline():
    with criterion(10, "synthetic stutter: weighted angle beats the edit family on ARI") as note:
        t0 = time.perf_counter()
        data = synth_stutter(StutterSynthConfig(("ab", "aab", "abb"), (4, 20), 0.02, 60, seed=7))
        labels = data.labels
        wa = {rho: evaluate(D, labels, seed=7).ari
              for rho, D in weighted_angle_matrices(data.sequences).items()}
        edit = {name: evaluate(distance_matrix(data.sequences, name), labels, seed=7).ari
                for name in EDIT_FAMILY}
        best_rho = max(wa, key=wa.get)
        best_edit = max(edit, key=edit.get)
        elapsed = time.perf_counter() - t0
        note["text"] = (f"weighted angle {wa[best_rho]:.3f} at rho={best_rho}, "
                        f"{best_edit} {edit[best_edit]:.3f}, {elapsed:.0f}s")
        assert elapsed <= 600
        assert wa[best_rho] > edit[best_edit]


def test_c11_ari_nmi_correctness():
    with criterion(11, "ARI/NMI agree with a brute-force contingency oracle") as note:
        worst, checked = 0.0, 0
        for n in range(1, 9):
            parts = list(oracle.set_partitions(n))
            # all ordered pairs up to 5 points; past that every partition meets one
            # mixed reference, which keeps the sklearn calls within a minute
            others = parts if n <= 5 else [parts[len(parts) // 3]]
            for a in parts:
                noisy = tuple(-1 if v == 0 else v for v in a)
                for b in others:
                    for x in (a, noisy):
                        worst = max(worst, abs(ari(x, b) - oracle.ari(x, b)),
                                    abs(nmi(x, b) - oracle.nmi(x, b)))
                        checked += 1
        note["text"] = f"{checked} pairs, max |diff| {worst:.1e}"
        assert worst <= 1e-9


if __name__ == "__main__":
    import sys
    sys.exit(pytest.main([__file__, "-q"]))
