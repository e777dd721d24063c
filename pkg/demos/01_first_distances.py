"""
First distances
===============

The weighted angle distance compares two strings scale by scale: at each
n it takes the angle between their n-gram count vectors, then sums the
angles with weights rho**n.
"""

import math

import numpy as np

from wad import Alphabet, dist, ngram_counts, theta_all

# ab and ba contain the same letters but no common bigram
print("theta_n(ab, ba) =", theta_all("ab", "ba"))
print("d_0.5(ab, ba)   =", dist("ab", "ba", 0.5), "  pi/8 =", math.pi / 8)

# Count vectors are plain dicts keyed by rank tuples
alph = Alphabet.from_text("ab")
print(ngram_counts(alph.encode("abab"), 2))

# rho sets how much the long scales matter
for rho in (0.2, 0.5, 0.8, 1.0):
    print(f"rho={rho}:  d(abab, abba) = {dist('abab', 'abba', rho):.6f}")

# The per-scale angles for a longer pair
th = theta_all("the cat sat on the mat", "the mat sat on the cat")
print("first eight scales:", np.round(th[:8], 4))
