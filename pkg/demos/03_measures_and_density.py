"""
Infinite strings through their statistics
=========================================

A periodic infinite word is summarized by its window frequencies up to a
depth N.  Distances to such sketches come as intervals because the scales
beyond N are unknown.
"""

from wad import Alphabet, approximate_measure_by_string, extended_dist, from_periodic

alph = Alphabet.from_text("ab")
mu = from_periodic(alph.encode("ab"), 8)

# Longer powers of ab close in on the periodic measure
for k in (1, 4, 16, 64):
    iv = extended_dist(alph.encode("ab") * k, mu, 0.5)
    print(f"(ab)^{k:<3} -> [{iv.lo:.4f}, {iv.hi:.4f}]")

# Any consistent sketch can be approximated by a finite string
target = from_periodic(alph.encode("aab"), 8)
S = approximate_measure_by_string(target, 0.05, 0.5)
print("found a string of length", len(S), "starting", S.text[:24] + "...")
print("verified distance below", extended_dist(S, target, 0.5).hi)
