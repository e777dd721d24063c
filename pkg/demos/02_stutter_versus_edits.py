"""
Stutter versus edits
====================

Repeating a motif more or fewer times barely moves the weighted angle
distance, while the edit distance grows with every extra copy.
"""

from wad import dist
from wad.baselines import levenshtein
from wad.bounds import StutterBoundInputs, stutter_bound

short, long = "ab" * 4, "ab" * 20
print("d_0.5((ab)^4, (ab)^20) =", dist(short, long, 0.5))
print("d_0.5(ab, ba)          =", dist("ab", "ba", 0.5))
print("levenshtein            =", levenshtein(short, long))

# The distance is nearly flat in the number of copies
for ell in (4, 8, 16, 32, 64):
    print(f"ell={ell:>2}:  d = {dist(short, 'ab' * ell, 0.5):.6f}   edits = {levenshtein(short, 'ab' * ell)}")

# A guaranteed ceiling for inserting copies of Q between P1 and P2
P1, Q, P2 = "ab" * 6, "ab", "ba"
for ell in (2, 5, 9):
    actual = dist(P1 + Q + P2, P1 + Q * ell + P2, 0.5)
    bound = stutter_bound(StutterBoundInputs(len(P1), len(Q), len(P2), ell, 0.5))
    print(f"ell={ell}: distance {actual:.4f} <= bound {bound:.4f}")
