"""rho-weighted angle distance on strings: a multiscale n-gram metric.

``dist`` is computed in linear time from a generalized suffix array; the
rest of the package covers stability bounds, a measure-sketch completion,
comparison distances and a DBSCAN clustering protocol.
"""

from .strings import Alphabet, AlphabetMismatch, NGramVector, Str, angle, multiplicity, ngram_counts
from .metric import (DistanceOptions, Interval, dist, dist_to_empty, recover_length,
                     theta_all, thetas_from_stats, weighted_sum)
from .suffix import AggregatedStats, GeneralizedSuffixStructure, aggregate, build, pair_stats
from .oracle import naive_dist, naive_theta_n, naive_thetas
from .completion import (Infeasible, MeasureSketch, approximate_measure_by_string,
                         check_consistency, empirical, extended_dist, from_periodic,
                         recover_theta)
from .clustering import DistanceMatrix, TrialRecord, ari, dbscan, evaluate, nmi, tune

__all__ = [
    "Alphabet", "AlphabetMismatch", "NGramVector", "Str", "angle", "multiplicity",
    "ngram_counts", "DistanceOptions", "Interval", "dist", "dist_to_empty", "recover_length",
    "theta_all", "thetas_from_stats", "weighted_sum", "AggregatedStats",
    "GeneralizedSuffixStructure", "aggregate", "build", "pair_stats", "naive_dist",
    "naive_theta_n", "naive_thetas", "Infeasible", "MeasureSketch",
    "approximate_measure_by_string", "check_consistency", "empirical", "extended_dist",
    "from_periodic", "recover_theta", "DistanceMatrix", "TrialRecord", "ari", "dbscan",
    "evaluate", "nmi", "tune",
]
