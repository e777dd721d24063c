"""Command-line entry point ``wad``.

Exit codes: 0 success, 2 bad usage or input, 3 infeasible request,
1 internal failure (including a violated bound).
"""

from __future__ import annotations

import argparse
import csv
import os
import sys
import time
from pathlib import Path

from . import bounds as B
from .clustering import (DISTANCES, RHO_SWEEP, distance_matrix, evaluate, format_params,
                         parse_distance, weighted_angle_matrices)
from .completion import (Infeasible, approximate_measure_by_string, dumps_sketch,
                         extended_dist, from_periodic, read_sketch)
from .dataset_io import (DatasetError, StutterSynthConfig, load_tsv, synth_stutter,
                         write_results_csv, write_tsv)
from .metric import DistanceOptions, Interval, dist
from .strings import Alphabet, as_strs


class UsageError(Exception):
    pass


def _default_threads() -> int:
    try:
        return max(1, int(os.environ.get("WAD_THREADS", "1")))
    except ValueError:
        return 1


def _fmt(x: float) -> str:
    return f"{x:.12f}"


def _distance(spec: str) -> tuple[str, dict]:
    try:
        return parse_distance(spec)
    except KeyError:
        raise UsageError(f"unknown distance {spec.partition(':')[0]!r}; "
                         f"choose from: {', '.join(DISTANCES)}") from None


def cmd_dist(args) -> int:
    if args.input_file:
        lines = Path(args.input_file).read_text(encoding="utf-8").splitlines()
        if len(lines) < 2:
            raise UsageError("--input-file needs two lines")
        a, b = lines[0], lines[1]
    elif args.strings and len(args.strings) == 2:
        a, b = args.strings
    else:
        raise UsageError("dist needs two strings or --input-file")
    policy = "bounded-interval" if args.max_n else "exact"
    d = dist(a, b, DistanceOptions(args.rho, args.max_n, policy))
    print(f"{_fmt(d.lo)}..{_fmt(d.hi)}" if isinstance(d, Interval) else _fmt(d))
    return 0


def cmd_matrix(args) -> int:
    name, params = _distance(args.distance)
    data = load_tsv(args.input)
    D = distance_matrix(data.sequences, name, params, threads=args.threads)
    with open(args.output, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["sample_id", *data.ids])
        for sid, row in zip(data.ids, D.values):
            w.writerow([sid, *(f"{v:.17g}" for v in row)])
    return 0


def cmd_cluster(args) -> int:
    name, params = _distance(args.distance)
    data = load_tsv(args.input)
    dataset = Path(args.input).stem
    results = Path(args.results)
    rows = []
    if args.sweep_rho:
        if name != "weighted_angle":
            raise UsageError("--sweep-rho applies to weighted_angle only")
        t0 = time.perf_counter()
        mats = weighted_angle_matrices(data.sequences, RHO_SWEEP,
                                       max_n=params.get("max_n", 60), threads=args.threads)
        share = (time.perf_counter() - t0) / len(mats)
        plot = []
        for rho, D in mats.items():
            rec = evaluate(D, data.labels, seed=args.seed)
            rec.wall_time_s += share
            rows.append({"dataset": dataset, "distance": name,
                         "params": format_params({"rho": rho}), "record": rec})
            plot.append((rho, rec))
        plot_path = results.parent / f"{dataset}__{name}__ari_nmi_vs_rho.csv"
        with open(plot_path, "w", encoding="utf-8", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["rho", "ari", "nmi", "silhouette", "eps", "min_samples", "n_clusters"])
            for rho, rec in plot:
                w.writerow([rho, f"{rec.ari:.6f}", f"{rec.nmi:.6f}", f"{rec.silhouette:.6f}",
                            f"{rec.eps:.6f}", rec.min_samples, rec.n_clusters])
        best_rho, best = max(plot, key=lambda p: p[1].ari)
        print(f"best rho={best_rho} ari={best.ari:.6f} nmi={best.nmi:.6f}")
    else:
        t0 = time.perf_counter()
        D = distance_matrix(data.sequences, name, params, threads=args.threads)
        elapsed = time.perf_counter() - t0
        rec = evaluate(D, data.labels, seed=args.seed)
        rec.wall_time_s += elapsed
        rows.append({"dataset": dataset, "distance": name,
                     "params": format_params(params), "record": rec})
        print(f"ari={rec.ari:.6f} nmi={rec.nmi:.6f} eps={rec.eps:.6f} "
              f"min_samples={rec.min_samples} silhouette={rec.silhouette:.6f}")
    write_results_csv(rows, results)
    return 0


def cmd_bounds(args) -> int:
    if not 0 < args.rho < 1:
        raise UsageError(f"rho must lie in (0, 1), got {args.rho}")
    if args.edit:
        if len(args.edit) not in (3, 4):
            raise UsageError("--edit takes P Q a [b]")
        P, Q, a, *b = args.edit
        alph = Alphabet.from_text(P, Q, a, *b)
        inp = B.EditBoundInputs(len(P), len(Q), args.rho)
        if b:
            kind, bound = "substitution", B.substitution_bound(inp)
            X, Y = P + a + Q, P + b[0] + Q
        else:
            kind, bound = "insertion", B.insertion_bound(inp)
            X, Y = P + a + Q, P + Q
    else:
        P1, Q, P2, ell = args.stutter
        try:
            ell = int(ell)
        except ValueError:
            raise UsageError(f"stutter repeat count must be an integer, got {ell!r}") from None
        alph = Alphabet.from_text(P1, Q, P2)
        inp = B.StutterBoundInputs(len(P1), len(Q), len(P2), ell, args.rho)
        kind, bound = "stutter", B.stutter_bound(inp)
        X, Y = P1 + Q + P2, P1 + Q * ell + P2
    actual = dist(*as_strs(X, Y, alphabet=alph), args.rho)
    slack = bound - actual
    print(f"{kind}: d({X!r}, {Y!r}) = {_fmt(actual)}")
    print(f"bound = {_fmt(bound)}")
    print(f"slack = {_fmt(slack)}")
    if slack < -1e-9:
        print("BOUND VIOLATED", file=sys.stderr)
        return 1
    return 0


def _point(token: str, alphabet: Alphabet | None):
    if Path(token).is_file():
        return read_sketch(token)
    return token if alphabet is None else alphabet.encode(token)


def cmd_measure(args) -> int:
    if args.action == "from-periodic":
        word = Alphabet.from_text(args.word).encode(args.word)
        text = dumps_sketch(from_periodic(word, args.depth))
        if args.output:
            Path(args.output).write_text(text, encoding="utf-8")
        else:
            sys.stdout.write(text)
        return 0
    if args.action == "approx":
        sketch = read_sketch(args.sketch)
        try:
            S = approximate_measure_by_string(sketch, args.eps, args.rho)
        except Infeasible as exc:
            print(f"infeasible: {exc}; best bound {exc.best:.12f}", file=sys.stderr)
            return 3
        print(S.text)
        print(f"bound {_fmt(extended_dist(S, sketch, args.rho).hi)}")
        return 0
    # dist: each operand is a sketch file or a literal string
    sketches = [read_sketch(t) for t in (args.x, args.y) if Path(t).is_file()]
    alph = sketches[0].alphabet if sketches else Alphabet.from_text(args.x, args.y)
    X, Y = _point(args.x, alph), _point(args.y, alph)
    iv = extended_dist(X, Y, args.rho)
    print(f"{_fmt(iv.lo)}..{_fmt(iv.hi)}")
    return 0


def cmd_synth(args) -> int:
    cfg = StutterSynthConfig(tuple(args.motifs.split(",")), tuple(args.repeats),
                             args.mutation, args.per_class, args.seed)
    write_tsv(synth_stutter(cfg), args.output)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="wad", description="rho-weighted angle distance toolkit")
    sub = p.add_subparsers(dest="command", required=True)
    threads = _default_threads()

    d = sub.add_parser("dist", help="distance between two strings")
    d.add_argument("--rho", type=float, required=True)
    d.add_argument("--max-n", type=int)
    d.add_argument("--input-file")
    d.add_argument("strings", nargs="*")
    d.set_defaults(func=cmd_dist)

    m = sub.add_parser("matrix", help="pairwise distance matrix of a TSV dataset")
    m.add_argument("--distance", required=True, help="NAME[:k=v,...]")
    m.add_argument("--input", required=True)
    m.add_argument("--output", required=True)
    m.add_argument("--threads", type=int, default=threads)
    m.set_defaults(func=cmd_matrix)

    c = sub.add_parser("cluster", help="tune DBSCAN and score against labels")
    c.add_argument("--distance", required=True)
    c.add_argument("--input", required=True)
    c.add_argument("--results", required=True)
    c.add_argument("--sweep-rho", action="store_true")
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--threads", type=int, default=threads)
    c.set_defaults(func=cmd_cluster)

    b = sub.add_parser("bounds", help="compare a distance with its stability bound")
    b.add_argument("--rho", type=float, required=True)
    g = b.add_mutually_exclusive_group(required=True)
    g.add_argument("--edit", nargs="+", metavar="S", help="P Q a [b]; use '' for empty")
    g.add_argument("--stutter", nargs=4, metavar=("P1", "Q", "P2", "L"))
    b.set_defaults(func=cmd_bounds)

    ms = sub.add_parser("measure", help="measure sketches and string approximation")
    msub = ms.add_subparsers(dest="action", required=True)
    ap = msub.add_parser("approx")
    ap.add_argument("--sketch", required=True)
    ap.add_argument("--eps", type=float, required=True)
    ap.add_argument("--rho", type=float, required=True)
    md = msub.add_parser("dist")
    md.add_argument("--rho", type=float, required=True)
    md.add_argument("x", help="sketch file or string")
    md.add_argument("y", help="sketch file or string")
    fp = msub.add_parser("from-periodic")
    fp.add_argument("word")
    fp.add_argument("--depth", type=int, required=True)
    fp.add_argument("--output")
    ms.set_defaults(func=cmd_measure)

    s = sub.add_parser("synth", help="write a synthetic stutter dataset")
    s.add_argument("--output", required=True)
    s.add_argument("--motifs", default="ab,aab,abb")
    s.add_argument("--repeats", type=int, nargs=2, default=(4, 20), metavar=("RMIN", "RMAX"))
    s.add_argument("--mutation", type=float, default=0.02)
    s.add_argument("--per-class", type=int, default=60)
    s.add_argument("--seed", type=int, default=7)
    s.set_defaults(func=cmd_synth)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except Infeasible as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return 3
    except (UsageError, DatasetError, ValueError, FileNotFoundError) as exc:
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001
        print(f"{parser.prog}: internal error: {exc!r}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
