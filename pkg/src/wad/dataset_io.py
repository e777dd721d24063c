"""Labeled sequence datasets: TSV ingest, synthetic stutter data, results CSV."""

from __future__ import annotations

import csv
import os
import random
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Iterable

from .strings import Alphabet, Str

COLUMNS = ("label", "sample_id", "sequence")
RESULT_COLUMNS = ("dataset", "distance", "params", "eps", "min_samples", "silhouette",
                  "n_clusters", "noise_frac", "ari", "nmi", "wall_time_s")


class DatasetError(ValueError):
    pass


@dataclass(frozen=True)
class Record:
    label: str
    sample_id: str
    sequence: Str


@dataclass(frozen=True)
class LabeledDataset:
    records: tuple[Record, ...]
    alphabet: Alphabet

    def __len__(self):
        return len(self.records)

    @property
    def labels(self) -> list[str]:
        return [r.label for r in self.records]

    @property
    def ids(self) -> list[str]:
        return [r.sample_id for r in self.records]

    @property
    def sequences(self) -> list[Str]:
        return [r.sequence for r in self.records]

    @classmethod
    def from_rows(cls, rows: Iterable[tuple[str, str, str]]) -> "LabeledDataset":
        rows = list(rows)
        alphabet = Alphabet.from_text(*(seq for _, _, seq in rows))
        return cls(tuple(Record(lab, sid, alphabet.encode(seq)) for lab, sid, seq in rows),
                   alphabet)


def load_tsv(path) -> LabeledDataset:
    """Read a ``label<TAB>sample_id<TAB>sequence`` file; column order follows the header."""
    rows, seen = [], {}
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh, delimiter="\t", quoting=csv.QUOTE_NONE)
        header = next(reader, None)
        if header is None:
            raise DatasetError(f"{path}: empty file, expected header {' '.join(COLUMNS)}")
        header = [h.strip() for h in header]
        missing = [c for c in COLUMNS if c not in header]
        if missing:
            raise DatasetError(f"{path}: line 1: missing column(s) {', '.join(missing)}")
        idx = [header.index(c) for c in COLUMNS]
        for line_no, row in enumerate(reader, start=2):
            if not row or all(not cell.strip() for cell in row):
                continue
            if len(row) < len(header):
                raise DatasetError(f"{path}: line {line_no}: expected {len(header)} columns, "
                                   f"got {len(row)}")
            label, sid, seq = (row[i].strip() for i in idx)
            if not seq:
                raise DatasetError(f"{path}: line {line_no}: empty sequence for {sid!r}")
            if sid in seen:
                raise DatasetError(f"{path}: line {line_no}: duplicate sample_id {sid!r} "
                                   f"(first seen on line {seen[sid]})")
            seen[sid] = line_no
            rows.append((label, sid, seq))
    return LabeledDataset.from_rows(rows)


def write_tsv(dataset: LabeledDataset, path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("\t".join(COLUMNS) + "\n")
        for r in dataset.records:
            fh.write(f"{r.label}\t{r.sample_id}\t{r.sequence.text}\n")


@dataclass(frozen=True)
class StutterSynthConfig:
    motifs: tuple[str, ...] = ("ab", "aab", "abb")
    repeat_range: tuple[int, int] = (4, 20)
    mutation_rate: float = 0.02
    samples_per_class: int = 60
    seed: int = 7

    def __post_init__(self):
        object.__setattr__(self, "motifs", tuple(self.motifs))
        object.__setattr__(self, "repeat_range", tuple(self.repeat_range))
        if not self.motifs or any(not m for m in self.motifs):
            raise ValueError("motifs must be nonempty words")
        if len(set(self.motifs)) != len(self.motifs):
            raise ValueError("motifs must be distinct")
        r_min, r_max = self.repeat_range
        if not 1 <= r_min <= r_max:
            raise ValueError(f"need 1 <= r_min <= r_max, got {self.repeat_range}")
        if not 0 <= self.mutation_rate < 1:
            raise ValueError("mutation_rate must lie in [0, 1)")
        if self.samples_per_class < 1:
            raise ValueError("samples_per_class must be positive")


def synth_stutter(cfg: StutterSynthConfig) -> LabeledDataset:
    """Tandem repeats ``motif**r`` with point substitutions, one class per motif.

    A substituted position takes a different symbol drawn uniformly from the
    union of the motif alphabets, so ``mutation_rate`` is the per-symbol
    probability of an actual change.
    """
    rng = random.Random(cfg.seed)
    symbols = sorted(set("".join(cfg.motifs)))
    r_min, r_max = cfg.repeat_range
    rows = []
    for motif in cfg.motifs:
        for i in range(cfg.samples_per_class):
            seq = list(motif * rng.randint(r_min, r_max))
            if len(symbols) > 1:
                for j, c in enumerate(seq):
                    if rng.random() < cfg.mutation_rate:
                        seq[j] = rng.choice([s for s in symbols if s != c])
            rows.append((motif, f"{motif}_{i:03d}", "".join(seq)))
    return LabeledDataset.from_rows(rows)


def _cell(v) -> str:
    if isinstance(v, float):
        return f"{v:.6f}"
    return str(v)


def write_results_csv(rows: Iterable[dict], path) -> None:
    """Append result rows, writing the header only when the file is new or empty.

    Each row is a mapping with ``dataset``, ``distance`` and ``params``
    plus either the TrialRecord fields or a ``record`` entry holding one.
    """
    path = Path(path)
    fresh = not path.exists() or os.path.getsize(path) == 0
    with open(path, "a", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        if fresh:
            writer.writerow(RESULT_COLUMNS)
        for row in rows:
            row = dict(row)
            rec = row.pop("record", None)
            if rec is not None:
                row.update({f.name: getattr(rec, f.name) for f in fields(rec)})
            writer.writerow([_cell(row[c]) for c in RESULT_COLUMNS])
