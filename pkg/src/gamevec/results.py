"""Experiment records and CSV emission.

The main CSV has one row per record; a companion ``*_summary.csv`` holds
mean and standard error of the mean per (game, method, k1, k2) cell (SEM is
blank for single-sample cells).  Floats are written with ``repr`` so the
files round-trip exactly.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np

RESULT_FIELDS = (
    "game", "method", "k1", "k2", "seed",
    "num_sequences", "nnz", "exploitability",
)


@dataclass(frozen=True)
class ExperimentRecord:
    """One grid cell: abstraction sizes plus lifted exploitability."""

    game: str
    method: str
    k1: int
    k2: int  # 0 when the game has a single clustering domain
    seed: int
    num_sequences: int
    nnz: int
    exploitability: float

    def row(self):
        return [
            self.game, self.method, str(self.k1), str(self.k2),
            str(self.seed), str(self.num_sequences), str(self.nnz),
            repr(self.exploitability),
        ]


def summary_path(path) -> Path:
    path = Path(path)
    return path.with_name(path.stem + "_summary" + path.suffix)


def summarize(records) -> list[list[str]]:
    """Mean +/- SEM rows per (game, method, k1, k2), sorted."""
    cells: dict[tuple, list[ExperimentRecord]] = {}
    for rec in records:
        cells.setdefault((rec.game, rec.method, rec.k1, rec.k2), []).append(rec)
    rows = []
    for (game, method, k1, k2), cell in sorted(cells.items()):
        eps = np.asarray([r.exploitability for r in cell])
        mean = float(eps.mean())
        sem = (
            repr(float(eps.std(ddof=1) / np.sqrt(len(eps))))
            if len(eps) > 1 else ""
        )
        rows.append([
            game, method, str(k1), str(k2), str(len(cell)),
            repr(mean), sem,
            repr(float(np.mean([r.num_sequences for r in cell]))),
            repr(float(np.mean([r.nnz for r in cell]))),
        ])
    return rows


def emit_results(records, path) -> tuple[Path, Path]:
    """Write the per-record CSV and its summary companion."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(RESULT_FIELDS)
        for rec in records:
            writer.writerow(rec.row())
    spath = summary_path(path)
    with open(spath, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow([
            "game", "method", "k1", "k2", "n",
            "mean_exploitability", "sem_exploitability",
            "mean_num_sequences", "mean_nnz",
        ])
        writer.writerows(summarize(records))
    return path, spath


def read_results(path) -> list[ExperimentRecord]:
    records = []
    with open(path, encoding="utf-8", newline="") as fh:
        for row in csv.DictReader(fh):
            records.append(ExperimentRecord(
                game=row["game"],
                method=row["method"],
                k1=int(row["k1"]),
                k2=int(row["k2"]),
                seed=int(row["seed"]),
                num_sequences=int(row["num_sequences"]),
                nnz=int(row["nnz"]),
                exploitability=float(row["exploitability"]),
            ))
    return records
