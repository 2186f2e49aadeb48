"""Height-bounded certification sweep with resumable JSONL output.

Rows are independent (one per admissible base point and family), so the
sweep is an order-preserving map over the enumeration: worker count never
changes row content, and an existing output file is extended rather than
recomputed.
"""

from __future__ import annotations

import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterator

from .verdict import certify

SCHEMA = "arborist-v1"


@dataclass(frozen=True)
class SearchConfig:
    height: int
    out_path: str | Path
    families: tuple[int, ...] = (1, 2)
    depth: int = 12
    workers: int = 1

    def __post_init__(self) -> None:
        if self.height < 1:
            raise ValueError("height must be positive")
        if self.depth < 1:
            raise ValueError("depth must be positive")
        if self.workers < 1:
            raise ValueError("worker count must be positive")
        if not self.families or any(f not in (1, 2) for f in self.families):
            raise ValueError("families must be a nonempty subset of {1, 2}")


@dataclass
class SearchSummary:
    rows_written: int = 0
    rows_skipped: int = 0
    status_counts: dict[str, int] = field(default_factory=dict)
    condition_counts: dict[str, int] = field(default_factory=dict)

    def record(self, row: dict) -> None:
        self.rows_written += 1
        verdict = row["verdict"]
        status = verdict["status"]
        self.status_counts[status] = self.status_counts.get(status, 0) + 1
        if verdict["condition"]:
            tag = verdict["condition"]
            self.condition_counts[tag] = self.condition_counts.get(tag, 0) + 1


def enumerate_rationals(height: int) -> Iterator[Fraction]:
    """All reduced r/s with 1 <= |r| <= height, 1 <= s <= height.

    Deterministic order: s ascending, then r ascending.  Degenerate base
    points are emitted; filtering is the consumer's concern.
    """
    if height < 1:
        raise ValueError("height must be positive")
    for s in range(1, height + 1):
        for r in range(-height, height + 1):
            if r != 0 and math.gcd(abs(r), s) == 1:
                yield Fraction(r, s)


def _degenerate(a: Fraction, family: int) -> bool:
    if family == 1:
        return a in (0, -1)
    return a in (0, Fraction(1, 2))


def certify_row(task: tuple[int, int, int, int]) -> dict:
    """Compute one self-contained result row; picklable for worker pools."""
    r, s, family, depth = task
    a = Fraction(r, s)
    started = time.perf_counter()
    verdict = certify(a, family, depth=depth)
    elapsed_ms = (time.perf_counter() - started) * 1000.0
    return {
        "a": str(a),
        "family": family,
        "r": r,
        "s": s,
        "verdict": verdict.to_json_dict(),
        "timing_ms": round(elapsed_ms, 3),
    }


def load_rows(path: str | Path) -> list[dict]:
    """Read a JSONL results file, validating the schema header."""
    rows = []
    with open(path, "r", encoding="utf-8") as fh:
        header = fh.readline()
        if not header:
            raise ValueError(f"{path}: empty results file")
        head = json.loads(header)
        if head.get("schema") != SCHEMA:
            raise ValueError(f"{path}: unexpected schema {head.get('schema')!r}")
        for line in fh:
            line = line.strip()
            if line:
                rows.append(json.loads(line))
    return rows


def search(cfg: SearchConfig) -> SearchSummary:
    """Run the sweep, appending to (and resuming from) cfg.out_path."""
    out = Path(cfg.out_path)
    summary = SearchSummary()
    done: set[tuple[str, int]] = set()
    if out.exists() and out.stat().st_size > 0:
        for row in load_rows(out):
            done.add((row["a"], row["family"]))
        mode = "a"
    else:
        mode = "w"

    tasks = []
    for a in enumerate_rationals(cfg.height):
        for fam in cfg.families:
            if _degenerate(a, fam):
                continue
            if (str(a), fam) in done:
                summary.rows_skipped += 1
                continue
            tasks.append((a.numerator, a.denominator, fam, cfg.depth))

    with open(out, mode, encoding="utf-8", newline="\n") as fh:
        if mode == "w":
            fh.write(json.dumps({"schema": SCHEMA}) + "\n")
        if cfg.workers == 1:
            results = map(certify_row, tasks)
        else:
            pool = ProcessPoolExecutor(max_workers=cfg.workers)
            results = pool.map(certify_row, tasks, chunksize=16)
        try:
            for row in results:
                fh.write(json.dumps(row, sort_keys=True) + "\n")
                summary.record(row)
        finally:
            if cfg.workers > 1:
                pool.shutdown()
    return summary


def tally(rows: list[dict]) -> dict[tuple[str, str], int]:
    """Per (status, condition) row counts, for reporting."""
    counts: dict[tuple[str, str], int] = {}
    for row in rows:
        verdict = row["verdict"]
        key = (verdict["status"], verdict["condition"] or "-")
        counts[key] = counts.get(key, 0) + 1
    return counts
