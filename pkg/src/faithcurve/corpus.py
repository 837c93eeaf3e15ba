"""Corpus ingestion and extractiveness-quartile splitting."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Optional, Sequence, Union

from .errors import DuplicateId, EmptyInput, EmptySummary
from .jsonl import iter_records, require_str
from .text_metrics import ExtractivenessMetrics, tokenize


@dataclass(frozen=True)
class Example:
    id: str
    article: str
    summary: str


@dataclass(frozen=True)
class QuartileThresholds:
    a: float
    b: float
    c: float


@dataclass(frozen=True)
class QuartileSplit:
    """Example ids per quartile, each kept in input order."""

    q1: tuple[str, ...]
    q2: tuple[str, ...]
    q3: tuple[str, ...]
    q4: tuple[str, ...]
    thresholds: QuartileThresholds

    @property
    def quartiles(self) -> tuple[tuple[str, ...], ...]:
        return (self.q1, self.q2, self.q3, self.q4)

    def quartile_of(self, coverage: float) -> int:
        """1-based quartile index an extractiveness value falls into."""
        return assign_quartile(coverage, self.thresholds)


@dataclass(frozen=True)
class QuartileRow:
    count: int
    mean_article_len: Optional[float]
    mean_summary_len: Optional[float]
    mean_coverage: Optional[float]


@dataclass(frozen=True)
class QuartileStats:
    rows: tuple[QuartileRow, QuartileRow, QuartileRow, QuartileRow]

    @property
    def counts(self) -> list[int]:
        return [r.count for r in self.rows]


def load_corpus(path) -> Iterator[Example]:
    """Stream examples from a JSONL file, validating as it goes.

    Only ids are retained between records (for the uniqueness check), so
    memory does not grow with article text.
    """
    seen: set[str] = set()
    for lineno, rec in iter_records(path):
        ex_id = require_str(rec, "id", lineno, path)
        article = require_str(rec, "article", lineno, path)
        summary = require_str(rec, "summary", lineno, path)
        if ex_id in seen:
            raise DuplicateId(ex_id, lineno)
        seen.add(ex_id)
        if not tokenize(summary).tokens:
            raise EmptySummary(f"{path}:line {lineno}: summary of {ex_id!r} has no tokens")
        yield Example(ex_id, article, summary)


def percentile(values: Sequence[float], p: float) -> float:
    """Nearest-rank percentile: sorted value at index ceil(p/100 * n) - 1."""
    if not values:
        raise EmptyInput("percentile of empty sequence")
    if not 0 < p < 100:
        raise ValueError(f"percent must be in (0, 100), got {p}")
    ordered = sorted(values)
    rank = math.ceil(Fraction(p) * len(ordered) / 100)
    return ordered[max(rank, 1) - 1]


def assign_quartile(e: float, t: QuartileThresholds) -> int:
    if e <= t.a:
        return 1
    if e <= t.b:
        return 2
    if e <= t.c:
        return 3
    return 4


Keyed = Union[Example, str]


def _key(item: Keyed) -> str:
    return item.id if isinstance(item, Example) else item


def _coverage(m: Union[ExtractivenessMetrics, float]) -> float:
    return m.coverage if isinstance(m, ExtractivenessMetrics) else float(m)


def split_quartiles(corpus: Iterable[tuple[Keyed, Union[ExtractivenessMetrics, float]]]) -> QuartileSplit:
    """Partition by reference coverage at the 25th/50th/75th percentiles.

    ``corpus`` pairs each example (or just its id) with its metrics or a bare
    coverage value.
    """
    keyed = [(_key(item), _coverage(m)) for item, m in corpus]
    if not keyed:
        raise EmptyInput("cannot split an empty corpus")
    covs = [c for _, c in keyed]
    t = QuartileThresholds(percentile(covs, 25), percentile(covs, 50), percentile(covs, 75))
    buckets: list[list[str]] = [[], [], [], []]
    for ex_id, cov in keyed:
        buckets[assign_quartile(cov, t) - 1].append(ex_id)
    return QuartileSplit(*(tuple(b) for b in buckets), thresholds=t)


def _mean(xs: list[float]) -> Optional[float]:
    # fsum: exact, so means do not depend on corpus order
    return math.fsum(xs) / len(xs) if xs else None


def quartile_stats(split: QuartileSplit, corpus: Iterable[tuple[Keyed, ExtractivenessMetrics]]) -> QuartileStats:
    """Per-quartile counts and mean token lengths; empty quartiles get ``None`` means."""
    where = {}
    for qi, ids in enumerate(split.quartiles):
        for ex_id in ids:
            where[ex_id] = qi
    acc = [([], [], []) for _ in range(4)]
    for item, m in corpus:
        arts, sums, covs = acc[where[_key(item)]]
        arts.append(m.article_len)
        sums.append(m.summary_len)
        covs.append(m.coverage)
    rows = tuple(
        QuartileRow(len(sums), _mean(arts), _mean(sums), _mean(covs)) for arts, sums, covs in acc
    )
    return QuartileStats(rows)
