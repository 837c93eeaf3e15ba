"""Human faithfulness judgments: per-example and per-system scores."""

from __future__ import annotations

from collections import OrderedDict
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence

from .errors import (
    DuplicateAnnotation,
    EmptyInput,
    MalformedRecord,
    MissingCoverage,
    MixedSystems,
    NoJudgments,
)
from .jsonl import iter_records, require_str

# "at least two out of three annotators"
MAJORITY = 2 / 3
_EPS = 1e-9


@dataclass(frozen=True)
class AnnotatedOutput:
    example_id: str
    system_id: str
    judgments: tuple[bool, ...]
    summary: Optional[str] = None


@dataclass(frozen=True)
class SystemScore:
    system_id: str
    mean_faithfulness: float
    mean_coverage: float
    n_examples: Optional[int] = None


def example_score(ann: AnnotatedOutput) -> float:
    """Fraction of annotators who judged the output faithful."""
    if not ann.judgments:
        raise NoJudgments(f"{ann.system_id}/{ann.example_id} has no judgments")
    return sum(1 for j in ann.judgments if j) / len(ann.judgments)


def binary_label(score: float) -> bool:
    return score >= MAJORITY - _EPS


def system_score(annotations: Sequence[AnnotatedOutput], coverage: Mapping[str, float]) -> SystemScore:
    if not annotations:
        raise EmptyInput("no annotations")
    systems = {a.system_id for a in annotations}
    if len(systems) > 1:
        raise MixedSystems(f"annotations span systems {sorted(systems)}")
    scores, covs = [], []
    for ann in annotations:
        if ann.example_id not in coverage:
            raise MissingCoverage(ann.example_id)
        scores.append(example_score(ann))
        covs.append(coverage[ann.example_id])
    n = len(scores)
    return SystemScore(annotations[0].system_id, sum(scores) / n, sum(covs) / n, n)


def group_by_system(annotations: Iterable[AnnotatedOutput]) -> "OrderedDict[str, list[AnnotatedOutput]]":
    """Group in first-seen system order; a repeated (system, example) pair is an error."""
    groups: OrderedDict[str, list[AnnotatedOutput]] = OrderedDict()
    seen = set()
    for ann in annotations:
        key = (ann.system_id, ann.example_id)
        if key in seen:
            raise DuplicateAnnotation(f"second record for system {key[0]!r}, example {key[1]!r}")
        seen.add(key)
        groups.setdefault(ann.system_id, []).append(ann)
    return groups


def load_annotations(path) -> list[AnnotatedOutput]:
    """Read ``{id, system, judgments, summary?}`` records."""
    out = []
    seen = set()
    for lineno, rec in iter_records(path):
        ex_id = require_str(rec, "id", lineno, path)
        system = require_str(rec, "system", lineno, path)
        judgments = rec.get("judgments")
        if not isinstance(judgments, list) or not all(isinstance(j, bool) for j in judgments):
            raise MalformedRecord(lineno, "'judgments' must be a list of booleans", path)
        if not judgments:
            raise NoJudgments(f"{path}:line {lineno}: empty judgments")
        summary = rec.get("summary")
        if summary is not None and not isinstance(summary, str):
            raise MalformedRecord(lineno, "'summary' must be a string", path)
        if (system, ex_id) in seen:
            raise DuplicateAnnotation(f"{path}:line {lineno}: second record for ({ex_id!r}, {system!r})")
        seen.add((system, ex_id))
        out.append(AnnotatedOutput(ex_id, system, tuple(judgments), summary))
    return out
