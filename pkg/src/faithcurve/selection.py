"""Per-example candidate selection: human-label oracles and threshold selectors.

Candidates within a set are kept in system order, most abstractive first;
that order is the final tie-breaker everywhere below.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field, replace
from enum import Enum
from fractions import Fraction
from typing import Callable, Iterable, Mapping, NamedTuple, Optional, Sequence

from .errors import (
    ConfigError,
    MissingLabel,
    MissingScore,
    NoPositives,
    SingleClass,
    TooFewExamples,
)

INF = float("inf")
MAX_BETA = 10.0


@dataclass(frozen=True)
class Candidate:
    example_id: str
    system_id: str
    summary: str
    coverage: float
    score: Optional[float] = None
    human_label: Optional[bool] = None
    # per-example human faithfulness (fraction of "faithful" judgments)
    faithfulness: Optional[float] = None


@dataclass(frozen=True)
class CandidateSet:
    example_id: str
    candidates: tuple[Candidate, ...]

    def __post_init__(self):
        if not self.candidates:
            raise ValueError(f"{self.example_id}: empty candidate set")
        systems = [c.system_id for c in self.candidates]
        if len(set(systems)) != len(systems):
            raise ValueError(f"{self.example_id}: repeated system in candidate set")
        if any(c.example_id != self.example_id for c in self.candidates):
            raise ValueError(f"{self.example_id}: candidate from another example")

    def __iter__(self):
        return iter(self.candidates)

    def by_system(self, system_id: str) -> Candidate:
        for c in self.candidates:
            if c.system_id == system_id:
                return c
        raise KeyError(f"{self.example_id}: no candidate from {system_id!r}")


class Mode(str, Enum):
    ROC = "roc"
    FBETA = "fbeta"


class RocCriterion(str, Enum):
    YOUDEN = "youden"
    CLOSEST = "closest"  # nearest the (FPR=0, TPR=1) corner


@dataclass(frozen=True)
class SelectorConfig:
    mode: Mode = Mode.ROC
    beta: Optional[float] = None
    folds: int = 10
    seed: int = 0
    roc_criterion: RocCriterion = RocCriterion.YOUDEN

    def __post_init__(self):
        object.__setattr__(self, "mode", Mode(self.mode))
        object.__setattr__(self, "roc_criterion", RocCriterion(self.roc_criterion))
        if self.mode is Mode.FBETA:
            if self.beta is None:
                raise ConfigError("F-beta mode needs beta")
            check_beta(self.beta)
        elif self.beta is not None:
            raise ConfigError("beta is only meaningful in F-beta mode")
        if self.folds < 2:
            raise ConfigError(f"folds must be >= 2, got {self.folds}")


@dataclass(frozen=True)
class SelectionResult:
    example_id: str
    candidate: Candidate
    threshold_used: float
    fallback: bool

    @property
    def chosen_system(self) -> str:
        return self.candidate.system_id

    @property
    def chosen_summary(self) -> str:
        return self.candidate.summary


class TunedThreshold(NamedTuple):
    threshold: float
    objective: float


# --------------------------------------------------------------------------
# oracles


def _label(c: Candidate, role: str) -> bool:
    if c.human_label is None:
        raise MissingLabel(f"{role} candidate {c.system_id}/{c.example_id} has no human label")
    return c.human_label


def oracle_bf(baseline: Candidate, more_extractive: Candidate) -> Candidate:
    """Baseline if faithful, else the next more extractive system's output."""
    return baseline if _label(baseline, "baseline") else more_extractive


def oracle_bfe(baseline: Candidate, more_abstractive: Candidate, more_extractive: Candidate) -> Candidate:
    if not _label(baseline, "baseline"):
        return more_extractive
    return more_abstractive if _label(more_abstractive, "more-abstractive") else baseline


def oracle_qfe(cset: CandidateSet) -> Candidate:
    """Most faithful candidate; ties go to lower coverage, then system order."""
    best = None
    best_key = None
    for pos, c in enumerate(cset.candidates):
        if c.faithfulness is None:
            raise MissingScore(f"{c.system_id}/{c.example_id} has no faithfulness score")
        key = (-c.faithfulness, c.coverage, pos)
        if best_key is None or key < best_key:
            best, best_key = c, key
    return best


def neighbor_systems(system_coverage: Mapping[str, float], baseline: str) -> tuple[str, str]:
    """(more abstractive, more extractive) neighbours of ``baseline`` by mean coverage.

    The more abstractive neighbour has the largest mean coverage strictly
    below the baseline's; the more extractive one the smallest strictly above.
    """
    base = system_coverage[baseline]
    below = [(c, s) for s, c in system_coverage.items() if s != baseline and c < base]
    above = [(c, s) for s, c in system_coverage.items() if s != baseline and c > base]
    if not below or not above:
        raise ConfigError(f"baseline {baseline!r} needs systems on both sides of its coverage {base:.4f}")
    return max(below)[1], min(above)[1]


# --------------------------------------------------------------------------
# threshold tuning


def check_beta(beta: float) -> float:
    if not 0 < beta <= MAX_BETA:
        raise ConfigError(f"beta must be in (0, {MAX_BETA}], got {beta}")
    return beta


def cut_points(scores: Iterable[float]) -> list[float]:
    """Descending cut-points: +inf, midpoints between distinct scores, -inf."""
    distinct = sorted(set(scores), reverse=True)
    cuts = [INF]
    for hi, lo in zip(distinct, distinct[1:]):
        mid = lo / 2 + hi / 2
        if not lo < mid <= hi:
            mid = hi
        cuts.append(mid)
    cuts.append(-INF)
    return cuts


def _sweep(labeled: Sequence[tuple[float, bool]]):
    """Yield (cut, tp, fp) for every cut-point, from the strictest down.

    "Predicted faithful" means score >= cut.
    """
    ordered = sorted(labeled, key=lambda p: -p[0])
    cuts = cut_points(s for s, _ in ordered)
    tp = fp = 0
    idx = 0
    n = len(ordered)
    for cut in cuts:
        while idx < n and ordered[idx][0] >= cut:
            if ordered[idx][1]:
                tp += 1
            else:
                fp += 1
            idx += 1
        yield cut, tp, fp


def _argmax_high(items):
    """First (i.e. highest-threshold) cut achieving the maximal objective."""
    best_cut, best_val = None, None
    for cut, val in items:
        if best_val is None or val > best_val:
            best_cut, best_val = cut, val
    return best_cut, best_val


def tune_threshold_roc(labeled: Sequence[tuple[float, bool]],
                       criterion: RocCriterion = RocCriterion.YOUDEN) -> TunedThreshold:
    """Pick the ROC operating point; Youden's J = TPR - FPR by default."""
    pos = sum(1 for _, y in labeled if y)
    neg = len(labeled) - pos
    if pos == 0 or neg == 0:
        raise SingleClass("ROC threshold needs both faithful and unfaithful labels")
    criterion = RocCriterion(criterion)

    def objective(tp, fp):
        tpr, fpr = Fraction(tp, pos), Fraction(fp, neg)
        if criterion is RocCriterion.YOUDEN:
            return tpr - fpr
        return -(fpr * fpr + (1 - tpr) ** 2)

    cut, val = _argmax_high((c, objective(tp, fp)) for c, tp, fp in _sweep(labeled))
    return TunedThreshold(cut, float(val))


def fbeta_counts(tp: int, fp: int, fn: int, beta: float) -> Fraction:
    """Exact F-beta from confusion counts; 0 when nothing true is predicted."""
    return _fbeta(tp, fp, fn, Fraction(beta) ** 2)


def _fbeta(tp, fp, fn, b2):
    if tp == 0:
        return Fraction(0)
    return (1 + b2) * tp / ((1 + b2) * tp + b2 * fn + fp)


def tune_threshold_fbeta(labeled: Sequence[tuple[float, bool]], beta: float) -> TunedThreshold:
    check_beta(beta)
    pos = sum(1 for _, y in labeled if y)
    if pos == 0:
        raise NoPositives("F-beta threshold needs at least one faithful label")
    b2 = Fraction(beta) ** 2
    cut, val = _argmax_high((c, _fbeta(tp, fp, pos - tp, b2)) for c, tp, fp in _sweep(labeled))
    return TunedThreshold(cut, float(val))


# --------------------------------------------------------------------------
# selection


def select(cset: CandidateSet, threshold: float) -> SelectionResult:
    """Lowest-coverage candidate scoring >= threshold; else highest coverage, flagged."""
    for c in cset.candidates:
        if c.score is None:
            raise MissingScore(f"{c.system_id}/{c.example_id} has no score")
    passing = [c for c in cset.candidates if c.score >= threshold]
    if passing:
        return SelectionResult(cset.example_id, min(passing, key=lambda c: c.coverage), threshold, False)
    # max() keeps the first of equal coverages; reverse so the later system wins
    chosen = max(reversed(cset.candidates), key=lambda c: c.coverage)
    return SelectionResult(cset.example_id, chosen, threshold, True)


@dataclass
class CrossValidation:
    results: list[SelectionResult]
    fold_thresholds: list[TunedThreshold]
    fold_of: dict[str, int] = field(default_factory=dict)


def assign_folds(n: int, folds: int, seed: int) -> list[list[int]]:
    """Shuffle indices with ``seed`` and cut into ``folds`` contiguous near-equal chunks."""
    order = list(range(n))
    random.Random(seed).shuffle(order)
    base, extra = divmod(n, folds)
    out, start = [], 0
    for k in range(folds):
        size = base + (1 if k < extra else 0)
        out.append(sorted(order[start:start + size]))
        start += size
    return out


def training_pairs(sets: Iterable[CandidateSet]) -> list[tuple[float, bool]]:
    """(score, label) for every labeled candidate; all must carry a score."""
    pairs = []
    for cset in sets:
        for c in cset.candidates:
            if c.human_label is None:
                continue
            if c.score is None:
                raise MissingScore(f"{c.system_id}/{c.example_id} has no score")
            pairs.append((c.score, c.human_label))
    return pairs


def tune(pairs: Sequence[tuple[float, bool]], config: SelectorConfig) -> TunedThreshold:
    if config.mode is Mode.ROC:
        return tune_threshold_roc(pairs, config.roc_criterion)
    return tune_threshold_fbeta(pairs, config.beta)


def cross_validated_select(sets: Sequence[CandidateSet], config: SelectorConfig) -> CrossValidation:
    """Tune on k-1 folds, select on the held-out one; results in input order."""
    if len(sets) < config.folds:
        raise TooFewExamples(f"{len(sets)} examples cannot fill {config.folds} folds")
    folds = assign_folds(len(sets), config.folds, config.seed)
    results: list[Optional[SelectionResult]] = [None] * len(sets)
    thresholds = []
    fold_of = {}
    for k, test_idx in enumerate(folds):
        held = set(test_idx)
        train = [s for i, s in enumerate(sets) if i not in held]
        tuned = tune(training_pairs(train), config)
        thresholds.append(tuned)
        for i in test_idx:
            results[i] = select(sets[i], tuned.threshold)
            fold_of[sets[i].example_id] = k
    return CrossValidation(results, thresholds, fold_of)


def coverage_demo_scorer(candidate: Candidate) -> float:
    """Deliberately naive stand-in scorer: the candidate's own coverage."""
    return candidate.coverage


def with_scores(sets: Iterable[CandidateSet], scorer: Callable[[Candidate], float]) -> list[CandidateSet]:
    return [
        CandidateSet(s.example_id, tuple(replace(c, score=scorer(c)) for c in s.candidates))
        for s in sets
    ]
