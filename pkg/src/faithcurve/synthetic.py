"""Seeded synthetic candidate corpora for demos and tests.

Each example gets one candidate per control system. More extractive systems
are more often judged faithful, and the pluggable score separates the human
label up to Gaussian noise of a known width.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .annotations import binary_label
from .selection import Candidate, CandidateSet

# (system, mean coverage, probability a single annotator says "faithful")
DEFAULT_SYSTEMS = (
    ("Q1", 0.50, 0.62),
    ("Q2", 0.61, 0.75),
    ("Q3", 0.74, 0.85),
    ("Q4", 0.87, 0.92),
)


@dataclass(frozen=True)
class SyntheticSpec:
    n_examples: int = 200
    noise: float = 0.15
    coverage_jitter: float = 0.04
    annotators: int = 3
    seed: int = 13
    systems: tuple = DEFAULT_SYSTEMS


def candidate_sets(spec: SyntheticSpec = SyntheticSpec()) -> list[CandidateSet]:
    rng = random.Random(spec.seed)
    sets = []
    for i in range(spec.n_examples):
        ex_id = f"ex{i:04d}"
        cands = []
        for system, cov, p in spec.systems:
            c = min(1.0, max(0.0, cov + rng.uniform(-spec.coverage_jitter, spec.coverage_jitter)))
            votes = sum(rng.random() < p for _ in range(spec.annotators))
            faith = votes / spec.annotators
            label = binary_label(faith)
            score = (0.7 if label else 0.3) + rng.gauss(0.0, spec.noise)
            cands.append(Candidate(ex_id, system, f"{system} summary {i}", c, score, label, faith))
        sets.append(CandidateSet(ex_id, tuple(cands)))
    return sets
