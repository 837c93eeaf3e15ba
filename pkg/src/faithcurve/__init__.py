"""Effective faithfulness of abstractive summarizers.

Extractiveness metrics, extractiveness-quartile corpus splits, control
trade-off curves, and candidate selectors.
"""

from .annotations import AnnotatedOutput, SystemScore, binary_label, example_score, system_score
from .corpus import Example, QuartileSplit, QuartileThresholds, load_corpus, percentile, quartile_stats, split_quartiles
from .selection import (
    Candidate,
    CandidateSet,
    SelectionResult,
    SelectorConfig,
    cross_validated_select,
    oracle_bf,
    oracle_bfe,
    oracle_qfe,
    select,
    tune_threshold_fbeta,
    tune_threshold_roc,
)
from .text_metrics import (
    ExtractivenessMetrics,
    Fragment,
    FragmentDecomposition,
    TokenSequence,
    extractiveness,
    greedy_fragments,
    novelty_spans,
    tokenize,
)
from .tradeoff import (
    ControlPoint,
    EffectiveFaithfulness,
    TradeoffCurve,
    build_curve,
    control_at,
    correlate,
    curve_report,
    effective_faithfulness,
)

__version__ = "0.1.0"
