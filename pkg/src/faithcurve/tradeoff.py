"""Faithfulness-abstractiveness control curve and effective faithfulness.

All values are fractions in [0, 1]; conversion to percent happens at the
I/O boundary.
"""

from __future__ import annotations

import bisect
import csv
import statistics
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .annotations import SystemScore
from .errors import DegenerateVariance, DuplicateCoverage, IoFailure, TooFewPoints


@dataclass(frozen=True)
class ControlPoint:
    model_id: str
    coverage: float
    faithfulness: float

    def __post_init__(self):
        for name in ("coverage", "faithfulness"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{self.model_id}: {name} {v} outside [0, 1]")


@dataclass(frozen=True)
class TradeoffCurve:
    """Piecewise-linear through the control points, clamped outside them."""

    points: tuple[ControlPoint, ...]

    def __post_init__(self):
        if len(self.points) < 2:
            raise TooFewPoints(f"need at least 2 control points, got {len(self.points)}")
        covs = [p.coverage for p in self.points]
        if any(b <= a for a, b in zip(covs, covs[1:])):
            raise DuplicateCoverage("control coverages must be strictly increasing")

    @property
    def coverages(self) -> list[float]:
        return [p.coverage for p in self.points]

    def __call__(self, coverage: float) -> float:
        return control_at(self, coverage)


@dataclass(frozen=True)
class EffectiveFaithfulness:
    system_id: str
    system_coverage: float
    system_faithfulness: float
    control_faithfulness: float
    delta: float
    above_curve: bool


def build_curve(points: Iterable[ControlPoint]) -> TradeoffCurve:
    pts = sorted(points, key=lambda p: p.coverage)
    if len(pts) < 2:
        raise TooFewPoints(f"need at least 2 control points, got {len(pts)}")
    for a, b in zip(pts, pts[1:]):
        if a.coverage == b.coverage:
            raise DuplicateCoverage(f"{a.model_id} and {b.model_id} share coverage {a.coverage}")
    return TradeoffCurve(tuple(pts))


def control_at(curve: TradeoffCurve, coverage: float) -> float:
    pts = curve.points
    if coverage <= pts[0].coverage:
        return pts[0].faithfulness
    if coverage >= pts[-1].coverage:
        return pts[-1].faithfulness
    i = bisect.bisect_right(curve.coverages, coverage)
    lo, hi = pts[i - 1], pts[i]
    if coverage == lo.coverage:
        return lo.faithfulness
    t = (coverage - lo.coverage) / (hi.coverage - lo.coverage)
    return lo.faithfulness + t * (hi.faithfulness - lo.faithfulness)


def effective_faithfulness(curve: TradeoffCurve, system: SystemScore) -> EffectiveFaithfulness:
    control = control_at(curve, system.mean_coverage)
    delta = system.mean_faithfulness - control
    return EffectiveFaithfulness(
        system.system_id,
        system.mean_coverage,
        system.mean_faithfulness,
        control,
        delta,
        delta > 0,
    )


def correlate(pairs: Sequence[tuple[float, float]]) -> float:
    """Sample Pearson correlation between coverage and a metric score."""
    if len(pairs) < 2:
        raise DegenerateVariance("need at least two pairs")
    xs = [float(x) for x, _ in pairs]
    ys = [float(y) for _, y in pairs]
    if len(set(xs)) == 1 or len(set(ys)) == 1:
        raise DegenerateVariance("one coordinate has zero variance")
    r = statistics.correlation(xs, ys)
    return max(-1.0, min(1.0, r))


REPORT_COLUMNS = ("kind", "id", "coverage", "faithfulness", "control", "delta", "above")


def _fmt(v: Optional[float], scale: float) -> str:
    return "" if v is None else f"{v * scale:.2f}"


def sample_curve(curve: TradeoffCurve, n: int = 50) -> list[tuple[float, float]]:
    """Polyline samples spanning the control range, nodes included."""
    lo, hi = curve.points[0].coverage, curve.points[-1].coverage
    xs = {lo + (hi - lo) * k / (n - 1) for k in range(n)} | set(curve.coverages)
    return [(x, control_at(curve, x)) for x in sorted(xs)]


def curve_report(
    curve: TradeoffCurve,
    systems: Sequence[EffectiveFaithfulness],
    out,
    *,
    units: str = "percent",
    image=None,
    samples: int = 50,
) -> None:
    """Write curve nodes, a sampled polyline, and system points as TSV.

    With ``image`` set, also render the same data to a vector file (format
    taken from its suffix, e.g. ``.svg``); requires matplotlib.
    """
    scale = 100.0 if units == "percent" else 1.0
    rows = []
    for p in curve.points:
        rows.append(("node", p.model_id, _fmt(p.coverage, scale), _fmt(p.faithfulness, scale),
                     _fmt(p.faithfulness, scale), _fmt(0.0, scale), ""))
    for x, y in sample_curve(curve, samples):
        rows.append(("curve", "", _fmt(x, scale), "", _fmt(y, scale), "", ""))
    for s in systems:
        rows.append(("system", s.system_id, _fmt(s.system_coverage, scale),
                     _fmt(s.system_faithfulness, scale), _fmt(s.control_faithfulness, scale),
                     _fmt(s.delta, scale), "above" if s.above_curve else "below"))
    try:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh, delimiter="\t", lineterminator="\n")
            writer.writerow(REPORT_COLUMNS)
            writer.writerows(rows)
    except OSError as exc:
        raise IoFailure(f"cannot write {out}: {exc.strerror or exc}") from exc
    if image is not None:
        _plot(curve, systems, image, scale, samples)


def _plot(curve, systems, path, scale, samples):
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(5, 4))
    line = sample_curve(curve, samples)
    ax.plot([x * scale for x, _ in line], [y * scale for _, y in line], color="tab:blue", lw=1)
    ax.scatter([p.coverage * scale for p in curve.points],
               [p.faithfulness * scale for p in curve.points], color="tab:blue", zorder=3)
    for p in curve.points:
        ax.annotate(p.model_id, (p.coverage * scale, p.faithfulness * scale),
                    textcoords="offset points", xytext=(4, -10), fontsize=8)
    for s in systems:
        color = "tab:green" if s.above_curve else "tab:red"
        ax.scatter([s.system_coverage * scale], [s.system_faithfulness * scale], color=color, zorder=4)
        ax.annotate(s.system_id, (s.system_coverage * scale, s.system_faithfulness * scale),
                    textcoords="offset points", xytext=(4, 4), fontsize=8)
    unit = " (%)" if scale == 100.0 else ""
    ax.set_xlabel("coverage" + unit)
    ax.set_ylabel("faithfulness" + unit)
    fig.tight_layout()
    try:
        fig.savefig(path)
    except OSError as exc:
        raise IoFailure(f"cannot write {path}: {exc.strerror or exc}") from exc
    finally:
        plt.close(fig)

