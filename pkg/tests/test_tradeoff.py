import csv
import math

import pytest
from hypothesis import assume, given, strategies as st

from faithcurve.annotations import SystemScore
from faithcurve.errors import DegenerateVariance, DuplicateCoverage, IoFailure, TooFewPoints
from faithcurve.tradeoff import (
    ControlPoint,
    build_curve,
    control_at,
    correlate,
    curve_report,
    effective_faithfulness,
)
from tables import GIGAWORD_QUARTILES, GIGAWORD_SYSTEMS


def pts(rows):
    return [ControlPoint(m, c / 100, f / 100) for m, c, f in rows]


@pytest.fixture
def gigaword():
    return build_curve(pts(GIGAWORD_QUARTILES))


def system(name, cov, faith):
    return SystemScore(name, faith / 100, cov / 100)


def test_build_curve_sorts_and_validates():
    curve = build_curve(reversed(pts(GIGAWORD_QUARTILES)))
    assert [p.model_id for p in curve.points] == ["Q1", "Q2", "Q3", "Q4"]
    with pytest.raises(TooFewPoints):
        build_curve(pts(GIGAWORD_QUARTILES[:1]))
    with pytest.raises(DuplicateCoverage):
        build_curve([ControlPoint("a", 0.5, 0.6), ControlPoint("b", 0.5, 0.7)])


def test_control_at(gigaword):
    assert control_at(gigaword, 60.57 / 100) == 79.50 / 100
    # 86.67 + (76.12 - 73.64) / (86.94 - 73.64) * (89.17 - 86.67)
    expected = 86.67 + (76.12 - 73.64) / (86.94 - 73.64) * (89.17 - 86.67)
    assert control_at(gigaword, 0.7612) * 100 == pytest.approx(expected, abs=1e-9)
    assert round(expected, 2) == 87.14
    assert control_at(gigaword, 0.40) == 71.83 / 100
    assert control_at(gigaword, 0.99) == 89.17 / 100


def test_effective_faithfulness_signs(gigaword):
    base = effective_faithfulness(gigaword, system("Baseline", *GIGAWORD_SYSTEMS["Baseline"]))
    assert base.delta * 100 == pytest.approx(-3.81, abs=0.01)
    assert not base.above_curve
    roc = effective_faithfulness(gigaword, system("Selector-ROC", *GIGAWORD_SYSTEMS["Selector-ROC"]))
    # control on the Q2-Q3 segment
    assert roc.control_faithfulness * 100 == pytest.approx(81.70, abs=0.01)
    assert roc.delta * 100 == pytest.approx(2.47, abs=0.01)
    assert roc.above_curve
    node = effective_faithfulness(gigaword, system("Q3", 73.64, 86.67))
    assert node.delta == 0 and not node.above_curve


def test_correlate():
    assert correlate([(0, 1), (1, 3), (2, 5)]) == pytest.approx(1.0)
    assert correlate([(0, 1), (1, -1), (2, -3)]) == pytest.approx(-1.0)
    pairs = [(c, f) for _, c, f in GIGAWORD_QUARTILES] + [GIGAWORD_SYSTEMS["Baseline"]]
    assert correlate(pairs) > 0
    with pytest.raises(DegenerateVariance):
        correlate([(1, 2)])
    with pytest.raises(DegenerateVariance):
        correlate([(1, 2), (1, 3)])


unit = st.floats(0, 1, allow_nan=False)


@st.composite
def curves(draw):
    covs = sorted(draw(st.sets(st.integers(0, 1000), min_size=2, max_size=8)))
    faiths = draw(st.lists(st.integers(0, 800), min_size=len(covs), max_size=len(covs)))
    return build_curve([ControlPoint(f"c{i}", c / 1000, f / 1000) for i, (c, f) in enumerate(zip(covs, faiths))])


@given(curves(), unit)
def test_interpolation_properties(curve, x):
    for p in curve.points:
        assert control_at(curve, p.coverage) == p.faithfulness
        assert effective_faithfulness(curve, SystemScore(p.model_id, p.faithfulness, p.coverage)).delta == 0
    y = control_at(curve, x)
    covs = curve.coverages
    if covs[0] <= x <= covs[-1]:
        i = max(k for k in range(len(covs)) if covs[k] <= x)
        j = min(i + 1, len(covs) - 1)
        lo, hi = sorted((curve.points[i].faithfulness, curve.points[j].faithfulness))
        assert lo - 1e-12 <= y <= hi + 1e-12
    elif x < covs[0]:
        assert y == curve.points[0].faithfulness
    else:
        assert y == curve.points[-1].faithfulness


@given(curves(), unit, unit, st.integers(0, 150).map(lambda k: k / 1000))
def test_shift_equivariance(curve, x, f, shift):
    shifted = build_curve([ControlPoint(p.model_id, p.coverage, p.faithfulness + shift) for p in curve.points])
    assert control_at(shifted, x) == pytest.approx(control_at(curve, x) + shift, abs=1e-12)
    s = SystemScore("s", f, x)
    d0 = effective_faithfulness(curve, s).delta
    d1 = effective_faithfulness(shifted, s).delta
    assert d1 == pytest.approx(d0 - shift, abs=1e-12)


@given(st.lists(st.tuples(unit, unit), min_size=3, max_size=20),
       st.floats(0.1, 10), st.floats(-5, 5), st.floats(0.1, 10), st.floats(-5, 5))
def test_correlate_affine(pairs, a, b, c, d):
    xs = [x for x, _ in pairs]
    ys = [y for _, y in pairs]
    assume(max(xs) - min(xs) > 1e-3 and max(ys) - min(ys) > 1e-3)
    r = correlate(pairs)
    assert -1 <= r <= 1
    assert correlate([(a * x + b, c * y + d) for x, y in pairs]) == pytest.approx(r, abs=1e-6)
    assert correlate([(-x, y) for x, y in pairs]) == pytest.approx(-r, abs=1e-9)


def read_tsv(path):
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh, delimiter="\t"))


def test_curve_report(tmp_path, gigaword):
    effs = [effective_faithfulness(gigaword, system(n, *v)) for n, v in GIGAWORD_SYSTEMS.items()]
    out = tmp_path / "r.tsv"
    curve_report(gigaword, effs, out, image=tmp_path / "r.svg")
    rows = read_tsv(out)
    nodes = [r for r in rows if r["kind"] == "node"]
    assert [(r["id"], r["coverage"], r["faithfulness"]) for r in nodes] == [
        (m, f"{c:.2f}", f"{f:.2f}") for m, c, f in GIGAWORD_QUARTILES
    ]
    sys_rows = {r["id"]: r for r in rows if r["kind"] == "system"}
    for e in effs:
        assert sys_rows[e.system_id]["above"] == ("above" if e.above_curve else "below")
    assert sys_rows["Baseline"]["above"] == "below"
    assert sys_rows["Selector-ROC"]["above"] == "above"
    curve_rows = [r for r in rows if r["kind"] == "curve"]
    xs = [float(r["coverage"]) for r in curve_rows]
    assert xs == sorted(xs) and len(curve_rows) >= 50
    assert (tmp_path / "r.svg").read_text().lstrip().startswith("<?xml")


def test_curve_report_no_systems_and_bad_path(tmp_path, gigaword):
    out = tmp_path / "nodes.tsv"
    curve_report(gigaword, [], out)
    assert {r["kind"] for r in read_tsv(out)} == {"node", "curve"}
    with pytest.raises(IoFailure):
        curve_report(gigaword, [], tmp_path / "missing" / "x.tsv")


def test_fraction_units(tmp_path, gigaword):
    out = tmp_path / "f.tsv"
    curve_report(gigaword, [], out, units="fraction")
    assert read_tsv(out)[0]["coverage"] == "0.50"
    assert math.isclose(float(read_tsv(out)[0]["coverage"]), 0.5)
