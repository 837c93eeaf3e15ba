"""Command-line front end.

Data goes to the files named by ``--output``; human-readable tables go to
stdout; diagnostics go to stderr. Exit status is 0 on success, 1 on a data
or I/O error and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from collections import OrderedDict
from dataclasses import replace
from multiprocessing import Pool
from typing import Optional, Sequence

from . import annotations as ann_mod
from .corpus import Example, load_corpus, quartile_stats, split_quartiles
from .errors import (
    ConfigError,
    FaithcurveError,
    IoFailure,
    JoinError,
    MalformedRecord,
    MissingCoverage,
    MissingScore,
)
from .jsonl import (
    JsonlWriter,
    from_fraction,
    is_units_header,
    iter_records,
    require_number,
    require_str,
    resolve_units,
    to_fraction,
    write_text,
)
from .selection import (
    Candidate,
    CandidateSet,
    SelectorConfig,
    coverage_demo_scorer,
    cross_validated_select,
    neighbor_systems,
    oracle_bf,
    oracle_bfe,
    oracle_qfe,
)
from .text_metrics import extractiveness, tokenize
from .annotations import SystemScore
from .tradeoff import (
    ControlPoint,
    build_curve,
    correlate,
    curve_report,
    effective_faithfulness,
)

BATCH = 512


# --------------------------------------------------------------------------
# shared readers


def read_numeric(path, units_flag: Optional[str]):
    """Records plus resolved units; an optional first line ``{"units": ...}`` declares them."""
    records = list(iter_records(path))
    declared = None
    if records and is_units_header(records[0][1]):
        declared = records[0][1]["units"]
        records = records[1:]
    return records, resolve_units(declared, units_flag, path)


def read_control_points(path, units_flag):
    records, units = read_numeric(path, units_flag)
    points = []
    for lineno, rec in records:
        model = require_str(rec, "model", lineno, path)
        cov = to_fraction(require_number(rec, "coverage", lineno, path), units)
        faith = to_fraction(require_number(rec, "faithfulness", lineno, path), units)
        try:
            points.append(ControlPoint(model, cov, faith))
        except ValueError as exc:
            raise MalformedRecord(lineno, f"{exc} (check --units)", path) from None
    return points


def read_systems(path, units_flag):
    """System points and the units they were given in."""
    records, units = read_numeric(path, units_flag)
    systems = []
    for lineno, rec in records:
        sys_id = require_str(rec, "system", lineno, path)
        cov = to_fraction(require_number(rec, "coverage", lineno, path), units)
        faith = to_fraction(require_number(rec, "faithfulness", lineno, path), units)
        n = rec.get("n")
        systems.append(SystemScore(sys_id, faith, cov, n if isinstance(n, int) else None))
    return systems, units


def load_articles(corpus_path, wanted: set[str]) -> dict[str, tuple[str, ...]]:
    """Tokenized articles for the requested ids only."""
    out = {}
    for lineno, rec in iter_records(corpus_path):
        ex_id = rec.get("id")
        if ex_id in wanted:
            out[ex_id] = tokenize(require_str(rec, "article", lineno, corpus_path)).tokens
    return out


def resolve_coverages(rows, corpus_path, units, path):
    """Coverage per row from its ``coverage`` field, else from summary vs. corpus article.

    ``rows`` holds (lineno, record) pairs; returns a list of fractions.
    """
    need = {rec["id"] for _, rec in rows if "coverage" not in rec}
    articles = {}
    if need:
        if corpus_path is None:
            raise MissingCoverage(sorted(need)[0])
        articles = load_articles(corpus_path, need)
    covs = []
    for lineno, rec in rows:
        if "coverage" in rec:
            covs.append(to_fraction(require_number(rec, "coverage", lineno, path), units))
            continue
        if rec["id"] not in articles:
            raise MissingCoverage(rec["id"])
        summary = require_str(rec, "summary", lineno, path)
        covs.append(extractiveness(articles[rec["id"]], tokenize(summary)).coverage)
    return covs


def read_candidates(path, corpus_path, units_flag, scorer: str, systems=None):
    """Candidate records grouped per example, systems ordered by mean coverage."""
    records, units = read_numeric(path, units_flag)
    rows = []
    seen = set()
    for lineno, rec in records:
        ex_id = require_str(rec, "id", lineno, path)
        system = require_str(rec, "system", lineno, path)
        if systems and system not in systems:
            continue
        rec.setdefault("summary", "")
        if not isinstance(rec["summary"], str):
            raise MalformedRecord(lineno, "'summary' must be a string", path)
        if (ex_id, system) in seen:
            raise MalformedRecord(lineno, f"second candidate for ({ex_id!r}, {system!r})", path)
        seen.add((ex_id, system))
        if "score" in rec and rec["score"] is not None:
            require_number(rec, "score", lineno, path)
        rows.append((lineno, rec))
    covs = resolve_coverages(rows, corpus_path, units, path)
    cands = []
    for (lineno, rec), cov in zip(rows, covs):
        score = rec.get("score")
        cands.append(Candidate(rec["id"], rec["system"], rec["summary"], cov,
                               None if score is None else float(score)))
    if scorer == "coverage-demo":
        cands = [replace(c, score=coverage_demo_scorer(c)) for c in cands]
    return cands


def attach_labels(cands, annotations, require=True):
    by_key = {(a.example_id, a.system_id): ann_mod.example_score(a) for a in annotations}
    out, missing = [], []
    for c in cands:
        score = by_key.get((c.example_id, c.system_id))
        if score is None:
            missing.append((c.example_id, c.system_id))
            out.append(c)
            continue
        out.append(replace(c, faithfulness=score, human_label=ann_mod.binary_label(score)))
    if missing and require:
        raise JoinError(missing)
    return out


def group_sets(cands: Sequence[Candidate]) -> tuple[list[CandidateSet], dict[str, float]]:
    by_system: dict[str, list[float]] = OrderedDict()
    for c in cands:
        by_system.setdefault(c.system_id, []).append(c.coverage)
    mean_cov = {s: sum(v) / len(v) for s, v in by_system.items()}
    rank = {s: i for i, s in enumerate(sorted(mean_cov, key=lambda s: (mean_cov[s], s)))}
    grouped: dict[str, list[Candidate]] = OrderedDict()
    for c in cands:
        grouped.setdefault(c.example_id, []).append(c)
    sets = [CandidateSet(ex, tuple(sorted(cs, key=lambda c: rank[c.system_id])))
            for ex, cs in grouped.items()]
    return sets, mean_cov


def pct(v: Optional[float]) -> str:
    return "-" if v is None else f"{v * 100:.2f}"


def table(header: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    widths = [max(len(str(x)) for x in col) for col in zip(header, *rows)]
    lines = ["  ".join(str(x).rjust(w) if i else str(x).ljust(w) for i, (x, w) in enumerate(zip(r, widths)))
             for r in [header, *rows]]
    return "\n".join(lines)


def _measure_one(ex: Example):
    return ex.id, extractiveness(tokenize(ex.article), tokenize(ex.summary))


def measure_stream(examples, workers: int = 1):
    """Yield (id, metrics) in input order, holding at most one batch of examples."""
    if workers <= 1:
        for ex in examples:
            yield _measure_one(ex)
        return
    with Pool(workers) as pool:
        batch = []
        for ex in examples:
            batch.append(ex)
            if len(batch) >= BATCH * workers:
                yield from pool.map(_measure_one, batch, chunksize=BATCH // 4)
                batch = []
        if batch:
            yield from pool.map(_measure_one, batch, chunksize=max(1, len(batch) // workers))


# --------------------------------------------------------------------------
# commands


def cmd_metrics(args) -> None:
    units = resolve_units(None, args.units)
    with JsonlWriter(args.output) as out:
        for ex_id, m in measure_stream(load_corpus(args.input), args.workers):
            out.write({
                "id": ex_id,
                "coverage": from_fraction(m.coverage, units),
                "density": m.density,
                "summary_len": m.summary_len,
            })


def cmd_split(args) -> None:
    measured = list(measure_stream(load_corpus(args.input), args.workers))
    split = split_quartiles(measured)
    stats = quartile_stats(split, measured)
    quartile = {}
    for qi, ids in enumerate(split.quartiles, start=1):
        for ex_id in ids:
            quartile[ex_id] = qi
    prefix = args.output
    writers = [JsonlWriter(f"{prefix}.q{q}") for q in range(1, 5)]
    try:
        for _, rec in iter_records(args.input):
            writers[quartile[rec["id"]] - 1].write(rec)
    finally:
        for w in writers:
            w.close()
    t = split.thresholds
    write_text(f"{prefix}.thresholds.json", json.dumps({"a": t.a, "b": t.b, "c": t.c}) + "\n")
    stats_rec = [
        {"quartile": f"q{i}", "count": r.count, "mean_article_len": r.mean_article_len,
         "mean_summary_len": r.mean_summary_len, "mean_coverage": r.mean_coverage}
        for i, r in enumerate(stats.rows, start=1)
    ]
    write_text(f"{prefix}.stats.json", json.dumps(stats_rec, indent=1) + "\n")

    def num(v):
        return "-" if v is None else f"{v:.2f}"

    rows = [(f"Q{i}", str(r.count), num(r.mean_article_len), num(r.mean_summary_len), pct(r.mean_coverage))
            for i, r in enumerate(stats.rows, start=1)]
    print(f"thresholds: a={pct(t.a)} b={pct(t.b)} c={pct(t.c)}")
    print(table(("Quartile", "# Examples", "Article Length", "Summary Length", "Coverage"), rows))


def cmd_score(args) -> None:
    records, units = read_numeric(args.input, args.units)
    anns = []
    rows = []
    for lineno, rec in records:
        ex_id = require_str(rec, "id", lineno, args.input)
        system = require_str(rec, "system", lineno, args.input)
        judgments = rec.get("judgments")
        if not isinstance(judgments, list) or not judgments or not all(isinstance(j, bool) for j in judgments):
            raise MalformedRecord(lineno, "'judgments' must be a non-empty list of booleans", args.input)
        anns.append(ann_mod.AnnotatedOutput(ex_id, system, tuple(judgments), rec.get("summary")))
        rows.append((lineno, rec))
    groups = ann_mod.group_by_system(anns)
    covs = resolve_coverages(rows, args.corpus, units, args.input)
    cov_by_key = {(a.system_id, a.example_id): c for a, c in zip(anns, covs)}
    scores = []
    for system, group in groups.items():
        coverage = {a.example_id: cov_by_key[(system, a.example_id)] for a in group}
        scores.append(ann_mod.system_score(group, coverage))
    with JsonlWriter(args.output) as out:
        out.write({"units": units})
        for s in scores:
            out.write({"system": s.system_id, "coverage": from_fraction(s.mean_coverage, units),
                       "faithfulness": from_fraction(s.mean_faithfulness, units), "n": s.n_examples})
    print(table(("Model", "Coverage", "Faithfulness", "n"),
                [(s.system_id, pct(s.mean_coverage), pct(s.mean_faithfulness), str(s.n_examples))
                 for s in scores]))


def cmd_curve(args) -> None:
    curve = build_curve(read_control_points(args.input, args.units))
    curve_report(curve, [], args.output, image=args.image)
    print(table(("Control", "Coverage", "Faithfulness"),
                [(p.model_id, pct(p.coverage), pct(p.faithfulness)) for p in curve.points]))


def _eff_rows(args):
    curve = build_curve(read_control_points(args.control, args.units))
    systems, units = read_systems(args.input, args.units)
    return curve, [effective_faithfulness(curve, s) for s in systems], units


def _print_eff(effs):
    print(table(("System", "Coverage", "Faithfulness", "Control", "Delta", "Curve"),
                [(e.system_id, pct(e.system_coverage), pct(e.system_faithfulness),
                  pct(e.control_faithfulness), f"{e.delta * 100:+.2f}",
                  "above" if e.above_curve else "below") for e in effs]))


def cmd_eff_faith(args) -> None:
    curve, effs, units = _eff_rows(args)
    with JsonlWriter(args.output) as out:
        out.write({"units": units})
        for e in effs:
            out.write({
                "system": e.system_id,
                "coverage": from_fraction(e.system_coverage, units),
                "faithfulness": from_fraction(e.system_faithfulness, units),
                "control": from_fraction(e.control_faithfulness, units),
                "delta": from_fraction(e.delta, units),
                "above": e.above_curve,
            })
    curve_report(curve, effs, f"{args.output}.plot.tsv")
    _print_eff(effs)


def cmd_report(args) -> None:
    curve, effs, _ = _eff_rows(args)
    curve_report(curve, effs, args.output, image=args.image)
    _print_eff(effs)


def cmd_correlate(args) -> None:
    records, units = read_numeric(args.input, args.units)
    pairs = []
    for lineno, rec in records:
        cov = to_fraction(require_number(rec, "coverage", lineno, args.input), units)
        pairs.append((cov, require_number(rec, args.metric, lineno, args.input)))
    r = correlate(pairs)
    if args.output:
        write_text(args.output, json.dumps({"n": len(pairs), "metric": args.metric, "pearson": r}) + "\n")
    print(f"pearson r (coverage vs {args.metric}, n={len(pairs)}): {r:.4f}")


def _systems_arg(value):
    return [s for s in value.split(",") if s] if value else None


def cmd_select(args) -> None:
    config = SelectorConfig(args.mode, args.beta, args.folds, args.seed, args.roc_criterion)
    cands = read_candidates(args.input, args.corpus, args.units, args.scorer, _systems_arg(args.systems))
    cands = attach_labels(cands, ann_mod.load_annotations(args.annotations))
    missing = [c for c in cands if c.score is None]
    if missing:
        raise MissingScore(f"{missing[0].system_id}/{missing[0].example_id} has no score "
                           "(add 'score' fields or use --scorer coverage-demo)")
    sets, _ = group_sets(cands)
    cv = cross_validated_select(sets, config)
    units = resolve_units(None, args.units)
    with JsonlWriter(args.output) as out:
        for r in cv.results:
            out.write({"id": r.example_id, "system": r.chosen_system, "fallback": r.fallback,
                       "threshold": r.threshold_used, "fold": cv.fold_of[r.example_id],
                       "coverage": from_fraction(r.candidate.coverage, units)})
    n = len(cv.results)
    mean_cov = sum(r.candidate.coverage for r in cv.results) / n
    faiths = [r.candidate.faithfulness for r in cv.results if r.candidate.faithfulness is not None]
    mean_faith = sum(faiths) / len(faiths) if faiths else None
    fallbacks = sum(r.fallback for r in cv.results)
    label = "Selector-ROC" if config.mode.value == "roc" else f"Selector-F_beta (beta={config.beta:g})"
    print(table(("Model", "Coverage", "Faithfulness", "Fallbacks", "n"),
                [(label, pct(mean_cov), pct(mean_faith), str(fallbacks), str(n))]))
    print("fold thresholds: " + ", ".join(f"{t.threshold:.4g}" for t in cv.fold_thresholds))


def cmd_oracle(args) -> None:
    cands = read_candidates(args.input, args.corpus, args.units, "file")
    cands = attach_labels(cands, ann_mod.load_annotations(args.annotations))
    sets, mean_cov = group_sets(cands)
    if args.baseline not in mean_cov:
        raise ConfigError(f"baseline system {args.baseline!r} not among candidates")
    quartiles = _systems_arg(args.quartiles) or [s for s in mean_cov if s != args.baseline]
    abstr, extr = neighbor_systems({s: mean_cov[s] for s in [args.baseline, *quartiles]}, args.baseline)
    abstr = args.more_abstractive or abstr
    extr = args.more_extractive or extr
    picks: dict[str, list[Candidate]] = OrderedDict((k, []) for k in ("baseline", "bf", "bfe", "qfe"))
    with JsonlWriter(args.output) as out:
        for cset in sets:
            base = cset.by_system(args.baseline)
            quart = CandidateSet(cset.example_id, tuple(c for c in cset if c.system_id in quartiles))
            chosen = {
                "baseline": base,
                "bf": oracle_bf(base, cset.by_system(extr)),
                "bfe": oracle_bfe(base, cset.by_system(abstr), cset.by_system(extr)),
                "qfe": oracle_qfe(quart),
            }
            for name, c in chosen.items():
                picks[name].append(c)
                out.write({"oracle": name, "id": cset.example_id, "system": c.system_id})
    rows = []
    for name, cs in picks.items():
        rows.append((name, pct(sum(c.coverage for c in cs) / len(cs)),
                     pct(sum(c.faithfulness for c in cs) / len(cs))))
    print(f"more abstractive: {abstr}  more extractive: {extr}")
    print(table(("Oracle", "Cov.", "Faithfulness"), rows))


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="faithcurve", description="Effective-faithfulness evaluation for abstractive summarizers.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        p = sub.add_parser(name, help=help_)
        p.set_defaults(func=func)
        p.add_argument("--units", choices=("percent", "fraction"), default=None,
                       help="numeric units of inputs/outputs (default: file header, else fraction)")
        return p

    p = add("metrics", cmd_metrics, "per-example coverage and density")
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True)
    p.add_argument("--workers", type=int, default=1)

    p = add("split", cmd_split, "split a corpus into extractiveness quartiles")
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True, help="output prefix")
    p.add_argument("--workers", type=int, default=1)

    p = add("score", cmd_score, "system-level faithfulness from human judgments")
    p.add_argument("--input", required=True, help="annotation records")
    p.add_argument("--corpus", help="articles, for records without a coverage field")
    p.add_argument("--output", required=True)

    p = add("curve", cmd_curve, "control curve nodes and sampled polyline")
    p.add_argument("--input", required=True, help="control points")
    p.add_argument("--output", required=True)
    p.add_argument("--image", help="optional vector image (e.g. curve.svg)")

    for name, func, help_ in (("eff-faith", cmd_eff_faith, "effective faithfulness of systems"),
                              ("report", cmd_report, "trade-off plot data and optional image")):
        p = add(name, func, help_)
        p.add_argument("--control", required=True, help="control points")
        p.add_argument("--input", required=True, help="system points")
        p.add_argument("--output", required=True)
        if name == "report":
            p.add_argument("--image")

    p = add("correlate", cmd_correlate, "Pearson correlation of coverage with a metric")
    p.add_argument("--input", required=True)
    p.add_argument("--metric", default="faithfulness", help="record field to correlate")
    p.add_argument("--output")

    p = add("select", cmd_select, "cross-validated threshold selector")
    p.add_argument("--input", required=True, help="candidate records")
    p.add_argument("--annotations", required=True)
    p.add_argument("--corpus")
    p.add_argument("--output", required=True)
    p.add_argument("--mode", choices=("roc", "fbeta"), default="roc")
    p.add_argument("--beta", type=float)
    p.add_argument("--roc-criterion", choices=("youden", "closest"), default="youden")
    p.add_argument("--folds", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--scorer", choices=("file", "coverage-demo"), default="file")
    p.add_argument("--systems", help="comma-separated systems to select among (default: all)")

    p = add("oracle", cmd_oracle, "human-judgment oracles bf, bfe, qfe")
    p.add_argument("--input", required=True, help="candidate records incl. the baseline's")
    p.add_argument("--annotations", required=True)
    p.add_argument("--corpus")
    p.add_argument("--output", required=True)
    p.add_argument("--baseline", required=True)
    p.add_argument("--quartiles", help="comma-separated control systems (default: all but baseline)")
    p.add_argument("--more-abstractive")
    p.add_argument("--more-extractive")
    return parser


def _check_paths(args) -> None:
    for name in ("input", "control", "annotations", "corpus"):
        path = getattr(args, name, None)
        if path is not None and not os.path.isfile(path):
            raise IoFailure(f"--{name}: no such file: {path}")
    out = getattr(args, "output", None)
    if out:
        parent = os.path.dirname(os.path.abspath(out))
        if not os.path.isdir(parent):
            raise IoFailure(f"--output: directory does not exist: {parent}")


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _check_paths(args)
        args.func(args)
    except (FaithcurveError, OSError) as exc:
        print(f"faithcurve {args.command}: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
