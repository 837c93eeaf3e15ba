"""Selector-ROC and Selector-F_beta on a seeded synthetic candidate corpus.

Prints mean selected coverage and human faithfulness per configuration, with
the four control systems for reference, and places each selector on the
curve those controls define.

    python scripts/selector_sweep.py --examples 200 --noise 0.15 --seed 13
"""

import argparse

from faithcurve.annotations import SystemScore
from faithcurve.selection import SelectorConfig, cross_validated_select
from faithcurve.synthetic import SyntheticSpec, candidate_sets
from faithcurve.tradeoff import ControlPoint, build_curve, effective_faithfulness


def mean(xs):
    return sum(xs) / len(xs)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--examples", type=int, default=200)
    ap.add_argument("--noise", type=float, default=0.15)
    ap.add_argument("--seed", type=int, default=13)
    ap.add_argument("--folds", type=int, default=10)
    args = ap.parse_args()

    sets = candidate_sets(SyntheticSpec(n_examples=args.examples, noise=args.noise, seed=args.seed))
    n_sys = len(sets[0].candidates)
    controls = []
    for k in range(n_sys):
        col = [s.candidates[k] for s in sets]
        controls.append(ControlPoint(col[0].system_id, mean([c.coverage for c in col]),
                                     mean([c.faithfulness for c in col])))
    curve = build_curve(controls)

    print(f"{'model':<14}{'cov':>8}{'faith':>8}{'delta':>8}{'fallback':>10}")
    for p in curve.points:
        print(f"{p.model_id:<14}{p.coverage * 100:8.2f}{p.faithfulness * 100:8.2f}{0:+8.2f}{'':>10}")
    configs = [("Selector-ROC", SelectorConfig("roc", folds=args.folds, seed=args.seed))]
    configs += [(f"F_beta={b}", SelectorConfig("fbeta", b, folds=args.folds, seed=args.seed))
                for b in (0.5, 0.4, 0.3, 0.2, 0.1)]
    for name, cfg in configs:
        cv = cross_validated_select(sets, cfg)
        cov = mean([r.candidate.coverage for r in cv.results])
        faith = mean([r.candidate.faithfulness for r in cv.results])
        eff = effective_faithfulness(curve, SystemScore(name, faith, cov))
        fallbacks = sum(r.fallback for r in cv.results)
        print(f"{name:<14}{cov * 100:8.2f}{faith * 100:8.2f}{eff.delta * 100:+8.2f}{fallbacks:>10}")


if __name__ == "__main__":
    main()
