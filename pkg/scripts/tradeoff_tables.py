"""Effective faithfulness of the published systems against each control curve.

    python scripts/tradeoff_tables.py [--out-dir results/]
"""

import argparse
import os
from pathlib import Path

from faithcurve.cli import read_control_points, read_systems
from faithcurve.tradeoff import build_curve, curve_report, effective_faithfulness

DATA = Path(__file__).parent / "data"


def run(dataset, out_dir=None):
    curve = build_curve(read_control_points(DATA / f"{dataset}_control.jsonl", None))
    systems, _ = read_systems(DATA / f"{dataset}_systems.jsonl", None)
    effs = [effective_faithfulness(curve, s) for s in systems]
    print(f"\n{dataset}")
    print(f"{'system':<16}{'cov':>8}{'faith':>8}{'control':>9}{'delta':>8}")
    for e in effs:
        print(f"{e.system_id:<16}{e.system_coverage * 100:8.2f}{e.system_faithfulness * 100:8.2f}"
              f"{e.control_faithfulness * 100:9.2f}{e.delta * 100:+8.2f}  {'above' if e.above_curve else 'below'}")
    if out_dir:
        os.makedirs(out_dir, exist_ok=True)
        curve_report(curve, effs, Path(out_dir) / f"{dataset}.tsv", image=Path(out_dir) / f"{dataset}.svg")


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--out-dir")
    args = ap.parse_args()
    for ds in ("gigaword", "wikihow"):
        run(ds, args.out_dir)
