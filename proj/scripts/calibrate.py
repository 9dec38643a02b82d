#!/usr/bin/env python3
"""Calibration sweeps over ppto-sim suites.

    calibrate.py shape    --grid beta_asymptomatic=0.1,0.105 alpha_s=0.85,0.9
    calibrate.py policies --set test_sensitivity=0.6 --grid ppto_max_rounds=2,3 --seeds 100
    calibrate.py rho      --preset experiment2 --grid beta_asymptomatic=0.125,0.135

Each grid point writes a config overlay, runs the matching suite and prints
the day-30 summary the acceptance criteria look at.
"""

import argparse
import csv
import itertools
import json
import statistics
import subprocess
import tempfile
from pathlib import Path

from scipy import stats

SUITES = {"shape": "uncontrolled", "policies": "policy-comparison", "rho": "rho-sweep"}


def parse_assignments(items, multi):
    out = {}
    for item in items:
        key, _, value = item.partition("=")
        values = [json.loads(v) for v in value.split(",")]
        out[key] = values if multi else values[0]
    return out


def final_rows(out_dir):
    groups = {}
    for f in sorted(Path(out_dir).glob("*.csv")):
        if f.name == "summary.csv":
            continue
        group, seed = f.stem.rsplit("_seed", 1)
        with f.open() as fh:
            last = list(csv.DictReader(fh))[-1]
        groups.setdefault(group, {})[int(seed)] = {k: float(v) for k, v in last.items()}
    return groups


def report(kind, groups, n):
    if kind == "shape":
        rows = list(groups["none"].values())
        share = {k: 100 * statistics.mean(r[k] for r in rows) / n for k in ("A", "P", "Y", "R", "cum_infections")}
        return "A=%.2f%% P=%.2f%% Y=%.2f%% R=%.2f%% cum=%.1f%%" % tuple(share.values())
    cum = {g: {s: r["cum_infections"] for s, r in v.items()} for g, v in groups.items()}
    mean = {g: statistics.mean(v.values()) for g, v in cum.items()}
    if kind == "rho":
        base = mean["rho_1.00"]
        return "rho1=%.0f +%.1f%% at 0.75, +%.1f%% at 0.5" % (
            base, 100 * (mean["rho_0.75"] / base - 1), 100 * (mean["rho_0.50"] / base - 1))
    seeds = sorted(cum["ts"])
    p = stats.ttest_rel([cum["ppto"][s] for s in seeds], [cum["tsdc"][s] for s in seeds], alternative="less").pvalue
    return "ts=%.0f tsdc=%.0f ppto=%.0f; ppto vs ts -%.1f%%, vs tsdc -%.1f%%; p(ppto<tsdc)=%.2g" % (
        mean["ts"], mean["tsdc"], mean["ppto"], 100 * (1 - mean["ppto"] / mean["ts"]),
        100 * (1 - mean["ppto"] / mean["tsdc"]), p)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("kind", choices=SUITES)
    ap.add_argument("--binary", default="build/ppto-sim")
    ap.add_argument("--preset", choices=["experiment1", "experiment2"], default="experiment1")
    ap.add_argument("--seeds", type=int, default=20)
    ap.add_argument("--set", nargs="*", default=[], help="fixed key=value overrides")
    ap.add_argument("--grid", nargs="*", default=[], help="key=v1,v2,... swept jointly")
    args = ap.parse_args()

    preset = json.loads(subprocess.run([args.binary, "config", "--preset", args.preset],
                                       check=True, capture_output=True, text=True).stdout)
    fixed = parse_assignments(args.set, multi=False)
    grid = parse_assignments(args.grid, multi=True)
    keys = list(grid)
    for point in itertools.product(*(grid[k] for k in keys)) if keys else [()]:
        overlay = {**preset, **fixed, **dict(zip(keys, point))}
        with tempfile.TemporaryDirectory() as tmp:
            cfg = Path(tmp) / "config.json"
            cfg.write_text(json.dumps(overlay))
            subprocess.run([args.binary, "suite", "--name", SUITES[args.kind], "--seeds", str(args.seeds),
                            "--config", str(cfg), "--out", tmp], check=True, capture_output=True)
            label = " ".join(f"{k}={v}" for k, v in zip(keys, point)) or "preset"
            print(f"{label}: {report(args.kind, final_rows(tmp), overlay['population'])}", flush=True)


if __name__ == "__main__":
    main()
