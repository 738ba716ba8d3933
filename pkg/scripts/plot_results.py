#!/usr/bin/env python3
"""
Plot a sweep result file (CSV or JSON lines).

Usage:
    python scripts/plot_results.py results/frequency_tropics.csv [--out tropics.png] [--logx]
"""
import argparse
import os
import sys

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from mmwave_lab.results import read_results


def plot(records, title, logx=False):
    x = [r["sweep_value"] for r in records]
    fig, (ax_cap, ax_cond) = plt.subplots(2, 1, sharex=True, figsize=(7, 6))

    ax_cap.plot(x, [r["mean_capacity_bps_hz"] for r in records], label="MIMO mean")
    ax_cap.fill_between(
        x, [r["ci_low"] for r in records], [r["ci_high"] for r in records], alpha=0.25, label="90% interval"
    )
    ax_cap.plot(x, [r["siso_mean_bps_hz"] for r in records], "--", label="SISO mean")
    ax_cap.set_ylabel("capacity (bit/s/Hz)")
    ax_cap.set_title(title)
    ax_cap.legend()

    ax_cond.plot(x, [r["mean_inv_condition"] for r in records], label="trial mean")
    ax_cond.plot(x, [r["ensemble_inv_condition"] for r in records], ":", label="ensemble")
    ax_cond.set_ylabel("inverse condition number")
    ax_cond.set_xlabel("sweep value")
    ax_cond.legend()

    if logx:
        ax_cond.set_xscale("log")
    fig.tight_layout()
    return fig


def main():
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("results")
    parser.add_argument("--out", help="image path (default: results file with .png)")
    parser.add_argument("--logx", action="store_true")
    args = parser.parse_args()

    records = read_results(args.results)
    if not records:
        print(f"[ERROR] No rows in {args.results}")
        sys.exit(1)

    out = args.out or os.path.splitext(args.results)[0] + ".png"
    fig = plot(records, os.path.basename(args.results), args.logx)
    fig.savefig(out, dpi=150)
    print(f"Saved {out}")


if __name__ == "__main__":
    main()
