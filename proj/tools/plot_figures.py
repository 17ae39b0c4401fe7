#!/usr/bin/env python3
"""Render figure CSVs from `swiptlab figure` into PNGs.

One image per (figure, user, metric) group found in the input files.
Analytic rows draw as lines, simulated rows as markers with error bars.
"""

import argparse
import collections
import csv
import os
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

# curve identity within a panel; engines share the key so they share a color
Curve = collections.namedtuple("Curve", ["scheme", "series"])


def read_rows(path):
    with open(path, newline="") as fh:
        body = [line for line in fh if not line.startswith("#")]
    return list(csv.DictReader(body))


def label_for(curve):
    if curve.series in ("", "-"):
        return curve.scheme
    return f"{curve.scheme}, {curve.series}"


def render(panel_key, rows, out_dir, dpi):
    fig_id, user, metric = panel_key
    x_name = rows[0]["x_name"]

    curves = collections.defaultdict(lambda: {"analytic": [], "simulate": []})
    for r in rows:
        point = (float(r["x_value"]), float(r["value"]),
                 float(r["stderr"]) if r["stderr"] else 0.0)
        curves[Curve(r["scheme"], r["series"])][r["engine"]].append(point)

    fig, ax = plt.subplots(figsize=(6.4, 4.4))
    colors = plt.rcParams["axes.prop_cycle"].by_key()["color"]
    for i, (curve, by_engine) in enumerate(sorted(curves.items())):
        color = colors[i % len(colors)]
        analytic = sorted(by_engine["analytic"])
        if analytic:
            ax.plot([p[0] for p in analytic], [p[1] for p in analytic],
                    color=color, label=label_for(curve))
        sim = sorted(by_engine["simulate"])
        if sim:
            ax.errorbar([p[0] for p in sim], [p[1] for p in sim],
                        yerr=[p[2] for p in sim], color=color, linestyle="none",
                        marker="o", markersize=3.5, capsize=2,
                        label=None if analytic else label_for(curve))

    if metric == "throughput":
        ax.set_ylabel("throughput (bit/s/Hz)")
    else:
        # outage curves span decades; nonpositive values (clamped or
        # zero-failure points) are simply not drawn on the log axis
        ax.set_yscale("log")
        ax.set_ylabel("outage probability")
    if x_name == "lambda_b":
        ax.set_xscale("log")
    ax.set_xlabel(x_name)
    ax.set_title(f"figure {fig_id}: {user} {metric}")
    ax.grid(True, which="both", alpha=0.3)
    ncol = 2 if len(curves) > 8 else 1
    ax.legend(fontsize=7 if len(curves) > 8 else 9, ncol=ncol)
    fig.tight_layout()

    out_path = os.path.join(out_dir, f"fig{fig_id}_{user}_{metric}.png")
    fig.savefig(out_path, dpi=dpi)
    plt.close(fig)
    return out_path


def main():
    ap = argparse.ArgumentParser(
        description="plot figure-preset CSVs produced by the swiptlab CLI")
    ap.add_argument("csv_files", nargs="+", help="figure sweep CSV files")
    ap.add_argument("-o", "--out-dir", default=".",
                    help="directory for the PNG output (default: .)")
    ap.add_argument("--dpi", type=int, default=150)
    args = ap.parse_args()

    panels = collections.defaultdict(list)
    for path in args.csv_files:
        for r in read_rows(path):
            panels[(r["figure"], r["user"], r["metric"])].append(r)
    if not panels:
        sys.exit("no data rows found")

    os.makedirs(args.out_dir, exist_ok=True)
    for key in sorted(panels):
        print(render(key, panels[key], args.out_dir, args.dpi))


if __name__ == "__main__":
    main()
