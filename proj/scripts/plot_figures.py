#!/usr/bin/env python3
# Copyright 2026 The seqqkd Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Plot fig3/fig5/fig7 CSV output from the seqqkd CLI.

    seqqkd fig5 > fig5.csv && python3 scripts/plot_figures.py fig5 fig5.csv fig5.png
"""

import argparse
import csv
from collections import defaultdict

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt


def read(path):
    with open(path, newline="") as f:
        return list(csv.DictReader(f))


def fig3(rows, ax):
    s = [float(r["s"]) for r in rows]
    for col in ("p_opt_interior", "p_opt_boundary", "p_opt"):
        ax.plot(s, [float(r[col]) for r in rows], label=col)
    ax.set_xlabel("s")
    ax.set_ylabel("P_s")


def fig5(rows, ax):
    series = defaultdict(list)
    for r in rows:
        series[r["eta_ab"]].append((float(r["s"]), float(r["K"])))
    for eta, pts in series.items():
        ax.plot(*zip(*pts), label=f"eta={eta}")
    ax.set_xlabel("s")
    ax.set_ylabel("K")


def fig7(rows, ax):
    series = defaultdict(list)
    for r in rows:
        key = f'{r["panel"]} {r["kind"]} d0={r["d0"]} de={r["de"]}'
        series[key].append((float(r["s"]), float(r["K"])))
    for key, pts in series.items():
        ax.plot(*zip(*pts), label=key, linestyle="-" if " white " in key else "--")
    ax.set_xlabel("s")
    ax.set_ylabel("K")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("figure", choices=["fig3", "fig5", "fig7"])
    ap.add_argument("csv")
    ap.add_argument("png")
    args = ap.parse_args()
    fig, ax = plt.subplots(figsize=(6, 4))
    {"fig3": fig3, "fig5": fig5, "fig7": fig7}[args.figure](read(args.csv), ax)
    ax.legend(fontsize=7)
    fig.tight_layout()
    fig.savefig(args.png, dpi=150)


if __name__ == "__main__":
    main()
