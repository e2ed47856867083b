"""Report serialization: JSON, delimited summaries, and summary figures.

A report directory holds report.json (the machine-readable verdict),
summary.csv (one row per instance or per check category), and PNG figures
summarizing the run.  Figures are plain matplotlib bar/scatter charts of
the counters; nothing here draws graphs or matroids.
"""

from __future__ import annotations

import csv
import json
import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt


def write_consistency_report(report, outdir: str) -> dict:
    """Write a single-instance verification report; returns file paths."""
    os.makedirs(outdir, exist_ok=True)
    paths = {}
    data = report.to_json_dict()
    paths["json"] = os.path.join(outdir, "report.json")
    with open(paths["json"], "w") as fh:
        json.dump(data, fh, indent=2, sort_keys=True)
        fh.write("\n")
    paths["csv"] = os.path.join(outdir, "summary.csv")
    with open(paths["csv"], "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["check", "count", "violations"])
        for part in sorted(data["counts"]):
            nviol = sum(1 for v in data["violations"] if v["part"] == part)
            writer.writerow([part, data["counts"][part], nviol])
    paths["figure"] = os.path.join(outdir, "checks.png")
    _consistency_figure(data, paths["figure"])
    return paths


def _consistency_figure(data: dict, path: str) -> None:
    parts = sorted(data["counts"])
    counts = [data["counts"][p] for p in parts]
    viols = [sum(1 for v in data["violations"] if v["part"] == p) for p in parts]
    fig, ax = plt.subplots(figsize=(6, 3.2))
    xs = range(len(parts))
    ax.bar(xs, counts, color="#4878cf", label="triples checked")
    if any(viols):
        ax.bar(xs, viols, color="#d1495b", label="violations")
    ax.set_xticks(list(xs))
    ax.set_xticklabels(parts)
    ax.set_ylabel("triples")
    ax.set_title("consistency checks (%s)" % data["status"])
    ax.legend(frameon=False)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def write_sweep_report(report, outdir: str) -> dict:
    """Write a sweep report: JSON, per-instance CSV, and two figures."""
    os.makedirs(outdir, exist_ok=True)
    paths = {}
    data = report.to_json_dict()
    paths["json"] = os.path.join(outdir, "report.json")
    with open(paths["json"], "w") as fh:
        json.dump(data, fh, indent=2, sort_keys=True)
        fh.write("\n")
    paths["csv"] = os.path.join(outdir, "summary.csv")
    cols = [
        "label",
        "kind",
        "elements",
        "bases",
        "classes",
        "group_order",
        "filter",
        "pairs_checked",
        "triples_checked",
        "violations",
    ]
    with open(paths["csv"], "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(cols)
        for rec in data["instances"]:
            row = dict(rec)
            row["violations"] = len(rec["violations"])
            writer.writerow([row[c] for c in cols])
    paths["pairs_figure"] = os.path.join(outdir, "pairs.png")
    _sweep_pairs_figure(data, paths["pairs_figure"])
    paths["counting_figure"] = os.path.join(outdir, "counting.png")
    _sweep_counting_figure(data, paths["counting_figure"])
    return paths


def _sweep_pairs_figure(data: dict, path: str) -> None:
    recs = data["instances"]
    labels = [r["label"] for r in recs]
    pairs = [r["pairs_checked"] for r in recs]
    triples = [r["triples_checked"] for r in recs]
    bad = [bool(r["violations"]) for r in recs]
    fig, ax = plt.subplots(figsize=(max(6, 0.22 * len(recs)), 4))
    xs = range(len(recs))
    colors = ["#d1495b" if b else "#4878cf" for b in bad]
    ax.bar(xs, pairs, color=colors, label="signature pairs")
    ax2 = ax.twinx()
    ax2.plot(list(xs), triples, color="#2e4057", lw=1, marker=".", ms=3, label="minor triples")
    ax.set_xticks(list(xs))
    ax.set_xticklabels(labels, rotation=90, fontsize=5)
    ax.set_ylabel("pairs checked")
    ax2.set_ylabel("triples checked")
    ax.set_title("sweep coverage (%s)" % data["status"])
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def _sweep_counting_figure(data: dict, path: str) -> None:
    recs = [r for r in data["instances"] if r["classes"]]
    fig, ax = plt.subplots(figsize=(4.4, 4))
    xs = [r["bases"] for r in recs]
    ax.plot(xs, xs, color="#bbbbbb", lw=1, zorder=0, label="y = x")
    ax.scatter(xs, [r["classes"] for r in recs], s=22, marker="o", label="reversal classes")
    ax.scatter(xs, [r["group_order"] for r in recs], s=10, marker="x", label="group order")
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.set_xlabel("bases")
    ax.set_ylabel("classes / order")
    ax.set_title("counting identities")
    ax.legend(frameon=False, fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
