"""Figure rendering for the report paths.

Each report subcommand can render its delimited output as a PNG figure
next to the TSV stream.  Figures are informational companions; the TSV
remains the machine-readable artifact.
"""

from __future__ import annotations

import os
from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .metrics import METRIC_NAMES, ScoreReport
from .projection import RateRow
from .stats import CorpusStats

_SAVE_OPTS = {"dpi": 150, "metadata": {"Software": None}}


def plot_score_report(report: ScoreReport, path: str) -> None:
    """Grouped P/R/F1 bars per metric, CoNLL F1 drawn as a reference line."""
    labels = list(METRIC_NAMES)
    fields = ("precision", "recall", "f1")
    fig, ax = plt.subplots(figsize=(7, 4))
    width = 0.25
    for offset, name in enumerate(fields):
        xs = [i + (offset - 1) * width for i in range(len(labels))]
        ys = [float(getattr(report.metrics[m], name)) for m in labels]
        ax.bar(xs, ys, width=width, label=name)
    ax.axhline(
        float(report.conll_f1), color="gray", linestyle="--", linewidth=1,
        label="conll_f1",
    )
    ax.set_xticks(range(len(labels)))
    ax.set_xticklabels(labels)
    ax.set_ylabel("score")
    ax.set_title(
        f"coreference scores (singletons={report.singletons}, split={report.split})"
    )
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, **_SAVE_OPTS)
    plt.close(fig)


def plot_projection_rates(rows: Sequence[RateRow], path: str) -> None:
    """Stacked aligned/misaligned/non-aligned bars per group."""
    fig, ax = plt.subplots(figsize=(7, max(2.0, 0.4 * len(rows) + 1.5)))
    groups = [row.group for row in rows]
    ys = range(len(rows))
    left = [0.0] * len(rows)
    for label, color in (
        ("aligned", "#4c9f70"),
        ("misaligned", "#e0a036"),
        ("non_aligned", "#b5493a"),
    ):
        widths = [float(getattr(row.summary, label)) / max(1, row.summary.total) * 100
                  for row in rows]
        ax.barh(ys, widths, left=left, label=label, color=color)
        left = [a + b for a, b in zip(left, widths)]
    ax.set_yticks(list(ys))
    ax.set_yticklabels(groups)
    ax.invert_yaxis()
    ax.set_xlabel("% of mentions")
    ax.set_title("mention projection outcomes")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, **_SAVE_OPTS)
    plt.close(fig)


def plot_corpus_stats(
    rows: Sequence[tuple[str, CorpusStats]], path: str
) -> None:
    """Log-scale count bars per group for the main corpus quantities."""
    fields = (
        ("n_mentions", "mentions"),
        ("n_clusters_multi", "clusters (2+)"),
        ("n_singletons", "singletons"),
        ("n_split_antecedents", "split antecedents"),
    )
    fig, ax = plt.subplots(figsize=(7, 4))
    width = 0.8 / len(fields)
    for offset, (field, label) in enumerate(fields):
        xs = [i + (offset - (len(fields) - 1) / 2) * width for i in range(len(rows))]
        ax.bar(xs, [getattr(stats, field) for _, stats in rows], width=width,
               label=label)
    ax.set_xticks(range(len(rows)))
    ax.set_xticklabels([group for group, _ in rows], rotation=30, ha="right")
    ax.set_yscale("symlog")
    ax.set_ylabel("count")
    ax.set_title("corpus statistics")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, **_SAVE_OPTS)
    plt.close(fig)


def ensure_plot_dir(path: str) -> None:
    os.makedirs(path, exist_ok=True)
