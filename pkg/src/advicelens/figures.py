"""Report figures rendered to PNG files.

Uses the Agg backend with a pinned dpi and PNG metadata so that two runs
over the same rows produce byte-identical files.
"""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from . import __version__
from .analytics import GENDER_ORDER, _rows_by_subreddit
from .corpus import FeatureRow

_SAVE_OPTS = {"dpi": 100, "metadata": {"Software": f"advicelens {__version__}"}}

AGE_BUCKETS = (
    ("13-17", 13, 17),
    ("18-24", 18, 24),
    ("25-34", 25, 34),
    ("35-49", 35, 49),
    ("50+", 50, 99),
)


def _save(fig, path: Path) -> None:
    fig.savefig(path, **_SAVE_OPTS)
    plt.close(fig)


def _grouped_bars(ax, groups: Sequence[str], series: dict[str, list[int]]) -> None:
    width = 0.8 / max(len(series), 1)
    for i, (label, values) in enumerate(series.items()):
        offsets = [x + i * width for x in range(len(groups))]
        ax.bar(offsets, values, width=width, label=label)
    ax.set_xticks([x + 0.4 - width / 2 for x in range(len(groups))])
    ax.set_xticklabels(groups)
    ax.legend()


def gender_counts_figure(rows: Sequence[FeatureRow], path: Path) -> None:
    by_sub = _rows_by_subreddit(rows)
    subs = sorted(by_sub)
    series = {
        gender: [sum(1 for r in by_sub[s] if r.op_gender == gender) for s in subs]
        for gender in GENDER_ORDER
    }
    fig, ax = plt.subplots(figsize=(7, 4))
    _grouped_bars(ax, subs, series)
    ax.set_ylabel("posts")
    ax.set_title("Disclosed poster gender by subreddit")
    _save(fig, path)


def age_groups_figure(rows: Sequence[FeatureRow], path: Path) -> None:
    by_sub = _rows_by_subreddit(rows)
    subs = sorted(by_sub)
    labels = [b[0] for b in AGE_BUCKETS]
    series = {}
    for s in subs:
        ages = [r.op_age for r in by_sub[s] if r.op_age is not None]
        series[s] = [sum(1 for a in ages if lo <= a <= hi) for _, lo, hi in AGE_BUCKETS]
    fig, ax = plt.subplots(figsize=(7, 4))
    _grouped_bars(ax, labels, series)
    ax.set_ylabel("posts")
    ax.set_title("Disclosed poster age by subreddit")
    _save(fig, path)


def cosine_histogram_figure(rows: Sequence[FeatureRow], path: Path) -> None:
    by_sub = _rows_by_subreddit(rows)
    fig, ax = plt.subplots(figsize=(7, 4))
    for s in sorted(by_sub):
        ax.hist(
            [r.cosine_similarity for r in by_sub[s]],
            bins=20,
            range=(-1.0, 1.0),
            alpha=0.6,
            label=s,
        )
    ax.set_xlabel("reconstruction cosine")
    ax.set_ylabel("posts")
    ax.set_title("Reconstruction similarity (low = more unusual)")
    ax.legend()
    _save(fig, path)


def sentiment_scatter_figure(rows: Sequence[FeatureRow], path: Path) -> None:
    by_sub = _rows_by_subreddit(rows)
    fig, ax = plt.subplots(figsize=(6, 6))
    for s in sorted(by_sub):
        ax.scatter(
            [r.afinn_adjusted for r in by_sub[s]],
            [r.vader_compound for r in by_sub[s]],
            label=s,
            alpha=0.7,
        )
    ax.axhline(0.0, color="grey", linewidth=0.8)
    ax.axvline(0.0, color="grey", linewidth=0.8)
    ax.set_xlabel("adjusted weighted score")
    ax.set_ylabel("compound valence")
    ax.set_title("Weighted score vs compound valence")
    ax.legend()
    _save(fig, path)


def render_figures(rows: Sequence[FeatureRow], out_dir: Path) -> list[Path]:
    """Render all report figures into out_dir; returns the written paths."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    jobs = (
        ("gender_counts.png", gender_counts_figure),
        ("age_groups.png", age_groups_figure),
        ("cosine_histogram.png", cosine_histogram_figure),
        ("sentiment_scatter.png", sentiment_scatter_figure),
    )
    written = []
    for name, fn in jobs:
        path = out_dir / name
        fn(rows, path)
        written.append(path)
    return written
