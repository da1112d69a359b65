"""Feature assembly, grouped statistics, and the comparison report.

This module glues the per-post scorers together into feature rows, then
derives everything the report needs from those rows: grouped summaries,
score correlations, the rate at which the two sentiment scorers disagree
on sign, and the rendered report text itself.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

from .corpus import Document, FeatureRow, Post, make_document
from .demographics import extract_self_demographics, format_demographics
from .embedding import EmbeddingConfig, compute_doc_embeddings
from .errors import AnalyticsError
from .lexicons import LexiconSet, count_matches
from .posfreq import frequency_table
from .sentiment import ValenceConfig, afinn_adjusted, afinn_score, valence_scores
from .textprep import tokenize

GENDER_ORDER = ("f", "m", "n", "unknown")

# row means reported in section (a), in column order of the features file
MEAN_FIELDS = (
    "gilded",
    "num_comments",
    "score",
    "upvote_ratio",
    "afinn_score",
    "word_count",
    "afinn_adjusted",
    "vader_compound",
    "vader_neg",
    "vader_pos",
    "masc_words",
    "fem_words",
    "cosine_similarity",
)

ENGAGEMENT_FIELDS = ("gilded", "num_comments", "score", "upvote_ratio")
LANGUAGE_FIELDS = (
    "afinn_adjusted",
    "vader_compound",
    "vader_neg",
    "vader_pos",
    "word_count",
    "masc_words",
    "fem_words",
    "cosine_similarity",
)


def assemble_features(post: Post, lexicons: LexiconSet, cosine_similarity: float) -> FeatureRow:
    """Score one post and pack the results into a feature row."""
    doc = make_document(post)
    tokens = tokenize(doc.text)
    score = afinn_score(tokens, lexicons.weighted)
    valence = valence_scores(doc.text, ValenceConfig.from_lexicons(lexicons))
    demo = extract_self_demographics(doc.text)
    return FeatureRow(
        id=post.id,
        subreddit=post.subreddit,
        gilded=post.gilded,
        num_comments=post.num_comments,
        score=post.score,
        upvote_ratio=post.upvote_ratio,
        afinn_score=score,
        word_count=len(tokens),
        afinn_adjusted=afinn_adjusted(score, len(tokens)),
        vader_compound=valence.compound,
        vader_neg=valence.neg,
        vader_pos=valence.pos,
        masc_words=count_matches(tokens, lexicons.gender.masculine),
        fem_words=count_matches(tokens, lexicons.gender.feminine),
        cosine_similarity=cosine_similarity,
        op_demographics=format_demographics(demo),
        op_age=demo.age,
        op_gender=demo.gender,
        flair=post.flair,
    )


def extract_features(
    posts: Sequence[Post],
    lexicons: LexiconSet,
    config: EmbeddingConfig | None = None,
):
    """Run the full per-post pipeline over a corpus.

    Returns (rows, doc_vectors, autoencoder). Embeddings are trained on the
    whole corpus first so each row can carry its reconstruction cosine.
    """
    config = config or EmbeddingConfig()
    documents = [make_document(p) for p in posts]
    embeddings, vectors, model = compute_doc_embeddings(
        documents, config, lexicons.stopwords
    )
    cosine_by_id = {e.post_id: e.reconstruction_similarity for e in embeddings}
    rows = [assemble_features(p, lexicons, cosine_by_id[p.id]) for p in posts]
    return rows, vectors, model


@dataclass(frozen=True)
class GroupSummary:
    group_key: str
    field: str
    count: int
    mean: float
    min: float
    max: float

    def __post_init__(self) -> None:
        if self.count < 1:
            raise AnalyticsError("summary of an empty group")
        if not (self.min <= self.mean <= self.max):
            raise AnalyticsError(
                f"summary out of order for {self.field}: "
                f"{self.min} <= {self.mean} <= {self.max} fails"
            )


def group_summary(
    rows: Sequence[FeatureRow],
    key: Callable[[FeatureRow], str],
    field: str,
) -> list[GroupSummary]:
    """Per-group count/mean/min/max of one numeric row attribute."""
    if not rows:
        raise AnalyticsError("no rows to summarize")
    groups: dict[str, list[float]] = {}
    for row in rows:
        groups.setdefault(key(row), []).append(float(getattr(row, field)))
    out = []
    for name in sorted(groups):
        values = groups[name]
        out.append(
            GroupSummary(
                group_key=name,
                field=field,
                count=len(values),
                mean=math.fsum(values) / len(values),
                min=min(values),
                max=max(values),
            )
        )
    return out


def pearson(x: Sequence[float], y: Sequence[float]) -> float:
    """Pearson correlation of two equal-length sequences."""
    n = len(x)
    if n != len(y):
        raise AnalyticsError(f"length mismatch: {n} vs {len(y)}")
    if n < 2:
        raise AnalyticsError("correlation needs at least two points")
    mean_x = math.fsum(x) / n
    mean_y = math.fsum(y) / n
    dx = [float(v) - mean_x for v in x]
    dy = [float(v) - mean_y for v in y]
    sxx = math.fsum(a * a for a in dx)
    syy = math.fsum(b * b for b in dy)
    if sxx == 0.0 or syy == 0.0:
        raise AnalyticsError("correlation undefined for a constant series")
    r = math.fsum(a * b for a, b in zip(dx, dy)) / math.sqrt(sxx * syy)
    return max(-1.0, min(1.0, r))


def median_low(values: Sequence[float]) -> float | None:
    """Lower median: for an even count, the smaller of the two middle values."""
    if not values:
        return None
    ordered = sorted(values)
    return ordered[(len(ordered) - 1) // 2]


def _sign(value: float) -> int:
    if value > 0:
        return 1
    if value < 0:
        return -1
    return 0


@dataclass(frozen=True)
class DisagreementStats:
    """Sign agreement between the adjusted weighted score and the compound."""

    total: int
    disagreements: int
    rate: float
    lenient_disagreements: int
    lenient_rate: float
    compound_pos_weighted_neg: int
    weighted_pos_compound_neg: int


def disagreement_rate(rows: Sequence[FeatureRow]) -> DisagreementStats:
    """Share of posts where the two scorers disagree on sign.

    A score of exactly zero agrees only with zero. The lenient variant
    treats zero as agreeing with everything, so only strictly opposite
    signs count; it is reported as a sensitivity check.
    """
    if not rows:
        raise AnalyticsError("no rows to compare")
    disagreements = 0
    lenient = 0
    compound_pos_weighted_neg = 0
    weighted_pos_compound_neg = 0
    for row in rows:
        sw = _sign(row.afinn_adjusted)
        sc = _sign(row.vader_compound)
        if sw != sc:
            disagreements += 1
        if sw * sc == -1:
            lenient += 1
        if sc > 0 and sw < 0:
            compound_pos_weighted_neg += 1
        if sw > 0 and sc < 0:
            weighted_pos_compound_neg += 1
    n = len(rows)
    return DisagreementStats(
        total=n,
        disagreements=disagreements,
        rate=disagreements / n,
        lenient_disagreements=lenient,
        lenient_rate=lenient / n,
        compound_pos_weighted_neg=compound_pos_weighted_neg,
        weighted_pos_compound_neg=weighted_pos_compound_neg,
    )


def _fmt(value: float) -> str:
    return f"{value:.6f}"


def _render_table(header: Sequence[str], rows: Sequence[Sequence[str]]) -> list[str]:
    """Pad columns to a fixed width; first column left-aligned, rest right."""
    table = [list(header)] + [list(r) for r in rows]
    widths = [max(len(row[i]) for row in table) for i in range(len(header))]
    lines = []
    for row in table:
        cells = [row[0].ljust(widths[0])]
        cells += [row[i].rjust(widths[i]) for i in range(1, len(row))]
        lines.append("  ".join(cells).rstrip())
    return lines


def _subreddits(rows: Sequence[FeatureRow]) -> list[str]:
    return sorted({r.subreddit for r in rows})


def _rows_by_subreddit(rows: Sequence[FeatureRow]) -> dict[str, list[FeatureRow]]:
    out: dict[str, list[FeatureRow]] = {}
    for row in rows:
        out.setdefault(row.subreddit, []).append(row)
    return out


def means_table(rows: Sequence[FeatureRow]) -> tuple[list[str], list[list[str]]]:
    subs = _subreddits(rows)
    by_sub = _rows_by_subreddit(rows)
    header = ["feature"] + subs
    body: list[list[str]] = []
    body.append(["posts"] + [str(len(by_sub[s])) for s in subs])
    for field in MEAN_FIELDS:
        summaries = {g.group_key: g for g in group_summary(rows, lambda r: r.subreddit, field)}
        body.append([f"mean_{field}"] + [_fmt(summaries[s].mean) for s in subs])
    medians = []
    for s in subs:
        ages = [r.op_age for r in by_sub[s] if r.op_age is not None]
        med = median_low(ages)
        medians.append("n/a" if med is None else str(int(med)))
    body.append(["median_disclosed_age"] + medians)
    return header, body


def disclosure_table(rows: Sequence[FeatureRow]) -> tuple[list[str], list[list[str]]]:
    header = ["subreddit", "both", "only_age", "only_gender", "none"]
    body = []
    by_sub = _rows_by_subreddit(rows)
    for s in sorted(by_sub):
        both = only_age = only_gender = none = 0
        for row in by_sub[s]:
            has_age = row.op_age is not None
            has_gender = row.op_gender != "unknown"
            if has_age and has_gender:
                both += 1
            elif has_age:
                only_age += 1
            elif has_gender:
                only_gender += 1
            else:
                none += 1
        body.append([s, str(both), str(only_age), str(only_gender), str(none)])
    return header, body


def sentiment_table(rows: Sequence[FeatureRow]) -> tuple[list[str], list[list[str]]]:
    header = ["subreddit", "metric", "avg", "min", "max"]
    body = []
    for field in ("afinn_adjusted", "vader_compound"):
        for g in group_summary(rows, lambda r: r.subreddit, field):
            body.append([g.group_key, field, _fmt(g.mean), _fmt(g.min), _fmt(g.max)])
    body.sort(key=lambda r: (r[0], r[1]))
    return header, body


def unique_posts_table(
    rows: Sequence[FeatureRow],
    titles_by_id: Mapping[str, str],
    top_k: int,
) -> tuple[list[str], list[list[str]]]:
    header = ["subreddit", "rank", "reconstruction_cosine", "id", "title"]
    body = []
    by_sub = _rows_by_subreddit(rows)
    for s in sorted(by_sub):
        ranked = sorted(by_sub[s], key=lambda r: (r.cosine_similarity, r.id))
        for rank, row in enumerate(ranked[:top_k], start=1):
            title = titles_by_id.get(row.id)
            if title is None:
                raise AnalyticsError(f"post {row.id} in features but not in corpus")
            body.append([s, str(rank), _fmt(row.cosine_similarity), row.id, title])
    return header, body


def pos_table(
    rows: Sequence[FeatureRow],
    texts_by_id: Mapping[str, str],
    lexicons: LexiconSet,
    top_k: int,
) -> tuple[list[str], list[list[str]]]:
    header = ["subreddit", "tag", "rank", "base", "count"]
    body = []
    by_sub = _rows_by_subreddit(rows)
    for s in sorted(by_sub):
        docs = []
        for row in sorted(by_sub[s], key=lambda r: r.id):
            text = texts_by_id.get(row.id)
            if text is None:
                raise AnalyticsError(f"post {row.id} in features but not in corpus")
            docs.append(Document(post_id=row.id, text=text))
        for tag in ("NOUN", "VERB"):
            table = frequency_table(docs, tag, lexicons.pos)
            for rank, (base, count) in enumerate(table[:top_k], start=1):
                body.append([s, tag, str(rank), base, str(count)])
    return header, body


def correlation_table(rows: Sequence[FeatureRow]) -> tuple[list[str], list[list[str]]]:
    header = ["feature"] + list(ENGAGEMENT_FIELDS)
    body = []
    for lang in LANGUAGE_FIELDS:
        x = [float(getattr(r, lang)) for r in rows]
        cells = [lang]
        for eng in ENGAGEMENT_FIELDS:
            y = [float(getattr(r, eng)) for r in rows]
            try:
                cells.append(_fmt(pearson(x, y)))
            except AnalyticsError:
                cells.append("n/a")
        body.append(cells)
    return header, body


def flair_share_table(
    rows: Sequence[FeatureRow],
    flair_by_id: Mapping[str, str | None],
) -> tuple[list[str], list[list[str]]]:
    """Share of each gender's posts carrying each flair, per subreddit.

    Flair text is compared case-insensitively; missing flair is grouped
    under "(none)".
    """
    header = ["subreddit", "flair", "gender", "posts", "share_of_gender"]
    counts: Counter[tuple[str, str, str]] = Counter()
    gender_totals: Counter[tuple[str, str]] = Counter()
    for row in rows:
        flair = flair_by_id.get(row.id, row.flair)
        label = flair.lower() if flair else "(none)"
        counts[(row.subreddit, label, row.op_gender)] += 1
        gender_totals[(row.subreddit, row.op_gender)] += 1
    body = []
    for (sub, label, gender), n in sorted(counts.items()):
        share = n / gender_totals[(sub, gender)]
        body.append([sub, label, gender, str(n), _fmt(share)])
    return header, body


def report_tables(
    rows: Sequence[FeatureRow],
    posts: Sequence[Post],
    lexicons: LexiconSet,
    top_k: int = 5,
    pos_full_text: bool = False,
) -> dict[str, tuple[list[str], list[list[str]]]]:
    """All report tables keyed by name, as (header, string rows)."""
    if not rows:
        raise AnalyticsError("no feature rows")
    if top_k < 1:
        raise AnalyticsError("top_k must be positive")
    titles_by_id = {p.id: p.title for p in posts}
    flair_by_id: dict[str, str | None] = {p.id: p.flair for p in posts}
    if pos_full_text:
        texts_by_id = {p.id: make_document(p).text for p in posts}
    else:
        texts_by_id = titles_by_id
    return {
        "feature_means": means_table(rows),
        "demographic_disclosure": disclosure_table(rows),
        "sentiment_comparison": sentiment_table(rows),
        "unique_posts": unique_posts_table(rows, titles_by_id, top_k),
        "pos_frequencies": pos_table(rows, texts_by_id, lexicons, top_k),
        "engagement_correlations": correlation_table(rows),
        "flair_share": flair_share_table(rows, flair_by_id),
    }


_SECTION_TITLES = {
    "feature_means": "Feature means by subreddit",
    "demographic_disclosure": "Demographic disclosure",
    "sentiment_comparison": "Sentiment score comparison",
    "unique_posts": "Most unique posts",
    "pos_frequencies": "Top nouns and verbs",
    "engagement_correlations": "Engagement correlations (Pearson)",
    "flair_share": "Flair share by gender",
}


def compare_report(
    rows: Sequence[FeatureRow],
    posts: Sequence[Post],
    lexicons: LexiconSet,
    top_k: int = 5,
    pos_full_text: bool = False,
) -> str:
    """Render the plain-text comparison report.

    Section order is fixed; all derived numbers are printed with six
    decimals so reruns over the same inputs are byte-identical.
    """
    tables = report_tables(rows, posts, lexicons, top_k, pos_full_text)
    stats = disagreement_rate(rows)
    lines: list[str] = []
    for name in (
        "feature_means",
        "demographic_disclosure",
        "sentiment_comparison",
        "unique_posts",
        "pos_frequencies",
        "engagement_correlations",
        "flair_share",
    ):
        title = _SECTION_TITLES[name]
        if name in ("unique_posts", "pos_frequencies"):
            title = f"{title} (top {top_k})"
        lines.append(f"== {title} ==")
        header, body = tables[name]
        lines.extend(_render_table(header, body))
        lines.append("")
    lines.append("-- Notes --")
    lines.append(
        f"Sign disagreement between adjusted weighted score and compound: "
        f"{_fmt(stats.rate)} ({stats.disagreements}/{stats.total})."
    )
    lines.append(
        f"Compound positive while weighted score negative: "
        f"{stats.compound_pos_weighted_neg} of {stats.disagreements} disagreements; "
        f"the reverse: {stats.weighted_pos_compound_neg}."
    )
    lines.append(
        f"A score of exactly zero agrees only with zero. Counting zero as "
        f"agreeing with everything gives {_fmt(stats.lenient_rate)} "
        f"({stats.lenient_disagreements}/{stats.total})."
    )
    return "\n".join(lines) + "\n"
