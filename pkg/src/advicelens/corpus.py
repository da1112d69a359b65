"""Canonical data model plus input/output plumbing.

Input is a line-delimited JSON export of forum posts (one object per line,
field names as produced by the usual dump tools). Output is the per-post
feature table as UTF-8 CSV with RFC 4180 quoting.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .errors import CorpusError

__all__ = [
    "Post",
    "Document",
    "FeatureRow",
    "FEATURES_HEADER",
    "load_posts",
    "make_document",
    "write_features_csv",
    "read_features_csv",
]

FEATURES_HEADER = (
    "id",
    "subreddit",
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
    "OP_demographics",
    "OP_age",
    "OP_gender",
)


@dataclass(frozen=True)
class Post:
    """One submission, as exported. Title/body stay raw so character offsets
    reported by the demographics scanner refer to the original text."""

    id: str
    created_utc: int
    subreddit: str
    title: str
    body: str
    gilded: int
    num_comments: int
    score: int
    upvote_ratio: float
    flair: str | None = None

    def __post_init__(self) -> None:
        if not self.id:
            raise CorpusError("post id must be non-empty")
        if not self.title:
            raise CorpusError(f"post {self.id}: title must be non-empty")
        if self.gilded < 0:
            raise CorpusError(f"post {self.id}: gilded must be >= 0")
        if self.num_comments < 0:
            raise CorpusError(f"post {self.id}: num_comments must be >= 0")
        if not 0.0 <= self.upvote_ratio <= 1.0:
            raise CorpusError(f"post {self.id}: upvote_ratio outside [0, 1]")


@dataclass(frozen=True)
class Document:
    """Title and body joined for text analysis."""

    post_id: str
    text: str


def make_document(post: Post) -> Document:
    text = post.title if not post.body else f"{post.title} {post.body}"
    return Document(post_id=post.id, text=text)


def _require(obj: dict, field: str, path: Path, lineno: int):
    if field not in obj or obj[field] is None:
        raise CorpusError(f"{path}:{lineno}: missing field {field!r}")
    return obj[field]


def _as_int(value, field: str, path: Path, lineno: int) -> int:
    if isinstance(value, bool):
        raise CorpusError(f"{path}:{lineno}: field {field!r} must be an integer")
    if isinstance(value, int):
        return value
    if isinstance(value, float) and value.is_integer():
        return int(value)
    raise CorpusError(f"{path}:{lineno}: field {field!r} must be an integer")


def _as_str(value, field: str, path: Path, lineno: int) -> str:
    if not isinstance(value, str):
        raise CorpusError(f"{path}:{lineno}: field {field!r} must be a string")
    return value


def load_posts(path: Path | str) -> list[Post]:
    """Read a JSONL dump in file order; duplicate ids are an error."""
    path = Path(path)
    try:
        raw = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise CorpusError(f"cannot read posts file {path}: {exc}") from exc

    posts: list[Post] = []
    seen: set[str] = set()
    for lineno, line in enumerate(raw.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise CorpusError(f"{path}:{lineno}: malformed JSON: {exc.msg}") from exc
        if not isinstance(obj, dict):
            raise CorpusError(f"{path}:{lineno}: expected a JSON object")

        post_id = _as_str(_require(obj, "id", path, lineno), "id", path, lineno)
        if post_id in seen:
            raise CorpusError(f"{path}:{lineno}: duplicate id {post_id!r}")
        seen.add(post_id)

        ratio = _require(obj, "upvote_ratio", path, lineno)
        if not isinstance(ratio, (int, float)) or isinstance(ratio, bool):
            raise CorpusError(f"{path}:{lineno}: field 'upvote_ratio' must be a number")
        if not 0.0 <= float(ratio) <= 1.0:
            raise CorpusError(f"{path}:{lineno}: upvote_ratio outside [0, 1]")

        # gilded is frequently dropped by exporters; everything else that
        # analytics depends on must be present
        gilded = obj.get("gilded")
        flair = obj.get("link_flair_text")
        body = obj.get("selftext")
        try:
            posts.append(
                Post(
                    id=post_id,
                    created_utc=_as_int(
                        _require(obj, "created_utc", path, lineno), "created_utc", path, lineno
                    ),
                    subreddit=_as_str(
                        _require(obj, "subreddit", path, lineno), "subreddit", path, lineno
                    ),
                    title=_as_str(_require(obj, "title", path, lineno), "title", path, lineno),
                    body=_as_str(body, "selftext", path, lineno) if body is not None else "",
                    gilded=_as_int(gilded, "gilded", path, lineno) if gilded is not None else 0,
                    num_comments=_as_int(
                        _require(obj, "num_comments", path, lineno), "num_comments", path, lineno
                    ),
                    score=_as_int(_require(obj, "score", path, lineno), "score", path, lineno),
                    upvote_ratio=float(ratio),
                    flair=_as_str(flair, "link_flair_text", path, lineno) if flair is not None else None,
                )
            )
        except CorpusError as exc:
            # invariant messages from Post gain the line number here
            if str(exc).startswith(str(path)):
                raise
            raise CorpusError(f"{path}:{lineno}: {exc}") from exc
    return posts


@dataclass(frozen=True)
class FeatureRow:
    """The per-post feature record; one CSV row of exactly 18 cells.

    flair rides along for grouping but is not serialized.
    """

    id: str
    subreddit: str
    gilded: int
    num_comments: int
    score: int
    upvote_ratio: float
    afinn_score: int
    word_count: int
    afinn_adjusted: float
    vader_compound: float
    vader_neg: float
    vader_pos: float
    masc_words: int
    fem_words: int
    cosine_similarity: float
    op_demographics: str
    op_age: int | None
    op_gender: str
    flair: str | None = None

    def __post_init__(self) -> None:
        if self.word_count < 0:
            raise CorpusError(f"row {self.id}: word_count must be >= 0")
        if abs(self.vader_compound) > 1.0:
            raise CorpusError(f"row {self.id}: |vader_compound| must be <= 1")
        if self.op_gender not in ("f", "m", "n", "unknown"):
            raise CorpusError(f"row {self.id}: bad OP_gender {self.op_gender!r}")
        if self.op_age is not None and not 13 <= self.op_age <= 99:
            raise CorpusError(f"row {self.id}: OP_age outside [13, 99]")

    def envelope_warnings(self) -> list[str]:
        """Soft range checks against the documented corpus envelopes."""
        warnings = []
        if not 0 <= self.gilded <= 4:
            warnings.append(f"row {self.id}: gilded {self.gilded} outside 0..4")
        if self.num_comments > 6821:
            warnings.append(f"row {self.id}: num_comments {self.num_comments} above 6821")
        if not 1 <= self.score <= 35188:
            warnings.append(f"row {self.id}: score {self.score} outside 1..35188")
        if not 0.55 <= self.upvote_ratio <= 1.0:
            warnings.append(f"row {self.id}: upvote_ratio {self.upvote_ratio} outside 0.55..1")
        return warnings

    def to_cells(self) -> list[str]:
        return [
            self.id,
            self.subreddit,
            str(self.gilded),
            str(self.num_comments),
            str(self.score),
            str(self.upvote_ratio),
            str(self.afinn_score),
            str(self.word_count),
            str(self.afinn_adjusted),
            str(self.vader_compound),
            str(self.vader_neg),
            str(self.vader_pos),
            str(self.masc_words),
            str(self.fem_words),
            str(self.cosine_similarity),
            self.op_demographics,
            "" if self.op_age is None else str(self.op_age),
            self.op_gender,
        ]

    @classmethod
    def from_cells(cls, cells: Sequence[str]) -> "FeatureRow":
        if len(cells) != len(FEATURES_HEADER):
            raise CorpusError(f"expected {len(FEATURES_HEADER)} cells, got {len(cells)}")
        return cls(
            id=cells[0],
            subreddit=cells[1],
            gilded=int(cells[2]),
            num_comments=int(cells[3]),
            score=int(cells[4]),
            upvote_ratio=float(cells[5]),
            afinn_score=int(cells[6]),
            word_count=int(cells[7]),
            afinn_adjusted=float(cells[8]),
            vader_compound=float(cells[9]),
            vader_neg=float(cells[10]),
            vader_pos=float(cells[11]),
            masc_words=int(cells[12]),
            fem_words=int(cells[13]),
            cosine_similarity=float(cells[14]),
            op_demographics=cells[15],
            op_age=None if cells[16] == "" else int(cells[16]),
            op_gender=cells[17],
        )


def write_features_csv(
    rows: Iterable[FeatureRow],
    path: Path | str,
    header_comments: Sequence[str] = (),
) -> None:
    """Write the feature table; optional '#' comment lines precede the header."""
    path = Path(path)
    buf = io.StringIO()
    for comment in header_comments:
        buf.write(f"# {comment}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(FEATURES_HEADER)
    for row in rows:
        writer.writerow(row.to_cells())
    try:
        path.write_text(buf.getvalue(), encoding="utf-8")
    except OSError as exc:
        raise CorpusError(f"cannot write {path}: {exc}") from exc


def read_features_csv(path: Path | str) -> list[FeatureRow]:
    """Re-parse a feature table, skipping leading '#' comment lines."""
    path = Path(path)
    try:
        raw = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise CorpusError(f"cannot read features file {path}: {exc}") from exc
    lines = [line for line in raw.splitlines() if not line.startswith("#")]
    reader = csv.reader(lines)
    try:
        header = next(reader)
    except StopIteration:
        raise CorpusError(f"{path}: empty features file") from None
    if tuple(header) != FEATURES_HEADER:
        raise CorpusError(f"{path}: unexpected header {header!r}")
    return [FeatureRow.from_cells(cells) for cells in reader if cells]
