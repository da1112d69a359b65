"""Command line entry points.

Subcommands:
  extract           score a JSONL post dump into features.csv
  report            render the comparison report, tables, and figures
  train-embeddings  train and save just the embedding model
  demo-fixture      copy the bundled sample corpus somewhere convenient

Exit status: 0 success, 1 usage error, 2 bad data or lexicons,
3 numerical failure during training.
"""

from __future__ import annotations

import argparse
import csv
import sys
from pathlib import Path
from typing import Sequence

from . import __version__
from .analytics import compare_report, extract_features, report_tables
from .corpus import load_posts, make_document, read_features_csv, write_features_csv
from .demographics import find_demographic_mentions
from .embedding import EmbeddingConfig, compute_doc_embeddings, save_model
from .errors import (
    AnalyticsError,
    CorpusError,
    EmbeddingError,
    LexiconError,
    NumericalError,
)
from .figures import render_figures
from .lexicons import LexiconSet, bundled_data_dir, load_lexicon_set

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_NUMERIC = 3


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad arguments; keep 2 for data errors instead
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_embedding_args(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("embedding options")
    group.add_argument("--dim", type=int, default=50, help="vector size (default 50)")
    group.add_argument("--epochs", type=int, default=40, help="training passes (default 40)")
    group.add_argument(
        "--negative", type=int, default=5, help="negative samples per word (default 5)"
    )
    group.add_argument(
        "--min-count", type=int, default=2, help="drop rarer words (default 2)"
    )
    group.add_argument("--seed", type=int, default=1, help="RNG seed (default 1)")


def _embedding_config(args: argparse.Namespace) -> EmbeddingConfig:
    return EmbeddingConfig(
        dim=args.dim,
        epochs=args.epochs,
        negative_samples=args.negative,
        min_word_count=args.min_count,
        seed=args.seed,
    )


def _load_lexicons(args: argparse.Namespace) -> LexiconSet:
    return load_lexicon_set(Path(args.lexicons) if args.lexicons else None)


def _artifact_comments(lexicons: LexiconSet, seed) -> tuple[str, ...]:
    return (
        f"advicelens {__version__}",
        f"lexicons {lexicons.version}",
        f"seed {seed}",
    )


def _write_table_csv(
    path: Path,
    comments: Sequence[str],
    header: Sequence[str],
    body: Sequence[Sequence[str]],
) -> None:
    with path.open("w", encoding="utf-8", newline="") as fh:
        for comment in comments:
            fh.write(f"# {comment}\n")
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(body)


def _read_comment_header(path: Path) -> list[str]:
    comments = []
    with path.open(encoding="utf-8") as fh:
        for line in fh:
            if not line.startswith("#"):
                break
            comments.append(line[1:].strip())
    return comments


def _cmd_extract(args: argparse.Namespace) -> int:
    lexicons = _load_lexicons(args)
    posts = load_posts(Path(args.input))
    config = _embedding_config(args)
    rows, _, _ = extract_features(posts, lexicons, config)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    comments = _artifact_comments(lexicons, config.seed)
    features_path = out_dir / "features.csv"
    write_features_csv(rows, features_path, comments)

    audit_rows = []
    for post in posts:
        for m in find_demographic_mentions(make_document(post).text):
            audit_rows.append(
                [post.id, str(m.offset), str(m.age), m.gender,
                 "true" if m.self_attributed else "false", m.matched]
            )
    _write_table_csv(
        out_dir / "demographics_audit.csv",
        comments,
        ["id", "offset", "age", "gender", "self_attributed", "matched"],
        audit_rows,
    )

    warnings = [w for row in rows for w in row.envelope_warnings()]
    for warning in warnings[:10]:
        print(f"warning: {warning}", file=sys.stderr)
    if len(warnings) > 10:
        print(f"warning: {len(warnings) - 10} more suppressed", file=sys.stderr)
    print(f"wrote {features_path} ({len(rows)} posts)")
    return EXIT_OK


def _cmd_report(args: argparse.Namespace) -> int:
    features_path = Path(args.features)
    rows = read_features_csv(features_path)
    if not rows:
        raise AnalyticsError(f"{features_path}: no feature rows")
    posts = load_posts(Path(args.input))
    lexicons = _load_lexicons(args)

    seed = "unknown"
    for comment in _read_comment_header(features_path):
        if comment.startswith("seed "):
            seed = comment[len("seed "):].strip()
    comments = _artifact_comments(lexicons, seed)

    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    text = compare_report(
        rows, posts, lexicons, top_k=args.top_k, pos_full_text=args.full_pos
    )
    report_path = out_dir / "report.txt"
    header = "".join(f"# {comment}\n" for comment in comments)
    try:
        report_path.write_text(header + text, encoding="utf-8")
    except OSError as exc:
        raise AnalyticsError(f"cannot write {report_path}: {exc}") from exc

    tables = report_tables(rows, posts, lexicons, args.top_k, args.full_pos)
    for name in sorted(tables):
        table_header, body = tables[name]
        _write_table_csv(out_dir / f"{name}.csv", comments, table_header, body)

    if not args.no_figures:
        render_figures(rows, out_dir / "figures")
    print(f"wrote {report_path}")
    return EXIT_OK


def _cmd_train_embeddings(args: argparse.Namespace) -> int:
    lexicons = _load_lexicons(args)
    posts = load_posts(Path(args.input))
    config = _embedding_config(args)
    documents = [make_document(p) for p in posts]
    embeddings, doc_vectors, model = compute_doc_embeddings(
        documents, config, lexicons.stopwords
    )
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    model_path = out_dir / "embedding_model.npz"
    save_model(model_path, doc_vectors, model, config)
    _write_table_csv(
        out_dir / "doc_cosines.csv",
        _artifact_comments(lexicons, config.seed),
        ["id", "reconstruction_cosine"],
        [[e.post_id, str(e.reconstruction_similarity)] for e in embeddings],
    )
    print(f"wrote {model_path} ({len(embeddings)} documents)")
    return EXIT_OK


def _cmd_demo_fixture(args: argparse.Namespace) -> int:
    source = bundled_data_dir() / "fixture_posts.jsonl"
    dest = Path(args.output)
    if dest.parent and not dest.parent.exists():
        dest.parent.mkdir(parents=True, exist_ok=True)
    try:
        dest.write_text(source.read_text(encoding="utf-8"), encoding="utf-8")
    except OSError as exc:
        raise CorpusError(f"cannot copy fixture to {dest}: {exc}") from exc
    print(f"wrote {dest}")
    return EXIT_OK


def build_parser() -> _Parser:
    parser = _Parser(
        prog="advicelens",
        description="Language and engagement features for advice-forum post dumps.",
    )
    parser.add_argument(
        "--version", action="version", version=f"advicelens {__version__}"
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("extract", help="score a JSONL dump into features.csv")
    p.add_argument("--in", dest="input", required=True, metavar="POSTS.jsonl")
    p.add_argument("--out", dest="out_dir", required=True, metavar="DIR")
    p.add_argument("--lexicons", default=None, metavar="DIR",
                   help="lexicon directory (default: bundled)")
    _add_embedding_args(p)
    p.set_defaults(func=_cmd_extract)

    p = sub.add_parser("report", help="render the comparison report and figures")
    p.add_argument("--features", required=True, metavar="FEATURES.csv")
    p.add_argument("--in", dest="input", required=True, metavar="POSTS.jsonl",
                   help="the dump the features were extracted from")
    p.add_argument("--out", dest="out_dir", required=True, metavar="DIR")
    p.add_argument("--lexicons", default=None, metavar="DIR")
    p.add_argument("--top-k", type=int, default=5, metavar="K",
                   help="rows per ranking table (default 5)")
    p.add_argument("--full-pos", action="store_true",
                   help="count nouns and verbs over title and body, not titles only")
    p.add_argument("--no-figures", action="store_true", help="skip PNG rendering")
    p.set_defaults(func=_cmd_report)

    p = sub.add_parser("train-embeddings", help="train and save the embedding model")
    p.add_argument("--in", dest="input", required=True, metavar="POSTS.jsonl")
    p.add_argument("--out", dest="out_dir", required=True, metavar="DIR")
    p.add_argument("--lexicons", default=None, metavar="DIR")
    _add_embedding_args(p)
    p.set_defaults(func=_cmd_train_embeddings)

    p = sub.add_parser("demo-fixture", help="copy the bundled sample corpus")
    p.add_argument("--out", dest="output", required=True, metavar="POSTS.jsonl")
    p.set_defaults(func=_cmd_demo_fixture)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    command = args.command
    try:
        return args.func(args)
    except NumericalError as exc:
        print(f"advicelens {command}: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (CorpusError, LexiconError, AnalyticsError, EmbeddingError) as exc:
        print(f"advicelens {command}: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
