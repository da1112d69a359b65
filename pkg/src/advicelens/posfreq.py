"""Coarse part-of-speech tagging and noun/verb frequency tables.

Three tags only (NOUN, VERB, OTHER): the tables exist to surface the most
common nouns and verbs in post titles, so finer distinctions buy nothing.
A word gets its tag from the bundled lexicon when listed, otherwise from
suffix shape, otherwise OTHER. Counts are grouped by stemmed base so
"tells", "told", and "telling" all land on "tell".
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .corpus import Document
from .textprep import Token, stem, tokenize

__all__ = ["TaggedToken", "tag_pos", "frequency_table"]

_VERB_SUFFIXES = ("ing", "ed", "ize")
_NOUN_SUFFIXES = ("tion", "ment", "ness", "ity")


@dataclass(frozen=True)
class TaggedToken:
    token: Token
    tag: str  # NOUN, VERB, or OTHER
    base: str


def _heuristic_tag(word: str) -> str:
    if word.endswith(_VERB_SUFFIXES):
        return "VERB"
    if word.endswith(_NOUN_SUFFIXES):
        return "NOUN"
    return "OTHER"


def tag_pos(tokens: Sequence[Token], pos_lexicon: Mapping[str, str]) -> list[TaggedToken]:
    """Lexicon lookup on the normalized form first, suffix shape second."""
    tagged = []
    for tok in tokens:
        tag = pos_lexicon.get(tok.normalized)
        if tag is None:
            tag = _heuristic_tag(tok.normalized)
        tagged.append(TaggedToken(token=tok, tag=tag, base=stem(tok.normalized)))
    return tagged


def frequency_table(
    documents: Iterable[Document],
    tag: str,
    pos_lexicon: Mapping[str, str],
) -> list[tuple[str, int]]:
    """(base, count) pairs for one tag, descending count then lexicographic."""
    if tag not in ("NOUN", "VERB"):
        raise ValueError(f"tag must be NOUN or VERB, got {tag!r}")
    counts: Counter[str] = Counter()
    for doc in documents:
        for tagged in tag_pos(tokenize(doc.text), pos_lexicon):
            if tagged.tag == tag:
                counts[tagged.base] += 1
    return sorted(counts.items(), key=lambda item: (-item[1], item[0]))
