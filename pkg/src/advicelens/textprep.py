"""Tokenization, stemming, and stopword filtering shared by every analysis.

All downstream counts (sentiment, gendered words, embeddings, POS tables)
consume the same token stream, so a post is never tokenized two different
ways by two different features.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

__all__ = [
    "Token",
    "tokenize",
    "word_count",
    "stem",
    "remove_stopwords",
    "IRREGULAR_FORMS",
]


@dataclass(frozen=True)
class Token:
    """One whitespace-delimited token.

    surface is the raw chunk as it appears in the text; normalized is the
    lowercased core with surrounding punctuation stripped (interior
    punctuation such as apostrophes survives). offset indexes the first
    character of the surface in the source text.
    """

    surface: str
    normalized: str
    offset: int
    is_allcaps: bool


def _strip_punct(chunk: str) -> str:
    start = 0
    end = len(chunk)
    while start < end and not chunk[start].isalnum():
        start += 1
    while end > start and not chunk[end - 1].isalnum():
        end -= 1
    return chunk[start:end]


def tokenize(text: str) -> list[Token]:
    """Split on whitespace; punctuation-only chunks emit no token.

    "(34F)" normalizes to "34f" so parenthesized demographic disclosures
    survive, and "don't" keeps its interior apostrophe.
    """
    tokens: list[Token] = []
    i = 0
    n = len(text)
    while i < n:
        if text[i].isspace():
            i += 1
            continue
        j = i
        while j < n and not text[j].isspace():
            j += 1
        surface = text[i:j]
        core = _strip_punct(surface)
        if core:
            letters = [c for c in surface if c.isalpha()]
            allcaps = len(letters) >= 2 and all(c.isupper() for c in letters)
            tokens.append(
                Token(
                    surface=surface,
                    normalized=core.lower(),
                    offset=i,
                    is_allcaps=allcaps,
                )
            )
        i = j
    return tokens


def word_count(text: str) -> int:
    """Number of tokens tokenize() emits. Counted before stopword removal."""
    return len(tokenize(text))


# Irregular inflections mapped straight to their base form, checked before
# any suffix rule. Covers the high-frequency verbs and kinship nouns that
# dominate advice-forum titles.
IRREGULAR_FORMS: dict[str, str] = {
    # be / auxiliaries
    "am": "be", "is": "be", "are": "be", "was": "be", "were": "be",
    "been": "be", "being": "be", "isn't": "be", "wasn't": "be",
    "aren't": "be", "weren't": "be",
    "has": "have", "had": "have", "hasn't": "have", "hadn't": "have",
    "does": "do", "did": "do", "done": "do", "doesn't": "do", "didn't": "do",
    # common irregular verbs
    "told": "tell", "tells": "tell",
    "said": "say", "says": "say",
    "went": "go", "goes": "go", "gone": "go",
    "got": "get", "gotten": "get",
    "gave": "give", "given": "give",
    "took": "take", "taken": "take",
    "made": "make",
    "knew": "know", "known": "know",
    "felt": "feel",
    "thought": "think",
    "left": "leave", "leaves": "leave",
    "kept": "keep",
    "found": "find",
    "came": "come",
    "saw": "see", "seen": "see",
    "met": "meet",
    "paid": "pay",
    "bought": "buy",
    "broke": "break", "broken": "break",
    "chose": "choose", "chosen": "choose",
    "spoke": "speak", "spoken": "speak",
    "wrote": "write", "written": "write",
    "ate": "eat", "eaten": "eat",
    "let's": "let",
    "won't": "will",
    "forgot": "forget", "forgotten": "forget",
    # inflections whose stripped form loses a final "e" or doubles a
    # consonant, pinned so the family shares one base
    "refused": "refuse", "refuses": "refuse", "refusing": "refuse",
    "making": "make",
    "taking": "take",
    "giving": "give",
    "leaving": "leave",
    "moved": "move", "moves": "move", "moving": "move",
    "lived": "live", "living": "live",
    "loved": "love", "loves": "love", "loving": "love",
    "lied": "lie", "lies": "lie", "lying": "lie",
    "invited": "invite", "invites": "invite", "inviting": "invite",
    "shared": "share", "shares": "share", "sharing": "share",
    "canceled": "cancel", "cancelled": "cancel",
    "canceling": "cancel", "cancelling": "cancel",
    "stopped": "stop", "stopping": "stop",
    "cried": "cry",
    "gives": "give", "makes": "make", "takes": "take",
    # -sed participles: a bare "ed" strip leaves a stem that the "s" rule
    # would cut again on a second pass
    "abused": "abuse", "abuses": "abuse", "abusing": "abuse",
    "accused": "accuse", "accuses": "accuse", "accusing": "accuse",
    "confused": "confuse", "confuses": "confuse", "confusing": "confuse",
    "pleased": "please", "pleases": "please", "pleasing": "please",
    # plurals that the "es" strip would cut one letter short
    "homes": "home", "houses": "house", "issues": "issue",
    "messages": "message", "names": "name", "phones": "phone",
    "roommates": "roommate",
    # nouns that merely end in "ing"; identity entries block the strip
    "evening": "evening", "morning": "morning", "wedding": "wedding",
    "feeling": "feeling", "sibling": "sibling",
    "anything": "anything", "everything": "everything",
    "nothing": "nothing", "something": "something",
    # irregular nouns
    "children": "child",
    "wives": "wife",
    "lives": "life",
    "men": "man",
    "women": "woman",
    "people": "person",
    "feet": "foot",
    "teeth": "tooth",
}


def stem(normalized: str) -> str:
    """Crude suffix stemmer for grouping inflected variants.

    Irregular forms are resolved from a table first; then "ies" -> "y" and
    "sses" -> "ss"; then the first applicable of {ing, ed, es, s} is
    stripped when at least three letters remain. Words ending in "ss" never
    lose their final "s" ("boss" stays "boss"). Idempotent on its output.
    """
    word = IRREGULAR_FORMS.get(normalized)
    if word is not None:
        return word
    word = normalized
    if word.endswith("ies") and len(word) > 3:
        return word[:-3] + "y"
    if word.endswith("sses"):
        return word[:-2]
    for suffix in ("ing", "ed", "es", "s"):
        if word.endswith(suffix) and len(word) - len(suffix) >= 3:
            if suffix == "s" and word.endswith("ss"):
                continue
            return word[: -len(suffix)]
    return word


def remove_stopwords(tokens: Iterable[Token], stopwords: frozenset[str] | set[str]) -> list[Token]:
    """Order-preserving filter on the normalized form."""
    return [t for t in tokens if t.normalized not in stopwords]
