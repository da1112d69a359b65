"""Extraction of poster age and gender from semi-structured disclosures.

Posters write their age and gender inline, usually near the start of a post,
in compact forms like "(34F)", "[21m]", "34 f", or "F34". The scanner finds
every such pattern; a mention counts as the poster's own only when one of
the words "i", "me", or "my" appears immediately before it.

The 3-character prefix heuristic is deliberately crude: it misses "I'm 34F"
(only "m " precedes the digits) and it happily attributes reported speech
like "she told me 30f was her age" to the poster. Those limitations are
kept, documented, and tested rather than patched, so extraction behavior
stays auditable.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

__all__ = [
    "DemographicMention",
    "Demographics",
    "find_demographic_mentions",
    "extract_self_demographics",
    "format_demographics",
    "MIN_AGE",
    "MAX_AGE",
]

MIN_AGE = 13
MAX_AGE = 99

_FLAGS = re.IGNORECASE | re.ASCII
# age first: "34f", "34 F", "34nb"; marker first: "F34", "nb 21"
_AGE_FIRST = re.compile(r"(?P<age>\d{2}) ?(?P<marker>nb|[fm])", _FLAGS)
_MARKER_FIRST = re.compile(r"(?P<marker>nb|[fm]) ?(?P<age>\d{2})", _FLAGS)
# positions worth attempting a match at
_CANDIDATE = re.compile(r"[0-9fmn]", _FLAGS)
_ALPHA_RUN = re.compile(r"[^\W\d_]+", re.UNICODE)

_SELF_WORDS = frozenset({"i", "me", "my"})

_MARKER_TO_GENDER = {"f": "f", "m": "m", "nb": "n"}


@dataclass(frozen=True)
class DemographicMention:
    """One age/gender pattern occurrence in raw text."""

    offset: int
    age: int | None
    gender: str | None  # "f", "m", or "n"
    prefix3: str  # up to 3 characters preceding the match
    self_attributed: bool
    matched: str  # the exact matched span

    def __post_init__(self) -> None:
        if self.age is None and self.gender is None:
            raise ValueError("mention must carry age or gender")
        if self.age is not None and not MIN_AGE <= self.age <= MAX_AGE:
            raise ValueError(f"age out of range: {self.age}")


@dataclass(frozen=True)
class Demographics:
    """Resolved poster demographics."""

    age: int | None
    gender: str  # "f", "m", "n", or "unknown"
    source: str  # "extracted" or "none"

    def __post_init__(self) -> None:
        if self.gender not in ("f", "m", "n", "unknown"):
            raise ValueError(f"bad gender: {self.gender!r}")
        if self.source not in ("extracted", "none"):
            raise ValueError(f"bad source: {self.source!r}")
        if self.source == "none" and (self.age is not None or self.gender != "unknown"):
            raise ValueError("source 'none' cannot carry demographics")


def _is_self_attributed(prefix: str) -> bool:
    return any(run.lower() in _SELF_WORDS for run in _ALPHA_RUN.findall(prefix))


def _boundaries_ok(text: str, m: re.Match) -> bool:
    # the digit pair must not touch another digit
    a_start, a_end = m.start("age"), m.end("age")
    if a_start > 0 and text[a_start - 1].isdigit():
        return False
    if a_end < len(text) and text[a_end].isdigit():
        return False
    # the gender marker must not touch another letter
    g_start, g_end = m.start("marker"), m.end("marker")
    if g_start > 0 and text[g_start - 1].isalpha():
        return False
    if g_end < len(text) and text[g_end].isalpha():
        return False
    return True


def find_demographic_mentions(text: str) -> list[DemographicMention]:
    """Scan raw text for age/gender disclosure patterns, in offset order.

    Patterns (case-insensitive): two digits then an optional space then a
    gender marker, or the marker first. Markers are "f", "m", or "nb".
    A plain scan is used instead of finditer so a rejected candidate never
    swallows a valid one starting inside it. Ages below 13 are dropped.
    """
    mentions: list[DemographicMention] = []
    i = 0
    n = len(text)
    while i < n:
        probe = _CANDIDATE.search(text, i)
        if probe is None:
            break
        i = probe.start()
        m = _AGE_FIRST.match(text, i) or _MARKER_FIRST.match(text, i)
        if m is None or not _boundaries_ok(text, m):
            i += 1
            continue
        age = int(m.group("age"))
        if age < MIN_AGE:
            i = m.end()
            continue
        prefix = text[max(0, i - 3) : i]
        mentions.append(
            DemographicMention(
                offset=i,
                age=age,
                gender=_MARKER_TO_GENDER[m.group("marker").lower()],
                prefix3=prefix,
                self_attributed=_is_self_attributed(prefix),
                matched=m.group(0),
            )
        )
        i = m.end()
    return mentions


def extract_self_demographics(text: str) -> Demographics:
    """First self-attributed mention wins; no such mention → source 'none'."""
    for mention in find_demographic_mentions(text):
        if mention.self_attributed:
            gender = mention.gender if mention.gender is not None else "unknown"
            return Demographics(age=mention.age, gender=gender, source="extracted")
    return Demographics(age=None, gender="unknown", source="none")


def format_demographics(d: Demographics) -> str:
    """"34,f" both known; "34," age only; ",f" gender only; "" when none."""
    if d.source == "none":
        return ""
    age_part = "" if d.age is None else str(d.age)
    gender_part = d.gender if d.gender in ("f", "m", "n") else ""
    if not age_part and not gender_part:
        return ""
    return f"{age_part},{gender_part}"
