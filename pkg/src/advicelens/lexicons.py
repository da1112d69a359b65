"""Loaders and validators for every bundled word-list resource.

Formats (all UTF-8; blank lines and lines starting with '#' are ignored):
  - weighted lexicon: "word<TAB>weight", integer weight in [-5, 5], nonzero
  - valence lexicon:  "word<TAB>valence", real valence
  - word lists (negators, boosters, dampeners, gendered lists, stopwords):
    one lowercase word per line
  - POS lexicon: "word<TAB>tag" with tag NOUN, VERB, or OTHER
  - rules config: "key = value" pairs of real constants

Everything is immutable after load and safe to share across threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Iterable, Iterator, Mapping

from .errors import LexiconError
from .textprep import Token

__all__ = [
    "WeightedLexicon",
    "GenderLexicon",
    "ValenceRules",
    "LexiconSet",
    "load_weighted_lexicon",
    "load_valence_lexicon",
    "load_wordlist",
    "load_gender_lexicon",
    "load_pos_lexicon",
    "load_rules_config",
    "load_lexicon_set",
    "bundled_data_dir",
    "count_matches",
]

POS_TAGS = ("NOUN", "VERB", "OTHER")


def bundled_data_dir() -> Path:
    """Directory of the word lists shipped with the package."""
    return Path(resources.files("advicelens").joinpath("data"))  # type: ignore[arg-type]


def _data_lines(path: Path) -> Iterator[tuple[int, str]]:
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise LexiconError(f"cannot read lexicon file {path}: {exc}") from exc
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield lineno, line


@dataclass(frozen=True)
class WeightedLexicon:
    """Word -> integer weight in [-5, 5], all weights nonzero."""

    entries: Mapping[str, int]

    def __post_init__(self) -> None:
        if not self.entries:
            raise LexiconError("empty lexicon")
        for word, weight in self.entries.items():
            if not word or word != word.lower():
                raise LexiconError(f"lexicon word not lowercase: {word!r}")
            if not isinstance(weight, int) or isinstance(weight, bool):
                raise LexiconError(f"non-integer weight for {word!r}")
            if weight == 0 or not -5 <= weight <= 5:
                raise LexiconError(f"weight out of range for {word!r}: {weight}")

    def __contains__(self, word: str) -> bool:
        return word in self.entries

    def get(self, word: str, default: int = 0) -> int:
        return self.entries.get(word, default)

    def __len__(self) -> int:
        return len(self.entries)


def load_weighted_lexicon(path: Path | str) -> WeightedLexicon:
    """Parse a "word<TAB>weight" file; duplicates and bad weights rejected."""
    path = Path(path)
    entries: dict[str, int] = {}
    for lineno, line in _data_lines(path):
        parts = line.split("\t")
        if len(parts) != 2:
            raise LexiconError(f"{path}:{lineno}: malformed line {line!r}")
        word = parts[0].strip().lower()
        try:
            weight = int(parts[1])
        except ValueError as exc:
            raise LexiconError(f"{path}:{lineno}: non-integer weight {parts[1]!r}") from exc
        if weight == 0 or not -5 <= weight <= 5:
            raise LexiconError(f"{path}:{lineno}: weight out of range: {weight}")
        if word in entries:
            raise LexiconError(f"{path}:{lineno}: duplicate word {word!r}")
        entries[word] = weight
    if not entries:
        raise LexiconError(f"{path}: empty lexicon")
    return WeightedLexicon(entries=entries)


def load_valence_lexicon(path: Path | str) -> dict[str, float]:
    """Parse a "word<TAB>mean-valence" file with real-valued valences."""
    path = Path(path)
    entries: dict[str, float] = {}
    for lineno, line in _data_lines(path):
        parts = line.split("\t")
        if len(parts) != 2:
            raise LexiconError(f"{path}:{lineno}: malformed line {line!r}")
        word = parts[0].strip().lower()
        try:
            valence = float(parts[1])
        except ValueError as exc:
            raise LexiconError(f"{path}:{lineno}: non-numeric valence {parts[1]!r}") from exc
        if word in entries:
            raise LexiconError(f"{path}:{lineno}: duplicate word {word!r}")
        entries[word] = valence
    if not entries:
        raise LexiconError(f"{path}: empty valence lexicon")
    return entries


def load_wordlist(path: Path | str) -> frozenset[str]:
    """One word per line, lowercased on load."""
    path = Path(path)
    words = set()
    for lineno, line in _data_lines(path):
        if len(line.split()) != 1:
            raise LexiconError(f"{path}:{lineno}: expected one word per line, got {line!r}")
        words.add(line.lower())
    return frozenset(words)


@dataclass(frozen=True)
class GenderLexicon:
    masculine: frozenset[str]
    feminine: frozenset[str]

    def __post_init__(self) -> None:
        if not self.masculine or not self.feminine:
            raise LexiconError("gender word lists must be non-empty")
        overlap = self.masculine & self.feminine
        if overlap:
            raise LexiconError(f"gender word lists overlap: {sorted(overlap)}")


def load_gender_lexicon(masc_path: Path | str, fem_path: Path | str) -> GenderLexicon:
    return GenderLexicon(
        masculine=load_wordlist(masc_path),
        feminine=load_wordlist(fem_path),
    )


def load_pos_lexicon(path: Path | str) -> dict[str, str]:
    """Parse "word<TAB>tag" lines; tag must be NOUN, VERB, or OTHER."""
    path = Path(path)
    entries: dict[str, str] = {}
    for lineno, line in _data_lines(path):
        parts = line.split("\t")
        if len(parts) != 2:
            raise LexiconError(f"{path}:{lineno}: malformed line {line!r}")
        word = parts[0].strip().lower()
        tag = parts[1].strip().upper()
        if tag not in POS_TAGS:
            raise LexiconError(f"{path}:{lineno}: unknown tag {parts[1]!r}")
        if word in entries:
            raise LexiconError(f"{path}:{lineno}: duplicate word {word!r}")
        entries[word] = tag
    if not entries:
        raise LexiconError(f"{path}: empty POS lexicon")
    return entries


@dataclass(frozen=True)
class ValenceRules:
    """Constants for the rule-based valence model, read from configuration."""

    negation_multiplier: float
    booster_increment: float
    caps_increment: float
    exclamation_increment: float
    max_exclamations: int
    distance2_scale: float
    distance3_scale: float
    but_before_weight: float
    but_after_weight: float
    normalization_alpha: float
    negation_window: int


_RULE_KEYS = {
    "negation_multiplier": float,
    "booster_increment": float,
    "caps_increment": float,
    "exclamation_increment": float,
    "max_exclamations": int,
    "distance2_scale": float,
    "distance3_scale": float,
    "but_before_weight": float,
    "but_after_weight": float,
    "normalization_alpha": float,
    "negation_window": int,
}


def load_rules_config(path: Path | str) -> ValenceRules:
    path = Path(path)
    raw: dict[str, str] = {}
    for lineno, line in _data_lines(path):
        if "=" not in line:
            raise LexiconError(f"{path}:{lineno}: expected 'key = value', got {line!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        if key not in _RULE_KEYS:
            raise LexiconError(f"{path}:{lineno}: unknown rule constant {key!r}")
        if key in raw:
            raise LexiconError(f"{path}:{lineno}: duplicate rule constant {key!r}")
        raw[key] = value.strip()
    missing = sorted(set(_RULE_KEYS) - set(raw))
    if missing:
        raise LexiconError(f"{path}: missing rule constants: {missing}")
    kwargs: dict[str, float | int] = {}
    for key, conv in _RULE_KEYS.items():
        try:
            kwargs[key] = conv(raw[key])
        except ValueError as exc:
            raise LexiconError(f"{path}: bad value for {key!r}: {raw[key]!r}") from exc
    return ValenceRules(**kwargs)  # type: ignore[arg-type]


@dataclass(frozen=True)
class LexiconSet:
    """Every resource the pipeline needs, loaded from one directory."""

    weighted: WeightedLexicon
    valence: Mapping[str, float]
    negators: frozenset[str]
    boosters: frozenset[str]
    dampeners: frozenset[str]
    rules: ValenceRules
    gender: GenderLexicon
    stopwords: frozenset[str]
    pos: Mapping[str, str]
    version: str


_FILES = {
    "weighted": "afinn.tsv",
    "valence": "valence.tsv",
    "negators": "negators.txt",
    "boosters": "boosters.txt",
    "dampeners": "dampeners.txt",
    "rules": "valence_rules.cfg",
    "masculine": "masculine.txt",
    "feminine": "feminine.txt",
    "stopwords": "stopwords.txt",
    "pos": "pos_words.tsv",
    "version": "VERSION",
}


def load_lexicon_set(directory: Path | str | None = None) -> LexiconSet:
    """Load all resources from a directory (bundled data when None)."""
    base = Path(directory) if directory is not None else bundled_data_dir()
    paths = {key: base / name for key, name in _FILES.items()}
    for key, p in paths.items():
        if not p.is_file():
            raise LexiconError(f"missing lexicon file: {p}")
    try:
        version = paths["version"].read_text(encoding="utf-8").strip()
    except OSError as exc:
        raise LexiconError(f"cannot read {paths['version']}: {exc}") from exc
    boosters = load_wordlist(paths["boosters"])
    dampeners = load_wordlist(paths["dampeners"])
    overlap = boosters & dampeners
    if overlap:
        raise LexiconError(f"boosters and dampeners overlap: {sorted(overlap)}")
    return LexiconSet(
        weighted=load_weighted_lexicon(paths["weighted"]),
        valence=load_valence_lexicon(paths["valence"]),
        negators=load_wordlist(paths["negators"]),
        boosters=boosters,
        dampeners=dampeners,
        rules=load_rules_config(paths["rules"]),
        gender=load_gender_lexicon(paths["masculine"], paths["feminine"]),
        stopwords=load_wordlist(paths["stopwords"]),
        pos=load_pos_lexicon(paths["pos"]),
        version=version,
    )


def count_matches(tokens: Iterable[Token], words: frozenset[str] | set[str]) -> int:
    """Multiset count of tokens whose normalized form is in the set."""
    return sum(1 for t in tokens if t.normalized in words)
