"""Two document sentiment scorers.

The weighted-lexicon score sums integer word weights over the whole document
(plus a length-adjusted variant). The valence model additionally reads
context: negation within a 3-token window, intensity boosters and dampeners
with distance damping, all-caps emphasis, exclamation emphasis, and
contrastive "but" weighting, then squashes the modified sum into a compound
score in (-1, 1) and reports positive/negative/neutral token-mass
proportions.

All rule constants come from the versioned configuration file loaded by the
lexicons module; nothing is hard-coded here. Question-mark emphasis, idioms,
and emoji are intentionally unsupported: the target corpus is long-form
prose where they barely register.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence

from .lexicons import LexiconSet, ValenceRules, WeightedLexicon
from .textprep import Token, tokenize

__all__ = [
    "ValenceConfig",
    "ValenceScores",
    "afinn_score",
    "afinn_adjusted",
    "valence_scores",
    "normalize_valence_sum",
]


def afinn_score(tokens: Sequence[Token], lex: WeightedLexicon) -> int:
    """Sum of lexicon weights over normalized tokens; unmatched words are 0."""
    return sum(lex.get(t.normalized) for t in tokens)


def afinn_adjusted(score: int, word_count: int) -> float:
    """Per-word score; 0 for empty documents."""
    if word_count == 0:
        return 0.0
    return score / word_count


@dataclass(frozen=True)
class ValenceConfig:
    """Everything the valence scorer needs: word ratings, modifier lists,
    and rule constants."""

    lexicon: Mapping[str, float]
    negators: frozenset[str]
    boosters: frozenset[str]
    dampeners: frozenset[str]
    rules: ValenceRules

    @classmethod
    def from_lexicons(cls, lex: LexiconSet) -> "ValenceConfig":
        return cls(
            lexicon=lex.valence,
            negators=lex.negators,
            boosters=lex.boosters,
            dampeners=lex.dampeners,
            rules=lex.rules,
        )


@dataclass(frozen=True)
class ValenceScores:
    compound: float
    pos: float
    neg: float
    neu: float


def normalize_valence_sum(s: float, alpha: float = 15.0) -> float:
    """Squash a raw valence sum into (-1, 1); odd and strictly increasing."""
    value = s / math.sqrt(s * s + alpha)
    return max(-1.0, min(1.0, value))


def _mixed_case(tokens: Sequence[Token]) -> bool:
    # all-caps emphasis only applies when the document mixes cased styles
    has_caps = False
    has_plain = False
    for t in tokens:
        if not any(c.isalpha() for c in t.surface):
            continue
        if t.is_allcaps:
            has_caps = True
        else:
            has_plain = True
        if has_caps and has_plain:
            return True
    return False


def _token_valence(i: int, tokens: Sequence[Token], cfg: ValenceConfig, mixed: bool) -> float:
    rules = cfg.rules
    tok = tokens[i]
    v = cfg.lexicon[tok.normalized]
    if mixed and tok.is_allcaps and v != 0:
        v += rules.caps_increment if v > 0 else -rules.caps_increment
    # intensity words among the three preceding tokens, damped by distance
    for dist, scale in ((1, 1.0), (2, rules.distance2_scale), (3, rules.distance3_scale)):
        j = i - dist
        if j < 0:
            break
        prev = tokens[j].normalized
        if prev in cfg.boosters:
            s = rules.booster_increment * scale
        elif prev in cfg.dampeners:
            s = -rules.booster_increment * scale
        else:
            continue
        if v < 0:
            s = -s
        v += s
    # a single negation flip for any negator in the window
    for dist in range(1, rules.negation_window + 1):
        j = i - dist
        if j < 0:
            break
        if tokens[j].normalized in cfg.negators:
            v *= rules.negation_multiplier
            break
    return v


def valence_scores(text: str, cfg: ValenceConfig) -> ValenceScores:
    """Score one document. Empty or lexicon-free text is all-neutral."""
    rules = cfg.rules
    tokens = tokenize(text)
    if not tokens:
        return ValenceScores(compound=0.0, pos=0.0, neg=0.0, neu=1.0)

    mixed = _mixed_case(tokens)
    valences = [
        _token_valence(i, tokens, cfg, mixed) if t.normalized in cfg.lexicon else 0.0
        for i, t in enumerate(tokens)
    ]

    but_idx = next((i for i, t in enumerate(tokens) if t.normalized == "but"), None)
    if but_idx is not None:
        valences = [
            v * rules.but_before_weight
            if i < but_idx
            else (v * rules.but_after_weight if i > but_idx else v)
            for i, v in enumerate(valences)
        ]

    total_sum = math.fsum(valences)
    emphasis = min(text.count("!"), rules.max_exclamations) * rules.exclamation_increment
    if total_sum > 0:
        total_sum += emphasis
    elif total_sum < 0:
        total_sum -= emphasis
    compound = normalize_valence_sum(total_sum, rules.normalization_alpha)

    pos_mass = math.fsum(v + 1.0 for v in valences if v > 0)
    neg_mass = math.fsum(v - 1.0 for v in valences if v < 0)
    neu_mass = float(sum(1 for v in valences if v == 0))
    total_mass = pos_mass + abs(neg_mass) + neu_mass
    if total_mass == 0:
        return ValenceScores(compound=compound, pos=0.0, neg=0.0, neu=1.0)
    return ValenceScores(
        compound=compound,
        pos=pos_mass / total_mass,
        neg=abs(neg_mass) / total_mass,
        neu=neu_mass / total_mass,
    )
