import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from advicelens.lexicons import WeightedLexicon
from advicelens.sentiment import (
    ValenceConfig,
    afinn_adjusted,
    afinn_score,
    normalize_valence_sum,
    valence_scores,
)
from advicelens.textprep import tokenize

# hand-derived: valence("good") = 1.9, so S = 1.9 and
# compound = 1.9 / sqrt(1.9^2 + 15)
GOOD_COMPOUND = 0.44043357076016854
# "not good": S = 1.9 * -0.74 = -1.406, compound = S / sqrt(S^2 + 15)
NOT_GOOD_COMPOUND = -0.3412376512543242


@pytest.fixture(scope="module")
def config(lexicons):
    return ValenceConfig.from_lexicons(lexicons)


class TestAfinn:
    def test_empty(self, lexicons):
        assert afinn_score([], lexicons.weighted) == 0

    def test_simple_sum(self, lexicons):
        assert afinn_score(tokenize("good good bad"), lexicons.weighted) == 3

    def test_no_lexicon_words(self, lexicons):
        assert afinn_score(tokenize("the cat sat quietly"), lexicons.weighted) == 0

    def test_case_and_punctuation_insensitive(self, lexicons):
        assert afinn_score(tokenize("GOOD! Good. good?"), lexicons.weighted) == 9

    def test_adjusted(self):
        assert afinn_adjusted(-98, 100) == pytest.approx(-0.98, abs=1e-12)
        assert afinn_adjusted(0, 500) == 0.0
        assert afinn_adjusted(5, 0) == 0.0

    @given(
        st.lists(st.sampled_from(["up", "down", "flat", "spin"]), max_size=25),
        st.lists(st.sampled_from(["up", "down", "flat", "spin"]), max_size=25),
    )
    def test_additive_over_concatenation(self, a, b):
        lex = WeightedLexicon(entries={"up": 2, "down": -3})
        score = lambda words: afinn_score(tokenize(" ".join(words)), lex)
        assert score(a + b) == score(a) + score(b)


class TestNormalization:
    def test_zero(self):
        assert normalize_valence_sum(0.0) == 0.0

    def test_odd_symmetry(self):
        for s in (0.5, 1.9, 7.3, 120.0):
            assert normalize_valence_sum(-s) == -normalize_valence_sum(s)

    def test_strictly_increasing_and_bounded(self):
        values = [normalize_valence_sum(s) for s in (-50, -5, -1, 0, 1, 5, 50)]
        assert values == sorted(values)
        assert all(-1.0 <= v <= 1.0 for v in values)

    @given(st.floats(min_value=-1e6, max_value=1e6, allow_nan=False))
    def test_bounds_everywhere(self, s):
        assert -1.0 <= normalize_valence_sum(s) <= 1.0


class TestValenceRules:
    def test_empty_text(self, config):
        scores = valence_scores("", config)
        assert (scores.compound, scores.pos, scores.neg, scores.neu) == (0, 0, 0, 1)

    def test_no_matches_all_neutral(self, config):
        scores = valence_scores("the chair is in the room", config)
        assert scores.compound == 0.0
        assert scores.neu == 1.0

    def test_single_positive_word(self, config):
        scores = valence_scores("good", config)
        assert scores.compound == pytest.approx(GOOD_COMPOUND, abs=1e-9)
        assert scores.pos == 1.0

    def test_negation_flips_and_shrinks(self, config):
        scores = valence_scores("not good", config)
        assert scores.compound == pytest.approx(NOT_GOOD_COMPOUND, abs=1e-9)
        # proportions by mass: neg (1.406+1), neu 1 -> /3.406
        assert scores.neg == pytest.approx(2.406 / 3.406, abs=1e-9)
        assert scores.neu == pytest.approx(1.0 / 3.406, abs=1e-9)
        assert abs(scores.compound) < GOOD_COMPOUND

    def test_negation_window_is_three_tokens(self, config):
        near = valence_scores("not very very good", config).compound
        far = valence_scores("not very very very good", config).compound
        assert near < 0 < far

    def test_booster_monotonicity(self, config):
        plain = valence_scores("good", config).compound
        boosted = valence_scores("very good", config).compound
        dampened = valence_scores("slightly good", config).compound
        assert dampened < plain < boosted

    def test_booster_distance_decay(self, config):
        d1 = valence_scores("very good", config).compound
        d2 = valence_scores("very then good", config).compound
        d3 = valence_scores("very then then good", config).compound
        plain = valence_scores("good", config).compound
        assert plain < d3 < d2 < d1

    def test_booster_on_negative_word_deepens(self, config):
        plain = valence_scores("bad", config).compound
        boosted = valence_scores("very bad", config).compound
        assert boosted < plain < 0

    def test_exclamation_monotonicity(self, config):
        base = valence_scores("good", config).compound
        one = valence_scores("good!", config).compound
        three = valence_scores("good!!!", config).compound
        assert base < one < three

    def test_exclamation_capped_at_four(self, config):
        four = valence_scores("good!!!!", config).compound
        nine = valence_scores("good!!!!!!!!!", config).compound
        assert four == nine

    def test_exclamation_pushes_toward_sign(self, config):
        assert valence_scores("bad!!", config).compound < valence_scores("bad", config).compound

    def test_allcaps_emphasis_requires_mixed_case(self, config):
        mixed = valence_scores("this is GOOD stuff", config).compound
        plain = valence_scores("this is good stuff", config).compound
        yelling = valence_scores("THIS IS GOOD STUFF", config).compound
        assert mixed > plain
        assert yelling == pytest.approx(plain, abs=1e-12)

    def test_but_shifts_weight_to_later_clause(self, config):
        balanced = valence_scores("good and bad", config).compound
        contrast = valence_scores("good but bad", config).compound
        assert contrast < balanced

    def test_very_good_exclaims_beat_plain_good(self, config):
        assert (
            valence_scores("very good!!!", config).compound
            > valence_scores("good", config).compound
        )

    def test_proportions_sum_to_one(self, config):
        for text in (
            "good",
            "not good",
            "very bad day but a GREAT dinner!!",
            "nothing matched here at all",
            "",
        ):
            s = valence_scores(text, config)
            assert s.pos + s.neg + s.neu == pytest.approx(1.0, abs=1e-9)
            assert 0.0 <= s.pos <= 1.0
            assert 0.0 <= s.neg <= 1.0
            assert 0.0 <= s.neu <= 1.0

    def test_neutral_token_permutation_invariance(self, config):
        a = valence_scores("table chair lamp floor rug good", config)
        b = valence_scores("rug floor lamp chair table good", config)
        assert a == b

    def test_corpus_bounds(self, config, fixture_posts):
        from advicelens.corpus import make_document

        for post in fixture_posts:
            s = valence_scores(make_document(post).text, config)
            assert -1.0 <= s.compound <= 1.0
            assert s.pos + s.neg + s.neu == pytest.approx(1.0, abs=1e-9)

    @given(
        st.lists(
            st.sampled_from(
                ["good", "bad", "not", "very", "slightly", "but", "chair", "so"]
            ),
            max_size=12,
        ),
        st.integers(min_value=0, max_value=6),
    )
    @settings(max_examples=200)
    def test_rule_soup_invariants(self, config, words, bangs):
        text = " ".join(words) + "!" * bangs
        s = valence_scores(text, config)
        assert -1.0 <= s.compound <= 1.0
        assert s.pos + s.neg + s.neu == pytest.approx(1.0, abs=1e-9)
