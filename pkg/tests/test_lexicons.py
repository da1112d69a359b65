import shutil

import pytest
from hypothesis import given
from hypothesis import strategies as st

from advicelens.errors import LexiconError
from advicelens.lexicons import (
    GenderLexicon,
    WeightedLexicon,
    bundled_data_dir,
    count_matches,
    load_lexicon_set,
    load_rules_config,
    load_weighted_lexicon,
    load_wordlist,
)
from advicelens.textprep import tokenize


@pytest.fixture()
def lexicon_dir(tmp_path):
    dest = tmp_path / "lexicons"
    shutil.copytree(bundled_data_dir(), dest)
    return dest


class TestWeightedLexicon:
    def test_bundled_loads(self, lexicons):
        assert lexicons.weighted.get("good") == 3
        assert lexicons.weighted.get("bad") == -3
        assert "notaword" not in lexicons.weighted
        assert len(lexicons.weighted) > 100

    def test_weights_in_range_and_nonzero(self, lexicons):
        for word, weight in lexicons.weighted.entries.items():
            assert -5 <= weight <= 5 and weight != 0, word
            assert word == word.lower()

    def test_duplicate_word_rejected(self, tmp_path):
        path = tmp_path / "lex.tsv"
        path.write_text("good\t3\ngood\t2\n", encoding="utf-8")
        with pytest.raises(LexiconError) as err:
            load_weighted_lexicon(path)
        assert "good" in str(err.value)

    def test_zero_weight_rejected(self, tmp_path):
        path = tmp_path / "lex.tsv"
        path.write_text("meh\t0\n", encoding="utf-8")
        with pytest.raises(LexiconError):
            load_weighted_lexicon(path)

    def test_out_of_range_weight_rejected(self, tmp_path):
        path = tmp_path / "lex.tsv"
        path.write_text("wow\t6\n", encoding="utf-8")
        with pytest.raises(LexiconError):
            load_weighted_lexicon(path)

    def test_malformed_line_names_position(self, tmp_path):
        path = tmp_path / "lex.tsv"
        path.write_text("good\t3\nbroken-line\n", encoding="utf-8")
        with pytest.raises(LexiconError) as err:
            load_weighted_lexicon(path)
        assert "2" in str(err.value)

    def test_comments_and_blanks_skipped(self, tmp_path):
        path = tmp_path / "lex.tsv"
        path.write_text("# header\n\ngood\t3\n", encoding="utf-8")
        assert load_weighted_lexicon(path).get("good") == 3

    def test_missing_file(self, tmp_path):
        with pytest.raises(LexiconError):
            load_weighted_lexicon(tmp_path / "nope.tsv")

    def test_empty_lexicon_rejected(self):
        with pytest.raises(LexiconError):
            WeightedLexicon(entries={})


class TestRulesConfig:
    def test_bundled_values(self, lexicons):
        rules = lexicons.rules
        assert rules.negation_multiplier == -0.74
        assert rules.booster_increment == 0.293
        assert rules.caps_increment == 0.733
        assert rules.exclamation_increment == 0.292
        assert rules.max_exclamations == 4
        assert rules.distance2_scale == 0.95
        assert rules.distance3_scale == 0.90
        assert rules.but_before_weight == 0.5
        assert rules.but_after_weight == 1.5
        assert rules.normalization_alpha == 15.0
        assert rules.negation_window == 3

    def test_missing_key_rejected(self, tmp_path):
        path = tmp_path / "rules.cfg"
        path.write_text("negation_multiplier=-0.74\n", encoding="utf-8")
        with pytest.raises(LexiconError):
            load_rules_config(path)

    def test_unknown_key_rejected(self, lexicon_dir):
        path = lexicon_dir / "valence_rules.cfg"
        path.write_text(path.read_text(encoding="utf-8") + "bogus_knob=1\n", encoding="utf-8")
        with pytest.raises(LexiconError) as err:
            load_rules_config(path)
        assert "bogus_knob" in str(err.value)

    def test_duplicate_key_rejected(self, lexicon_dir):
        path = lexicon_dir / "valence_rules.cfg"
        path.write_text(
            path.read_text(encoding="utf-8") + "negation_window=3\n", encoding="utf-8"
        )
        with pytest.raises(LexiconError):
            load_rules_config(path)


class TestLexiconSet:
    def test_bundled_set_loads(self, lexicons):
        assert lexicons.version
        assert "not" in lexicons.negators
        assert "very" in lexicons.boosters
        assert "slightly" in lexicons.dampeners
        assert "the" in lexicons.stopwords
        assert lexicons.pos["wedding"] == "NOUN"
        assert lexicons.pos["tell"] == "VERB"
        assert lexicons.pos["was"] == "OTHER"

    def test_gender_lists_disjoint(self, lexicons):
        assert not (lexicons.gender.masculine & lexicons.gender.feminine)

    def test_gender_overlap_rejected(self):
        with pytest.raises(LexiconError):
            GenderLexicon(
                masculine=frozenset({"he", "them"}), feminine=frozenset({"she", "them"})
            )

    def test_booster_dampener_overlap_rejected(self, lexicon_dir):
        path = lexicon_dir / "dampeners.txt"
        path.write_text(path.read_text(encoding="utf-8") + "very\n", encoding="utf-8")
        with pytest.raises(LexiconError) as err:
            load_lexicon_set(lexicon_dir)
        assert "very" in str(err.value)

    def test_missing_file_named_in_error(self, lexicon_dir):
        (lexicon_dir / "negators.txt").unlink()
        with pytest.raises(LexiconError) as err:
            load_lexicon_set(lexicon_dir)
        assert "negators.txt" in str(err.value)

    def test_valence_words_not_modifiers(self, lexicons):
        overlap = set(lexicons.valence) & (
            lexicons.boosters | lexicons.dampeners | lexicons.negators
        )
        assert not overlap
        assert "but" not in lexicons.valence

    def test_wordlist_lowercased(self, tmp_path):
        path = tmp_path / "words.txt"
        path.write_text("He\nSHE\n", encoding="utf-8")
        assert load_wordlist(path) == frozenset({"he", "she"})


class TestCountMatches:
    def test_multiset_counting(self):
        tokens = tokenize("He said he and HE agree")
        assert count_matches(tokens, frozenset({"he"})) == 3

    def test_no_matches(self):
        assert count_matches(tokenize("nothing here"), frozenset({"wife"})) == 0

    def test_trailing_punctuation_does_not_block_match(self, lexicons):
        tokens = tokenize("my wife, my wife!")
        assert count_matches(tokens, lexicons.gender.feminine) == 2

    def test_possessives_are_explicit_entries(self, lexicons):
        # interior apostrophes survive normalization, so "wife's" matches
        # only because the list carries the possessive form itself
        tokens = tokenize("my wife's sister")
        assert count_matches(tokens, lexicons.gender.feminine) == 2

    @given(
        st.lists(st.sampled_from(["he", "she", "x", "y"]), max_size=15),
        st.lists(st.sampled_from(["he", "she", "x", "y"]), max_size=15),
    )
    def test_additive_over_concatenation(self, a, b):
        words = frozenset({"he", "she"})
        left = count_matches(tokenize(" ".join(a)), words)
        right = count_matches(tokenize(" ".join(b)), words)
        both = count_matches(tokenize(" ".join(a + b)), words)
        assert both == left + right
