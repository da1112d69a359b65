import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from advicelens.demographics import (
    MAX_AGE,
    MIN_AGE,
    Demographics,
    DemographicMention,
    extract_self_demographics,
    find_demographic_mentions,
    format_demographics,
)


class TestFindMentions:
    def test_parenthesized_age_gender(self):
        mentions = find_demographic_mentions("I (34F) told my sister")
        assert len(mentions) == 1
        m = mentions[0]
        assert (m.age, m.gender) == (34, "f")
        assert m.prefix3 == "I ("
        assert m.self_attributed is True

    def test_bracketed_lowercase(self):
        (m,) = find_demographic_mentions("my[21m] friend")
        assert (m.age, m.gender) == (21, "m")
        assert m.prefix3 == "my["
        assert m.self_attributed is True

    def test_bare_and_gender_first_formats(self):
        assert find_demographic_mentions("21m")[0].age == 21
        (m,) = find_demographic_mentions("F34 here")
        assert (m.age, m.gender) == (34, "f")

    def test_optional_single_space(self):
        (m,) = find_demographic_mentions("I am 34 F.")
        assert (m.age, m.gender) == (34, "f")
        (m,) = find_demographic_mentions("born M 47 exactly")
        assert (m.age, m.gender) == (47, "m")

    def test_nonbinary_marker(self):
        (m,) = find_demographic_mentions("me 21nb here")
        assert (m.age, m.gender) == (21, "n")

    def test_single_n_is_not_a_marker(self):
        assert find_demographic_mentions("room 21n") == []

    def test_underage_discarded(self):
        assert find_demographic_mentions("he is 9m old") == []
        assert find_demographic_mentions("my son (12M) plays") == []

    def test_scan_resumes_after_underage_match(self):
        (m,) = find_demographic_mentions("I am 12m but my friend is 44f")
        assert m.age == 44 and not m.self_attributed

    def test_non_marker_letter(self):
        assert find_demographic_mentions("room 34B on floor 2") == []

    def test_digit_adjacency_blocks(self):
        assert find_demographic_mentions("134f") == []
        assert find_demographic_mentions("year 2034f") == []

    def test_letter_adjacency_blocks_marker(self):
        assert find_demographic_mentions("34fx") == []
        assert find_demographic_mentions("xf34") == []

    def test_letter_before_age_digits_allowed(self):
        # only the digit pair has a digit-adjacency rule
        (m,) = find_demographic_mentions("x34f")
        assert m.age == 34

    def test_multiple_mentions_in_order(self):
        mentions = find_demographic_mentions("I (24F) met him (26M) online")
        assert [(m.age, m.gender) for m in mentions] == [(24, "f"), (26, "m")]
        assert [m.self_attributed for m in mentions] == [True, False]
        assert mentions[0].offset < mentions[1].offset

    def test_offset_fidelity(self):
        text = "intro text, then me 30F, done"
        for m in find_demographic_mentions(text):
            assert text[m.offset : m.offset + len(m.matched)] == m.matched

    def test_prefix_shorter_at_text_start(self):
        (m,) = find_demographic_mentions("34f hello")
        assert m.prefix3 == ""
        (m,) = find_demographic_mentions("a 34f")
        assert m.prefix3 == "a "

    def test_self_words_are_whole_runs_inside_the_window(self):
        # runs are taken inside the 3-char window, not the full text:
        # "ami " clips to "mi " (no self word) but "amy " clips to "my "
        (m,) = find_demographic_mentions("ami 34f")
        assert m.self_attributed is False
        (m,) = find_demographic_mentions("amy 34f")
        assert m.self_attributed is True

    def test_wife_mention_is_not_self_attributed(self):
        # the three characters before "30F" are "e (", which has no i/me/my run
        (m,) = find_demographic_mentions("My wife (30F) and I disagree")
        assert m.self_attributed is False

    def test_reported_speech_false_positive(self):
        # "me " lands in the window even though the age is someone else's;
        # the crude prefix rule accepts it
        (m,) = find_demographic_mentions("she told me 30f was her age")
        assert m.self_attributed is True

    def test_ages_at_bounds(self):
        assert find_demographic_mentions("I am 13f ok")[0].age == 13
        assert find_demographic_mentions("I am 99m ok")[0].age == 99


class TestExtractSelf:
    def test_first_self_attributed_wins(self):
        d = extract_self_demographics("I (34F) argued with my brother (36M)")
        assert (d.age, d.gender, d.source) == (34, "f", "extracted")

    def test_skips_earlier_non_self_mentions(self):
        d = extract_self_demographics("His ex (40F) hates that I (29M) moved in")
        assert (d.age, d.gender) == (29, "m")

    def test_no_disclosure(self):
        d = extract_self_demographics("AITA for eating the last slice?")
        assert (d.age, d.gender, d.source) == (None, "unknown", "none")

    def test_wife_pattern_returns_none(self):
        d = extract_self_demographics("My wife (30F) and I disagree")
        assert d.source == "none"

    def test_deterministic(self):
        text = "me 30F, married. He (31M) works."
        assert extract_self_demographics(text) == extract_self_demographics(text)


class TestInvariants:
    def test_mention_requires_valid_age(self):
        with pytest.raises(Exception):
            DemographicMention(
                offset=0, age=5, gender="f", prefix3="", self_attributed=False,
                matched="5f",
            )

    def test_demographics_none_cannot_carry_values(self):
        with pytest.raises(Exception):
            Demographics(age=30, gender="f", source="none")

    def test_gender_vocabulary(self):
        with pytest.raises(Exception):
            Demographics(age=None, gender="x", source="none")


class TestFormat:
    def test_both(self):
        assert format_demographics(Demographics(30, "f", "extracted")) == "30,f"

    def test_age_only(self):
        assert format_demographics(Demographics(19, "unknown", "extracted")) == "19,"

    def test_gender_only(self):
        assert format_demographics(Demographics(None, "f", "extracted")) == ",f"

    def test_none(self):
        assert format_demographics(Demographics(None, "unknown", "none")) == ""


_FILLER = st.lists(
    st.sampled_from("the quick brown fox jumped over lazy dogs while it rained".split()),
    min_size=0,
    max_size=12,
)


class TestProperties:
    @given(st.text(max_size=300))
    @settings(max_examples=200)
    def test_never_crashes_and_ages_in_range(self, text):
        for m in find_demographic_mentions(text):
            assert MIN_AGE <= m.age <= MAX_AGE
            assert m.gender in ("f", "m", "n")
            assert text[m.offset : m.offset + len(m.matched)] == m.matched
            assert len(m.prefix3) <= 3

    # a bracketed mention after "me"/"my" pushes the self word out of the
    # 3-character window, so brackets pair only with the 1-letter lead
    _LEAD_SHAPES = [
        ("I ", "({}{})"), ("I ", "[{}{}]"), ("I ", "{}{}"), ("I ", "{} {}"),
        ("me ", "{}{}"), ("me ", "{} {}"),
        ("my ", "{}{}"), ("my ", "{} {}"),
    ]

    @given(
        _FILLER,
        st.integers(min_value=13, max_value=99),
        st.sampled_from(["f", "m", "F", "M", "nb"]),
        st.sampled_from(_LEAD_SHAPES),
    )
    @settings(max_examples=150)
    def test_planted_self_disclosures_recalled(self, filler, age, marker, lead_shape):
        lead, shape = lead_shape
        mention = shape.format(age, marker)
        text = " ".join(filler) + (" " if filler else "") + lead + mention + " rest"
        d = extract_self_demographics(text)
        assert d.source == "extracted"
        assert d.age == age
        assert d.gender == ("n" if marker == "nb" else marker.lower())

    @given(_FILLER)
    def test_filler_without_digits_never_matches(self, filler):
        assert find_demographic_mentions(" ".join(filler)) == []
