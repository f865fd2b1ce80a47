import pytest
from hypothesis import given, strategies as st

from frameenrich.framespec import (CODE_TABLE, Case, FrameSyntaxError, PhraseKind, Restriction,
                                   UnknownCodeError, code_properties, format_frame, parse_frame)

LEXICON_FRAMES = ["NN.Pp", "NN.AN", "NN.AN.BL", "NN.BT", "NE.AN", "NN.PP",
                  "NN.AN.AZ", "NN.AN.BM", "NE", "NE.AR", "NN.AR.BT", "NN.BL"]


def test_code_table_has_thirteen_codes():
    assert len(CODE_TABLE) == 13
    assert {"NN", "AN", "DN", "GN", "PP", "Pp", "BM", "BL", "BT", "BD", "AR", "AZ", "NE"} == set(CODE_TABLE)


def test_np_codes_carry_their_case():
    assert code_properties("NN").required_case is Case.NOMINATIVE
    assert code_properties("AN").required_case is Case.ACCUSATIVE
    assert code_properties("DN").required_case is Case.DATIVE
    assert code_properties("GN").required_case is Case.GENITIVE


def test_optional_pp():
    pp = code_properties("Pp")
    assert pp.optional and pp.phrase_kind is PhraseKind.PREPOSITIONAL_PHRASE
    assert not code_properties("PP").optional


def test_adverbial_restrictions():
    assert code_properties("BL").semantic_restriction is Restriction.LOCAL
    assert code_properties("BT").semantic_restriction is Restriction.TEMPORAL
    assert code_properties("BM").semantic_restriction is Restriction.MANNER
    assert code_properties("BD").phrase_kind is PhraseKind.ADVERBIAL_OR_PP


def test_lowercase_second_letter_means_optional():
    bt = code_properties("Bt")
    assert bt.optional and bt.semantic_restriction is Restriction.TEMPORAL


@pytest.mark.parametrize("raw", LEXICON_FRAMES)
def test_lexicon_frames_round_trip(raw):
    assert format_frame(parse_frame(raw)) == raw


@pytest.mark.parametrize("raw", ["NN.XX", "XX", "NN.Ne", "nn"])
def test_unknown_code(raw):
    with pytest.raises(UnknownCodeError):
        parse_frame(raw)


@pytest.mark.parametrize("raw", ["", "NN..AN", ".NN", "NN.", "NN.NN", "NN.PP.Pp"])
def test_malformed_frames(raw):
    with pytest.raises(FrameSyntaxError):
        parse_frame(raw)


def test_unknown_code_error_names_token():
    with pytest.raises(UnknownCodeError) as info:
        parse_frame("NN.XX")
    assert info.value.token == "XX"


def test_pattern_restriction_lookup():
    assert parse_frame("NN.BT").has_restriction(Restriction.TEMPORAL)
    assert not parse_frame("NN.Pp").has_restriction(Restriction.TEMPORAL)


@given(st.lists(st.sampled_from(sorted(CODE_TABLE)), min_size=1, max_size=6, unique_by=str.upper))
def test_round_trip_property(codes):
    raw = ".".join(codes)
    p = parse_frame(raw)
    assert format_frame(p) == raw
    assert p.codes == tuple(codes)
