import random

import pytest
from hypothesis import given, settings, strategies as st

from frameenrich.chunker import parse_chunks
from frameenrich.framespec import parse_frame
from frameenrich.matcher import (find_verb_occurrences, match_frame, match_occurrence,
                                 segment_for, select_in_scope_pps, split_clauses)
from frameenrich.textprep import Pos, prepare_document
from conftest import random_sentence


def best(corpus, s):
    return corpus.coverings(s.source_id)[0]


def verb_at(s):
    return next(i for i, t in enumerate(s.tokens) if t.pos is Pos.VERB_FINITE)


def test_verb_occurrences(lex, mini_corpus):
    occ = find_verb_occurrences(mini_corpus.sentences, "kollidieren", lex)
    assert occ == [("kollidieren:0", 3), ("kollidieren:1", 3), ("kollidieren:2", 3),
                   ("kollidieren:3", 4), ("kollidieren:4", 1), ("kollidieren:5", 20)]


def test_coordination_sentence_segments(collide_sentences, mini_corpus):
    s = collide_sentences[5]
    cov = best(mini_corpus, s)
    segs = split_clauses(s, [20], cov)
    assert [seg.span for seg in segs] == [(0, 15), (16, 23)]
    seg = segment_for(segs, 20)
    pps = select_in_scope_pps(seg, cov, 20, window=1)
    assert [(p.preposition, p.span) for p in pps] == [("mit", (17, 20))]


def test_sentence_one_window(collide_sentences, mini_corpus):
    s = collide_sentences[0]
    cov = best(mini_corpus, s)
    seg = segment_for(split_clauses(s, [3], cov), 3)
    assert [p.surface for p in select_in_scope_pps(seg, cov, 3, 1)] == ["mit der vorderen rechten Seite"]
    assert [p.surface for p in select_in_scope_pps(seg, cov, 3, 2)] == [
        "mit der vorderen rechten Seite", "mit einem Haus"]


def test_window_must_be_positive(collide_sentences, mini_corpus):
    s = collide_sentences[0]
    cov = best(mini_corpus, s)
    seg = split_clauses(s, [3], cov)[0]
    with pytest.raises(ValueError):
        select_in_scope_pps(seg, cov, 3, 0)


def test_und_inside_chunk_is_not_a_boundary(lex):
    s = prepare_document("Der Pkw kollidierte mit dem Baum.", lex)[0]
    assert len(split_clauses(s, [2], parse_chunks(s)[0])) == 1


def test_match_nn_pp(collide_sentences, mini_corpus):
    s = collide_sentences[1]
    cov = best(mini_corpus, s)
    seg = segment_for(split_clauses(s, [3], cov), 3)
    found = match_frame(parse_frame("NN.Pp"), seg, cov, 3, verb_lemma="kollidieren")
    assert found
    nn, pp = found[0].bindings
    assert nn.surface == "sein LKW" and pp.surface == "mit dem PKW"


def test_optional_pp_may_stay_empty(lex):
    s = prepare_document("Der Pkw kollidierte.", lex)[0]
    found, discarded = match_occurrence(parse_frame("NN.Pp"), s, parse_chunks(s), 2, "kollidieren")
    assert found and found[0].bindings[1] is None and discarded == 0


def test_required_element_missing_discards(lex):
    s = prepare_document("Der Pkw kollidierte.", lex)[0]
    found, discarded = match_occurrence(parse_frame("NN.PP"), s, parse_chunks(s), 2, "kollidieren")
    assert found == [] and discarded == 1


def test_subject_from_preceding_segment(collide_sentences, mini_corpus):
    s = collide_sentences[5]
    found, _ = match_occurrence(parse_frame("NN.Pp"), s, mini_corpus.coverings(s.source_id),
                                20, "kollidieren")
    assert found[0].bindings[0].surface == "er"
    assert found[0].bindings[1].surface == "mit feststehenden Gegenständen"


def test_accusative_object(lex):
    s = prepare_document("Er befuhr die Autobahn.", lex)[0]
    found, _ = match_occurrence(parse_frame("NN.AN"), s, parse_chunks(s), 1, "befahren")
    assert [b.surface for b in found[0].bindings] == ["Er", "die Autobahn"]


def test_bt_binds_temporal_pp(lex):
    s = prepare_document("Er verstarb am Montag.", lex)[0]
    found, _ = match_occurrence(parse_frame("NN.BT"), s, parse_chunks(s), 1, "versterben")
    assert found[0].bindings[1].surface == "am Montag"


def test_bl_binds_local_adverb(lex):
    s = prepare_document("Dort ereignete sich der Unfall.", lex)[0]
    v = verb_at(s)
    found, _ = match_occurrence(parse_frame("NN.BL"), s, parse_chunks(s), v, "ereignen")
    assert found[0].bindings[1].surface == "Dort"


def test_adverb_beyond_window_is_out_of_scope(lex):
    s = prepare_document("Der Unfall ereignete sich dort.", lex)[0]
    v = verb_at(s)
    pattern = parse_frame("NN.BL")
    assert match_occurrence(pattern, s, parse_chunks(s), v, "ereignen", window=1)[0] == []
    found, _ = match_occurrence(pattern, s, parse_chunks(s), v, "ereignen", window=2)
    assert found[0].bindings[1].surface == "dort"


def test_reflexive_and_expletive(lex):
    s = prepare_document("Es ereignete sich am Montag.", lex)[0]
    found, _ = match_occurrence(parse_frame("NE.AR"), s, parse_chunks(s), 1, "ereignen")
    assert [b.surface for b in found[0].bindings] == ["Es", "sich"]


def test_infinitive_clause(lex):
    s = prepare_document("Er befuhr die Autobahn um zu fahren.", lex)[0]
    found, _ = match_occurrence(parse_frame("NN.AN.AZ"), s, parse_chunks(s), 1, "befahren")
    assert found[0].bindings[2].surface == "zu fahren"


def test_bindings_never_share_a_chunk(lex):
    s = prepare_document("Er befuhr sie.", lex)[0]
    found, _ = match_occurrence(parse_frame("NN.AN"), s, parse_chunks(s), 1, "befahren")
    for a in found:
        keys = [b.key for b in a.bindings if b is not None]
        assert len(keys) == len(set(keys))


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**6), st.integers(2, 12), st.integers(1, 4))
def test_scope_grows_with_window(seed, n, w):
    rng = random.Random(seed)
    s = random_sentence(rng, n)
    v = rng.randrange(n)
    cov = parse_chunks(s)[0]
    seg = segment_for(split_clauses(s, [v], cov), v)
    if seg is None:
        return
    small = {p.key for p in select_in_scope_pps(seg, cov, v, w)}
    large = {p.key for p in select_in_scope_pps(seg, cov, v, w + 1)}
    assert small <= large
    assert len(small) <= 2 * w
