import random
from pathlib import Path

import pytest

from frameenrich.chunker import build_chunk
from frameenrich.lexres import Synset, build_lexicon, load_lexicon_file
from frameenrich.matcher import CandidateAssignment
from frameenrich.pipeline import DEFAULT_CORPUS, DEFAULT_LEXICON, Corpus, load_corpus
from frameenrich.textprep import Pos, Sentence, Token

FIXTURES = Path(__file__).parent / "fixtures"

# a few plausible surfaces per tag, so case assignment has something to chew on
WORDS = {
    Pos.DETERMINER: ["der", "die", "das", "dem", "den", "des", "ein", "einem", "einer", "sein"],
    Pos.ADJECTIVE: ["erste", "vorderen", "rechten", "roten"],
    Pos.NOUN: ["Pkw", "Baum", "Fahrer", "Straße", "Haus"],
    Pos.PROPER_NOUN: ["Opel", "Peugeot", "Renault"],
    Pos.PRONOUN: ["er", "sie", "ihm", "sich", "es"],
    Pos.PREPOSITION: ["mit", "in", "an", "für", "wegen"],
    Pos.CONTRACTED_PREPOSITION: ["am", "im", "zum", "ins"],
    Pos.VERB_FINITE: ["kollidierte"],
    Pos.VERB_OTHER: ["abgekommen"],
    Pos.CARDINAL: ["3", "zwei"],
    Pos.CONJUNCTION: ["und"],
    Pos.COMMA: [","],
    Pos.SENTENCE_FINAL: ["."],
    Pos.ADVERB: ["dort", "frontal"],
    Pos.OTHER: ["vermutlich"],
}
# nominal tags weighted up so that long chunk chains actually occur
TAG_WEIGHTS = {p: 1 for p in WORDS}
TAG_WEIGHTS.update({Pos.DETERMINER: 4, Pos.ADJECTIVE: 3, Pos.NOUN: 5, Pos.PROPER_NOUN: 3,
                    Pos.PREPOSITION: 3, Pos.CONTRACTED_PREPOSITION: 2, Pos.CARDINAL: 2,
                    Pos.PRONOUN: 2})


def random_sentence(rng: random.Random, n: int, sid: str = "rand:0") -> Sentence:
    tags = rng.choices(list(TAG_WEIGHTS), weights=list(TAG_WEIGHTS.values()), k=n)
    toks, pos = [], 0
    for tag in tags:
        w = rng.choice(WORDS[tag])
        toks.append(Token(w, pos, pos + len(w), tag, None))
        pos += len(w) + 1
    return Sentence(tuple(toks), sid)


PREPS = ["mit", "an", "in", "auf", "von"]
NOUNS = ["Montag", "Straße", "Baum", "Pkw", "Haus", "Fahrbahn", "Xylofon"]


def pp_sentence(pairs, sid):
    """Sentence of ``prep dem Noun`` triples, one PP chunk each."""
    toks, pos = [], 0
    for prep, noun in pairs:
        for w, tag in ((prep, Pos.PREPOSITION), ("dem", Pos.DETERMINER), (noun, Pos.NOUN)):
            toks.append(Token(w, pos, pos + len(w), tag))
            pos += len(w) + 1
    s = Sentence(tuple(toks), sid)
    return s, [build_chunk("PP", s, 3 * k, 3 * k + 3) for k in range(len(pairs))]


def random_assignments(rng, pattern, n_occ=None):
    out = []
    for k in range(n_occ if n_occ is not None else rng.randint(0, 8)):
        pairs = [(rng.choice(PREPS), rng.choice(NOUNS)) for _ in range(rng.randint(0, 3))]
        _, pps = pp_sentence(pairs, f"r:{k}")
        for alt in range(rng.randint(1, 2)):  # several readings of the same occurrence
            scope = tuple(p for p in pps if rng.random() < 0.8)
            binds = tuple(None for _ in pattern.elements)
            out.append(CandidateAssignment("v", (f"r:{k}", 0), pattern, binds, alt, scope))
    return out


def random_lexicon(rng: random.Random, n: int = 50, extra_edges: float = 0.3):
    """A random DAG: each synset points only to earlier ones, roots are labelled."""
    out = []
    for i in range(n):
        sid = f"s{i:02d}"
        hyps = []
        if i > 0 and rng.random() > 0.1:
            hyps.append(f"s{rng.randrange(i):02d}")
            if rng.random() < extra_edges:
                h = f"s{rng.randrange(i):02d}"
                if h not in hyps:
                    hyps.append(h)
        cat = f"cat{i}" if not hyps or rng.random() < 0.2 else None
        out.append(Synset(sid, "noun", (sid,), tuple(hyps), cat))
    return build_lexicon(out)


@pytest.fixture(scope="session")
def lex():
    return load_lexicon_file(DEFAULT_LEXICON)


@pytest.fixture(scope="session")
def mini_corpus(lex):
    return Corpus(load_corpus([DEFAULT_CORPUS], lex))


@pytest.fixture(scope="session")
def collide_sentences(mini_corpus):
    return [s for s in mini_corpus.sentences if s.source_id.startswith("kollidieren:")]


# one line per acceptance criterion, collected by test_acceptance.py
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
