"""Sentence splitting, tokenization, rule-based POS tagging and NE recognition.

The tagger is deliberately small: closed-class tables, the lexicon's verb
forms, German noun capitalization and a couple of suffix heuristics.  Any
external tagger can be plugged in through the vertical (one token per
line) input format instead.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, replace
from enum import Enum
from typing import Iterable, List, Optional, Sequence, Tuple

from .lexres import Lexicon, lookup_synsets


class Pos(str, Enum):
    DETERMINER = "determiner"
    ADJECTIVE = "adjective"
    NOUN = "noun"
    PROPER_NOUN = "proper-noun"
    PRONOUN = "pronoun"
    PREPOSITION = "preposition"
    CONTRACTED_PREPOSITION = "contracted-preposition"
    VERB_FINITE = "verb-finite"
    VERB_OTHER = "verb-other"
    CARDINAL = "cardinal"
    CONJUNCTION = "conjunction"
    COMMA = "comma"
    SENTENCE_FINAL = "sentence-final"
    ADVERB = "adverb"
    OTHER = "other"


class NEClass(str, Enum):
    REGISTRATION_NUMBER = "registration-number"
    LICENCE_PLATE = "licence-plate"
    DATE = "date"
    PERSON_NAME = "person-name"
    VEHICLE_NAME = "vehicle-name"
    LOCATION_NAME = "location-name"


@dataclass(frozen=True)
class Token:
    surface: str
    start: int
    end: int
    pos: Optional[Pos] = None
    lemma: Optional[str] = None
    ne_class: Optional[NEClass] = None

    @property
    def char_span(self) -> Tuple[int, int]:
        return (self.start, self.end)


@dataclass(frozen=True)
class Sentence:
    tokens: Tuple[Token, ...]
    source_id: str

    def __len__(self) -> int:
        return len(self.tokens)

    def text(self, start: int = 0, end: Optional[int] = None) -> str:
        return " ".join(t.surface for t in self.tokens[start:end])


# ---------------------------------------------------------------------------
# closed-class tables

DETERMINERS = {"der", "die", "das", "dem", "den", "des",
               "ein", "eine", "einem", "einen", "einer", "eines"}
POSSESSIVE_STEMS = ("mein", "dein", "sein", "ihr", "unser", "euer", "eur", "kein")
_EIN_ENDINGS = ("", "e", "em", "en", "er", "es")
for _stem in POSSESSIVE_STEMS:
    for _end in _EIN_ENDINGS:
        DETERMINERS.add(_stem + _end)
DETERMINERS.discard("eur")
DETERMINERS.update({"dieser", "diese", "dieses", "diesem", "diesen", "jeder", "jede", "jedes", "jedem", "jeden"})

PREPOSITIONS = {
    "mit", "auf", "aus", "an", "nach", "in", "von", "bei", "zu", "für", "durch",
    "gegen", "ohne", "um", "über", "unter", "vor", "hinter", "neben", "zwischen",
    "seit", "wegen", "während", "bis", "gegenüber", "entlang", "trotz", "infolge",
}
CONTRACTIONS = {"am", "im", "beim", "zum", "zur", "vom", "ans", "ins"}
PRONOUNS = {
    "ich", "du", "er", "sie", "es", "wir", "mich", "dich", "sich", "uns", "euch",
    "ihn", "ihm", "ihnen", "mir", "dir", "man", "jemand", "niemand",
}
REFLEXIVE_PRONOUNS = {"mich", "dich", "sich", "uns", "euch"}
CONJUNCTIONS = {"und", "oder", "aber", "sondern", "denn", "dass", "weil", "als",
                "wenn", "ob", "sowie", "bzw."}
NUMBER_WORDS = {"zwei", "drei", "vier", "fünf", "sechs", "sieben", "acht",
                "neun", "zehn", "elf", "zwölf"}

# adverbs with the semantic class BL/BT/BM elements can bind to
ADVERB_CLASSES = {
    "dort": "local", "hier": "local", "da": "local", "dorthin": "local",
    "oben": "local", "unten": "local", "links": "local", "rechts": "local",
    "nachfolgend": "temporal", "dann": "temporal", "danach": "temporal",
    "heute": "temporal", "gestern": "temporal", "damals": "temporal",
    "zuvor": "temporal", "später": "temporal", "anschließend": "temporal",
    "sofort": "temporal", "frontal": "manner", "seitlich": "manner",
    "schnell": "manner", "langsam": "manner", "zügig": "manner",
}
ADVERB_SUFFIXES = ("lich", "weise", "wärts", "mals", "dings", "falls")
ADJECTIVE_ENDINGS = ("e", "en", "em", "er", "es")

DEFAULT_ABBREVIATIONS = ("Nr.", "z.B.", "ca.", "Dr.", "bzw.", "u.a.", "Str.", "Hr.", "Fr.", "ggf.", "evtl.", "vgl.")
DEFAULT_VEHICLES = ("VW", "Peugeot", "Renault", "Opel", "Mercedes", "BMW", "Audi", "Ford", "Toyota")
DEFAULT_LOCATIONS = ("A 9", "A 14", "B 6")

MONTHS = ("Januar", "Februar", "März", "April", "Mai", "Juni", "Juli", "August",
          "September", "Oktober", "November", "Dezember")

DATE_RE = re.compile(
    r"\d{1,2}\.\d{1,2}\.\d{2,4}"
    r"|\d{1,2}\.\s?(?:%s)(?:\s\d{4})?" % "|".join(MONTHS)
)
REGISTRATION_RE = re.compile(r"[A-ZÄÖÜ] \d+/\d+")
LICENCE_RE = re.compile(r"[A-ZÄÖÜ]{1,3} [A-ZÄÖÜ]{1,2}-\d{1,4}")
CARDINAL_RE = re.compile(r"\d+(?:[.,]\d+)?")


@dataclass
class NEConfig:
    abbreviations: Tuple[str, ...] = DEFAULT_ABBREVIATIONS
    vehicles: Tuple[str, ...] = DEFAULT_VEHICLES
    locations: Tuple[str, ...] = DEFAULT_LOCATIONS
    persons: Tuple[str, ...] = ()

    @classmethod
    def from_json(cls, data: dict) -> "NEConfig":
        base = cls()
        return cls(
            tuple(data.get("abbreviations", base.abbreviations)),
            tuple(data.get("vehicles", base.vehicles)),
            tuple(data.get("locations", base.locations)),
            tuple(data.get("persons", base.persons)),
        )


def load_ne_config(path) -> NEConfig:
    with open(path, encoding="utf-8") as fh:
        return NEConfig.from_json(json.load(fh))


# ---------------------------------------------------------------------------
# sentence splitting

_LEADING = "(\"„'‚"
_TRAILING = ",;:!?)\"“'‘"
_PARAGRAPH_RE = re.compile(r"\n[ \t]*\n\s*")
_BOUNDARY_RE = re.compile(r"[.!?]+(?=\s+[\"„(]?[A-ZÄÖÜ])")


def split_sentences(text: str, abbreviations: Sequence[str] = DEFAULT_ABBREVIATIONS) -> List[Tuple[int, int]]:
    """Sentence character spans.  Blank lines are hard boundaries."""
    abbrevs = set(abbreviations)
    spans: List[Tuple[int, int]] = []
    para_start = 0
    breaks = [(m.start(), m.end()) for m in _PARAGRAPH_RE.finditer(text)]
    breaks.append((len(text), len(text)))
    for para_end, next_start in breaks:
        para = text[para_start:para_end]
        protected = [m.span() for m in DATE_RE.finditer(para)]
        cut = 0
        for m in _BOUNDARY_RE.finditer(para):
            pos = m.start()
            if any(a <= pos < b for a, b in protected):
                continue
            word_start = max(para.rfind(" ", 0, pos), para.rfind("\n", 0, pos)) + 1
            if para[word_start:m.end()].lstrip(_LEADING) in abbrevs:
                continue
            spans.append((para_start + cut, para_start + m.end()))
            cut = m.end()
        spans.append((para_start + cut, para_start + len(para)))
        para_start = next_start
    out = []
    for a, b in spans:
        seg = text[a:b]
        stripped = seg.strip()
        if stripped:
            lead = len(seg) - len(seg.lstrip())
            out.append((a + lead, a + lead + len(stripped)))
    return out


# ---------------------------------------------------------------------------
# tokenization

def tokenize(sentence_text: str, offset: int = 0,
             abbreviations: Sequence[str] = DEFAULT_ABBREVIATIONS) -> List[Token]:
    abbrevs = set(abbreviations)
    tokens: List[Token] = []
    for m in re.finditer(r"\S+", sentence_text):
        word, start = m.group(), m.start() + offset
        head: List[Token] = []
        while len(word) > 1 and word[0] in _LEADING:
            head.append(Token(word[0], start, start + 1))
            word, start = word[1:], start + 1
        tail: List[Token] = []
        while len(word) > 1 and word not in abbrevs and not set(word) <= {"."}:
            ch = word[-1]
            if ch in _TRAILING or ch == ".":
                end = start + len(word)
                tail.insert(0, Token(ch, end - 1, end))
                word = word[:-1]
            else:
                break
        tokens.extend(head)
        tokens.append(Token(word, start, start + len(word)))
        tokens.extend(tail)
    return tokens


# ---------------------------------------------------------------------------
# tagging

def _closed_class(word: str) -> Optional[Pos]:
    w = word.lower()
    if word == ",":
        return Pos.COMMA
    if word in {".", "!", "?"}:
        return Pos.SENTENCE_FINAL
    if w in CONTRACTIONS:
        return Pos.CONTRACTED_PREPOSITION
    if w in DETERMINERS:
        return Pos.DETERMINER
    if w in PREPOSITIONS:
        return Pos.PREPOSITION
    if w in PRONOUNS:
        return Pos.PRONOUN
    if w in CONJUNCTIONS:
        return Pos.CONJUNCTION
    if w in ADVERB_CLASSES:
        return Pos.ADVERB
    if CARDINAL_RE.fullmatch(word) or w in NUMBER_WORDS:
        return Pos.CARDINAL
    return None


def tag_pos(tokens: Sequence[Token], lex: Lexicon) -> List[Token]:
    """Assign exactly one tag (and verb lemmas) to every token."""
    tags: List[Optional[Pos]] = []
    lemmas: List[Optional[str]] = []
    for i, tok in enumerate(tokens):
        w = tok.surface
        lemma = None
        tag = _closed_class(w)
        if tag is Pos.PRONOUN:
            lemma = w.lower()
        if tag is None and w in lex.form_index:
            tag, lemma = Pos.VERB_FINITE, lex.form_index[w]
        if tag is None and w[:1].isupper():
            if i > 0 or lookup_synsets(lex, w, "noun"):
                tag = Pos.NOUN
        tags.append(tag)
        lemmas.append(lemma)

    # remaining tokens are lowercase (or demoted sentence-initial) unknowns;
    # right to left so adjective runs ("vorderen rechten Seite") chain up
    for i in range(len(tokens) - 1, -1, -1):
        if tags[i] is not None:
            continue
        w = tokens[i].surface.lower()
        nxt = tags[i + 1] if i + 1 < len(tokens) else None
        if (w.isalpha() and len(w) > 2 and w.endswith(ADJECTIVE_ENDINGS)
                and nxt in (Pos.NOUN, Pos.PROPER_NOUN, Pos.ADJECTIVE)):
            tags[i] = Pos.ADJECTIVE
        elif w.isalpha() and w.endswith(ADVERB_SUFFIXES):
            tags[i] = Pos.ADVERB
        else:
            tags[i] = Pos.OTHER

    return [replace(t, pos=tags[i], lemma=lemmas[i] if lemmas[i] else t.lemma)
            for i, t in enumerate(tokens)]


# ---------------------------------------------------------------------------
# named entities

def _joined(tokens: Sequence[Token], i: int, j: int, text: Optional[str]) -> str:
    if text is not None:
        return text[tokens[i].start:tokens[j - 1].end]
    parts = [tokens[i].surface]
    for k in range(i + 1, j):
        parts.append(" " * (tokens[k].start - tokens[k - 1].end) + tokens[k].surface)
    return "".join(parts)


def _normalize(s: str) -> str:
    return " ".join(s.split())


def _classify_span(span_text: str, gaz: dict) -> Optional[NEClass]:
    norm = _normalize(span_text)
    if REGISTRATION_RE.fullmatch(norm):
        return NEClass.REGISTRATION_NUMBER
    if LICENCE_RE.fullmatch(norm):
        return NEClass.LICENCE_PLATE
    if DATE_RE.fullmatch(norm):
        return NEClass.DATE
    return gaz.get(norm)


def recognize_nes(tokens: Sequence[Token], config: Optional[NEConfig] = None,
                  text: Optional[str] = None, lexicon: Optional[Lexicon] = None,
                  max_len: int = 5) -> List[Token]:
    """Merge named-entity spans into single proper-noun tokens.

    Longest match wins.  A vehicle make directly followed by a capitalized
    word the lexicon does not know is read as make + model ("Opel
    Frontera").
    """
    config = config or NEConfig()
    gaz = {}
    for names, cls in ((config.persons, NEClass.PERSON_NAME),
                       (config.locations, NEClass.LOCATION_NAME),
                       (config.vehicles, NEClass.VEHICLE_NAME)):
        for name in names:
            gaz[_normalize(name)] = cls

    out: List[Token] = []
    i, n = 0, len(tokens)
    while i < n:
        hit = None
        for j in range(min(n, i + max_len), i, -1):
            if any(tokens[k].start - tokens[k - 1].end > 1 for k in range(i + 1, j)):
                continue
            cls = _classify_span(_joined(tokens, i, j, text), gaz)
            if cls is not None:
                hit = (j, cls)
                break
        if hit is None:
            out.append(tokens[i])
            i += 1
            continue
        j, cls = hit
        if cls is NEClass.VEHICLE_NAME and j < n:
            nxt = tokens[j]
            if (nxt.surface[:1].isupper() and nxt.surface.isalpha()
                    and nxt.start - tokens[j - 1].end == 1
                    and _closed_class(nxt.surface) is None
                    and (lexicon is None or not lookup_synsets(lexicon, nxt.surface, "noun"))):
                j += 1
        surface = _joined(tokens, i, j, text)
        out.append(Token(surface, tokens[i].start, tokens[j - 1].end,
                         Pos.PROPER_NOUN, surface, cls))
        i = j
    return out


# ---------------------------------------------------------------------------
# documents

def prepare_document(text: str, lex: Lexicon, config: Optional[NEConfig] = None,
                     doc_id: str = "doc") -> List[Sentence]:
    """Raw text to tagged, NE-annotated sentences."""
    config = config or NEConfig()
    sentences = []
    for k, (a, b) in enumerate(split_sentences(text, config.abbreviations)):
        toks = tokenize(text[a:b], a, config.abbreviations)
        toks = tag_pos(toks, lex)
        toks = recognize_nes(toks, config, text, lex)
        sentences.append(Sentence(tuple(toks), f"{doc_id}:{k}"))
    return sentences


# external tagset (STTS) to the internal one, used by the vertical reader
STTS_MAP = {
    "ART": Pos.DETERMINER, "PPOSAT": Pos.DETERMINER, "PDAT": Pos.DETERMINER,
    "PIAT": Pos.DETERMINER, "ADJA": Pos.ADJECTIVE, "ADJD": Pos.ADVERB,
    "NN": Pos.NOUN, "NE": Pos.PROPER_NOUN, "PPER": Pos.PRONOUN, "PRF": Pos.PRONOUN,
    "PIS": Pos.PRONOUN, "APPR": Pos.PREPOSITION, "APPRART": Pos.CONTRACTED_PREPOSITION,
    "VVFIN": Pos.VERB_FINITE, "VAFIN": Pos.VERB_FINITE, "VMFIN": Pos.VERB_FINITE,
    "VVINF": Pos.VERB_OTHER, "VVPP": Pos.VERB_OTHER, "VAINF": Pos.VERB_OTHER,
    "VAPP": Pos.VERB_OTHER, "VVIZU": Pos.VERB_OTHER, "CARD": Pos.CARDINAL,
    "KON": Pos.CONJUNCTION, "KOUS": Pos.CONJUNCTION, "$,": Pos.COMMA,
    "$.": Pos.SENTENCE_FINAL, "ADV": Pos.ADVERB,
}


class VerticalFormatError(ValueError):
    pass


def read_vertical(text: str, doc_id: str = "doc") -> List[Sentence]:
    """Read ``surface<TAB>pos<TAB>lemma`` lines; blank lines end sentences."""
    sentences: List[Sentence] = []
    current: List[Token] = []
    offset = 0

    def flush():
        if current:
            sentences.append(Sentence(tuple(current), f"{doc_id}:{len(sentences)}"))
            current.clear()

    for lineno, line in enumerate(text.split("\n"), 1):
        if not line.strip():
            flush()
            continue
        cols = line.split("\t")
        if len(cols) != 3:
            raise VerticalFormatError(f"line {lineno}: expected 3 tab-separated columns")
        surface, tag, lemma = cols
        try:
            pos = Pos(tag)
        except ValueError:
            if tag not in STTS_MAP:
                raise VerticalFormatError(f"line {lineno}: unknown tag {tag!r}") from None
            pos = STTS_MAP[tag]
        current.append(Token(surface, offset, offset + len(surface), pos,
                             None if lemma == "-" else lemma))
        offset += len(surface) + 1
    flush()
    return sentences


def write_vertical(sentences: Iterable[Sentence]) -> str:
    blocks = []
    for s in sentences:
        blocks.append("\n".join(
            f"{t.surface}\t{t.pos.value}\t{t.lemma if t.lemma is not None else '-'}"
            for t in s.tokens))
    return "\n\n".join(blocks) + "\n" if blocks else ""


def prepare_pretagged(text: str, lex: Lexicon, config: Optional[NEConfig] = None,
                      doc_id: str = "doc") -> List[Sentence]:
    """Vertical input to annotated sentences (verb lemmas and NEs filled in)."""
    config = config or NEConfig()
    out = []
    for s in read_vertical(text, doc_id):
        toks = []
        for t in s.tokens:
            if t.pos is Pos.VERB_FINITE and t.lemma is None and t.surface in lex.form_index:
                t = replace(t, lemma=lex.form_index[t.surface])
            toks.append(t)
        toks = recognize_nes(toks, config, None, lex)
        out.append(Sentence(tuple(toks), s.source_id))
    return out
