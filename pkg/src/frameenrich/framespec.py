"""Verb-frame notation: ``NN.Pp``, ``NN.AN.BM`` and friends.

A frame string is a dot-separated list of two-letter complement codes.
The second letter's case carries optionality (``PP`` required, ``Pp``
optional).  NE and AR are read as expletive ``es`` and reflexive pronoun
respectively, following the usual wordnet verb-frame notation.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple


class Case(str, Enum):
    NOMINATIVE = "nominative"
    GENITIVE = "genitive"
    DATIVE = "dative"
    ACCUSATIVE = "accusative"

    @property
    def short(self) -> str:
        return self.value[:3]


ALL_CASES = frozenset(Case)
CASE_ORDER = (Case.NOMINATIVE, Case.GENITIVE, Case.DATIVE, Case.ACCUSATIVE)


def sorted_cases(cases) -> list:
    return [c for c in CASE_ORDER if c in cases]


class PhraseKind(str, Enum):
    NOUN_PHRASE = "noun-phrase"
    PREPOSITIONAL_PHRASE = "prepositional-phrase"
    ADVERBIAL_OR_PP = "adverbial-or-pp"
    INFINITIVE_CLAUSE = "infinitive-clause"
    REFLEXIVE = "reflexive"
    EXPLETIVE = "expletive"


class Restriction(str, Enum):
    NONE = "none"
    LOCAL = "local"
    TEMPORAL = "temporal"
    MANNER = "manner"


class FrameError(ValueError):
    pass


class FrameSyntaxError(FrameError):
    pass


class UnknownCodeError(FrameError):
    def __init__(self, token: str):
        super().__init__(f"unknown complement code {token!r}")
        self.token = token


@dataclass(frozen=True)
class ComplementCode:
    code: str
    phrase_kind: PhraseKind
    required_case: Optional[Case] = None
    optional: bool = False
    semantic_restriction: Restriction = Restriction.NONE

    @property
    def is_np(self) -> bool:
        return self.phrase_kind is PhraseKind.NOUN_PHRASE

    @property
    def is_pp(self) -> bool:
        return self.phrase_kind is PhraseKind.PREPOSITIONAL_PHRASE


# canonical (required) spelling of each code
_BASE = {
    "NN": (PhraseKind.NOUN_PHRASE, Case.NOMINATIVE, Restriction.NONE),
    "AN": (PhraseKind.NOUN_PHRASE, Case.ACCUSATIVE, Restriction.NONE),
    "DN": (PhraseKind.NOUN_PHRASE, Case.DATIVE, Restriction.NONE),
    "GN": (PhraseKind.NOUN_PHRASE, Case.GENITIVE, Restriction.NONE),
    "PP": (PhraseKind.PREPOSITIONAL_PHRASE, None, Restriction.NONE),
    "BM": (PhraseKind.ADVERBIAL_OR_PP, None, Restriction.MANNER),
    "BL": (PhraseKind.ADVERBIAL_OR_PP, None, Restriction.LOCAL),
    "BT": (PhraseKind.ADVERBIAL_OR_PP, None, Restriction.TEMPORAL),
    "BD": (PhraseKind.ADVERBIAL_OR_PP, None, Restriction.NONE),
    "AR": (PhraseKind.REFLEXIVE, Case.ACCUSATIVE, Restriction.NONE),
    "AZ": (PhraseKind.INFINITIVE_CLAUSE, None, Restriction.NONE),
    "NE": (PhraseKind.EXPLETIVE, None, Restriction.NONE),
}

# the 13-code table; "Pp" is the only optional code the notation exhibits
CODE_TABLE = {
    code: ComplementCode(code, kind, case, False, restr)
    for code, (kind, case, restr) in _BASE.items()
}
CODE_TABLE["Pp"] = ComplementCode(
    "Pp", PhraseKind.PREPOSITIONAL_PHRASE, None, True, Restriction.NONE
)


def code_properties(code: str) -> ComplementCode:
    """Attribute record for one complement code.

    Codes written with a lowercase second letter are the optional variant
    of their uppercase counterpart.
    """
    if code in CODE_TABLE:
        return CODE_TABLE[code]
    if len(code) == 2 and code[0].isupper() and code[1].islower():
        base = CODE_TABLE.get(code.upper())
        if base is not None and base.phrase_kind is not PhraseKind.EXPLETIVE:
            return ComplementCode(
                code,
                base.phrase_kind,
                base.required_case,
                True,
                base.semantic_restriction,
            )
    raise UnknownCodeError(code)


@dataclass(frozen=True)
class FramePattern:
    raw: str
    elements: Tuple[ComplementCode, ...]

    @property
    def codes(self) -> Tuple[str, ...]:
        return tuple(e.code for e in self.elements)

    def has_restriction(self, restriction: Restriction) -> bool:
        return any(e.semantic_restriction is restriction for e in self.elements)

    def __str__(self) -> str:
        return self.raw


def parse_frame(raw: str) -> FramePattern:
    if not raw:
        raise FrameSyntaxError("empty frame string")
    tokens = raw.split(".")
    if any(t == "" for t in tokens):
        raise FrameSyntaxError(f"empty segment in frame {raw!r}")
    elements = tuple(code_properties(t) for t in tokens)
    seen = set()
    for e in elements:
        if e.code.upper() in seen:
            raise FrameSyntaxError(f"duplicate code {e.code!r} in frame {raw!r}")
        seen.add(e.code.upper())
    return FramePattern(raw, elements)


def format_frame(p: FramePattern) -> str:
    return ".".join(p.codes)
