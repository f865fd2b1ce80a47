"""Bottom-up chart parsing of tagged sentences into NP/PP chunks.

Only basic structures are built.  A sentence rarely gets a full reading
under such a grammar, so the parser returns *coverings*: maximal sets of
non-overlapping chunks, best first.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, replace
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from .framespec import ALL_CASES, Case, sorted_cases
from .textprep import Pos, Sentence, Token

NOM, GEN, DAT, ACC = Case.NOMINATIVE, Case.GENITIVE, Case.DATIVE, Case.ACCUSATIVE

CHUNK_KINDS = ("NP", "PP")
TERMINALS = frozenset(p.value for p in Pos)


class GrammarError(ValueError):
    pass


class CaseClashError(ValueError):
    pass


class ContractViolation(ValueError):
    pass


@dataclass(frozen=True)
class GrammarRule:
    lhs: str
    rhs: Tuple[str, ...]

    def __post_init__(self):
        if not self.rhs:
            raise GrammarError(f"empty right-hand side for {self.lhs}")

    def __str__(self) -> str:
        return f"{self.lhs} -> {' '.join(self.rhs)}"


DEFAULT_GRAMMAR_TEXT = """\
# nominal core: noun, noun with name apposition, bare name
NOM -> noun
NOM -> noun proper-noun
NOM -> proper-noun
ADJS -> adjective
ADJS -> adjective ADJS
NP -> determiner NOM
NP -> determiner ADJS NOM
NP -> ADJS NOM
NP -> NOM
NP -> cardinal NOM
NP -> pronoun
PP -> preposition NP
PP -> contracted-preposition NOM
PP -> contracted-preposition ADJS NOM
"""


def parse_grammar(text: str) -> List[GrammarRule]:
    rules = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "->" not in line:
            raise GrammarError(f"line {lineno}: expected 'LHS -> sym ...'")
        lhs, rhs = line.split("->", 1)
        lhs, syms = lhs.strip(), tuple(rhs.split())
        if not lhs or " " in lhs:
            raise GrammarError(f"line {lineno}: bad left-hand side")
        if lhs in TERMINALS:
            raise GrammarError(f"line {lineno}: terminal {lhs!r} used as left-hand side")
        if not syms:
            raise GrammarError(f"line {lineno}: empty right-hand side")
        rules.append(GrammarRule(lhs, syms))
    lhs_set = {r.lhs for r in rules}
    for r in rules:
        for sym in r.rhs:
            if sym not in TERMINALS and sym not in lhs_set:
                raise GrammarError(f"rule {r}: undefined symbol {sym!r}")
    if rules and not {"NP", "PP"} <= lhs_set:
        raise GrammarError("grammar must define NP and PP")
    return rules


def default_grammar() -> List[GrammarRule]:
    return parse_grammar(DEFAULT_GRAMMAR_TEXT)


def load_grammar(path) -> List[GrammarRule]:
    with open(path, encoding="utf-8") as fh:
        return parse_grammar(fh.read())


# ---------------------------------------------------------------------------
# case morphology

DETERMINER_CASES: Dict[str, FrozenSet[Case]] = {
    "der": frozenset({NOM, DAT, GEN}),
    "die": frozenset({NOM, ACC}),
    "das": frozenset({NOM, ACC}),
    "dem": frozenset({DAT}),
    "den": frozenset({ACC, DAT}),
    "des": frozenset({GEN}),
    "ein": frozenset({NOM, ACC}),
    "eine": frozenset({NOM, ACC}),
    "einem": frozenset({DAT}),
    "einen": frozenset({ACC}),
    "einer": frozenset({DAT, GEN}),
    "eines": frozenset({GEN}),
}
# der-words: inflect like the definite article, dieses also covers gen.
_DER_WORDS = {"dieser": "der", "diese": "die", "diesem": "dem", "diesen": "den",
              "jeder": "der", "jede": "die", "jedem": "dem", "jeden": "den"}
_EIN_WORD_STEMS = ("mein", "dein", "sein", "ihr", "unser", "euer", "kein")

PRONOUN_CASES: Dict[str, FrozenSet[Case]] = {
    "ich": frozenset({NOM}), "du": frozenset({NOM}), "er": frozenset({NOM}),
    "wir": frozenset({NOM}), "man": frozenset({NOM}),
    "sie": frozenset({NOM, ACC}), "es": frozenset({NOM, ACC}),
    "mich": frozenset({ACC}), "dich": frozenset({ACC}), "ihn": frozenset({ACC}),
    "mir": frozenset({DAT}), "dir": frozenset({DAT}), "ihm": frozenset({DAT}),
    "ihnen": frozenset({DAT}),
    "sich": frozenset({ACC, DAT}), "uns": frozenset({ACC, DAT}), "euch": frozenset({ACC, DAT}),
}

PREPOSITION_CASES: Dict[str, FrozenSet[Case]] = {
    "mit": frozenset({DAT}),
    "auf": frozenset({DAT, ACC}),
    "aus": frozenset({DAT}),
    "an": frozenset({DAT, ACC}),
    "nach": frozenset({DAT}),
    "in": frozenset({DAT, ACC}),
    "von": frozenset({DAT}),
    "bei": frozenset({DAT}),
    "zu": frozenset({DAT}),
    "seit": frozenset({DAT}),
    "gegenüber": frozenset({DAT}),
    "für": frozenset({ACC}),
    "durch": frozenset({ACC}),
    "gegen": frozenset({ACC}),
    "ohne": frozenset({ACC}),
    "um": frozenset({ACC}),
    "bis": frozenset({ACC}),
    "entlang": frozenset({ACC}),
    "über": frozenset({DAT, ACC}),
    "unter": frozenset({DAT, ACC}),
    "vor": frozenset({DAT, ACC}),
    "hinter": frozenset({DAT, ACC}),
    "neben": frozenset({DAT, ACC}),
    "zwischen": frozenset({DAT, ACC}),
    "wegen": frozenset({GEN, DAT}),
    "während": frozenset({GEN}),
    "trotz": frozenset({GEN}),
    "infolge": frozenset({GEN}),
}

CONTRACTION_TABLE: Dict[str, Tuple[str, Case]] = {
    "am": ("an", DAT),
    "im": ("in", DAT),
    "beim": ("bei", DAT),
    "zum": ("zu", DAT),
    "zur": ("zu", DAT),
    "vom": ("von", DAT),
    "ans": ("an", ACC),
    "ins": ("in", ACC),
}


def determiner_cases(form: str) -> FrozenSet[Case]:
    w = form.lower()
    if w in DETERMINER_CASES:
        return DETERMINER_CASES[w]
    if w in _DER_WORDS:
        return DETERMINER_CASES[_DER_WORDS[w]]
    if w in ("dieses", "jedes"):
        return frozenset({NOM, ACC, GEN})
    for stem in _EIN_WORD_STEMS:
        if w.startswith(stem):
            ending = w[len(stem):]
            if "ein" + ending in DETERMINER_CASES:
                return DETERMINER_CASES["ein" + ending]
    return ALL_CASES


def expand_contraction(t: Token) -> Tuple[str, Case]:
    if t.pos is not Pos.CONTRACTED_PREPOSITION:
        raise ContractViolation(f"{t.surface!r} is not a contracted preposition")
    try:
        return CONTRACTION_TABLE[t.surface.lower()]
    except KeyError:
        raise ContractViolation(f"unknown contraction {t.surface!r}") from None


# ---------------------------------------------------------------------------
# chunks

@dataclass(frozen=True)
class Chunk:
    kind: str
    span: Tuple[int, int]
    head_index: int
    case_set: FrozenSet[Case]
    surface: str
    head: Token
    preposition: Optional[str] = None
    determiner: Optional[str] = None

    @property
    def start(self) -> int:
        return self.span[0]

    @property
    def end(self) -> int:
        return self.span[1]

    @property
    def key(self) -> Tuple[str, int, int]:
        return (self.kind, self.span[0], self.span[1])

    @property
    def head_lemma(self) -> str:
        return self.head.lemma or self.head.surface

    def overlaps(self, other: "Chunk") -> bool:
        return self.start < other.end and other.start < self.end


_HEAD_PREFERENCE = (Pos.NOUN, Pos.PROPER_NOUN, Pos.PRONOUN, Pos.CARDINAL)


def _find_head(tokens: Sequence[Token], start: int, end: int) -> int:
    for pos in _HEAD_PREFERENCE:
        for k in range(start, end):
            if tokens[k].pos is pos:
                return k
    return end - 1


def _make_chunk(kind: str, s: Sentence, start: int, end: int) -> Chunk:
    toks = s.tokens
    np_start = start + 1 if kind == "PP" else start
    head = _find_head(toks, np_start, end)
    det = toks[np_start].surface if np_start < end and toks[np_start].pos is Pos.DETERMINER else None
    prep = None
    if kind == "PP":
        first = toks[start]
        if first.pos is Pos.CONTRACTED_PREPOSITION and first.surface.lower() in CONTRACTION_TABLE:
            prep = CONTRACTION_TABLE[first.surface.lower()][0]
        else:
            prep = first.surface.lower()
    return Chunk(kind, (start, end), head, ALL_CASES, s.text(start, end), toks[head], prep, det)


def _np_cases(s: Sentence, start: int, end: int) -> FrozenSet[Case]:
    first = s.tokens[start]
    if first.pos is Pos.DETERMINER:
        return determiner_cases(first.surface)
    if end - start == 1 and first.pos is Pos.PRONOUN:
        return PRONOUN_CASES.get(first.surface.lower(), ALL_CASES)
    return ALL_CASES


def assign_case(c: Chunk, s: Sentence,
                prep_cases: Optional[Dict[str, FrozenSet[Case]]] = None) -> Chunk:
    """Fill in the chunk's case set; raises :class:`CaseClashError` on conflict."""
    prep_cases = PREPOSITION_CASES if prep_cases is None else prep_cases
    if c.kind == "NP":
        return replace(c, case_set=_np_cases(s, c.start, c.end))
    first = s.tokens[c.start]
    if first.pos is Pos.CONTRACTED_PREPOSITION:
        governed = frozenset({expand_contraction(first)[1]})
    else:
        governed = prep_cases.get(c.preposition, ALL_CASES)
    if c.start + 1 >= c.end:
        raise CaseClashError(f"PP {c.surface!r} has no nominal part")
    cases = governed & _np_cases(s, c.start + 1, c.end)
    if not cases:
        raise CaseClashError(f"case clash in PP {c.surface!r}")
    return replace(c, case_set=cases)


def build_chunk(kind: str, s: Sentence, start: int, end: int,
                prep_cases=None) -> Optional[Chunk]:
    """A case-marked chunk over ``[start, end)``, or None on a case clash."""
    try:
        return assign_case(_make_chunk(kind, s, start, end), s, prep_cases)
    except CaseClashError:
        return None


# ---------------------------------------------------------------------------
# chart

def chart_edges(tags: Sequence[str], grammar: Sequence[GrammarRule],
                accept=None) -> Set[Tuple[str, int, int]]:
    """All complete constituents ``(symbol, start, end)`` derivable bottom-up.

    ``accept(symbol, start, end)`` may veto a completed constituent before
    it enters the chart (used for case clashes).
    """
    by_first: Dict[str, List[GrammarRule]] = defaultdict(list)
    for r in grammar:
        by_first[r.rhs[0]].append(r)
    complete: Set[Tuple[str, int, int]] = set()
    complete_from: Dict[Tuple[str, int], List[int]] = defaultdict(list)
    # active edge: rule waits for rhs[dot] at position `pos`
    active: Dict[Tuple[str, int], List[Tuple[GrammarRule, int, int]]] = defaultdict(list)
    seen_active: Set[Tuple[GrammarRule, int, int, int]] = set()
    agenda: List[Tuple[str, int, int]] = [(t, i, i + 1) for i, t in enumerate(tags)]

    def advance(rule: GrammarRule, dot: int, start: int, end: int) -> None:
        if dot == len(rule.rhs):
            agenda.append((rule.lhs, start, end))
            return
        key = (rule, dot, start, end)
        if key in seen_active:
            return
        seen_active.add(key)
        want = rule.rhs[dot]
        active[(want, end)].append((rule, dot, start))
        for k in list(complete_from[(want, end)]):
            advance(rule, dot + 1, start, k)

    while agenda:
        edge = agenda.pop()
        if edge in complete:
            continue
        sym, i, j = edge
        if sym not in TERMINALS and accept is not None and not accept(sym, i, j):
            continue
        complete.add(edge)
        complete_from[(sym, i)].append(j)
        for rule in by_first.get(sym, ()):
            advance(rule, 1, i, j)
        for rule, dot, start in list(active[(sym, i)]):
            advance(rule, dot + 1, start, j)
    return {e for e in complete if e[0] not in TERMINALS}


def chart_chunks(s: Sentence, grammar: Optional[Sequence[GrammarRule]] = None,
                 prep_cases=None) -> List[Chunk]:
    """Every NP/PP chunk the grammar derives anywhere in the sentence."""
    grammar = default_grammar() if grammar is None else grammar
    built: Dict[Tuple[str, int, int], Chunk] = {}

    def accept(sym: str, i: int, j: int) -> bool:
        if sym not in CHUNK_KINDS:
            return True
        c = build_chunk(sym, s, i, j, prep_cases)
        if c is None:
            return False
        built[(sym, i, j)] = c
        return True

    tags = [t.pos.value for t in s.tokens]
    edges = chart_edges(tags, grammar, accept)
    return sorted((built[e] for e in edges if e[0] in CHUNK_KINDS),
                  key=lambda c: (c.start, c.end, c.kind))


@dataclass(frozen=True)
class Covering:
    chunks: Tuple[Chunk, ...]
    unparsed: Tuple[int, ...]

    @property
    def covered(self) -> int:
        return sum(c.end - c.start for c in self.chunks)

    def sort_key(self):
        return (-self.covered, len(self.chunks), tuple(c.span for c in self.chunks))

    def chunks_in(self, start: int, end: int) -> List[Chunk]:
        return [c for c in self.chunks if start <= c.start and c.end <= end]


def is_maximal(selected: Sequence[Chunk], inventory: Iterable[Chunk]) -> bool:
    """No chunk can be added, nor swallow the chunks it overlaps."""
    keys = {c.key for c in selected}
    for e in inventory:
        if e.key in keys:
            continue
        hit = [c for c in selected if c.overlaps(e)]
        if all(e.start <= c.start and c.end <= e.end and c.span != e.span for c in hit):
            return False
    return True


def maximal_coverings(chunks: Sequence[Chunk], n_tokens: int) -> List[Covering]:
    starting: Dict[int, List[Chunk]] = defaultdict(list)
    for c in chunks:
        starting[c.start].append(c)
    results: List[Tuple[Chunk, ...]] = []

    def free_region_blocked(a: int, b: int) -> bool:
        # a chunk fitting entirely in an unparsed stretch can always be added
        return any(c.end <= b for p in range(a, b) for c in starting.get(p, ()))

    def walk(pos: int, free_from: int, chosen: List[Chunk]) -> None:
        if free_region_blocked(free_from, min(pos, n_tokens)):
            return
        if pos >= n_tokens:
            results.append(tuple(chosen))
            return
        for c in starting.get(pos, ()):
            chosen.append(c)
            walk(c.end, c.end, chosen)
            chosen.pop()
        walk(pos + 1, free_from, chosen)

    walk(0, 0, [])
    out = []
    for sel in results:
        if is_maximal(sel, chunks):
            covered = {k for c in sel for k in range(c.start, c.end)}
            out.append(Covering(sel, tuple(k for k in range(n_tokens) if k not in covered)))
    out.sort(key=Covering.sort_key)
    return out


def parse_chunks(s: Sentence, grammar: Optional[Sequence[GrammarRule]] = None,
                 prep_cases=None) -> List[Covering]:
    """All maximal coverings of ``s``, best first; never empty."""
    coverings = maximal_coverings(chart_chunks(s, grammar, prep_cases), len(s.tokens))
    return coverings or [Covering((), tuple(range(len(s.tokens))))]


def format_cases(cases) -> str:
    return ",".join(c.short for c in sorted_cases(cases))


def chunk_tsv_lines(s: Sentence, covering: Covering) -> List[str]:
    return [
        "\t".join((s.source_id, c.kind, f"{c.start}:{c.end}", c.head_lemma,
                   format_cases(c.case_set), c.preposition or "-"))
        for c in covering.chunks
    ]
