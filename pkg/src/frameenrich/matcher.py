"""Use verb frames as patterns over chunk coverings.

For every occurrence of a target verb the sentence is cut into clause
segments (at commas and clause-level "und"), PPs are restricted to the
verb's neighbourhood, and each frame element is bound to a compatible
chunk, adverb or token pair.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from .chunker import Chunk, Covering
from .framespec import ComplementCode, FramePattern, PhraseKind, Restriction
from .lexres import Lexicon
from .textprep import ADVERB_CLASSES, REFLEXIVE_PRONOUNS, Pos, Sentence

OccurrenceId = Tuple[str, int]

_ADVERB_RESTRICTION = {
    Restriction.LOCAL: "local",
    Restriction.TEMPORAL: "temporal",
    Restriction.MANNER: "manner",
}


@dataclass(frozen=True)
class ClauseSegment:
    span: Tuple[int, int]
    verb_index: Optional[int]
    sentence: Sentence = field(repr=False, compare=False)

    def __contains__(self, index: int) -> bool:
        return self.span[0] <= index < self.span[1]

    def chunks(self, covering: Covering) -> List[Chunk]:
        return covering.chunks_in(*self.span)


@dataclass(frozen=True)
class Binding:
    """What a frame element is filled with: a chunk or a token range."""

    chunk: Optional[Chunk] = None
    tokens: Optional[Tuple[int, int]] = None
    surface: str = ""

    @property
    def key(self):
        return self.chunk.key if self.chunk is not None else ("tok",) + self.tokens

    @property
    def span(self) -> Tuple[int, int]:
        return self.chunk.span if self.chunk is not None else self.tokens


@dataclass(frozen=True)
class CandidateAssignment:
    verb_lemma: str
    occurrence_id: OccurrenceId
    pattern: FramePattern
    bindings: Tuple[Optional[Binding], ...]
    covering_id: int
    in_scope: Tuple[Chunk, ...] = ()

    def bound(self, position: int) -> Optional[Binding]:
        return self.bindings[position]


def find_verb_occurrences(sents: Sequence[Sentence], lemma: str, lex: Lexicon) -> List[OccurrenceId]:
    out = []
    for s in sents:
        for i, t in enumerate(s.tokens):
            if t.pos is Pos.PROPER_NOUN:
                continue
            if lex.form_index.get(t.surface) == lemma or (
                    t.pos is Pos.VERB_FINITE and t.lemma == lemma):
                out.append((s.source_id, i))
    return out


def _is_boundary(s: Sentence, i: int, chunks: Sequence[Chunk]) -> bool:
    t = s.tokens[i]
    if t.pos is Pos.COMMA:
        return True
    if t.pos is Pos.CONJUNCTION and t.surface.lower() == "und":
        return not any(c.start <= i < c.end for c in chunks)
    return False


def split_clauses(s: Sentence, verb_indices: Sequence[int] = (),
                  covering: Optional[Covering] = None) -> List[ClauseSegment]:
    """Cut at commas and clause-level "und"; boundary tokens belong nowhere."""
    chunks = covering.chunks if covering is not None else ()
    segments = []
    start = 0
    n = len(s.tokens)
    for i in range(n + 1):
        if i == n or _is_boundary(s, i, chunks):
            if i > start:
                verbs = [v for v in verb_indices if start <= v < i]
                segments.append(ClauseSegment((start, i), verbs[0] if verbs else None, s))
            start = i + 1
    return segments


def segment_for(segments: Sequence[ClauseSegment], index: int) -> Optional[ClauseSegment]:
    for seg in segments:
        if index in seg:
            return seg
    return None


def _scope(seg: ClauseSegment, covering: Covering, verb_index: int,
           window: int) -> Tuple[List[Chunk], Tuple[int, int]]:
    chunks = seg.chunks(covering)
    before = sorted((c for c in chunks if c.end <= verb_index), key=lambda c: -c.end)[:window]
    after = sorted((c for c in chunks if c.start > verb_index), key=lambda c: c.start)[:window]
    lo = before[-1].start if len(before) == window else seg.span[0]
    hi = after[-1].end if len(after) == window else seg.span[1]
    return before + after, (lo, hi)


def _distance(span: Tuple[int, int], verb_index: int) -> int:
    if span[1] <= verb_index:
        return verb_index - span[1]
    return span[0] - verb_index - 1


def select_in_scope_pps(seg: ClauseSegment, covering: Covering, verb_index: int,
                        window: int = 1) -> List[Chunk]:
    """PPs among the ``window`` nearest chunks on either side of the verb."""
    if window < 1:
        raise ValueError("window must be >= 1")
    near, _ = _scope(seg, covering, verb_index, window)
    pps = [c for c in near if c.kind == "PP"]
    return sorted(pps, key=lambda c: (_distance(c.span, verb_index), c.start))


def _in_scope_adverbs(seg: ClauseSegment, covering: Covering, verb_index: int,
                      window: int, wanted: str) -> List[Binding]:
    _, (lo, hi) = _scope(seg, covering, verb_index, window)
    inside = {k for c in covering.chunks for k in range(c.start, c.end)}
    out = []
    for k in range(lo, hi):
        t = seg.sentence.tokens[k]
        if (k not in inside and t.pos is Pos.ADVERB
                and ADVERB_CLASSES.get(t.surface.lower()) == wanted):
            out.append(Binding(tokens=(k, k + 1), surface=t.surface))
    return out


def _np_candidates(code: ComplementCode, chunks: Sequence[Chunk]) -> List[Binding]:
    return [Binding(chunk=c, surface=c.surface) for c in chunks
            if c.kind == "NP" and code.required_case in c.case_set
            and c.surface.lower() not in REFLEXIVE_PRONOUNS]


def _candidates(code: ComplementCode, seg: ClauseSegment, covering: Covering,
                verb_index: int, window: int,
                preceding: Sequence[ClauseSegment]) -> List[Binding]:
    kind = code.phrase_kind
    if kind is PhraseKind.NOUN_PHRASE:
        found = _np_candidates(code, seg.chunks(covering))
        if not found and not code.optional:
            # coordinated clauses share their subject ("er ... und dort ... kollidiert")
            for prev in reversed(preceding):
                found = _np_candidates(code, prev.chunks(covering))
                if found:
                    break
        return found
    if kind is PhraseKind.PREPOSITIONAL_PHRASE:
        return [Binding(chunk=c, surface=c.surface)
                for c in select_in_scope_pps(seg, covering, verb_index, window)]
    if kind is PhraseKind.ADVERBIAL_OR_PP:
        found = [Binding(chunk=c, surface=c.surface)
                 for c in select_in_scope_pps(seg, covering, verb_index, window)]
        wanted = _ADVERB_RESTRICTION.get(code.semantic_restriction)
        if wanted:
            found += _in_scope_adverbs(seg, covering, verb_index, window, wanted)
        return found
    if kind is PhraseKind.REFLEXIVE:
        return [Binding(chunk=c, surface=c.surface) for c in seg.chunks(covering)
                if c.kind == "NP" and c.surface.lower() in REFLEXIVE_PRONOUNS]
    if kind is PhraseKind.EXPLETIVE:
        return [Binding(chunk=c, surface=c.surface) for c in seg.chunks(covering)
                if c.kind == "NP" and c.surface.lower() == "es"]
    if kind is PhraseKind.INFINITIVE_CLAUSE:
        toks = seg.sentence.tokens
        out = []
        for k in range(seg.span[0], seg.span[1] - 1):
            nxt = toks[k + 1]
            if (toks[k].surface.lower() == "zu" and nxt.surface.islower()
                    and nxt.surface.endswith("n")
                    and nxt.pos in (Pos.VERB_OTHER, Pos.VERB_FINITE, Pos.OTHER)):
                out.append(Binding(tokens=(k, k + 2), surface=f"zu {nxt.surface}"))
        return out
    return []


def _rank(bindings: Sequence[Optional[Binding]], verb_index: int):
    ambiguity = sum(len(b.chunk.case_set) for b in bindings
                    if b is not None and b.chunk is not None and b.chunk.kind == "NP")
    distance = sum(_distance(b.span, verb_index) for b in bindings if b is not None)
    spans = tuple(b.span if b is not None else (-1, -1) for b in bindings)
    return (ambiguity, distance, sum(b is None for b in bindings), spans)


def match_frame(pattern: FramePattern, seg: ClauseSegment, covering: Covering,
                verb_index: int, *, window: int = 1,
                preceding: Sequence[ClauseSegment] = (), verb_lemma: str = "",
                occurrence_id: Optional[OccurrenceId] = None,
                covering_id: int = 0) -> List[CandidateAssignment]:
    """Every maximal consistent binding of ``pattern``, best ranked first.

    Best means: morphologically least ambiguous NP fillers, then closest to
    the verb.  An empty list means some required element found no filler.
    """
    cands = [_candidates(code, seg, covering, verb_index, window, preceding)
             for code in pattern.elements]
    for code, found in zip(pattern.elements, cands):
        if not found and not code.optional:
            return []

    results: List[Tuple[Optional[Binding], ...]] = []
    chosen: List[Optional[Binding]] = []
    used: set = set()

    def walk(k: int) -> None:
        if k == len(cands):
            results.append(tuple(chosen))
            return
        for b in cands[k]:
            if b.key in used:
                continue
            used.add(b.key)
            chosen.append(b)
            walk(k + 1)
            chosen.pop()
            used.discard(b.key)
        if pattern.elements[k].optional:
            chosen.append(None)
            walk(k + 1)
            chosen.pop()

    walk(0)

    def maximal(bs: Tuple[Optional[Binding], ...]) -> bool:
        taken = {b.key for b in bs if b is not None}
        return not any(b is None and any(c.key not in taken for c in cands[k])
                       for k, b in enumerate(bs))

    results = sorted((bs for bs in results if maximal(bs)),
                     key=lambda bs: _rank(bs, verb_index))
    in_scope = tuple(select_in_scope_pps(seg, covering, verb_index, window))
    occ = occurrence_id or (seg.sentence.source_id, verb_index)
    return [CandidateAssignment(verb_lemma, occ, pattern, bs, covering_id, in_scope)
            for bs in results]


def filter_coverings(coverings: Sequence[Covering], pattern: FramePattern,
                     seg: ClauseSegment, verb_index: int, **kwargs) -> List[Covering]:
    """Keep the coverings the frame can be matched against."""
    return [c for c in coverings if match_frame(pattern, seg, c, verb_index, **kwargs)]


def match_occurrence(pattern: FramePattern, sentence: Sentence, coverings: Sequence[Covering],
                     verb_index: int, verb_lemma: str, window: int = 1
                     ) -> Tuple[List[CandidateAssignment], int]:
    """All assignments for one verb occurrence over every surviving covering.

    Returns the assignments and the number of coverings discarded.
    """
    segments = split_clauses(sentence, [verb_index], coverings[0] if coverings else None)
    seg = segment_for(segments, verb_index)
    if seg is None:
        return [], len(coverings)
    preceding = [s for s in segments if s.span[1] <= seg.span[0]]
    occ = (sentence.source_id, verb_index)
    out: List[CandidateAssignment] = []
    discarded = 0
    for cid, cov in enumerate(coverings):
        found = match_frame(pattern, seg, cov, verb_index, window=window,
                            preceding=preceding, verb_lemma=verb_lemma,
                            occurrence_id=occ, covering_id=cid)
        if found:
            out.extend(found)
        else:
            discarded += 1
    return out, discarded
