"""Turn candidate assignments into preposition statistics and filler profiles.

Local and temporal PPs are treated as adjuncts and left out of the
preposition count, unless the frame itself asks for a local (BL) or
temporal (BT) complement.  The most frequent remaining preposition becomes
the PP element's preposition; its fillers are classified through the
lexicon's hypernym tree and generalized by their lowest common hypernym.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .chunker import Chunk, PREPOSITION_CASES
from .framespec import CASE_ORDER, Case, FramePattern, PhraseKind, Restriction
from .lexres import Lexicon, ancestors, lookup_synsets, lowest_common_hypernym
from .matcher import Binding, CandidateAssignment, OccurrenceId
from .textprep import ADVERB_CLASSES, NEClass, Pos

UNKNOWN = "unknown"

NE_CATEGORIES = {
    NEClass.REGISTRATION_NUMBER: "person",
    NEClass.PERSON_NAME: "person",
    NEClass.VEHICLE_NAME: "vehicle",
    NEClass.LICENCE_PLATE: "vehicle",
    NEClass.LOCATION_NAME: "location",
    NEClass.DATE: "time",
}
_ADVERB_CATEGORIES = {"local": "location", "temporal": "time", "manner": "manner"}

_NOUN_SUFFIXES = ("ern", "en", "er", "es", "e", "n", "s")
_UMLAUTS = (("äu", "au"), ("ä", "a"), ("ö", "o"), ("ü", "u"))


def noun_lemma_candidates(surface: str) -> List[str]:
    """Plausible citation forms of an inflected German noun, most literal first."""
    stems = [surface] + [surface[: -len(s)] for s in _NOUN_SUFFIXES
                         if surface.endswith(s) and len(surface) - len(s) >= 3]
    out: List[str] = []
    for stem in stems:
        cands = [stem]
        for umlaut, plain in _UMLAUTS:
            i = stem.rfind(umlaut)
            if i >= 0:
                cands.append(stem[:i] + plain + stem[i + len(umlaut):])
        out.extend(c for c in cands if c not in out)
    return out


def noun_synset(lex: Lexicon, surface: str) -> Optional[str]:
    for cand in noun_lemma_candidates(surface):
        found = lookup_synsets(lex, cand, "noun")
        if found:
            return found[0].id
    return None


@dataclass(frozen=True)
class FillerObservation:
    element_position: int
    surface: str
    filler_kind: str  # common-noun | pronoun | ne:<class> | adverb
    synset: Optional[str]
    top_category: str


def classify_filler(binding: Binding, lex: Lexicon, position: int = 0) -> FillerObservation:
    """Shallow semantic class of a filler from its head."""
    if binding.chunk is None:
        word = binding.surface.lower()
        cat = _ADVERB_CATEGORIES.get(ADVERB_CLASSES.get(word, ""), UNKNOWN)
        return FillerObservation(position, binding.surface, "adverb", None, cat)
    head = binding.chunk.head
    if head.ne_class is not None:
        return FillerObservation(position, binding.surface, f"ne:{head.ne_class.value}",
                                 None, NE_CATEGORIES[head.ne_class])
    if head.pos is Pos.PRONOUN:
        return FillerObservation(position, binding.surface, "pronoun", None, "person")
    sid = noun_synset(lex, head.surface)
    if sid is None:
        return FillerObservation(position, binding.surface, "common-noun", None, UNKNOWN)
    return FillerObservation(position, binding.surface, "common-noun", sid,
                             lex.synsets[sid].category)


def head_labels(pp: Chunk, lex: Lexicon) -> Optional[set]:
    """Category labels reachable from the PP head, or None when unresolvable."""
    head = pp.head
    if head.ne_class is not None:
        return {NE_CATEGORIES[head.ne_class]}
    sid = noun_synset(lex, head.surface)
    if sid is None:
        return None
    return {lex.synsets[a].label for a in ancestors(lex, sid) if lex.synsets[a].label}


def is_adjunct_pp(pp: Chunk, pattern: FramePattern, lex: Lexicon) -> bool:
    labels = head_labels(pp, lex)
    if not labels:
        return False
    if "location" in labels and not pattern.has_restriction(Restriction.LOCAL):
        return True
    if "time" in labels and not pattern.has_restriction(Restriction.TEMPORAL):
        return True
    return False


@dataclass
class PrepositionStats:
    verb_lemma: str
    counts: Dict[str, int] = field(default_factory=dict)
    total_occurrences: int = 0
    case_counts: Dict[str, Dict[Case, int]] = field(default_factory=dict)
    filtered: Dict[str, int] = field(default_factory=dict)
    warnings: List[str] = field(default_factory=list)


def _by_occurrence(assignments: Sequence[CandidateAssignment]
                   ) -> Dict[OccurrenceId, List[CandidateAssignment]]:
    grouped: Dict[OccurrenceId, List[CandidateAssignment]] = {}
    for a in assignments:
        grouped.setdefault(a.occurrence_id, []).append(a)
    return grouped


def count_prepositions(assignments: Sequence[CandidateAssignment], pattern: FramePattern,
                       lex: Lexicon, filter: bool = True,
                       total_occurrences: Optional[int] = None) -> PrepositionStats:
    """Per occurrence, count each distinct in-scope preposition once."""
    grouped = _by_occurrence(assignments)
    verb = assignments[0].verb_lemma if assignments else ""
    stats = PrepositionStats(verb, total_occurrences=len(grouped)
                             if total_occurrences is None else total_occurrences)
    counts: Counter = Counter()
    filtered: Counter = Counter()
    cases: Dict[str, Counter] = defaultdict(Counter)
    for occ, group in grouped.items():
        pps: Dict[Tuple, Chunk] = {}
        for a in group:
            for pp in a.in_scope:
                pps.setdefault((pp.preposition, pp.span), pp)
        kept: Dict[str, set] = {}
        dropped = set()
        for (prep, _), pp in sorted(pps.items(), key=lambda kv: (kv[0][1], kv[0][0])):
            if head_labels(pp, lex) is None:
                stats.warnings.append(
                    f"unresolvable PP head {pp.head.surface!r} in {occ[0]} (kept)")
            if filter and is_adjunct_pp(pp, pattern, lex):
                dropped.add(prep)
                continue
            kept.setdefault(prep, set()).update(pp.case_set)
        for prep, case_set in kept.items():
            counts[prep] += 1
            for c in case_set:
                cases[prep][c] += 1
        for prep in dropped - set(kept):
            filtered[prep] += 1
    stats.counts = dict(sorted(counts.items()))
    stats.case_counts = {p: dict(cases[p]) for p in sorted(cases)}
    stats.filtered = dict(sorted(filtered.items()))
    return stats


@dataclass(frozen=True)
class DominantPreposition:
    preposition: str
    case: Optional[Case]
    count: int
    ties: Tuple[str, ...] = ()


def _pick_case(prep: str, stats: PrepositionStats,
               table: Mapping[str, frozenset]) -> Optional[Case]:
    governed = table.get(prep)
    if governed is not None and len(governed) == 1:
        return next(iter(governed))
    seen = stats.case_counts.get(prep, {})
    options = [c for c in CASE_ORDER if (governed is None or c in governed) and seen.get(c)]
    if not options:
        return None
    return max(options, key=lambda c: (seen[c], -CASE_ORDER.index(c)))


def select_dominant_preposition(stats: PrepositionStats,
                                prep_case_table: Mapping[str, frozenset] = PREPOSITION_CASES
                                ) -> Optional[DominantPreposition]:
    if not stats.counts:
        return None
    best = max(stats.counts.values())
    tied = sorted(p for p, n in stats.counts.items() if n == best)
    prep = tied[0]
    return DominantPreposition(prep, _pick_case(prep, stats, prep_case_table), best,
                               tuple(tied) if len(tied) > 1 else ())


@dataclass
class SemanticProfile:
    per_category: Dict[str, int] = field(default_factory=dict)
    generalization: Optional[str] = None

    @property
    def observations(self) -> int:
        return sum(self.per_category.values())


def generalize_categories(obs: Sequence[FillerObservation], lex: Lexicon) -> SemanticProfile:
    hist = Counter(o.top_category for o in obs)
    synsets = set()
    for o in obs:
        sid = o.synset
        if sid is None and o.top_category != UNKNOWN:
            sid = lex.category_synset(o.top_category)
        if sid is not None:
            synsets.add(sid)
    general = None
    if len(synsets) >= 2 and len({lex.synsets[s].pos for s in synsets}) == 1:
        general = lowest_common_hypernym(lex, sorted(synsets))
    return SemanticProfile(dict(sorted(hist.items())), general)


@dataclass
class ElementResult:
    code: str
    phrase_form: str
    preposition: Optional[str] = None
    case: Optional[Case] = None
    profile: SemanticProfile = field(default_factory=SemanticProfile)
    evidence: int = 0
    fillers: List[str] = field(default_factory=list)
    ties: Tuple[str, ...] = ()
    status: str = "ok"


@dataclass
class EnrichedFrame:
    verb_lemma: str
    pattern: FramePattern
    elements: List[ElementResult]
    occurrences_examined: int
    preposition_counts: Dict[str, int] = field(default_factory=dict)
    warnings: List[str] = field(default_factory=list)


@dataclass
class ElementEvidence:
    """Observations gathered for one frame element across occurrences."""

    observations: List[FillerObservation] = field(default_factory=list)
    preposition: Optional[str] = None
    case: Optional[Case] = None
    ties: Tuple[str, ...] = ()


# element kinds whose fillers are classified; BM/BD/AZ are only recognized
_PROFILED = (PhraseKind.NOUN_PHRASE, PhraseKind.PREPOSITIONAL_PHRASE,
             PhraseKind.REFLEXIVE, PhraseKind.EXPLETIVE)


def _profiled(code) -> bool:
    return code.phrase_kind in _PROFILED or code.semantic_restriction in (
        Restriction.LOCAL, Restriction.TEMPORAL)


def collect_evidence(assignments: Sequence[CandidateAssignment], pattern: FramePattern,
                     lex: Lexicon, stats: PrepositionStats,
                     prep_case_table: Mapping[str, frozenset] = PREPOSITION_CASES
                     ) -> Tuple[Dict[int, ElementEvidence], List[str]]:
    """One observation per element per occurrence, from its best assignment.

    PP elements only take fillers headed by the dominant preposition.
    """
    grouped = _by_occurrence(assignments)
    dominant = select_dominant_preposition(stats, prep_case_table)
    evidence = {k: ElementEvidence() for k in range(len(pattern.elements))}
    warnings: List[str] = []
    for k, code in enumerate(pattern.elements):
        ev = evidence[k]
        if code.is_pp:
            if dominant is None:
                continue
            ev.preposition, ev.case, ev.ties = dominant.preposition, dominant.case, dominant.ties
        bound_preps: Counter = Counter()
        bound_cases: Dict[str, Counter] = defaultdict(Counter)
        for occ, group in grouped.items():
            pick = None
            for a in group:
                b = a.bound(k)
                if b is None:
                    continue
                if code.is_pp and b.chunk.preposition != ev.preposition:
                    continue
                pick = b
                break
            if pick is None:
                continue
            if pick.chunk is not None and pick.chunk.kind == "PP" and not code.is_pp:
                bound_preps[pick.chunk.preposition] += 1
                bound_cases[pick.chunk.preposition].update(pick.chunk.case_set)
            if not _profiled(code):
                ev.observations.append(FillerObservation(k, pick.surface, "unclassified", None, UNKNOWN))
                continue
            o = classify_filler(pick, lex, k)
            if o.top_category == UNKNOWN:
                warnings.append(f"unknown filler {pick.surface!r} for {code.code} in {occ[0]}")
            ev.observations.append(o)
        if bound_preps:
            # BT/BL bound to PPs: their own most frequent preposition
            best = max(bound_preps.values())
            tied = sorted(p for p, n in bound_preps.items() if n == best)
            ev.preposition, ev.ties = tied[0], tuple(tied) if len(tied) > 1 else ()
            local = PrepositionStats("", dict(bound_preps),
                                     case_counts={p: dict(c) for p, c in bound_cases.items()})
            ev.case = _pick_case(ev.preposition, local, prep_case_table)
    return evidence, warnings


def build_enriched_frame(verb: str, pattern: FramePattern, stats: PrepositionStats,
                         profiles: Mapping[int, SemanticProfile],
                         occurrences: int,
                         evidence: Optional[Mapping[int, ElementEvidence]] = None,
                         min_evidence: int = 1) -> EnrichedFrame:
    elements = []
    warnings = list(stats.warnings)
    for k, code in enumerate(pattern.elements):
        ev = evidence.get(k) if evidence else None
        profile = profiles.get(k, SemanticProfile())
        n = len(ev.observations) if ev else profile.observations
        el = ElementResult(code.code, code.phrase_kind.value, evidence=n, profile=profile)
        if code.is_np or code.phrase_kind is PhraseKind.REFLEXIVE:
            el.case = code.required_case
        if ev is not None:
            el.fillers = [o.surface for o in ev.observations]
            if n > 0 or code.is_pp:
                el.preposition = ev.preposition if n > 0 else None
                el.case = ev.case if (n > 0 and ev.preposition) else el.case
                el.ties = ev.ties if n > 0 else ()
            if not _profiled(code):
                el.profile = SemanticProfile()
        if n < min_evidence:
            el.status = "insufficient-evidence"
            warnings.append(f"{code.code}: insufficient evidence ({n} < {min_evidence})")
        elements.append(el)
    return EnrichedFrame(verb, pattern, elements, occurrences, dict(stats.counts), warnings)


def enrich_assignments(verb: str, pattern: FramePattern,
                       assignments: Sequence[CandidateAssignment], occurrences: int,
                       lex: Lexicon, *, adjunct_filter: bool = True, min_evidence: int = 1,
                       prep_case_table: Mapping[str, frozenset] = PREPOSITION_CASES
                       ) -> EnrichedFrame:
    """Statistics, classification and assembly for one verb and frame."""
    stats = count_prepositions(assignments, pattern, lex, adjunct_filter, occurrences)
    stats.verb_lemma = verb
    evidence, warnings = collect_evidence(assignments, pattern, lex, stats, prep_case_table)
    profiles = {k: generalize_categories(ev.observations, lex)
                for k, ev in evidence.items()}
    frame = build_enriched_frame(verb, pattern, stats, profiles, occurrences,
                                 evidence, min_evidence)
    frame.warnings = warnings + frame.warnings
    return frame


def frame_to_report(frame: EnrichedFrame, lex: Lexicon, warnings: Sequence[str] = ()) -> dict:
    elements = []
    for el in frame.elements:
        d = {"code": el.code, "phrase_form": el.phrase_form}
        if el.preposition is not None:
            d["preposition"] = el.preposition
        if el.ties:
            d["preposition_ties"] = list(el.ties)
        if el.case is not None:
            d["case"] = el.case.value
        d["categories"] = dict(el.profile.per_category)
        if el.profile.generalization is not None:
            s = lex.synsets[el.profile.generalization]
            d["generalization"] = {"id": s.id, "lemma": s.lemmas[0], "category": s.category}
        d["evidence"] = el.evidence
        d["fillers"] = list(el.fillers)
        if el.status != "ok":
            d["status"] = el.status
        elements.append(d)
    seen = set()
    all_warnings = []
    for w in list(frame.warnings) + list(warnings):
        if w not in seen:
            seen.add(w)
            all_warnings.append(w)
    return {
        "verb": frame.verb_lemma,
        "pattern": frame.pattern.raw,
        "occurrences_examined": frame.occurrences_examined,
        "elements": elements,
        "preposition_counts": dict(frame.preposition_counts),
        "warnings": all_warnings,
    }
