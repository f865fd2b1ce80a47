"""End-to-end orchestration shared by the CLI and the tests."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

from .chunker import Covering, GrammarRule, chunk_tsv_lines, default_grammar, parse_chunks
from .enrich import EnrichedFrame, enrich_assignments, frame_to_report
from .framespec import PhraseKind, parse_frame
from .lexres import Lexicon
from .matcher import CandidateAssignment, find_verb_occurrences, match_occurrence
from .textprep import NEConfig, Sentence, prepare_document, prepare_pretagged

DATA_DIR = Path(__file__).parent / "data"
DEFAULT_LEXICON = DATA_DIR / "toy_lexicon.json"
DEFAULT_CORPUS = DATA_DIR / "corpus"


@dataclass
class RunConfig:
    lexicon_path: Path = DEFAULT_LEXICON
    corpus_paths: List[Path] = field(default_factory=lambda: [DEFAULT_CORPUS])
    target_verbs: List[str] = field(default_factory=list)
    scope_window: int = 1
    adjunct_filter: bool = True
    min_evidence: int = 1
    input_mode: str = "raw"
    output_format: str = "json"
    grammar_path: Optional[Path] = None
    ne_config_path: Optional[Path] = None
    out_dir: Optional[Path] = None
    jobs: int = 1

    def __post_init__(self):
        if self.scope_window < 1:
            raise ValueError("scope window must be >= 1")
        if not self.corpus_paths:
            raise ValueError("at least one corpus path is required")
        if self.input_mode not in ("raw", "pretagged"):
            raise ValueError(f"unknown input mode {self.input_mode!r}")


def corpus_files(paths: Sequence[Path]) -> List[Tuple[str, Path]]:
    """(document id, file) pairs in a stable order; directories are walked sorted."""
    out = []
    for p in paths:
        p = Path(p)
        if p.is_dir():
            for f in sorted(q for q in p.rglob("*") if q.is_file() and not q.name.startswith(".")):
                out.append((f.relative_to(p).with_suffix("").as_posix(), f))
        elif p.is_file():
            out.append((p.stem, p))
        else:
            raise FileNotFoundError(str(p))
    return out


def load_corpus(paths: Sequence[Path], lex: Lexicon, ne_config: Optional[NEConfig] = None,
                pretagged: bool = False, jobs: int = 1) -> List[Sentence]:
    files = corpus_files(paths)
    prepare = prepare_pretagged if pretagged else prepare_document

    def one(item):
        doc_id, path = item
        return prepare(path.read_text(encoding="utf-8"), lex, ne_config, doc_id)

    with ThreadPoolExecutor(max_workers=max(1, jobs)) as pool:
        docs = list(pool.map(one, files))
    return [s for doc in docs for s in doc]


class Corpus:
    """Prepared sentences plus a lazily filled covering cache."""

    def __init__(self, sentences: Sequence[Sentence],
                 grammar: Optional[Sequence[GrammarRule]] = None, jobs: int = 1):
        self.sentences = list(sentences)
        self.by_id = {s.source_id: s for s in self.sentences}
        self.grammar = default_grammar() if grammar is None else list(grammar)
        self.jobs = jobs
        self._coverings: Dict[str, List[Covering]] = {}

    def coverings(self, source_id: str) -> List[Covering]:
        if source_id not in self._coverings:
            self._coverings[source_id] = parse_chunks(self.by_id[source_id], self.grammar)
        return self._coverings[source_id]

    def parse_all(self) -> None:
        todo = [s for s in self.sentences if s.source_id not in self._coverings]
        with ThreadPoolExecutor(max_workers=max(1, self.jobs)) as pool:
            results = list(pool.map(lambda s: parse_chunks(s, self.grammar), todo))
        for s, cov in zip(todo, results):
            self._coverings[s.source_id] = cov


def assignments_for(corpus: Corpus, verb: str, pattern_raw: str, lex: Lexicon,
                    window: int = 1) -> Tuple[List[CandidateAssignment], int, List[str]]:
    pattern = parse_frame(pattern_raw)
    occurrences = find_verb_occurrences(corpus.sentences, verb, lex)
    out: List[CandidateAssignment] = []
    warnings: List[str] = []
    for sid, idx in occurrences:
        found, discarded = match_occurrence(pattern, corpus.by_id[sid], corpus.coverings(sid),
                                            idx, verb, window)
        if not found:
            warnings.append(f"{pattern_raw}: no covering of {sid} matches (verb at {idx})")
        elif discarded:
            warnings.append(f"{pattern_raw}: {discarded} covering(s) of {sid} discarded")
        out.extend(found)
    return out, len(occurrences), warnings


def enrich_verb(corpus: Corpus, verb: str, lex: Lexicon, cfg: RunConfig
                ) -> Tuple[Optional[EnrichedFrame], dict, List[CandidateAssignment]]:
    """Enrich the verb's best-supported frame and build its report.

    The frame matched by the most occurrences wins; ties go to the frame
    listed first in the lexicon.
    """
    entry = lex.verbs.get(verb)
    if entry is None:
        report = {"verb": verb, "pattern": None, "occurrences_examined": 0, "elements": [],
                  "preposition_counts": {}, "warnings": [f"verb {verb!r} not in lexicon"]}
        return None, report, []
    best = None
    notes: List[str] = []
    for raw in entry.frames:
        assignments, n_occ, warns = assignments_for(corpus, verb, raw, lex, cfg.scope_window)
        matched = len({a.occurrence_id for a in assignments})
        if best is None or matched > best[0]:
            best = (matched, raw, assignments, n_occ, warns)
        if len(entry.frames) > 1:
            notes.append(f"frame {raw}: matched {matched} of {n_occ} occurrence(s)")
    matched, raw, assignments, n_occ, warns = best
    pattern = parse_frame(raw)
    frame = enrich_assignments(verb, pattern, assignments, n_occ, lex,
                               adjunct_filter=cfg.adjunct_filter,
                               min_evidence=cfg.min_evidence)
    extra = list(warns) + notes
    if n_occ == 0:
        extra.insert(0, f"verb {verb!r} does not occur in the corpus")
    for code in pattern.elements:
        if code.phrase_kind is PhraseKind.INFINITIVE_CLAUSE or code.code.upper() in ("BM", "BD"):
            extra.append(f"{code.code}: recognized only, not enriched")
    return frame, frame_to_report(frame, lex, extra), assignments


def target_verbs(corpus: Corpus, lex: Lexicon, cfg: RunConfig) -> List[str]:
    if cfg.target_verbs:
        return list(cfg.target_verbs)
    out = []
    for lemma in sorted(lex.verbs):
        if len(find_verb_occurrences(corpus.sentences, lemma, lex)) >= max(1, cfg.min_evidence):
            out.append(lemma)
    return out


def assignment_tsv_lines(assignments: Sequence[CandidateAssignment]) -> List[str]:
    lines = []
    for a in assignments:
        for k, code in enumerate(a.pattern.elements):
            b = a.bindings[k]
            lines.append("\t".join((
                a.verb_lemma, a.occurrence_id[0], str(a.occurrence_id[1]), str(a.covering_id),
                a.pattern.raw, code.code,
                f"{b.span[0]}:{b.span[1]}" if b else "-",
                b.surface if b else "-",
            )))
    return lines


def render_text(report: dict) -> str:
    """Aligned-column rendering of one report."""
    head = (f"verb: {report['verb']}   frame: {report['pattern']}   "
            f"occurrences: {report['occurrences_examined']}")
    rows = [("code", "form", "prep", "case", "evidence", "categories", "generalization")]
    for el in report["elements"]:
        gen = el.get("generalization")
        rows.append((
            el["code"], el["phrase_form"], el.get("preposition", "-"), el.get("case", "-"),
            str(el["evidence"]),
            " ".join(f"{k}:{v}" for k, v in el["categories"].items()) or "-",
            f"{gen['id']} ({gen['category']})" if gen else "-",
        ))
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    lines = [head]
    for r in rows:
        lines.append("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip())
    counts = report["preposition_counts"]
    lines.append("prepositions: " + (" ".join(f"{p}:{n}" for p, n in counts.items()) or "-"))
    for w in report["warnings"]:
        lines.append(f"warning: {w}")
    return "\n".join(lines) + "\n"


def chunk_dump(corpus: Corpus) -> List[str]:
    corpus.parse_all()
    lines = []
    for s in corpus.sentences:
        lines.extend(chunk_tsv_lines(s, corpus.coverings(s.source_id)[0]))
    return lines


def resolve_path(p) -> Path:
    return Path(os.path.expanduser(str(p)))
