"""Wordnet-style lexical resource: synsets, hypernymy, categories, verb frames.

The on-disk format is a single JSON document::

    {"synsets": [{"id": "pkw-1", "pos": "noun", "lemmas": ["PKW", "Pkw"],
                  "hypernyms": ["fahrzeug-1"]}, ...],
     "verbs":   [{"lemma": "kollidieren", "forms": ["kollidierte", ...],
                  "frames": ["NN.Pp"]}, ...]}

Every synset without hypernyms must carry a ``category`` label.  Interior
synsets may carry one too; a synset's category is the label found first
when walking its hypernym path upwards (the synset itself included).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import IO, Dict, Iterable, List, Optional, Tuple, Union

from .framespec import FrameError, parse_frame

POS_TAGS = ("noun", "verb", "adjective")


class LexiconError(Exception):
    pass


class LexiconParseError(LexiconError):
    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(message + where)
        self.line = line
        self.column = column


class IntegrityError(LexiconError):
    def __init__(self, message: str, synset_id: Optional[str] = None):
        super().__init__(message)
        self.synset_id = synset_id


class CycleError(LexiconError):
    def __init__(self, cycle: List[str]):
        super().__init__("hypernym cycle: " + " -> ".join(cycle))
        self.cycle = cycle


class UnknownSynsetError(LookupError):
    pass


class ContractViolation(ValueError):
    pass


@dataclass(frozen=True)
class Synset:
    id: str
    pos: str
    lemmas: Tuple[str, ...]
    hypernyms: Tuple[str, ...]
    label: Optional[str] = None  # as declared in the source document
    category: str = ""  # resolved at load time


@dataclass(frozen=True)
class VerbEntry:
    lemma: str
    inflected_forms: Tuple[str, ...]
    frames: Tuple[str, ...]


@dataclass
class Lexicon:
    synsets: Dict[str, Synset] = field(default_factory=dict)
    lemma_index: Dict[Tuple[str, str], List[str]] = field(default_factory=dict)
    verbs: Dict[str, VerbEntry] = field(default_factory=dict)
    form_index: Dict[str, str] = field(default_factory=dict)

    @cached_property
    def _folded_index(self) -> Dict[Tuple[str, str], List[str]]:
        folded: Dict[Tuple[str, str], List[str]] = {}
        for (lemma, pos), ids in self.lemma_index.items():
            bucket = folded.setdefault((lemma.casefold(), pos), [])
            bucket.extend(i for i in ids if i not in bucket)
        return folded

    @cached_property
    def _depths(self) -> Dict[str, int]:
        return _max_depths(self.synsets)

    def depth(self, sid: str) -> int:
        return self._depths[sid]

    def category_synset(self, category: str) -> Optional[str]:
        """The shallowest synset labelled ``category`` (ties: smallest id)."""
        labelled = [s.id for s in self.synsets.values() if s.label == category]
        if not labelled:
            return None
        return min(labelled, key=lambda i: (self.depth(i), i))


def _max_depths(synsets: Dict[str, Synset]) -> Dict[str, int]:
    """Longest hypernym distance from each synset to any root."""
    depths: Dict[str, int] = {}

    def visit(sid: str) -> int:
        if sid in depths:
            return depths[sid]
        hyps = synsets[sid].hypernyms
        d = 0 if not hyps else 1 + max(visit(h) for h in hyps)
        depths[sid] = d
        return d

    for sid in synsets:
        visit(sid)
    return depths


def _require(obj: dict, key: str, kind, where: str):
    if key not in obj:
        raise LexiconParseError(f"{where}: missing key {key!r}")
    value = obj[key]
    if not isinstance(value, kind):
        raise LexiconParseError(f"{where}: key {key!r} has wrong type")
    return value


def _find_cycle(synsets: Dict[str, Synset]) -> Optional[List[str]]:
    WHITE, GREY, BLACK = 0, 1, 2
    color = {sid: WHITE for sid in synsets}
    for start in sorted(synsets):
        if color[start] != WHITE:
            continue
        stack: List[Tuple[str, int]] = [(start, 0)]
        path: List[str] = [start]
        color[start] = GREY
        while stack:
            sid, i = stack[-1]
            hyps = synsets[sid].hypernyms
            if i < len(hyps):
                stack[-1] = (sid, i + 1)
                nxt = hyps[i]
                if color[nxt] == GREY:
                    return path[path.index(nxt):] + [nxt]
                if color[nxt] == WHITE:
                    color[nxt] = GREY
                    stack.append((nxt, 0))
                    path.append(nxt)
            else:
                color[sid] = BLACK
                stack.pop()
                path.pop()
    return None


def build_lexicon(synsets: Iterable[Synset], verbs: Iterable[VerbEntry] = ()) -> Lexicon:
    """Validate raw synsets/verbs and assemble an indexed :class:`Lexicon`."""
    table: Dict[str, Synset] = {}
    for s in synsets:
        if s.id in table:
            raise IntegrityError(f"duplicate synset id {s.id!r}", s.id)
        table[s.id] = s

    for s in table.values():
        for h in s.hypernyms:
            if h not in table:
                raise IntegrityError(f"synset {s.id!r} names unknown hypernym {h!r}", h)
            if table[h].pos != s.pos:
                raise IntegrityError(f"hypernym {h!r} of {s.id!r} has a different pos", h)
        if not s.hypernyms and not s.label:
            raise IntegrityError(f"root synset {s.id!r} has no category", s.id)

    cycle = _find_cycle(table)
    if cycle:
        raise CycleError(cycle)

    resolved: Dict[str, Synset] = {}

    def resolve(sid: str) -> str:
        if sid in resolved:
            return resolved[sid].category
        s = table[sid]
        cat = s.label if s.label else resolve(s.hypernyms[0])
        resolved[sid] = Synset(s.id, s.pos, s.lemmas, s.hypernyms, s.label, cat)
        return cat

    for sid in table:
        resolve(sid)

    lex = Lexicon()
    for sid in table:  # keep source order
        s = resolved[sid]
        lex.synsets[sid] = s
        for lemma in s.lemmas:
            bucket = lex.lemma_index.setdefault((lemma, s.pos), [])
            if sid not in bucket:
                bucket.append(sid)

    for v in verbs:
        if v.lemma in lex.verbs:
            raise IntegrityError(f"duplicate verb entry {v.lemma!r}")
        if not v.frames:
            raise IntegrityError(f"verb {v.lemma!r} has no frames")
        for f in v.frames:
            try:
                parse_frame(f)
            except FrameError as exc:
                raise IntegrityError(f"verb {v.lemma!r}: {exc}") from exc
        forms = v.inflected_forms
        if v.lemma not in forms:
            forms = (v.lemma,) + tuple(forms)
        entry = VerbEntry(v.lemma, tuple(forms), tuple(v.frames))
        lex.verbs[v.lemma] = entry
        for form in entry.inflected_forms:
            other = lex.form_index.get(form)
            if other is not None and other != v.lemma:
                raise IntegrityError(
                    f"form {form!r} claimed by both {other!r} and {v.lemma!r}"
                )
            lex.form_index[form] = v.lemma
    return lex


def load_lexicon(source: Union[IO[bytes], IO[str], bytes, str]) -> Lexicon:
    """Parse a lexicon document from a stream (or its full contents)."""
    data = source if isinstance(source, (bytes, str)) else source.read()
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise LexiconParseError(f"not UTF-8: {exc}") from exc
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise LexiconParseError(exc.msg, exc.lineno, exc.colno) from exc
    if not isinstance(doc, dict):
        raise LexiconParseError("top level must be an object", 1, 1)

    synsets = []
    for n, raw in enumerate(doc.get("synsets", [])):
        where = f"synsets[{n}]"
        if not isinstance(raw, dict):
            raise LexiconParseError(f"{where}: expected an object")
        sid = _require(raw, "id", str, where)
        if not sid:
            raise LexiconParseError(f"{where}: empty id")
        pos = _require(raw, "pos", str, where)
        if pos not in POS_TAGS:
            raise LexiconParseError(f"{where}: unknown pos {pos!r}")
        lemmas = _require(raw, "lemmas", list, where)
        if not lemmas or not all(isinstance(x, str) and x for x in lemmas):
            raise LexiconParseError(f"{where}: lemmas must be non-empty strings")
        hyps = raw.get("hypernyms", [])
        if not isinstance(hyps, list) or not all(isinstance(x, str) for x in hyps):
            raise LexiconParseError(f"{where}: hypernyms must be a list of ids")
        label = raw.get("category")
        if label is not None and not isinstance(label, str):
            raise LexiconParseError(f"{where}: category must be a string")
        synsets.append(Synset(sid, pos, tuple(lemmas), tuple(hyps), label or None))

    verbs = []
    for n, raw in enumerate(doc.get("verbs", [])):
        where = f"verbs[{n}]"
        if not isinstance(raw, dict):
            raise LexiconParseError(f"{where}: expected an object")
        lemma = _require(raw, "lemma", str, where)
        forms = raw.get("forms", [])
        frames = _require(raw, "frames", list, where)
        verbs.append(VerbEntry(lemma, tuple(forms), tuple(frames)))

    return build_lexicon(synsets, verbs)


def load_lexicon_file(path) -> Lexicon:
    with open(path, "rb") as fh:
        return load_lexicon(fh)


def lookup_synsets(lex: Lexicon, lemma: str, pos: str) -> List[Synset]:
    ids = lex.lemma_index.get((lemma, pos))
    if not ids:
        ids = lex._folded_index.get((lemma.casefold(), pos), [])
    return [lex.synsets[i] for i in ids]


def _get(lex: Lexicon, sid: str) -> Synset:
    try:
        return lex.synsets[sid]
    except KeyError:
        raise UnknownSynsetError(sid) from None


def hypernym_path(lex: Lexicon, sid: str) -> List[str]:
    """Path from ``sid`` up to a root, always following the first hypernym."""
    path = [_get(lex, sid).id]
    while lex.synsets[path[-1]].hypernyms:
        path.append(lex.synsets[path[-1]].hypernyms[0])
    return path


def ancestors(lex: Lexicon, sid: str) -> set:
    """All synsets reachable through any hypernym edge, ``sid`` included."""
    seen = {_get(lex, sid).id}
    todo = [sid]
    while todo:
        for h in lex.synsets[todo.pop()].hypernyms:
            if h not in seen:
                seen.add(h)
                todo.append(h)
    return seen


def category_chain(lex: Lexicon, sid: str) -> List[str]:
    """Labels met along the first-hypernym path, nearest first."""
    return [lex.synsets[i].label for i in hypernym_path(lex, sid) if lex.synsets[i].label]


def lowest_common_hypernym(lex: Lexicon, ids) -> Optional[str]:
    ids = list(ids)
    if not ids:
        raise ContractViolation("lowest_common_hypernym needs at least one id")
    pos = {_get(lex, i).pos for i in ids}
    if len(pos) > 1:
        raise ContractViolation(f"mixed parts of speech: {sorted(pos)}")
    common = ancestors(lex, ids[0])
    for i in ids[1:]:
        common &= ancestors(lex, i)
    if not common:
        return None
    return min(common, key=lambda s: (-lex.depth(s), s))


def verb_frames(lex: Lexicon, lemma: str) -> List[str]:
    entry = lex.verbs.get(lemma)
    return list(entry.frames) if entry else []
