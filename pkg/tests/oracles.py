"""Slow, obviously-correct reference implementations used by the tests."""

from __future__ import annotations

from functools import lru_cache
from typing import Dict, FrozenSet, List, Optional, Sequence, Set, Tuple

from frameenrich.chunker import CHUNK_KINDS, TERMINALS, GrammarRule, build_chunk
from frameenrich.lexres import Lexicon


def derivable_spans(sentence, grammar: Sequence[GrammarRule]) -> Set[Tuple[str, int, int]]:
    """Every (NP|PP, i, j) the grammar derives, by enumerating span x rule x split.

    Case clashes veto a chunk exactly as in the parser: a vetoed NP is not
    available inside a PP either.
    """
    tags = [t.pos.value for t in sentence.tokens]
    n = len(tags)
    rules_for: Dict[str, List[GrammarRule]] = {}
    for r in grammar:
        rules_for.setdefault(r.lhs, []).append(r)

    @lru_cache(maxsize=None)
    def derives(sym: str, i: int, j: int) -> bool:
        if sym in TERMINALS:
            return j == i + 1 and tags[i] == sym
        ok = any(splits(r.rhs, i, j) for r in rules_for.get(sym, ()))
        if ok and sym in CHUNK_KINDS:
            ok = build_chunk(sym, sentence, i, j) is not None
        return ok

    @lru_cache(maxsize=None)
    def splits(rhs: Tuple[str, ...], i: int, j: int) -> bool:
        if len(rhs) == 1:
            return derives(rhs[0], i, j)
        return any(derives(rhs[0], i, k) and splits(rhs[1:], k, j)
                   for k in range(i + 1, j - len(rhs) + 2))

    return {(sym, i, j) for sym in CHUNK_KINDS
            for i in range(n) for j in range(i + 1, n + 1) if derives(sym, i, j)}


def _overlap(a: Tuple[int, int], b: Tuple[int, int]) -> bool:
    return a[0] < b[1] and b[0] < a[1]


def maximal_coverings_oracle(keys: Sequence[Tuple[str, int, int]]) -> Set[FrozenSet]:
    """All non-overlapping chunk sets no outside chunk could be added to or
    swallow part of, found by include/exclude over every subset."""
    keys = sorted(keys)
    out = set()

    def is_maximal(sel: List[Tuple[str, int, int]]) -> bool:
        for e in keys:
            if e in sel:
                continue
            hit = [c for c in sel if _overlap(c[1:], e[1:])]
            if all(e[1] <= c[1] and c[2] <= e[2] and c[1:] != e[1:] for c in hit):
                return False
        return True

    def walk(k: int, sel: List[Tuple[str, int, int]]) -> None:
        if k == len(keys):
            if is_maximal(sel):
                out.add(frozenset(sel))
            return
        walk(k + 1, sel)  # exclude
        if not any(_overlap(c[1:], keys[k][1:]) for c in sel):
            walk(k + 1, sel + [keys[k]])  # include

    walk(0, [])
    return out


def all_paths_to_root(lex: Lexicon, sid: str) -> List[List[str]]:
    hyps = lex.synsets[sid].hypernyms
    if not hyps:
        return [[sid]]
    return [[sid] + p for h in hyps for p in all_paths_to_root(lex, h)]


def depth_oracle(lex: Lexicon, sid: str) -> int:
    return max(len(p) for p in all_paths_to_root(lex, sid)) - 1


def lcs_oracle(lex: Lexicon, ids: Sequence[str]) -> Optional[str]:
    """Deepest common ancestor (max path length to a root; ties: smallest id)."""
    sets = [{x for p in all_paths_to_root(lex, i) for x in p} for i in ids]
    common = set.intersection(*sets)
    if not common:
        return None
    best = max(depth_oracle(lex, c) for c in common)
    return min(c for c in common if depth_oracle(lex, c) == best)


def first_path_oracle(lex: Lexicon, sid: str) -> List[str]:
    """Breadth-first walk restricted to first hypernyms."""
    path, frontier = [], [sid]
    while frontier:
        cur = frontier.pop(0)
        path.append(cur)
        frontier.extend(lex.synsets[cur].hypernyms[:1])
    return path


def has_cycle_oracle(edges: Dict[str, Sequence[str]]) -> bool:
    """Reachability closure: a node reaching itself means a cycle."""
    for start in edges:
        seen, todo = set(), list(edges[start])
        while todo:
            x = todo.pop()
            if x == start:
                return True
            if x in seen or x not in edges:
                continue
            seen.add(x)
            todo.extend(edges[x])
    return False
