"""Command line interface: ``frameenrich {enrich,chunk,lexinfo}``.

Exit codes: 0 success, 1 usage error, 2 input or integrity error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from .chunker import GrammarError, load_grammar
from .lexres import LexiconError, hypernym_path, load_lexicon_file, lookup_synsets, POS_TAGS
from .pipeline import (DEFAULT_CORPUS, DEFAULT_LEXICON, Corpus, RunConfig, assignment_tsv_lines,
                       chunk_dump, enrich_verb, load_corpus, render_text, target_verbs)
from .textprep import VerticalFormatError, load_ne_config

EXIT_USAGE = 1
EXIT_INPUT = 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--lexicon", metavar="PATH", type=Path, default=DEFAULT_LEXICON,
                   help="lexicon JSON file (default: bundled toy lexicon)")
    p.add_argument("--corpus", metavar="PATH", type=Path, nargs="+", default=None,
                   help="corpus files or directories (default: bundled mini-corpus)")
    p.add_argument("--pretagged", action="store_true",
                   help="corpus is vertical TSV (surface, pos, lemma) instead of raw text")
    p.add_argument("--grammar", metavar="PATH", type=Path,
                   help="chunk grammar override file ('LHS -> sym ...' per line)")
    p.add_argument("--ne-config", metavar="PATH", type=Path,
                   help="NE config JSON (abbreviations, vehicles, locations, persons)")
    p.add_argument("--jobs", metavar="N", type=int, default=1,
                   help="documents prepared and parsed concurrently (default: 1)")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="frameenrich",
                     description="Enrich verb subcategorization frames from a chunked corpus.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    common = _common()

    e = sub.add_parser("enrich", parents=[common], help="run frame enrichment")
    e.add_argument("--verb", metavar="LEMMA", action="append", default=[],
                   help="target verb, repeatable (default: all lexicon verbs found in the corpus)")
    e.add_argument("--scope-window", metavar="N", type=int, default=1,
                   help="chunks on each side of the verb searched for PPs (default: 1)")
    e.add_argument("--no-adjunct-filter", action="store_true",
                   help="also count local and temporal PPs")
    e.add_argument("--min-evidence", metavar="N", type=int, default=1,
                   help="observations below which an element is marked insufficient (default: 1)")
    e.add_argument("--format", choices=("json", "text", "tsv"), default="json",
                   help="json report, aligned text, or tsv dump of assignments")
    e.add_argument("--out", metavar="DIR", type=Path,
                   help="write <verb>.<ext> files into DIR instead of standard output")

    c = sub.add_parser("chunk", parents=[common], help="dump chunks of the best covering as TSV")
    c.add_argument("--out", metavar="DIR", type=Path, help="write chunks.tsv into DIR")

    lx = sub.add_parser("lexinfo", help="show what the lexicon knows about a lemma")
    lx.add_argument("lemma")
    lx.add_argument("--lexicon", metavar="PATH", type=Path, default=DEFAULT_LEXICON,
                    help="lexicon JSON file (default: bundled toy lexicon)")
    return parser


def config_from_args(args) -> RunConfig:
    if args.jobs < 1:
        raise UsageError("--jobs must be >= 1")
    window = getattr(args, "scope_window", 1)
    if window < 1:
        raise UsageError("--scope-window must be >= 1")
    paths = args.corpus or [DEFAULT_CORPUS]
    for p in [args.lexicon] + list(paths):
        if not Path(p).exists():
            raise UsageError(f"no such file or directory: {p}")
    for p in (args.grammar, args.ne_config):
        if p is not None and not Path(p).is_file():
            raise UsageError(f"no such file: {p}")
    return RunConfig(
        lexicon_path=args.lexicon,
        corpus_paths=list(paths),
        target_verbs=list(getattr(args, "verb", [])),
        scope_window=window,
        adjunct_filter=not getattr(args, "no_adjunct_filter", False),
        min_evidence=getattr(args, "min_evidence", 1),
        input_mode="pretagged" if args.pretagged else "raw",
        output_format=getattr(args, "format", "json"),
        grammar_path=args.grammar,
        ne_config_path=args.ne_config,
        out_dir=args.out,
        jobs=args.jobs,
    )


def _load(cfg: RunConfig):
    lex = load_lexicon_file(cfg.lexicon_path)
    ne = load_ne_config(cfg.ne_config_path) if cfg.ne_config_path else None
    grammar = load_grammar(cfg.grammar_path) if cfg.grammar_path else None
    sents = load_corpus(cfg.corpus_paths, lex, ne, cfg.input_mode == "pretagged", cfg.jobs)
    return lex, Corpus(sents, grammar, cfg.jobs)


def _emit(text: str, out_dir: Optional[Path], name: str, stdout) -> None:
    if out_dir is None:
        stdout.write(text)
    else:
        out_dir.mkdir(parents=True, exist_ok=True)
        (out_dir / name).write_text(text, encoding="utf-8")


def cmd_enrich(cfg: RunConfig, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    lex, corpus = _load(cfg)
    corpus.parse_all()
    ext = {"json": "json", "text": "txt", "tsv": "tsv"}[cfg.output_format]
    for verb in target_verbs(corpus, lex, cfg):
        _, report, assignments = enrich_verb(corpus, verb, lex, cfg)
        for w in report["warnings"]:
            stderr.write(f"{verb}: {w}\n")
        if cfg.output_format == "json":
            if cfg.out_dir is None:
                text = json.dumps(report, ensure_ascii=False) + "\n"
            else:
                text = json.dumps(report, ensure_ascii=False, indent=2) + "\n"
        elif cfg.output_format == "text":
            text = render_text(report)
        else:
            text = "".join(line + "\n" for line in assignment_tsv_lines(assignments))
        _emit(text, cfg.out_dir, f"{verb}.{ext}", stdout)
    return 0


def cmd_chunk(cfg: RunConfig, stdout=None) -> int:
    stdout = stdout or sys.stdout
    _, corpus = _load(cfg)
    text = "".join(line + "\n" for line in chunk_dump(corpus))
    _emit(text, cfg.out_dir, "chunks.tsv", stdout)
    return 0


def cmd_lexinfo(lexicon_path: Path, lemma: str, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    lex = load_lexicon_file(lexicon_path)
    lines: List[str] = []
    for pos in POS_TAGS:
        for s in lookup_synsets(lex, lemma, pos):
            lines.append(f"synset {s.id} ({s.pos}): {', '.join(s.lemmas)}")
            lines.append(f"  category: {s.category}")
            lines.append(f"  hypernym path: {' > '.join(hypernym_path(lex, s.id))}")
    entry = lex.verbs.get(lemma) or lex.verbs.get(lex.form_index.get(lemma, ""))
    if entry is not None:
        lines.append(f"verb {entry.lemma}: frames {' | '.join(entry.frames)}")
        lines.append(f"  forms: {', '.join(entry.inflected_forms)}")
    if not lines:
        stderr.write(f"lexinfo: unknown lemma {lemma!r}\n")
        return EXIT_USAGE
    stdout.write("\n".join(lines) + "\n")
    return 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "lexinfo":
            if not args.lexicon.exists():
                raise UsageError(f"no such file: {args.lexicon}")
            return cmd_lexinfo(args.lexicon, args.lemma)
        cfg = config_from_args(args)
        if args.command == "enrich":
            return cmd_enrich(cfg)
        return cmd_chunk(cfg)
    except UsageError as exc:
        sys.stderr.write(f"frameenrich: error: {exc}\n")
        return EXIT_USAGE
    except (LexiconError, GrammarError, VerticalFormatError, json.JSONDecodeError,
            UnicodeDecodeError, OSError) as exc:
        sys.stderr.write(f"frameenrich: {type(exc).__name__}: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
