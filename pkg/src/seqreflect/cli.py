"""Command line entry point.

Exit status: 0 when every analyzed connective is consistent, 1 when some
check is violated, 2 on usage, input or parse errors.
"""
from __future__ import annotations

import argparse
import json
import sys
import time

from .batch import corpus_to_json, corpus_to_text, fuzz_to_json, fuzz_to_text, run_corpus, run_fuzz
from .calculus import CalculusError
from .dsl import ParseError, parse_spec
from .generator import MUTATIONS, GenBounds
from .report import AnalysisOptions, analyze, report_to_json, report_to_text, summarize

MUTATION_FLAGS = {
    "all": MUTATIONS,
    "none": (),
    "context": ("context_change",),
    "multiform": ("multi_formation",),
    "mismatch": ("side_mismatch",),
    "drop": ("drop_rule",),
}


class UsageError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False, ensure_ascii=False) + "\n"


def _load(path: str, connective: str | None):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror or exc}") from exc
    try:
        specs = parse_spec(text)
    except (ParseError, CalculusError) as exc:
        raise UsageError(f"{path}: {exc}") from exc
    if connective is not None:
        specs = [s for s in specs if s.name == connective]
        if not specs:
            raise UsageError(f"{path}: no connective named {connective!r}")
    if not specs:
        raise UsageError(f"{path}: no connectives declared")
    return specs


def _options(args) -> AnalysisOptions:
    mode = getattr(args, "doi_mode", "two-phase").replace("-", "_")
    depth = getattr(args, "max_depth", None)
    if depth is not None and depth < 1:
        raise UsageError("--max-depth must be positive")
    return AnalysisOptions(doi_mode=mode, max_depth=depth)


def _emit(args, reports, text_fn, json_fn) -> int:
    if args.format == "json":
        payload = [json_fn(r) for r in reports]
        sys.stdout.write(_dump(payload[0] if len(payload) == 1 else payload))
    else:
        sys.stdout.write("\n".join(text_fn(r) for r in reports))
    return 0 if summarize(reports).ok else 1


def cmd_analyze(args) -> int:
    reports = [analyze(s, _options(args)) for s in _load(args.file, args.connective)]
    if args.timings:
        for r in reports:
            parts = ", ".join(f"{k} {v * 1000:.1f} ms" for k, v in r.timings.items())
            print(f"{r.spec.name}: {parts}", file=sys.stderr)
    return _emit(args, reports, lambda r: report_to_text(r, args.verbose), report_to_json)


def _section(keys, title):
    """Subcommand printing only part of the full report."""
    def run(args) -> int:
        reports = [analyze(s, _options(args)) for s in _load(args.file, args.connective)]
        if args.format == "json":
            out = []
            for r in reports:
                full = report_to_json(r)
                out.append({"connective": full["connective"], **{k: full[k] for k in keys}})
            sys.stdout.write(_dump(out[0] if len(out) == 1 else out))
        else:
            for r in reports:
                sys.stdout.write(_filter_text(report_to_text(r, args.verbose), title))
        return 0 if summarize(reports).ok else 1
    return run


def _filter_text(text: str, title) -> str:
    # keep the header line, then every heading matching ``title`` with its indented block
    lines = text.splitlines()
    out, keep = lines[:1], False
    for line in lines[1:]:
        if line and not line.startswith(" "):
            keep = line.startswith(title)
        if keep and line:
            out.append(line)
    return "\n".join(out) + "\n"


cmd_check_doi = _section(("doi",), "deducibility")
cmd_check_cut = _section(("main_cut",), "main cut")
cmd_reflection = _section(("equations", "reflection", "uniqueness"), ("left equation", "right equation",
                                                                       "reflection", "uniqueness"))
cmd_classify = _section(("classification",), "synthetic")


def cmd_corpus(args) -> int:
    rows = run_corpus()
    sys.stdout.write(_dump(corpus_to_json(rows)) if args.format == "json" else corpus_to_text(rows))
    ok = all(r.matches for r in rows) and summarize(r.report for r in rows).ok
    return 0 if ok else 1


def cmd_fuzz(args) -> int:
    if args.count < 0:
        raise UsageError("--count must be non-negative")
    try:
        bounds = GenBounds(args.max_arity, args.max_branches, args.max_group)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    t0 = time.perf_counter()
    run = run_fuzz(args.count, args.seed, bounds, MUTATION_FLAGS[args.mutate])
    if args.timings:
        print(f"fuzz: {time.perf_counter() - t0:.2f} s", file=sys.stderr)
    sys.stdout.write(_dump(fuzz_to_json(run)) if args.format == "json" else fuzz_to_text(run))
    return 0 if run.summary.ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="seqreflect",
                                     description="Check sequent-calculus connectives for harmony.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, file=True):
        if file:
            p.add_argument("file", metavar="FILE", help="rule file")
            p.add_argument("--connective", metavar="NAME", help="analyze only this connective")
            p.add_argument("--verbose", action="store_true", help="print certificates as trees")
            p.add_argument("--doi-mode", choices=("two-phase", "bounded"), default="two-phase",
                           help="bounded also runs a depth-limited search as a diagnostic")
            p.add_argument("--max-depth", type=int, metavar="N", help="depth for --doi-mode bounded")
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--timings", action="store_true", help="print timings to stderr")

    p = sub.add_parser("analyze", help="run every check on a rule file")
    common(p)
    p.set_defaults(func=cmd_analyze)
    for name, func, help_ in (("check-doi", cmd_check_doi, "deducibility of identicals only"),
                              ("check-cut", cmd_check_cut, "main cut step only"),
                              ("derive-reflection", cmd_reflection, "definitional equations and reflection"),
                              ("classify", cmd_classify, "synthetic-connective recognition")):
        p = sub.add_parser(name, help=help_)
        common(p)
        p.set_defaults(func=func)
    p = sub.add_parser("corpus", help="check the built-in corpus against its expected verdicts")
    common(p, file=False)
    p.set_defaults(func=cmd_corpus)
    p = sub.add_parser("fuzz", help="generate synthetic connectives and mutants")
    common(p, file=False)
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--seed", default="0")
    p.add_argument("--max-arity", type=int, default=4)
    p.add_argument("--max-branches", type=int, default=3)
    p.add_argument("--max-group", type=int, default=3)
    p.add_argument("--mutate", choices=tuple(MUTATION_FLAGS), default="all")
    p.set_defaults(func=cmd_fuzz)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) and 2
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"seqreflect: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
