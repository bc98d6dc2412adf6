"""Batch runs: the built-in corpus against its expected verdicts, and fuzzing."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .corpus import ExpectedVerdicts, builtin_corpus
from .generator import MUTATIONS, GenBounds, MutationInapplicable, mutate, random_connective
from .report import AnalysisOptions, AnalysisReport, analyze, equivalence_violations, summarize

GENERATED = "generated"


def observed_verdicts(report: AnalysisReport) -> ExpectedVerdicts:
    per = report.reflection.per_side
    return ExpectedVerdicts(
        doi=report.doi.holds,
        main_cut=report.main_cut.holds,
        left_solvable=per["left"].solvable,
        right_solvable=per["right"].solvable,
        reflection=report.reflection.satisfied,
        witness_side=report.reflection.witness_side,
        synthetic=report.classification.synthetic,
        scheme=report.classification.scheme,
    )


@dataclass(frozen=True)
class CorpusRow:
    report: AnalysisReport
    expected: ExpectedVerdicts
    observed: ExpectedVerdicts

    @property
    def matches(self) -> bool:
        return self.expected == self.observed


def run_corpus(options: AnalysisOptions = AnalysisOptions()) -> list[CorpusRow]:
    rows = []
    for entry in builtin_corpus():
        rep = analyze(entry.spec, options)
        rows.append(CorpusRow(rep, entry.expected, observed_verdicts(rep)))
    return rows


def corpus_to_json(rows) -> dict:
    def verdicts(v):
        return {k: getattr(v, k) for k in ExpectedVerdicts.__dataclass_fields__}
    summary = summarize(r.report for r in rows)
    return {
        "entries": [{"connective": r.report.spec.name, "matches": r.matches,
                     "expected": verdicts(r.expected), "observed": verdicts(r.observed)} for r in rows],
        "all_match": all(r.matches for r in rows),
        "violations": [v.to_json() for v in summary.violations],
    }


def corpus_to_text(rows) -> str:
    def mark(b):
        return "T" if b else "F"
    head = f"{'connective':<12} {'DoI':>3} {'cut':>3} {'L-sol':>5} {'R-sol':>5} {'refl':>4} {'wit':>5} {'syn':>3} {'sch':>3}  ok"
    out = [head]
    for r in rows:
        o = r.observed
        out.append(f"{r.report.spec.name:<12} {mark(o.doi):>3} {mark(o.main_cut):>3} {mark(o.left_solvable):>5} "
                   f"{mark(o.right_solvable):>5} {mark(o.reflection):>4} {o.witness_side or '-':>5} "
                   f"{mark(o.synthetic):>3} {o.scheme or '-':>3}  {'yes' if r.matches else 'NO'}")
    summary = summarize(r.report for r in rows)
    out.append(f"{sum(r.matches for r in rows)}/{len(rows)} entries match, {len(summary.violations)} violations")
    return "\n".join(out) + "\n"


@dataclass(frozen=True)
class FuzzRun:
    seed: object
    count: int
    bounds: GenBounds
    mutations: tuple
    reports: tuple          # (kind, index, AnalysisReport)
    inapplicable: dict

    @property
    def summary(self):
        return summarize(r for _, _, r in self.reports)


def run_fuzz(count: int, seed, bounds: GenBounds = GenBounds(), mutations=MUTATIONS,
             options: AnalysisOptions = AnalysisOptions()) -> FuzzRun:
    reports, skipped = [], Counter()
    for i in range(count):
        key = f"{seed}/{i}"
        spec = random_connective(key, bounds, name=f"Syn{i}")
        reports.append((GENERATED, i, analyze(spec, options)))
        for kind in mutations:
            try:
                mutant = mutate(spec, kind, key)
            except MutationInapplicable:
                skipped[kind] += 1
                continue
            reports.append((kind, i, analyze(mutant, options)))
    return FuzzRun(seed, count, bounds, tuple(mutations), tuple(reports), dict(skipped))


def _row(kind, index, rep: AnalysisReport) -> dict:
    cls = rep.classification
    return {
        "index": index,
        "kind": kind,
        "connective": rep.spec.name,
        "arity": rep.spec.arity,
        "rules": len(rep.spec.rules),
        "doi": rep.doi.holds,
        "main_cut": rep.main_cut.holds,
        "reflection": rep.reflection.satisfied,
        "witness_side": rep.reflection.witness_side,
        "synthetic": cls.synthetic,
        "scheme": cls.scheme,
        "failure_reason": cls.failure_reason,
        "certificates": rep.self_check.certificates,
        "consistent": rep.equivalence_consistent,
    }


def _tally(run: FuzzRun) -> dict:
    kinds = (GENERATED, *run.mutations)
    table = {k: {"specs": 0, "doi_and_cut": 0, "reflection": 0, "synthetic": 0, "violations": 0} for k in kinds}
    for kind, _, rep in run.reports:
        t = table[kind]
        t["specs"] += 1
        t["doi_and_cut"] += rep.operational
        t["reflection"] += rep.reflection.satisfied
        t["synthetic"] += rep.classification.synthetic
        t["violations"] += len(equivalence_violations(rep))
    for k in run.mutations:
        table[k]["inapplicable"] = run.inapplicable.get(k, 0)
    return table


def fuzz_to_json(run: FuzzRun) -> dict:
    summary = run.summary
    return {
        "seed": str(run.seed),
        "count": run.count,
        "bounds": {"max_arity": run.bounds.max_arity, "max_branches": run.bounds.max_branches,
                   "max_group": run.bounds.max_group},
        "mutations": list(run.mutations),
        "tally": _tally(run),
        "total_specs": summary.total,
        "violations": [v.to_json() for v in summary.violations],
        "specs": [_row(*r) for r in run.reports],
    }


def fuzz_to_text(run: FuzzRun) -> str:
    b = run.bounds
    out = [f"fuzz seed={run.seed} count={run.count} max_arity={b.max_arity} "
           f"max_branches={b.max_branches} max_group={b.max_group}",
           f"{'kind':<16} {'specs':>6} {'DoI&cut':>8} {'refl':>6} {'synth':>6} {'skipped':>8} {'violations':>11}"]
    for kind, t in _tally(run).items():
        out.append(f"{kind:<16} {t['specs']:>6} {t['doi_and_cut']:>8} {t['reflection']:>6} {t['synthetic']:>6} "
                   f"{t.get('inapplicable', '-'):>8} {t['violations']:>11}")
    summary = run.summary
    out.append(f"total {summary.total} specs, {len(summary.violations)} violations")
    for v in summary.violations[:20]:
        out.append(f"  ! {v.connective} ({v.provenance}) {v.kind}: {v.detail}")
    return "\n".join(out) + "\n"
