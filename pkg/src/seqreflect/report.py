"""Full analysis of one connective, the equivalence check and serialization."""
from __future__ import annotations

import time
from dataclasses import dataclass, field, replace

from .calculus import LEFT, RIGHT, SIDES, Axiom, ConnectiveSpec, Cut, Hypothesis, RuleApp, replay, rules_used
from .classify import Classification, classify
from .cutstep import CutResult, check_main_cut_step
from .doi import BOUNDED, TWO_PHASE, DoIResult, check_doi
from .dsl import render_rule, render_spec_text, rule_to_json
from .reflection import ReflectionVerdict, Uniqueness, check_reflection, derive_uniqueness, replay_uniqueness

MALL_MATRICES = {
    ("negative", ((1,), (2,))),     # with
    ("negative", ((1, 2),)),        # par
    ("positive", ((1,), (2,))),     # plus
    ("positive", ((1, 2),)),        # tensor
}


@dataclass(frozen=True)
class AnalysisOptions:
    doi_mode: str = TWO_PHASE
    max_depth: int | None = None
    uniqueness: bool = True


@dataclass(frozen=True)
class SelfCheck:
    certificates: int
    replay_failures: tuple
    lemma_disagreements: tuple
    uniqueness_failure: str

    @property
    def ok(self) -> bool:
        return not (self.replay_failures or self.lemma_disagreements or self.uniqueness_failure)


@dataclass(frozen=True)
class AnalysisReport:
    spec: ConnectiveSpec
    doi: DoIResult
    main_cut: CutResult
    reflection: ReflectionVerdict
    classification: Classification
    uniqueness: Uniqueness | None
    self_check: SelfCheck
    notes: tuple = ()
    doi_diagnostic: DoIResult | None = None
    timings: dict = field(default_factory=dict, compare=False)

    @property
    def equations(self) -> tuple:
        return tuple(self.reflection.per_side[s] for s in SIDES)

    @property
    def operational(self) -> bool:
        return self.doi.holds and self.main_cut.holds

    @property
    def equivalence_consistent(self) -> bool:
        return self.operational == self.reflection.satisfied == self.classification.synthetic


def _self_check(spec, doi, doi_diag, cut_result, verdict, uniq, want_uniqueness=True) -> SelfCheck:
    checked, failures = 0, []

    def check(label, deriv, **kw):
        nonlocal checked
        checked += 1
        res = replay(deriv, **kw)
        if not res:
            failures.append(f"{label}: {res.message} at {list(res.path)}")

    for label, res in (("doi", doi), ("doi-bounded", doi_diag)):
        if res is not None and res.certificate is not None:
            check(label, res.certificate, spec=spec)
            if res.certificate.conclusion != res.goal or not rules_used(res.certificate):
                failures.append(f"{label}: certificate does not prove the goal by rules")
    for pair in cut_result.pairs:
        if pair.trace is not None:
            t = pair.trace
            name = f"cut {pair.right_rule}/{pair.left_rule}"
            check(name + " before", t.before, spec=spec, hypotheses=t.hypotheses)
            check(name + " after", t.after, hypotheses=t.hypotheses)
            if t.after.conclusion != t.before.conclusion:
                failures.append(f"{name}: reduct proves a different sequent")
    lemma = []
    for side in SIDES:
        sol = verdict.per_side[side]
        for tr in sol.trace:
            check(f"construction {tr.rule.name}", tr.derivation, extra_rules=(tr.implicit_rule,),
                  hypotheses=tr.hypotheses)
            if tr.derivation.conclusion != tr.rule.conclusion:
                failures.append(f"construction {tr.rule.name}: wrong conclusion")
        if sol.cut is not None:
            for pair in sol.cut.pairs:
                if pair.trace is not None:
                    check(f"{side} equation cut {pair.right_rule}/{pair.left_rule}", pair.trace.before,
                          spec=spec, extra_rules=sol.derived_explicit_rules, hypotheses=pair.trace.hypotheses)
        if sol.lemma is not None and sol.direct_solvable:
            lemma.append(f"{side}: pre-check says {sol.lemma} but the direct construction succeeds")
    uniq_fail = ""
    if verdict.satisfied and want_uniqueness:
        if uniq is None:
            uniq_fail = "reflection holds but C |- C* or C* |- C was not derived"
        else:
            checked += 2
            if not replay_uniqueness(uniq, spec):
                uniq_fail = "uniqueness derivations do not replay"
    return SelfCheck(checked, tuple(failures), tuple(lemma), uniq_fail)


def _notes(spec, cls, verdict) -> tuple:
    notes = list(cls.warnings)
    if spec.degenerate:
        notes.append("rules on one side only")
    if cls.synthetic and verdict.satisfied:
        m = cls.matrix
        if spec.arity != 2 or (m.polarity, m.branches) not in MALL_MATRICES:
            notes.append(f"solvable equation for a connective outside the MALL binaries: "
                         f"scheme {m.scheme}, branches {m.describe([str(v) for v in spec.metavars])}")
    return tuple(notes)


def analyze(spec: ConnectiveSpec, options: AnalysisOptions = AnalysisOptions()) -> AnalysisReport:
    timings = {}
    t0 = time.perf_counter()
    doi = check_doi(spec)
    diag = None
    if options.doi_mode == BOUNDED:
        diag = check_doi(spec, BOUNDED, options.max_depth if options.max_depth is not None else 4)
    t1 = time.perf_counter()
    cut_result = check_main_cut_step(spec)
    t2 = time.perf_counter()
    verdict = check_reflection(spec)
    t3 = time.perf_counter()
    cls = classify(spec)
    t4 = time.perf_counter()
    uniq = derive_uniqueness(spec, verdict) if options.uniqueness else None
    t5 = time.perf_counter()
    checks = _self_check(spec, doi, diag, cut_result, verdict, uniq, options.uniqueness)
    timings.update(doi=t1 - t0, cut=t2 - t1, reflection=t3 - t2, classify=t4 - t3, uniqueness=t5 - t4,
                   self_check=time.perf_counter() - t5)
    return AnalysisReport(spec, doi, cut_result, verdict, cls, uniq, checks, _notes(spec, cls, verdict), diag,
                          timings)


# ---------------------------------------------------------------------------
# Equivalence


@dataclass(frozen=True)
class Violation:
    connective: str
    provenance: str
    kind: str
    detail: str
    spec_text: str = field(default="", repr=False)   # feed back to `analyze` to reproduce

    def to_json(self) -> dict:
        return {"connective": self.connective, "provenance": self.provenance, "kind": self.kind,
                "detail": self.detail, "spec": self.spec_text}


@dataclass(frozen=True)
class EquivalenceSummary:
    total: int
    operational: int
    reflective: int
    synthetic: int
    violations: tuple
    wall_time: float = field(default=0.0, compare=False)

    @property
    def ok(self) -> bool:
        return not self.violations


def equivalence_violations(report: AnalysisReport) -> list[Violation]:
    found = []
    op, refl, syn = report.operational, report.reflection.satisfied, report.classification.synthetic
    if op != refl:
        found.append(("doi_and_cut_vs_reflection", f"DoI={report.doi.holds} cut={report.main_cut.holds} reflection={refl}"))
    if refl != syn:
        found.append(("reflection_vs_synthetic", f"reflection={refl} synthetic={syn}"))
    sc = report.self_check
    found += [("certificate_replay", f) for f in sc.replay_failures]
    found += [("lemma_agreement", f) for f in sc.lemma_disagreements]
    if sc.uniqueness_failure:
        found.append(("uniqueness", sc.uniqueness_failure))
    if not found:
        return []
    text = render_spec_text(report.spec)
    return [Violation(report.spec.name, report.spec.provenance, k, d, text) for k, d in found]


def summarize(reports) -> EquivalenceSummary:
    reports = list(reports)
    return EquivalenceSummary(
        total=len(reports),
        operational=sum(r.operational for r in reports),
        reflective=sum(r.reflection.satisfied for r in reports),
        synthetic=sum(r.classification.synthetic for r in reports),
        violations=tuple(v for r in reports for v in equivalence_violations(r)),
        wall_time=sum(sum(r.timings.values()) for r in reports),
    )


def verify_equivalence(specs, options: AnalysisOptions = AnalysisOptions()) -> EquivalenceSummary:
    t0 = time.perf_counter()
    summary = summarize(analyze(s, options) for s in specs)
    return replace(summary, wall_time=time.perf_counter() - t0)


# ---------------------------------------------------------------------------
# JSON


_DERIVATION = {
    "type": "object",
    "required": ["conclusion"],
    "properties": {"conclusion": {"type": "string"}},
}

REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["connective", "arity", "rules", "doi", "main_cut", "equations", "reflection",
                 "classification", "uniqueness", "equivalence_consistent"],
    "properties": {
        "connective": {"type": "string"},
        "arity": {"type": "integer", "minimum": 1, "maximum": 6},
        "rules": {"type": "array", "items": {
            "type": "object", "required": ["name", "side", "premises", "conclusion"]}},
        "doi": {"type": "object", "required": ["holds", "certificate"], "properties": {
            "holds": {"type": "boolean"},
            "certificate": {"oneOf": [{"type": "null"}, _DERIVATION]}}},
        "main_cut": {"type": "object", "required": ["holds", "pairs"], "properties": {
            "holds": {"type": "boolean"},
            "pairs": {"type": "array", "items": {
                "type": "object", "required": ["right_rule", "left_rule", "holds"]}}}},
        "equations": {"type": "array", "minItems": 2, "maxItems": 2, "items": {
            "type": "object",
            "required": ["formation_side", "formation_rule_count", "admissible", "context_changing",
                         "solvable", "reason", "derived_rules", "matches_given"],
            "properties": {
                "formation_side": {"enum": [LEFT, RIGHT]},
                "formation_rule_count": {"type": "integer", "minimum": 0},
                "admissible": {"type": "boolean"},
                "context_changing": {"type": "boolean"},
                "solvable": {"type": "boolean"},
                "reason": {"type": "string"},
                "derived_rules": {"type": "array", "items": {"type": "string"}},
                "matches_given": {"type": "boolean"}}}},
        "reflection": {"type": "object", "required": ["satisfied", "witness_side"], "properties": {
            "satisfied": {"type": "boolean"},
            "witness_side": {"enum": [LEFT, RIGHT, None]}}},
        "classification": {"type": "object", "required": ["synthetic", "scheme", "matrix"], "properties": {
            "synthetic": {"type": "boolean"},
            "scheme": {"enum": ["I", "II", None]},
            "matrix": {"oneOf": [{"type": "null"}, {
                "type": "object", "required": ["polarity", "branches"]}]}}},
        "uniqueness": {"type": "object", "required": ["derivable"], "properties": {
            "derivable": {"type": "boolean"}}},
        "equivalence_consistent": {"type": "boolean"},
    },
}


def derivation_to_json(d) -> dict:
    out = {"conclusion": str(d.conclusion)}
    if isinstance(d, Axiom):
        out["by"] = "axiom"
    elif isinstance(d, Hypothesis):
        out["by"] = "hypothesis"
    elif isinstance(d, RuleApp):
        out.update(by="rule", rule=d.rule, substitution=str(d.substitution),
                   premises=[derivation_to_json(p) for p in d.premises])
    elif isinstance(d, Cut):
        out.update(by="cut", formula=str(d.formula),
                   premises=[derivation_to_json(d.left), derivation_to_json(d.right)])
    return out


def _opt(d):
    return None if d is None else derivation_to_json(d)


def report_to_json(report: AnalysisReport) -> dict:
    spec = report.spec
    p = spec.principal
    cls = report.classification
    eqs = []
    for sol in report.equations:
        eqs.append({
            "formation_side": sol.formation_side,
            "equation": str(sol.equation),
            "formation_rule_count": sol.formation_rule_count,
            "admissible": sol.admissible,
            "admissibility_reason": sol.admissibility_reason,
            "context_changing": sol.context_changing,
            "solvable": sol.solvable,
            "reason": sol.reason,
            "trivialization": [str(s) for s in sol.trivialization],
            "derived_rules": [render_rule(r, p) for r in sol.derived_explicit_rules],
            "cut_step_ok": sol.cut_step_ok,
            "matches_given": sol.matches_given,
            "lemma": sol.lemma,
            "direct_solvable": sol.direct_solvable,
            "construction": [{"rule": t.rule.name, "implicit_rule": render_rule(t.implicit_rule, p),
                              "derivation": derivation_to_json(t.derivation)} for t in sol.trace],
        })
    uniq = report.uniqueness
    return {
        "connective": spec.name,
        "arity": spec.arity,
        "provenance": spec.provenance,
        "rules": [rule_to_json(r, p) for r in spec.rules],
        "doi": {
            "holds": report.doi.holds,
            "mode": report.doi.mode,
            "goal": str(report.doi.goal),
            "certificate": _opt(report.doi.certificate),
            "failure": list(report.doi.failure),
            "bounded": None if report.doi_diagnostic is None else {
                "holds": report.doi_diagnostic.holds, "depth": report.doi_diagnostic.depth,
                "certificate": _opt(report.doi_diagnostic.certificate)},
        },
        "main_cut": {
            "holds": report.main_cut.holds,
            "pairs": [{
                "right_rule": pr.right_rule,
                "left_rule": pr.left_rule,
                "holds": pr.holds,
                "reason": pr.reason,
                "pairing": list(pr.trace.pairing) if pr.trace else None,
                "cuts": [f"cut {s.formula}: {s.left} ; {s.right} => {s.result}" for s in pr.trace.steps]
                if pr.trace else None,
                "before": _opt(pr.trace and pr.trace.before),
                "after": _opt(pr.trace and pr.trace.after),
            } for pr in report.main_cut.pairs],
        },
        "equations": eqs,
        "reflection": {"satisfied": report.reflection.satisfied, "witness_side": report.reflection.witness_side},
        "classification": {
            "synthetic": cls.synthetic,
            "scheme": cls.scheme,
            "matrix": None if cls.matrix is None else {
                "polarity": cls.matrix.polarity,
                "branches": [[str(spec.metavars[i - 1]) for i in b] for b in cls.matrix.branches]},
            "failure_reason": cls.failure_reason,
            "warnings": list(cls.warnings),
        },
        "uniqueness": {
            "derivable": uniq is not None,
            "forward": _opt(uniq and uniq.forward),
            "backward": _opt(uniq and uniq.backward),
        },
        "equivalence_consistent": report.equivalence_consistent,
        "self_check": {
            "certificates": report.self_check.certificates,
            "replay_failures": list(report.self_check.replay_failures),
            "lemma_disagreements": list(report.self_check.lemma_disagreements),
            "uniqueness_failure": report.self_check.uniqueness_failure,
        },
        "notes": list(report.notes),
    }


# ---------------------------------------------------------------------------
# Text


def derivation_lines(d, indent: int = 0) -> list[str]:
    pad = "  " * indent
    if isinstance(d, Axiom):
        label = "ax"
    elif isinstance(d, Hypothesis):
        label = "hyp"
    elif isinstance(d, RuleApp):
        label = d.rule
    else:
        label = f"cut {d.formula}"
    lines = [f"{pad}{d.conclusion}   [{label}]"]
    if isinstance(d, RuleApp):
        for p in d.premises:
            lines += derivation_lines(p, indent + 1)
    elif isinstance(d, Cut):
        lines += derivation_lines(d.left, indent + 1) + derivation_lines(d.right, indent + 1)
    return lines


def _yn(b: bool) -> str:
    return "yes" if b else "no"


def report_to_text(report: AnalysisReport, verbose: bool = False) -> str:
    spec = report.spec
    p = spec.principal
    out = [f"connective {spec.name}/{spec.arity}  ({spec.provenance})"]
    out += [f"  {render_rule(r, p)}" for r in spec.rules]
    out.append("")
    out.append(f"deducibility of identicals: {_yn(report.doi.holds)}   goal {report.doi.goal}")
    if report.doi.certificate and verbose:
        out += derivation_lines(report.doi.certificate, 2)
    if report.doi_diagnostic is not None:
        out.append(f"  bounded search (depth {report.doi_diagnostic.depth}): {_yn(report.doi_diagnostic.holds)}")
    out.append(f"main cut step: {_yn(report.main_cut.holds)}")
    for pr in report.main_cut.pairs:
        extra = f"via {', '.join(pr.trace.pairing)}" if pr.trace else pr.reason
        out.append(f"  {pr.right_rule} / {pr.left_rule}: {_yn(pr.holds)}  {extra}")
        if pr.trace and verbose:
            out.append("    before:")
            out += derivation_lines(pr.trace.before, 3)
            out.append("    after:")
            out += derivation_lines(pr.trace.after, 3)
    out.append("")
    for sol in report.equations:
        out.append(f"{sol.formation_side} equation: {sol.equation}")
        out.append(f"  formation rules {sol.formation_rule_count}, admissible {_yn(sol.admissible)}"
                   f" ({sol.admissibility_reason}), context-changing {_yn(sol.context_changing)}")
        if sol.trivialization:
            out.append(f"  trivialized: {'; '.join(map(str, sol.trivialization))}")
        for r in sol.derived_explicit_rules:
            out.append(f"  derived {render_rule(r, p)}")
        out.append(f"  solvable {_yn(sol.solvable)} ({sol.reason}), matches given rules {_yn(sol.matches_given)}")
        if verbose:
            for tr in sol.trace:
                out.append(f"  construction of {tr.rule.name}:")
                out += derivation_lines(tr.derivation, 2)
    refl = report.reflection
    out.append(f"reflection: {_yn(refl.satisfied)}" + (f" (witness: {refl.witness_side})" if refl.satisfied else ""))
    cls = report.classification
    if cls.synthetic:
        names = [str(m) for m in spec.metavars]
        out.append(f"synthetic: yes, scheme {cls.scheme} ({cls.matrix.polarity}), branches {cls.matrix.describe(names)}")
    else:
        out.append(f"synthetic: no ({cls.failure_reason})")
    out.append(f"uniqueness: {'derived' if report.uniqueness else 'not derived'}")
    if report.uniqueness and verbose:
        out += derivation_lines(report.uniqueness.forward, 1) + derivation_lines(report.uniqueness.backward, 1)
    sc = report.self_check
    out.append(f"self-check: {sc.certificates} certificates replayed, "
               f"{len(sc.replay_failures) + len(sc.lemma_disagreements) + bool(sc.uniqueness_failure)} problems")
    for line in (*sc.replay_failures, *sc.lemma_disagreements, sc.uniqueness_failure):
        if line:
            out.append(f"  ! {line}")
    for n in report.notes:
        out.append(f"note: {n}")
    out.append(f"equivalence consistent: {_yn(report.equivalence_consistent)}")
    return "\n".join(out) + "\n"
