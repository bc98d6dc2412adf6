import json
from dataclasses import replace

import jsonschema
import pytest

from seqreflect.batch import run_corpus, run_fuzz
from seqreflect.corpus import builtin_corpus, corpus_spec
from seqreflect.doi import BOUNDED
from seqreflect.dsl import parse_spec, render
from seqreflect.report import (
    REPORT_SCHEMA, AnalysisOptions, analyze, equivalence_violations, report_to_json, report_to_text, summarize,
    verify_equivalence,
)


@pytest.mark.parametrize("entry", builtin_corpus(), ids=lambda e: e.spec.name)
def test_corpus_reports_are_consistent_and_schema_valid(entry):
    rep = analyze(entry.spec)
    assert rep.equivalence_consistent
    assert rep.self_check.ok
    jsonschema.validate(json.loads(json.dumps(report_to_json(rep))), REPORT_SCHEMA)


def test_corrupted_report_gives_one_violation(with_):
    rep = analyze(with_)
    flipped = replace(rep, classification=replace(rep.classification, synthetic=False))
    summary = summarize([flipped])
    assert len(summary.violations) == 1
    v = summary.violations[0]
    assert v.kind == "reflection_vs_synthetic" and v.connective == "With"
    # the bundle reparses to the original connective
    assert parse_spec(v.spec_text)[0].rules == with_.rules


def test_verify_equivalence_on_corpus():
    s = verify_equivalence(e.spec for e in builtin_corpus())
    assert s.total == 9 and s.ok
    assert s.operational == s.reflective == s.synthetic == 5


def test_tensor_report_content(tensor):
    data = report_to_json(analyze(tensor))
    assert data["reflection"] == {"satisfied": True, "witness_side": "left"}
    left, right = data["equations"]
    assert left["formation_side"] == "left" and left["solvable"] and left["matches_given"]
    assert left["derived_rules"] == ['right "explicit-R1": [G1 |- A; G2 |- B] => G1, G2 |- *;']
    assert right["reason"] == "multi_context_conclusion"
    assert data["classification"]["matrix"] == {"polarity": "positive", "branches": [["A", "B"]]}
    assert data["uniqueness"]["derivable"]
    assert data["doi"]["certificate"]["rule"] == "tensor-L"
    assert "timings" not in data


def test_ternary_note_and_tonk_all_false(tensor_plus, tonk):
    assert any("outside the MALL binaries" in n for n in analyze(tensor_plus).notes)
    rep = analyze(tonk)
    assert not (rep.doi.holds or rep.main_cut.holds or rep.reflection.satisfied or rep.classification.synthetic)
    assert rep.equivalence_consistent


def test_text_report_verbose(with_):
    rep = analyze(with_)
    short, long = report_to_text(rep), report_to_text(rep, verbose=True)
    assert "reflection: yes (witness: right)" in short
    assert "[ax]" not in short and "[ax]" in long
    assert render(rep) == short
    assert json.loads(render(rep, "json"))["connective"] == "With"


def test_bounded_diagnostic(tensor):
    rep = analyze(tensor, AnalysisOptions(doi_mode=BOUNDED, max_depth=3))
    assert rep.doi_diagnostic.holds and rep.doi_diagnostic.depth == 3
    assert rep.self_check.ok


def test_run_corpus_matches_expected():
    assert all(row.matches for row in run_corpus())


def test_run_fuzz_small():
    run = run_fuzz(5, "small")
    assert run.summary.ok
    assert sum(1 for kind, _, _ in run.reports if kind == "generated") == 5
    assert all(not equivalence_violations(rep) for _, _, rep in run.reports)
