import pytest

from seqreflect.calculus import LEFT, RIGHT, same_rules
from seqreflect.classify import NEGATIVE, POSITIVE, SchemeMatrix, classify, matrix_to_rules, normalize_to_scheme
from seqreflect.corpus import builtin_corpus, corpus_spec
from seqreflect.dsl import render_spec_text
from seqreflect.report import analyze

from conftest import one


@pytest.mark.parametrize("name, polarity, branches", [
    ("With", NEGATIVE, ((1,), (2,))),
    ("Par", NEGATIVE, ((1, 2),)),
    ("Plus", POSITIVE, ((1,), (2,))),
    ("Tensor", POSITIVE, ((1, 2),)),
    ("TensorPlus", POSITIVE, ((1, 2), (1, 3))),
])
def test_known_matrices(name, polarity, branches):
    spec = corpus_spec(name)
    cls = classify(spec)
    assert cls.synthetic
    assert cls.matrix.polarity == polarity and cls.matrix.branches == branches
    assert cls.scheme == ("I" if polarity == NEGATIVE else "II")
    assert same_rules(matrix_to_rules(cls.matrix).rules, spec.rules)


@pytest.mark.parametrize("name, reason", [
    ("Tonk", "side-mismatch"),
    ("CtxChange", "context-change"),
    ("MultiForm", "multi-formation"),
    ("WithDropped", "side-mismatch"),
])
def test_non_synthetic(name, reason):
    cls = classify(corpus_spec(name))
    assert not cls.synthetic and cls.matrix is None and cls.failure_reason == reason


def test_matrix_to_rules_text():
    spec = matrix_to_rules(SchemeMatrix("S", 3, NEGATIVE, ((1, 2), (3,))))
    assert render_spec_text(spec) == (
        "connective S(A, B, C) {\n"
        '  right "S-R": [G |- A, B; G |- C] => G |- *;\n'
        '  left "S-L1": [A |- D1; B |- D2] => * |- D1, D2;\n'
        '  left "S-L2": [C |- D] => * |- D;\n'
        "}\n")


def test_polarity_sides():
    neg = matrix_to_rules(SchemeMatrix("S", 2, NEGATIVE, ((1, 2),)))
    pos = matrix_to_rules(SchemeMatrix("S", 2, POSITIVE, ((1, 2),)))
    assert [r.side for r in neg.rules] == [RIGHT, LEFT]
    assert len(pos.left_rules) == 1 and len(pos.right_rules) == 1
    assert pos.left_rules[0].premises[0].antecedent and not neg.right_rules[0].premises[0].antecedent[1:]


def test_self_dual_canonical():
    m = SchemeMatrix("S", 1, POSITIVE, ((1,),))
    assert m.self_dual and m.canonical().polarity == NEGATIVE
    assert same_rules(matrix_to_rules(m).rules, matrix_to_rules(m.canonical()).rules)
    assert classify(matrix_to_rules(m)).matrix == m.canonical()


def test_shared_context_branch_rule_is_not_synthetic():
    # tensor-like right rule written with one shared context
    spec = one('connective T(A, B) { left "t-L": [A, B |- D] => * |- D; '
               'right "t-R": [G |- A, B] => G |- *; }')
    assert normalize_to_scheme(spec) is not None
    cls = classify(spec)
    assert not cls.synthetic


def test_duplicate_branch_collapses_with_warning():
    spec = one('connective W(A, B) { right "w-R": [G |- A; G |- B; G |- A] => G |- *; '
               'left "w-L1": [A |- D] => * |- D; left "w-L2": [B |- D] => * |- D; }')
    m = normalize_to_scheme(spec)
    assert m.branches == ((1,), (2,))
    cls = classify(spec)
    # a repeated premise is a repeated conjunct: still synthetic, with a warning
    assert cls.synthetic and cls.warnings == ("duplicate branch (1,) collapsed",)
    report = analyze(spec)
    assert report.operational and report.reflection.satisfied and report.equivalence_consistent


def test_degenerate_argument_warns():
    spec = matrix_to_rules(SchemeMatrix("S", 3, NEGATIVE, ((1,), (2,))))
    cls = classify(spec)
    assert cls.synthetic
    assert any("C" in w and "degenerate" in w for w in cls.warnings)


def test_matrix_validation():
    with pytest.raises(ValueError):
        SchemeMatrix("S", 2, NEGATIVE, ())
    with pytest.raises(ValueError):
        SchemeMatrix("S", 2, NEGATIVE, ((3,),))
    with pytest.raises(ValueError):
        SchemeMatrix("S", 2, "neutral", ((1,),))


@pytest.mark.parametrize("entry", builtin_corpus(), ids=lambda e: e.spec.name)
def test_corpus_classification(entry):
    cls = classify(entry.spec)
    assert cls.synthetic == entry.expected.synthetic
    assert cls.scheme == entry.expected.scheme
