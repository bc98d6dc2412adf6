import pytest

from seqreflect.calculus import RIGHT, same_rules
from seqreflect.classify import NEGATIVE, SchemeMatrix, classify, matrix_to_rules
from seqreflect.corpus import corpus_spec
from seqreflect.cutstep import check_main_cut_step
from seqreflect.doi import check_doi
from seqreflect.dsl import render_spec_text
from seqreflect.generator import (
    CONTEXT_CHANGE, DROP_RULE, MULTI_FORMATION, MUTATIONS, SIDE_MISMATCH, GenBounds, MutationInapplicable,
    mutate, random_connective, random_matrix, rng_for,
)
from seqreflect.reflection import build_equation, check_reflection, solve
from seqreflect.report import analyze

GOLDEN = {
    0: 'connective Syn(A, B, C) {\n'
       '  right "Syn-R": [G |- A, B, C] => G |- *;\n'
       '  left "Syn-L": [A |- D1; B |- D2; C |- D3] => * |- D1, D2, D3;\n'
       '}\n',
    2: 'connective Syn(A, B, C) {\n'
       '  right "Syn-R1": [G1 |- A; G2 |- B] => G1, G2 |- *;\n'
       '  right "Syn-R2": [G1 |- A; G2 |- C] => G1, G2 |- *;\n'
       '  right "Syn-R3": [G |- A] => G |- *;\n'
       '  left "Syn-L": [A, B |- D; A, C |- D; A |- D] => * |- D;\n'
       '}\n',
}


@pytest.mark.parametrize("seed", sorted(GOLDEN))
def test_golden_seeds(seed):
    assert render_spec_text(random_connective(seed)) == GOLDEN[seed]


def test_same_seed_same_spec():
    assert random_connective("x/3") == random_connective("x/3")
    assert mutate(random_connective(5), MULTI_FORMATION, 9) == mutate(random_connective(5), MULTI_FORMATION, 9)


def test_bounds_validation():
    with pytest.raises(ValueError):
        GenBounds(max_arity=7)
    with pytest.raises(ValueError):
        GenBounds(max_group=0)


@pytest.mark.parametrize("bounds", [GenBounds(), GenBounds(1, 1, 1), GenBounds(6, 4, 2), GenBounds(2, 3, 1)])
def test_generated_within_bounds(bounds):
    for i in range(40):
        m = random_matrix(rng_for("b", i), bounds)
        assert 1 <= m.arity <= bounds.max_arity
        assert 1 <= len(m.branches) <= bounds.max_branches
        assert all(len(b) <= bounds.max_group for b in m.branches)
        assert len(set(m.branches)) == len(m.branches)
        assert not m.unused()


def test_with_is_reachable():
    target = matrix_to_rules(SchemeMatrix("Syn", 2, NEGATIVE, ((1,), (2,))))
    hits = [i for i in range(300) if same_rules(random_connective(i).rules, target.rules)]
    assert hits


def test_generated_specs_are_synthetic_and_harmonious():
    for i in range(25):
        rep = analyze(random_connective(f"t/{i}"))
        assert rep.classification.synthetic and rep.reflection.satisfied and rep.operational


def test_multi_formation_on_with(with_):
    m = mutate(with_, MULTI_FORMATION, 0)
    assert len(m.right_rules) == 2
    sol = solve(build_equation(m, RIGHT), m)
    assert sol.lemma == "multi_formation" and not sol.solvable and not sol.direct_solvable


def test_side_mismatch_on_tensor_breaks_cut(tensor):
    m = mutate(tensor, SIDE_MISMATCH, 0)
    assert not check_main_cut_step(m).holds


def test_drop_rule_on_with(with_):
    m = mutate(with_, DROP_RULE, 0)
    assert len(m.left_rules) == 1
    assert not check_doi(m).holds
    assert check_main_cut_step(m).holds
    v = check_reflection(m)
    assert not v.satisfied and v.per_side[RIGHT].solvable and not v.per_side[RIGHT].matches_given


def test_context_change_on_with(with_):
    m = mutate(with_, CONTEXT_CHANGE, 0)
    assert classify(m).failure_reason == "context-change"


def test_inapplicable_mutations(tensor, tonk):
    with pytest.raises(MutationInapplicable):
        mutate(tensor, DROP_RULE, 0)
    with pytest.raises(MutationInapplicable):
        mutate(tonk, CONTEXT_CHANGE, 0)
    unary = matrix_to_rules(SchemeMatrix("U", 1, NEGATIVE, ((1,),)))
    with pytest.raises(MutationInapplicable):
        mutate(unary, SIDE_MISMATCH, 0)
    with pytest.raises(ValueError):
        mutate(tensor, "rename", 0)


@pytest.mark.parametrize("kind", MUTATIONS)
def test_mutants_break_all_four(kind):
    for i in range(20):
        spec = random_connective(f"m/{i}")
        try:
            rep = analyze(mutate(spec, kind, i))
        except MutationInapplicable:
            continue
        assert not rep.reflection.satisfied
        assert not rep.classification.synthetic
        assert not rep.operational
