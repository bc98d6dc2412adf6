from collections import Counter

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from seqreflect.calculus import (
    Atom, ContextVar, Rule, Sequent, Substitution, cut, distributions, match_conclusion, replay, rule_key, substitute,
)
from seqreflect.classify import NEGATIVE, POSITIVE, SchemeMatrix, classify, matrix_to_rules
from seqreflect.dsl import parse_spec, render_spec_text
from seqreflect.generator import MUTATIONS, GenBounds, MutationInapplicable, mutate, random_connective
from seqreflect.report import analyze

SETTINGS = settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])

atoms = st.sampled_from([Atom(c) for c in "pqrs"])


@st.composite
def matrices(draw, max_arity=4, max_branches=3, max_group=3):
    n = draw(st.integers(1, max_arity))
    branch = st.lists(st.integers(1, n), min_size=1, max_size=max_group).map(lambda b: tuple(sorted(b)))
    branches = draw(st.lists(branch, min_size=1, max_size=max_branches, unique=True))
    polarity = draw(st.sampled_from([NEGATIVE, POSITIVE]))
    return SchemeMatrix("S", n, polarity, tuple(branches))


@SETTINGS
@given(st.lists(atoms, max_size=5), st.lists(atoms, max_size=5), st.randoms())
def test_sequent_order_irrelevant(ant, suc, rnd):
    shuffled = list(ant)
    rnd.shuffle(shuffled)
    assert Sequent(tuple(ant), tuple(suc)) == Sequent(tuple(shuffled), tuple(suc))


@SETTINGS
@given(st.lists(atoms, max_size=5), st.integers(0, 3))
def test_distributions_partition(items, n):
    parts = distributions(tuple(items), n)
    assert len(parts) == len(set(parts))
    for split in parts:
        assert Counter(x for part in split for x in part) == Counter(items)
    if n == 0:
        assert parts == ([()] if not items else [])


@SETTINGS
@given(st.lists(atoms, min_size=1, max_size=3), st.lists(atoms, max_size=3), st.lists(atoms, max_size=3))
def test_cut_preserves_other_formulas(left_ant, right_ant, right_suc):
    f = left_ant[0]
    s1 = Sequent(tuple(left_ant[1:]), (f,))
    s2 = Sequent((f, *right_ant), tuple(right_suc))
    assert cut(s1, s2, f) == Sequent(tuple(left_ant[1:]) + tuple(right_ant), tuple(right_suc))


@SETTINGS
@given(matrices())
def test_matrix_round_trip(m):
    spec = matrix_to_rules(m)
    cls = classify(spec)
    assert cls.synthetic
    assert cls.matrix == m.canonical()


@SETTINGS
@given(matrices())
def test_synthetic_connectives_are_harmonious(m):
    rep = analyze(matrix_to_rules(m))
    assert rep.doi.holds and rep.main_cut.holds
    assert rep.reflection.satisfied
    assert rep.uniqueness is not None
    assert rep.self_check.ok, rep.self_check


@SETTINGS
@given(matrices())
def test_text_round_trip(m):
    spec = matrix_to_rules(m)
    (again,) = parse_spec(render_spec_text(spec))
    assert again.rules == spec.rules


@SETTINGS
@given(matrices(), st.permutations(["X1", "X2", "X3", "X4", "X5", "X6", "X7"]))
def test_rule_key_invariant_under_renaming(m, names):
    for rule in matrix_to_rules(m).rules:
        ctx = sorted(rule.symbols()[1], key=lambda c: c.name)
        sub_map = {c: (ContextVar(n),) for c, n in zip(ctx, names)}
        sub = Substitution.of({}, sub_map)
        renamed = Rule("other", tuple(substitute(p, sub) for p in rule.premises),
                       substitute(rule.conclusion, sub), rule.side)
        assert rule_key(renamed) == rule_key(rule)


@SETTINGS
@given(matrices(max_arity=3, max_branches=2, max_group=2), st.data())
def test_match_conclusion_is_sound(m, data):
    spec = matrix_to_rules(m)
    principal = spec.instance(spec.atoms())
    extra = data.draw(st.lists(atoms, max_size=2))
    for rule in spec.rules:
        side = rule.side
        goal = Sequent((principal, *extra), tuple(extra)) if side == "left" else \
            Sequent(tuple(extra), (principal, *extra))
        for sub in match_conclusion(rule, goal):
            assert substitute(rule.conclusion, sub) == goal


@SETTINGS
@given(st.integers(0, 2**64 - 1), st.sampled_from(MUTATIONS))
def test_mutants_falsify_everything(seed, kind):
    spec = random_connective(seed, GenBounds(3, 3, 2))
    try:
        mutant = mutate(spec, kind, seed)
    except MutationInapplicable:
        return
    rep = analyze(mutant)
    assert not rep.reflection.satisfied and not rep.classification.synthetic and not rep.operational
    assert rep.self_check.ok


@SETTINGS
@given(st.integers(0, 2**64 - 1))
def test_generation_is_deterministic(seed):
    assert render_spec_text(random_connective(seed)) == render_spec_text(random_connective(seed))


@SETTINGS
@given(matrices())
def test_all_certificates_replay(m):
    spec = matrix_to_rules(m)
    rep = analyze(spec)
    assert replay(rep.doi.certificate, spec)
    for pair in rep.main_cut.pairs:
        assert replay(pair.trace.after, hypotheses=pair.trace.hypotheses)
