import pytest

from seqreflect.calculus import Atom, ContextVar, Cut, Hypothesis, Sequent, replay
from seqreflect.corpus import builtin_corpus, corpus_spec
from seqreflect.cutstep import check_main_cut_step, instantiate, reduce_principal_cut

from conftest import one

p, q = Atom("p"), Atom("q")


def test_instantiate_tags_contexts(tensor):
    sub, prems, concl = instantiate(tensor.rule("tensor-R"), (p, q), "r")
    assert prems == (Sequent((ContextVar("G1_r"),), (p,)), Sequent((ContextVar("G2_r"),), (q,)))
    assert concl.antecedent == (ContextVar("G1_r"), ContextVar("G2_r"))


def test_tensor_reduction(tensor):
    t = reduce_principal_cut(tensor.rule("tensor-R"), tensor.rule("tensor-L"))
    g1, g2, d = ContextVar("G1_r"), ContextVar("G2_r"), ContextVar("D_l")
    assert t.final == Sequent((g1, g2), (d,))
    # two argument cuts, one per argument
    assert sorted(str(s.formula) for s in t.steps) == ["p", "q"]
    assert isinstance(t.before, Cut) and str(t.before.formula) == "Tensor(p, q)"
    assert replay(t.before, tensor, hypotheses=t.hypotheses)
    assert replay(t.after, hypotheses=t.hypotheses)
    assert all(isinstance(n, (Cut, Hypothesis)) for n in _nodes(t.after))


def _nodes(d):
    yield d
    if isinstance(d, Cut):
        yield from _nodes(d.left)
        yield from _nodes(d.right)


def test_with_drops_unused_premise(with_):
    t = reduce_principal_cut(with_.rule("with-R"), with_.rule("with-L2"))
    assert t.pairing == ("with-R#2", "with-L2#1")
    assert len(t.steps) == 1


def test_tonk_has_no_reduct(tonk):
    res = check_main_cut_step(tonk)
    assert not res.holds
    (pair,) = res.pairs
    assert pair.trace is None and pair.reason


def test_context_change_blocks_reduct():
    res = check_main_cut_step(corpus_spec("CtxChange"))
    assert not res.holds
    assert all(not pr.holds for pr in res.pairs)


def test_multi_formation_breaks_one_pair():
    res = check_main_cut_step(corpus_spec("MultiForm"))
    failing = {(pr.right_rule, pr.left_rule) for pr in res.pairs if not pr.holds}
    assert failing == {("mf-R2", "mf-L2")}


@pytest.mark.parametrize("entry", builtin_corpus(), ids=lambda e: e.spec.name)
def test_corpus_cut(entry):
    res = check_main_cut_step(entry.spec)
    assert res.holds == entry.expected.main_cut
    assert len(res.pairs) == len(entry.spec.right_rules) * len(entry.spec.left_rules)


def test_rejects_mismatched_rules(tensor, with_):
    with pytest.raises(ValueError):
        reduce_principal_cut(tensor.rule("tensor-L"), tensor.rule("tensor-R"))
    with pytest.raises(ValueError):
        reduce_principal_cut(tensor.rule("tensor-R"), with_.rule("with-L1"))


def test_reduct_never_uses_weakening():
    # the right rule's context is wider than anything the premises can supply
    spec = one('connective W(A) { right "w-R": [G |- A] => G, H |- *; left "w-L": [A |- D] => * |- D; }')
    assert not check_main_cut_step(spec).holds
