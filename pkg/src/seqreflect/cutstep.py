"""Main step of cut elimination.

A cut on C(p1..pn) between the conclusion of a right rule and of a left rule
is reducible when some sequence of cuts on the argument atoms, each premise
of the two rules used at most once, reaches exactly the cut's conclusion.
Unused premises may be dropped (the additive case); weakening is never used.
"""
from __future__ import annotations

from dataclasses import dataclass

from .calculus import (
    LEFT, RIGHT, Atom, ConnectiveSpec, ContextVar, Cut, Hypothesis, Rule, RuleApp, Sequent, Substitution, cut,
    fresh_atoms, substitute, substitute_formula,
)


@dataclass(frozen=True)
class CutStep:
    formula: Atom
    left: Sequent
    right: Sequent
    result: Sequent


@dataclass(frozen=True)
class ReductionTrace:
    right_rule: str
    left_rule: str
    pairing: tuple          # names of the premises consumed, e.g. ("tensor-R#1", "tensor-L#1")
    steps: tuple            # CutStep, in order
    final: Sequent
    hypotheses: tuple       # every instantiated premise of both rules
    before: Cut             # the principal cut on C(p1..pn)
    after: object           # the reduct, built from hypotheses by argument cuts


@dataclass(frozen=True)
class PairVerdict:
    right_rule: str
    left_rule: str
    trace: ReductionTrace | None
    reason: str = ""

    @property
    def holds(self) -> bool:
        return self.trace is not None


@dataclass(frozen=True)
class CutResult:
    holds: bool
    pairs: tuple


def instantiate(rule: Rule, atoms: tuple, tag: str) -> tuple[Substitution, tuple, Sequent]:
    """Metavariables to ``atoms``, each context variable to a fresh tagged copy."""
    metas, contexts = rule.symbols()
    meta = {m: atoms[m.index - 1] for m in metas}
    ctx = {c: (ContextVar(f"{c.name}_{tag}"),) for c in contexts}
    sub = Substitution.of(meta, ctx)
    return sub, tuple(substitute(p, sub) for p in rule.premises), substitute(rule.conclusion, sub)


def _search(pieces: tuple, target: Sequent, args: frozenset, failed: set):
    """Depth-first search over argument cuts; ``pieces`` are (sequent, derivation, used-labels)."""
    for seq, deriv, used, steps in pieces:
        if seq == target:
            return deriv, used, steps
    state = tuple(sorted(p[0].key() for p in pieces))
    if state in failed:
        return None
    for i, (s1, d1, u1, st1) in enumerate(pieces):
        for j, (s2, d2, u2, st2) in enumerate(pieces):
            if i == j:
                continue
            seen = set()
            for f in s1.succedent:
                if f not in args or f in seen or f not in s2.antecedent:
                    continue
                seen.add(f)
                res = cut(s1, s2, f)
                step = CutStep(f, s1, s2, res)
                merged = (res, Cut(res, f, d1, d2), u1 + u2, st1 + st2 + (step,))
                rest = tuple(p for k, p in enumerate(pieces) if k not in (i, j)) + (merged,)
                found = _search(rest, target, args, failed)
                if found:
                    return found
    failed.add(state)
    return None


def reduce_principal_cut(r: Rule, l: Rule) -> ReductionTrace | None:
    principal = r.principal()
    if r.side != RIGHT or l.side != LEFT or principal is None or l.principal() != principal:
        raise ValueError("reduce_principal_cut needs a right and a left rule of one connective")
    atoms = fresh_atoms(len(principal.args))
    sub_r, prems_r, concl_r = instantiate(r, atoms, "r")
    sub_l, prems_l, concl_l = instantiate(l, atoms, "l")
    cut_formula = substitute_formula(principal, sub_r.meta_map)
    target = cut(concl_r, concl_l, cut_formula)
    hyps_r = tuple(Hypothesis(p) for p in prems_r)
    hyps_l = tuple(Hypothesis(p) for p in prems_l)
    before = Cut(target, cut_formula, RuleApp(concl_r, r.name, sub_r, hyps_r),
                 RuleApp(concl_l, l.name, sub_l, hyps_l))
    pieces = tuple((h.conclusion, h, (f"{r.name}#{i}",), ()) for i, h in enumerate(hyps_r, 1))
    pieces += tuple((h.conclusion, h, (f"{l.name}#{i}",), ()) for i, h in enumerate(hyps_l, 1))
    found = _search(pieces, target, frozenset(atoms), set())
    if found is None:
        return None
    after, used, steps = found
    return ReductionTrace(r.name, l.name, tuple(used), tuple(steps), target,
                          prems_r + prems_l, before, after)


def check_pairs(right_rules, left_rules) -> CutResult:
    pairs = []
    for r in right_rules:
        for l in left_rules:
            trace = reduce_principal_cut(r, l)
            pairs.append(PairVerdict(r.name, l.name, trace, "" if trace else "no argument-cut sequence reaches the target"))
    return CutResult(all(p.holds for p in pairs), tuple(pairs))


def check_main_cut_step(spec: ConnectiveSpec) -> CutResult:
    return check_pairs(spec.right_rules, spec.left_rules)
