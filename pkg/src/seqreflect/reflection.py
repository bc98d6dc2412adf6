"""Definitional equations and the reflection principle.

Reading the rules on one side of a connective as formation rules gives an
equation: the shared conclusion holds for every value of its context variable
iff all of their premises hold. Solving it means substituting the principal
formula for that context variable (trivialization), which grounds the
premises in the identity axiom, and then cutting a fresh context into every
active metavariable to obtain explicit reflection rules for the other side.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .calculus import (
    LEFT, RIGHT, SIDES, Axiom, Compound, ConnectiveSpec, ContextVar, Cut, Hypothesis, MetaVar, Rule, RuleApp,
    Sequent, Substitution, cut, is_formula, opposite, replay, rule_key, same_rules, substitute,
)
from .cutstep import CutResult, check_pairs
from .doi import layered_search


class NotAdmissible(ValueError):
    pass


OK = "ok"
MULTI_CONTEXT = "multi_context_conclusion"
SIDE_MISMATCH = "premise_side_mismatch"
EXTRANEOUS = "extraneous_context"
NO_FORMATION = "no_formation_rule"


@dataclass(frozen=True)
class DefinitionalEquation:
    connective: str
    principal: Compound
    formation_side: str
    formation_rules: tuple
    lhs: Sequent | None
    rhs: tuple
    context_variable: ContextVar | None

    def __str__(self) -> str:
        if self.lhs is None:
            return f"(no {self.formation_side} rules)"
        rhs = " and ".join(map(str, self.rhs)) or "true"
        bound = f"forall {self.context_variable}: " if self.context_variable else ""
        return f"{bound}{self.lhs} iff {rhs}"


@dataclass(frozen=True)
class ConstructionTrace:
    """How one explicit rule was obtained: implicit rule on the axiom, then cuts."""

    rule: Rule
    implicit_rule: Rule
    derivation: object
    hypotheses: tuple


@dataclass(frozen=True)
class Construction:
    ok: bool
    failure: str
    trivialized: tuple
    derived: tuple
    traces: tuple
    cut: CutResult | None


@dataclass(frozen=True)
class SolveResult:
    formation_side: str
    equation: DefinitionalEquation
    admissible: bool
    admissibility_reason: str
    context_changing: bool
    formation_rule_count: int
    trivialization: tuple
    derived_explicit_rules: tuple
    cut_step_ok: bool
    matches_given: bool
    solvable: bool
    reason: str
    trace: tuple
    lemma: str | None = None
    direct_solvable: bool = False
    direct_failure: str = ""
    cut: CutResult | None = None


@dataclass(frozen=True)
class ReflectionVerdict:
    satisfied: bool
    witness_side: str | None
    per_side: dict = field(default_factory=dict)


@dataclass(frozen=True)
class Uniqueness:
    forward: object   # C(p..) |- C*(p..)
    backward: object  # C*(p..) |- C(p..)
    star_rules: tuple


def distinct_rules(rules) -> tuple:
    """Drop rules equal to an earlier one up to renaming; formation rules form a set."""
    seen, out = set(), []
    for r in rules:
        k = rule_key(r)
        if k not in seen:
            seen.add(k)
            out.append(r)
    return tuple(out)


def build_equation(spec: ConnectiveSpec, side: str) -> DefinitionalEquation:
    rules = spec.rules_on(side)
    lhs = rules[0].conclusion if rules else None
    rhs = tuple(p for r in rules for p in r.premises)
    ctx = None
    if lhs is not None:
        passive = lhs.side(opposite(side))
        if len(passive) == 1 and isinstance(passive[0], ContextVar):
            ctx = passive[0]
    return DefinitionalEquation(spec.name, spec.principal, side, rules, lhs, rhs, ctx)


def detect_context_change(rule: Rule) -> bool:
    return rule.premise_contexts() != rule.conclusion.contexts()


def check_admissible(eq: DefinitionalEquation) -> tuple[bool, str]:
    s, o = eq.formation_side, opposite(eq.formation_side)
    if not eq.formation_rules:
        return False, NO_FORMATION
    for rule in eq.formation_rules:
        if rule.conclusion.side(s) != (eq.principal,):
            return False, EXTRANEOUS
        passive = rule.conclusion.side(o)
        if len(passive) != 1 or not isinstance(passive[0], ContextVar):
            return False, MULTI_CONTEXT
        if not rule.premises:
            return False, SIDE_MISMATCH
        for prem in rule.premises:
            active, rest = prem.side(s), prem.side(o)
            if not active or any(is_formula(x) for x in rest):
                return False, SIDE_MISMATCH
            if any(isinstance(x, ContextVar) for x in active) or rest != passive:
                return False, EXTRANEOUS
    return True, OK


def _fresh_names(base: str, k: int, taken: set) -> list[str]:
    if k == 1 and base not in taken:
        return [base]
    out, i = [], 1
    while len(out) < k:
        if f"{base}{i}" not in taken:
            out.append(f"{base}{i}")
        i += 1
    return out


def _derived_problem(rule: Rule, principal: Compound) -> str:
    concl = rule.conclusion
    if concl.side(rule.side) != (principal,):
        return "derived_not_visible"
    if any(is_formula(x) for x in concl.side(opposite(rule.side))):
        return "residual_formula"
    if not concl.contexts() <= rule.premise_contexts():
        return "free_context"
    if not rule.premises:
        return "no_active_formula"
    return ""


def _fail(reason: str, trivialized=()) -> Construction:
    return Construction(False, reason, tuple(trivialized), (), (), None)


def construct(eq: DefinitionalEquation) -> Construction:
    """Run trivialization, generalization by cut, and the cut-step test, without pre-checks.

    With several formation rules every one of them is trivialized at its own
    context and all premises are conjoined, so this also serves as the direct
    procedure that the lemma pre-checks are compared against.
    """
    s, o = eq.formation_side, opposite(eq.formation_side)
    principal = eq.principal
    formations = distinct_rules(eq.formation_rules)
    if not formations:
        return _fail("no_formation_rule")
    taken = {str(m) for m in principal.args} | {c.name for r in formations for c in r.symbols()[1]}
    base = "G" if s == LEFT else "D"
    identity = Axiom(Sequent((principal,), (principal,)))
    trivialized, derived, traces = [], [], []
    for rule in formations:
        passive = rule.conclusion.side(o)
        if len(passive) != 1 or not isinstance(passive[0], ContextVar):
            return _fail("trivialization_undefined", trivialized)
        if rule.conclusion.side(s) != (principal,):
            return _fail("conclusion_not_visible", trivialized)
        if not rule.premises:
            return _fail("no_premises", trivialized)
        gamma = passive[0]
        for j, prem in enumerate(rule.premises, 1):
            implicit = Rule(f"{rule.name}~implicit{j}", (rule.conclusion,), prem, s)
            metas, contexts = implicit.symbols()
            sigma = Substitution.of({m: m for m in metas},
                                    {c: (principal,) if c == gamma else (c,) for c in contexts})
            grounded = substitute(prem, sigma)
            trivialized.append(grounded)
            deriv = RuleApp(grounded, implicit.name, sigma, (identity,))
            active = [x for x in grounded.side(s) if isinstance(x, MetaVar)]
            names = _fresh_names(base, len(active), taken)
            current, hyps = grounded, []
            for x, name in zip(active, names):
                theta = ContextVar(name)
                if s == RIGHT:
                    h = Sequent((x,), (theta,))
                    nxt = cut(current, h, x)
                    deriv = Cut(nxt, x, deriv, Hypothesis(h))
                else:
                    h = Sequent((theta,), (x,))
                    nxt = cut(h, current, x)
                    deriv = Cut(nxt, x, Hypothesis(h), deriv)
                hyps.append(h)
                current = nxt
            explicit = Rule(f"explicit-{o[0].upper()}{len(derived) + 1}", tuple(hyps), current, o)
            problem = _derived_problem(explicit, principal)
            if problem:
                return _fail(problem, trivialized)
            derived.append(explicit)
            traces.append(ConstructionTrace(explicit, implicit, deriv, tuple(hyps)))
    if s == RIGHT:
        cut_result = check_pairs(formations, derived)
    else:
        cut_result = check_pairs(derived, formations)
    return Construction(True, "", tuple(trivialized), tuple(derived), tuple(traces), cut_result)


def _require_solvable_shape(eq: DefinitionalEquation) -> None:
    ok, reason = check_admissible(eq)
    if not ok:
        raise NotAdmissible(f"{eq.connective} {eq.formation_side} equation is not admissible: {reason}")
    if len(distinct_rules(eq.formation_rules)) != 1:
        raise NotAdmissible(f"{eq.connective} {eq.formation_side} equation has several formation rules")


def trivialize(eq: DefinitionalEquation) -> tuple:
    _require_solvable_shape(eq)
    sigma = Substitution.of({}, {eq.context_variable: (eq.principal,)})
    return tuple(substitute(p, sigma) for p in eq.rhs)


def derive_explicit_reflection(eq: DefinitionalEquation) -> tuple:
    _require_solvable_shape(eq)
    return construct(eq).derived


def solve(eq: DefinitionalEquation, spec: ConnectiveSpec) -> SolveResult:
    admissible, adm_reason = check_admissible(eq)
    formations = distinct_rules(eq.formation_rules)
    count = len(formations)
    changing = any(detect_context_change(r) for r in formations)
    cons = construct(eq)
    cut_ok = cons.ok and cons.cut.holds
    solvable = admissible and count == 1 and not changing and cut_ok
    matches = cons.ok and same_rules(cons.derived, spec.rules_on(opposite(eq.formation_side)))
    if solvable:
        reason = OK
    elif count == 0:
        reason = NO_FORMATION
    elif changing:
        reason = "context_changing"
    elif count > 1:
        reason = "multi_formation"
    elif not admissible:
        reason = adm_reason
    elif not cons.ok:
        reason = cons.failure
    else:
        reason = "cut_step_failed"
    lemma = "context_changing" if changing else "multi_formation" if count > 1 else None
    if cons.ok:
        direct_failure = "" if cut_ok else "cut_step_failed"
    else:
        direct_failure = cons.failure
    return SolveResult(
        formation_side=eq.formation_side, equation=eq, admissible=admissible, admissibility_reason=adm_reason,
        context_changing=changing, formation_rule_count=count, trivialization=cons.trivialized,
        derived_explicit_rules=cons.derived, cut_step_ok=cut_ok, matches_given=matches, solvable=solvable,
        reason=reason, trace=cons.traces, lemma=lemma, direct_solvable=cut_ok, direct_failure=direct_failure,
        cut=cons.cut,
    )


def check_reflection(spec: ConnectiveSpec) -> ReflectionVerdict:
    per_side = {side: solve(build_equation(spec, side), spec) for side in SIDES}
    witness = next((s for s in SIDES if per_side[s].solvable and per_side[s].matches_given), None)
    return ReflectionVerdict(witness is not None, witness, per_side)


def star_copy(spec: ConnectiveSpec) -> ConnectiveSpec:
    """The same rules for a connective named ``C*``."""
    star = f"{spec.name}*"
    old = spec.principal
    new = Compound(star, old.args)

    def swap(seq):
        return Sequent(tuple(new if x == old else x for x in seq.antecedent),
                       tuple(new if x == old else x for x in seq.succedent))

    rules = tuple(Rule(f"{r.name}*", r.premises, swap(r.conclusion), r.side) for r in spec.rules)
    return ConnectiveSpec(star, spec.metavars, rules, provenance=spec.provenance)


def derive_uniqueness(spec: ConnectiveSpec, verdict: ReflectionVerdict | None = None) -> Uniqueness | None:
    """Derive C |- C* and C* |- C when the reflection principle holds.

    Each derivation ends with a formation rule of one connective whose context
    is taken to be the other connective; its premises are then closed by the
    other's explicit reflection rules over axioms.
    """
    verdict = verdict or check_reflection(spec)
    if not verdict.satisfied:
        return None
    star = star_copy(spec)
    c = spec.instance(spec.atoms())
    c_star = star.instance(spec.atoms())
    rules = spec.rules + star.rules
    forward, _ = layered_search(Sequent((c,), (c_star,)), rules)
    backward, _ = layered_search(Sequent((c_star,), (c,)), rules)
    if forward is None or backward is None:
        return None
    return Uniqueness(forward, backward, star.rules)


def replay_uniqueness(u: Uniqueness, spec: ConnectiveSpec) -> bool:
    return bool(replay(u.forward, spec, extra_rules=u.star_rules)) and bool(
        replay(u.backward, spec, extra_rules=u.star_rules))
