"""Deducibility of identicals: derive C(p1..pn) |- C(p1..pn) from C's own rules.

The default ``two_phase`` mode applies one rule of one side backwards to the
goal, then closes every premise with the axiom or with one rule of the other
side whose premises are all axioms. Both orders are tried, left first.
``bounded`` mode is an unrestricted backward search used for diagnostics.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .calculus import (
    LEFT, RIGHT, Axiom, ConnectiveSpec, IncompleteSubstitution, Rule, RuleApp, Sequent, apply_rule, is_axiom,
    match_conclusion, opposite,
)

TWO_PHASE = "two_phase"
BOUNDED = "bounded"


class DepthRequired(ValueError):
    pass


@dataclass(frozen=True)
class DoIResult:
    holds: bool
    mode: str
    goal: Sequent
    certificate: RuleApp | None = None
    depth: int | None = None
    failure: tuple = field(default=())


def goal_sequent(spec: ConnectiveSpec) -> Sequent:
    c = spec.instance(spec.atoms())
    return Sequent((c,), (c,))


def _instances(rule: Rule, goal: Sequent):
    for sub in match_conclusion(rule, goal):
        try:
            yield sub, apply_rule(rule, sub)
        except IncompleteSubstitution:
            # premise-only contexts are never guessed by backward search
            continue


def close_by_one_rule(seq: Sequent, rules) -> tuple[RuleApp | Axiom | None, list]:
    """Close ``seq`` by the axiom, or by one rule whose premises are all axioms."""
    if is_axiom(seq):
        return Axiom(seq), []
    leaves = []
    for rule in rules:
        for sub, prems in _instances(rule, seq):
            if all(is_axiom(p) for p in prems):
                return RuleApp(seq, rule.name, sub, tuple(Axiom(p) for p in prems)), []
            leaves.append({"rule": rule.name, "leaves": [str(p) for p in prems if not is_axiom(p)]})
    return None, leaves


def layered_search(goal: Sequent, rules, orders=(LEFT, RIGHT)) -> tuple[RuleApp | None, list]:
    """First rule on side s at the root, then at most one opposite-side rule per branch."""
    trace = []
    for first in orders:
        first_rules = [r for r in rules if r.side == first]
        second_rules = [r for r in rules if r.side == opposite(first)]
        for rule in first_rules:
            for sub, prems in _instances(rule, goal):
                closed, attempt = [], {"order": f"{first}-first", "rule": rule.name,
                                       "premises": [str(p) for p in prems], "open": []}
                for prem in prems:
                    d, leaves = close_by_one_rule(prem, second_rules)
                    if d is None:
                        attempt["open"].append({"premise": str(prem), "tried": leaves})
                        break
                    closed.append(d)
                else:
                    return RuleApp(goal, rule.name, sub, tuple(closed)), trace
                trace.append(attempt)
        if not first_rules:
            trace.append({"order": f"{first}-first", "rule": None, "premises": [], "open": []})
    return None, trace


def _bounded(goal: Sequent, rules, depth: int, root: bool, memo: dict):
    if not root and is_axiom(goal):
        return Axiom(goal)
    if depth == 0:
        return None
    key = (goal, depth, root)
    if key in memo:
        return memo[key]
    memo[key] = None
    found = None
    for rule in rules:
        for sub, prems in _instances(rule, goal):
            subs = []
            for p in prems:
                d = _bounded(p, rules, depth - 1, False, memo)
                if d is None:
                    break
                subs.append(d)
            else:
                found = RuleApp(goal, rule.name, sub, tuple(subs))
                break
        if found:
            break
    memo[key] = found
    return found


def check_doi(spec: ConnectiveSpec, mode: str = TWO_PHASE, depth: int | None = None) -> DoIResult:
    goal = goal_sequent(spec)
    if mode == TWO_PHASE:
        cert, trace = layered_search(goal, spec.rules)
        return DoIResult(cert is not None, mode, goal, cert, failure=() if cert else tuple(trace))
    if mode == BOUNDED:
        if depth is None:
            raise DepthRequired("bounded DoI search needs a depth")
        cert = _bounded(goal, spec.rules, depth, True, {})
        failure = () if cert else ({"order": "bounded", "depth": depth, "open": [str(goal)]},)
        return DoIResult(cert is not None, mode, goal, cert, depth=depth, failure=failure)
    raise ValueError(f"unknown DoI mode {mode!r}")
