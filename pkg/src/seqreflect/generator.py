"""Random synthetic connectives and rule-set mutations that break them.

Every draw comes from a ``random.Random`` seeded with a namespaced string,
so a (seed, index) pair always yields the same connective.
"""
from __future__ import annotations

import random
from dataclasses import dataclass

from .calculus import MAX_ARITY, ConnectiveSpec, ContextVar, MetaVar, Rule, Sequent, opposite
from .classify import NEGATIVE, POSITIVE, SchemeMatrix, classify, matrix_to_rules

CONTEXT_CHANGE = "context_change"
MULTI_FORMATION = "multi_formation"
SIDE_MISMATCH = "side_mismatch"
DROP_RULE = "drop_rule"
MUTATIONS = (CONTEXT_CHANGE, MULTI_FORMATION, SIDE_MISMATCH, DROP_RULE)


class MutationInapplicable(ValueError):
    """The requested mutation has nothing to act on in this connective."""


@dataclass(frozen=True)
class GenBounds:
    max_arity: int = 4
    max_branches: int = 3
    max_group: int = 3

    def __post_init__(self):
        for name in ("max_arity", "max_branches", "max_group"):
            v = getattr(self, name)
            if not 1 <= v <= MAX_ARITY:
                raise ValueError(f"{name} must lie in 1..{MAX_ARITY}, got {v}")


def rng_for(*parts) -> random.Random:
    return random.Random("seqreflect/" + "/".join(str(p) for p in parts))


def random_matrix(rng: random.Random, bounds: GenBounds, name: str = "Syn") -> SchemeMatrix:
    polarity = rng.choice((NEGATIVE, POSITIVE))
    m = rng.randint(1, bounds.max_branches)
    n = min(rng.randint(1, bounds.max_arity), m * bounds.max_group)
    branches = []
    for _ in range(50):
        sizes = [rng.randint(1, bounds.max_group) for _ in range(m)]
        while sum(sizes) < n:
            i = rng.choice([i for i in range(m) if sizes[i] < bounds.max_group])
            sizes[i] += 1
        slots = [i for i in range(m) for _ in range(sizes[i])]
        rng.shuffle(slots)
        # the first n slots cover every argument once, the rest are free
        picks = list(range(1, n + 1)) + [rng.randint(1, n) for _ in range(len(slots) - n)]
        groups = [[] for _ in range(m)]
        for slot, idx in zip(slots, picks):
            groups[slot].append(idx)
        branches = [tuple(sorted(g)) for g in groups]
        if len(set(branches)) == m:
            break
    else:
        # too few arguments for m distinct branches: keep the distinct ones
        branches = list(dict.fromkeys(branches))
    return SchemeMatrix(name, n, polarity, tuple(branches)).canonical()


def random_connective(seed, bounds: GenBounds = GenBounds(), name: str = "Syn") -> ConnectiveSpec:
    matrix = random_matrix(rng_for(seed), bounds, name)
    return matrix_to_rules(matrix, provenance=f"generated:{seed}")


def _replace_meta(seq: Sequent, old: MetaVar, new: MetaVar) -> Sequent:
    def swap(items):
        return tuple(new if x == old else x for x in items)
    return Sequent(swap(seq.antecedent), swap(seq.succedent))


def _fresh_context(spec: ConnectiveSpec) -> ContextVar:
    taken = {c.name for r in spec.rules for s in (*r.premises, r.conclusion) for c in s.contexts()}
    i = 1
    while f"K{i}" in taken:
        i += 1
    return ContextVar(f"K{i}")


def mutate(spec: ConnectiveSpec, kind: str, seed) -> ConnectiveSpec:
    """Apply one mutation of ``kind`` to a synthetic connective."""
    if kind not in MUTATIONS:
        raise ValueError(f"unknown mutation {kind!r}")
    cls = classify(spec)
    if not cls.synthetic:
        raise MutationInapplicable(f"{spec.name} is not synthetic")
    rng = rng_for(seed, kind)
    matrix = cls.matrix
    s = matrix.formation_side
    o = opposite(s)
    (form,) = spec.rules_on(s)
    others = spec.rules_on(o)
    metas = spec.metavars
    rules = list(spec.rules)

    if kind == CONTEXT_CHANGE:
        (gamma,) = form.conclusion.side(o)
        fresh = _fresh_context(spec)
        variant = rng.choice(("extend", "split", "shrink"))
        if variant == "extend":
            concl = form.conclusion.with_side(o, (gamma, fresh))
            new = Rule(form.name, form.premises, concl, s)
        elif variant == "split":
            j = rng.randrange(len(form.premises))
            prems = tuple(p.with_side(o, (fresh,)) if k == j else p for k, p in enumerate(form.premises))
            new = Rule(form.name, prems, form.conclusion, s)
        else:
            new = Rule(form.name, form.premises, form.conclusion.with_side(o, ()), s)
        rules[rules.index(form)] = new

    elif kind == MULTI_FORMATION:
        j = rng.randrange(len(matrix.branches))
        b = list(matrix.branches[j])
        ops = ["add"]
        if len(b) > 1:
            ops.append("remove")
        if spec.arity > 1:
            ops.append("replace")
        op = rng.choice(ops)
        if op == "add":
            b.append(rng.randint(1, spec.arity))
        elif op == "remove":
            b.pop(rng.randrange(len(b)))
        else:
            k = rng.randrange(len(b))
            b[k] = rng.choice([i for i in range(1, spec.arity + 1) if i != b[k]])
        prem = form.premises[j].with_side(s, tuple(metas[i - 1] for i in b))
        prems = tuple(prem if k == j else p for k, p in enumerate(form.premises))
        rules.insert(rules.index(form) + 1, Rule(f"{form.name}-alt", prems, form.conclusion, s))

    elif kind == SIDE_MISMATCH:
        if spec.arity < 2:
            raise MutationInapplicable("a unary connective has no other argument to swap in")
        target = rng.choice(others)
        j = rng.randrange(len(target.premises))
        old = rng.choice(sorted(target.premises[j].metavars(), key=lambda m: m.index))
        new_meta = rng.choice([m for m in metas if m != old])
        prems = tuple(_replace_meta(p, old, new_meta) if k == j else p for k, p in enumerate(target.premises))
        rules[rules.index(target)] = Rule(target.name, prems, target.conclusion, o)

    else:
        if len(others) < 2:
            raise MutationInapplicable("only one non-formation rule")
        rules.remove(rng.choice(others))

    return ConnectiveSpec(spec.name, spec.metavars, tuple(rules), provenance=f"{spec.provenance}+{kind}")
