"""Synthetic-connective recognition.

A synthetic connective is given by a matrix of branches over its arguments.
One side carries a single formation rule whose premises share the
conclusion's context, one premise per branch; the other side carries one
rule per branch. Negative polarity (scheme I) puts the formation rule on the
right, positive polarity (scheme II) on the left.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace

from .calculus import (
    LEFT, RIGHT, Compound, ConnectiveSpec, ContextVar, MetaVar, Rule, Sequent, is_formula, opposite, same_rules,
)

POSITIVE = "positive"
NEGATIVE = "negative"
METAVAR_NAMES = "ABCDEF"

# failure reasons, ordered by how far the reading got
_REASONS = ("multi-formation", "context-change", "premise-shape", "side-mismatch")


@dataclass(frozen=True)
class SchemeMatrix:
    connective: str
    arity: int
    polarity: str
    branches: tuple

    def __post_init__(self):
        if self.polarity not in (POSITIVE, NEGATIVE):
            raise ValueError(f"bad polarity {self.polarity!r}")
        if not self.branches:
            raise ValueError("a scheme matrix needs at least one branch")
        for b in self.branches:
            if not b or any(not 1 <= i <= self.arity for i in b):
                raise ValueError(f"bad branch {b} for arity {self.arity}")
        object.__setattr__(self, "branches", tuple(tuple(sorted(b)) for b in self.branches))

    @property
    def scheme(self) -> str:
        return "I" if self.polarity == NEGATIVE else "II"

    @property
    def formation_side(self) -> str:
        return RIGHT if self.polarity == NEGATIVE else LEFT

    @property
    def self_dual(self) -> bool:
        # one branch of one argument: both polarities give the same rules
        return len(self.branches) == 1 and len(self.branches[0]) == 1

    def canonical(self) -> "SchemeMatrix":
        return replace(self, polarity=NEGATIVE) if self.self_dual else self

    def unused(self) -> list[int]:
        used = {i for b in self.branches for i in b}
        return [i for i in range(1, self.arity + 1) if i not in used]

    def describe(self, names=None) -> str:
        names = names or METAVAR_NAMES
        return "[" + ", ".join("{" + ",".join(names[i - 1] for i in b) + "}" for b in self.branches) + "]"


@dataclass(frozen=True)
class Classification:
    synthetic: bool
    scheme: str | None
    matrix: SchemeMatrix | None
    failure_reason: str | None
    warnings: tuple = field(default=())

    @property
    def polarity(self) -> str | None:
        return self.matrix.polarity if self.matrix else None


def _fresh(base: str, k: int, taken: set) -> list[ContextVar]:
    if k == 1 and base not in taken:
        return [ContextVar(base)]
    out, i = [], 1
    while len(out) < k:
        if f"{base}{i}" not in taken:
            out.append(ContextVar(f"{base}{i}"))
        i += 1
    return out


def _sequent(side: str, active, passive) -> Sequent:
    return Sequent(tuple(active), tuple(passive)) if side == LEFT else Sequent(tuple(passive), tuple(active))


def matrix_to_rules(matrix: SchemeMatrix, provenance: str = "generated") -> ConnectiveSpec:
    names = METAVAR_NAMES if matrix.arity <= len(METAVAR_NAMES) else [f"A{i}" for i in range(1, matrix.arity + 1)]
    metas = tuple(MetaVar(i, names[i - 1]) for i in range(1, matrix.arity + 1))
    principal = Compound(matrix.connective, metas)
    taken = {str(m) for m in metas}
    s = matrix.formation_side
    o = opposite(s)
    # antecedent contexts are G.., succedent contexts D..
    (gamma,) = _fresh("G" if o == LEFT else "D", 1, taken)
    letter = {LEFT: "L", RIGHT: "R"}
    formation = Rule(
        f"{matrix.connective}-{letter[s]}",
        tuple(_sequent(s, (metas[i - 1] for i in b), (gamma,)) for b in matrix.branches),
        _sequent(s, (principal,), (gamma,)),
        s,
    )
    multi = len(matrix.branches) > 1
    branch_rules = []
    for k, b in enumerate(matrix.branches, 1):
        ctxs = _fresh("D" if s == RIGHT else "G", len(b), taken)
        branch_rules.append(Rule(
            f"{matrix.connective}-{letter[o]}{k if multi else ''}",
            tuple(_sequent(o, (metas[i - 1],), (c,)) for i, c in zip(b, ctxs)),
            _sequent(o, (principal,), ctxs),
            o,
        ))
    rules = [formation, *branch_rules]
    rules.sort(key=lambda r: r.side != RIGHT)
    return ConnectiveSpec(matrix.connective, metas, tuple(rules), provenance=provenance)


def _branch_of(rule: Rule, principal: Compound) -> tuple | None:
    """Read a non-formation rule as one branch, merging premises that partition its contexts."""
    o = rule.side
    s = opposite(o)
    concl = rule.conclusion
    if concl.side(o) != (principal,):
        return None
    ctxs = concl.side(s)
    if not ctxs or any(is_formula(x) for x in ctxs):
        return None
    seen, branch = [], []
    for prem in rule.premises:
        active, passive = prem.side(o), prem.side(s)
        if not active or not all(isinstance(x, MetaVar) for x in active):
            return None
        if not passive or any(is_formula(x) for x in passive):
            return None
        seen.extend(passive)
        branch.extend(m.index for m in active)
    if not rule.premises or sorted(seen, key=str) != sorted(ctxs, key=str) or len(set(seen)) != len(seen):
        return None
    return tuple(sorted(branch))


def _read(spec: ConnectiveSpec, side: str) -> tuple[SchemeMatrix | None, str, list]:
    rules = spec.rules_on(side)
    principal = spec.principal
    if len(rules) != 1:
        return None, "multi-formation" if rules else "premise-shape", []
    (form,) = rules
    o = opposite(side)
    if form.premise_contexts() != form.conclusion.contexts():
        return None, "context-change", []
    passive = form.conclusion.side(o)
    if (form.conclusion.side(side) != (principal,) or len(passive) != 1
            or not isinstance(passive[0], ContextVar) or not form.premises):
        return None, "premise-shape", []
    branches, warnings = [], []
    for prem in form.premises:
        active = prem.side(side)
        if prem.side(o) != passive or not active or not all(isinstance(x, MetaVar) for x in active):
            return None, "premise-shape", []
        b = tuple(sorted(m.index for m in active))
        if b in branches:
            warnings.append(f"duplicate branch {b} collapsed")
            continue
        branches.append(b)
    given = []
    for rule in spec.rules_on(o):
        b = _branch_of(rule, principal)
        if b is None:
            return None, "premise-shape" if rule.premises else "side-mismatch", []
        given.append(b)
    if set(given) != set(branches):
        return None, "side-mismatch", []
    polarity = NEGATIVE if side == RIGHT else POSITIVE
    matrix = SchemeMatrix(spec.name, spec.arity, polarity, tuple(branches))
    for i in matrix.unused():
        warnings.append(f"argument {spec.metavars[i - 1]} occurs in no branch (degenerate)")
    return matrix, "", warnings


def normalize_to_scheme(spec: ConnectiveSpec) -> SchemeMatrix | None:
    for side in (RIGHT, LEFT):
        matrix, _, _ = _read(spec, side)
        if matrix is not None:
            return matrix
    return None


def classify(spec: ConnectiveSpec) -> Classification:
    reasons = []
    for side in (RIGHT, LEFT):
        matrix, reason, warnings = _read(spec, side)
        if matrix is not None:
            if same_rules(matrix_to_rules(matrix).rules, spec.rules):
                return Classification(True, matrix.scheme, matrix, None, tuple(warnings))
            # branches agree but a non-formation rule is not in split-context form
            reason = "premise-shape"
        reasons.append(reason)
    return Classification(False, None, None, max(reasons, key=_REASONS.index))
