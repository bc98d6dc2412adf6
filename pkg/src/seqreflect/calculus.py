"""Formulas, sequent schemes, rule schemes, substitutions and derivations.

Sequent sides are finite multisets. They are stored as tuples sorted by
:func:`item_key`, so dataclass equality is multiset equality and exchange is
built in. There are no weakening or contraction rules.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations, product
from typing import Iterable, Iterator, Sequence, Union

LEFT = "left"
RIGHT = "right"
SIDES = (LEFT, RIGHT)
MAX_ARITY = 6


def opposite(side: str) -> str:
    return RIGHT if side == LEFT else LEFT


class CalculusError(Exception):
    pass


class ArityError(CalculusError):
    pass


class MultiPrincipalError(CalculusError):
    pass


class DuplicateRuleName(CalculusError):
    pass


class IncompleteSubstitution(CalculusError):
    pass


class CutFormulaAbsent(CalculusError):
    pass


# ---------------------------------------------------------------------------
# Formulas


@dataclass(frozen=True)
class Atom:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class MetaVar:
    index: int
    name: str = field(default="", compare=False)

    def __str__(self) -> str:
        return self.name or f"A{self.index}"


@dataclass(frozen=True)
class Compound:
    connective: str
    args: tuple

    def __str__(self) -> str:
        return f"{self.connective}({', '.join(map(str, self.args))})"


@dataclass(frozen=True)
class ContextVar:
    name: str
    origin: str | None = field(default=None, compare=False)

    def __str__(self) -> str:
        return self.name


Formula = Union[Atom, MetaVar, Compound]
Item = Union[Atom, MetaVar, Compound, ContextVar]


def item_key(item: Item) -> tuple:
    """Total order over sequent items; atoms < metavars < compounds < contexts."""
    if isinstance(item, Atom):
        return (0, item.name)
    if isinstance(item, MetaVar):
        return (1, item.index)
    if isinstance(item, Compound):
        return (2, item.connective, tuple(item_key(a) for a in item.args))
    if isinstance(item, ContextVar):
        return (3, item.name)
    raise TypeError(f"not a sequent item: {item!r}")


def is_formula(item: Item) -> bool:
    return not isinstance(item, ContextVar)


def metavars_of(item: Item) -> Iterator[MetaVar]:
    if isinstance(item, MetaVar):
        yield item
    elif isinstance(item, Compound):
        for arg in item.args:
            yield from metavars_of(arg)


def _sorted_items(items: Iterable[Item]) -> tuple:
    return tuple(sorted(items, key=item_key))


def remove_one(items: Sequence[Item], target: Item) -> tuple:
    items = list(items)
    items.remove(target)
    return tuple(items)


# ---------------------------------------------------------------------------
# Sequents and rules


@dataclass(frozen=True)
class Sequent:
    antecedent: tuple = ()
    succedent: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "antecedent", _sorted_items(self.antecedent))
        object.__setattr__(self, "succedent", _sorted_items(self.succedent))

    def side(self, side: str) -> tuple:
        return self.antecedent if side == LEFT else self.succedent

    def with_side(self, side: str, items: Iterable[Item]) -> "Sequent":
        if side == LEFT:
            return Sequent(tuple(items), self.succedent)
        return Sequent(self.antecedent, tuple(items))

    def items(self) -> Iterator[Item]:
        yield from self.antecedent
        yield from self.succedent

    def contexts(self) -> set:
        return {x for x in self.items() if isinstance(x, ContextVar)}

    def metavars(self) -> set:
        return {m for x in self.items() for m in metavars_of(x)}

    def key(self) -> tuple:
        return (tuple(map(item_key, self.antecedent)), tuple(map(item_key, self.succedent)))

    def __str__(self) -> str:
        def show(side):
            return ", ".join(map(str, side)) if side else "."
        return f"{show(self.antecedent)} |- {show(self.succedent)}"


SequentScheme = Sequent


@dataclass(frozen=True)
class Rule:
    """A rule scheme; ``side`` is where the principal formula sits in the conclusion."""

    name: str
    premises: tuple
    conclusion: Sequent
    side: str

    def symbols(self) -> tuple[set, set]:
        metas, contexts = set(), set()
        for seq in (*self.premises, self.conclusion):
            metas |= seq.metavars()
            contexts |= seq.contexts()
        return metas, contexts

    def principal(self) -> Compound | None:
        compounds = [x for x in self.conclusion.side(self.side) if isinstance(x, Compound)]
        return compounds[0] if len(compounds) == 1 else None

    def premise_contexts(self) -> set:
        return {c for p in self.premises for c in p.contexts()}

    def __str__(self) -> str:
        prems = "; ".join(map(str, self.premises))
        return f"{self.name}: [{prems}] => {self.conclusion}"


RuleScheme = Rule


@dataclass(frozen=True)
class ConnectiveSpec:
    name: str
    metavars: tuple
    rules: tuple
    provenance: str = "builtin"

    def __post_init__(self):
        n = len(self.metavars)
        if not 1 <= n <= MAX_ARITY:
            raise ArityError(f"{self.name}: arity {n} outside 1..{MAX_ARITY}")
        if [m.index for m in self.metavars] != list(range(1, n + 1)):
            raise ArityError(f"{self.name}: metavariable indices must be 1..{n}")
        seen = set()
        for rule in self.rules:
            if rule.name in seen:
                raise DuplicateRuleName(f"{self.name}: duplicate rule name {rule.name!r}")
            seen.add(rule.name)
            self._check_rule(rule)

    def _check_rule(self, rule: Rule) -> None:
        n = len(self.metavars)
        own = [x for x in rule.conclusion.items() if self._is_own(x)]
        if len(own) != 1:
            raise MultiPrincipalError(
                f"{self.name}/{rule.name}: conclusion needs exactly one principal formula, found {len(own)}")
        if own[0] != self.principal or own[0] not in rule.conclusion.side(rule.side):
            raise MultiPrincipalError(f"{self.name}/{rule.name}: principal formula must sit on the {rule.side}")
        for prem in rule.premises:
            if any(self._is_own(x) for x in prem.items()):
                raise CalculusError(f"{self.name}/{rule.name}: premises may not contain {self.name}")
        for seq in (*rule.premises, rule.conclusion):
            for m in seq.metavars():
                if not 1 <= m.index <= n:
                    raise ArityError(f"{self.name}/{rule.name}: metavariable index {m.index} outside 1..{n}")
            for side in SIDES:
                ctx = [x for x in seq.side(side) if isinstance(x, ContextVar)]
                if len(ctx) != len(set(ctx)):
                    raise CalculusError(f"{self.name}/{rule.name}: context repeated on one side of {seq}")

    def _is_own(self, item: Item) -> bool:
        return isinstance(item, Compound) and item.connective == self.name

    @property
    def arity(self) -> int:
        return len(self.metavars)

    @property
    def principal(self) -> Compound:
        return Compound(self.name, tuple(self.metavars))

    @property
    def left_rules(self) -> tuple:
        return tuple(r for r in self.rules if r.side == LEFT)

    @property
    def right_rules(self) -> tuple:
        return tuple(r for r in self.rules if r.side == RIGHT)

    def rules_on(self, side: str) -> tuple:
        return self.left_rules if side == LEFT else self.right_rules

    @property
    def degenerate(self) -> bool:
        return not (self.left_rules and self.right_rules)

    def rule(self, name: str) -> Rule:
        for r in self.rules:
            if r.name == name:
                return r
        raise KeyError(name)

    def atoms(self) -> tuple:
        return fresh_atoms(self.arity)

    def instance(self, args: Sequence[Formula]) -> Compound:
        return Compound(self.name, tuple(args))


_ATOM_NAMES = "pqrstu"


def fresh_atoms(n: int) -> tuple:
    """Distinct atoms for instantiating A_1..A_n in proof-search goals."""
    if n <= len(_ATOM_NAMES):
        return tuple(Atom(c) for c in _ATOM_NAMES[:n])
    return tuple(Atom(f"p{i}") for i in range(1, n + 1))


# ---------------------------------------------------------------------------
# Substitutions


@dataclass(frozen=True)
class Substitution:
    meta: tuple = ()
    context: tuple = ()

    @classmethod
    def of(cls, meta=None, context=None) -> "Substitution":
        meta = meta or {}
        context = context or {}
        return cls(
            tuple(sorted(meta.items(), key=lambda kv: item_key(kv[0]))),
            tuple(sorted(((k, _sorted_items(v)) for k, v in context.items()),
                         key=lambda kv: item_key(kv[0]))),
        )

    @property
    def meta_map(self) -> dict:
        return dict(self.meta)

    @property
    def context_map(self) -> dict:
        return dict(self.context)

    def covers(self, metas: set, contexts: set) -> bool:
        return metas <= set(self.meta_map) and contexts <= set(self.context_map)

    def sort_key(self) -> tuple:
        return (
            tuple((item_key(k), item_key(v)) for k, v in self.meta),
            tuple((item_key(k), tuple(map(item_key, v))) for k, v in self.context),
        )

    def __str__(self) -> str:
        parts = [f"{k}:={v}" for k, v in self.meta]
        parts += [f"{k}:={{{', '.join(map(str, v))}}}" for k, v in self.context]
        return "{" + ", ".join(parts) + "}"


def substitute_formula(formula: Formula, meta: dict) -> Formula:
    if isinstance(formula, MetaVar):
        return meta.get(formula, formula)
    if isinstance(formula, Compound):
        return Compound(formula.connective, tuple(substitute_formula(a, meta) for a in formula.args))
    return formula


def substitute(seq: Sequent, sub: Substitution) -> Sequent:
    meta, ctx = sub.meta_map, sub.context_map

    def side(items):
        out = []
        for x in items:
            if isinstance(x, ContextVar):
                out.extend(ctx.get(x, (x,)))
            else:
                out.append(substitute_formula(x, meta))
        return out

    return Sequent(side(seq.antecedent), side(seq.succedent))


def apply_rule(rule: Rule, sub: Substitution) -> tuple:
    metas, contexts = rule.symbols()
    missing = (metas - set(sub.meta_map)) | (contexts - set(sub.context_map))
    if missing:
        names = ", ".join(sorted(map(str, missing)))
        raise IncompleteSubstitution(f"{rule.name}: unmapped {names}")
    return tuple(substitute(p, sub) for p in rule.premises)


# ---------------------------------------------------------------------------
# Matching


def _match_formula(pattern: Formula, target: Item, binding: dict) -> dict | None:
    if isinstance(pattern, MetaVar):
        if pattern in binding:
            return binding if binding[pattern] == target else None
        if isinstance(target, ContextVar):
            return None
        return {**binding, pattern: target}
    if isinstance(pattern, Compound):
        if (not isinstance(target, Compound) or target.connective != pattern.connective
                or len(target.args) != len(pattern.args)):
            return None
        for p, t in zip(pattern.args, target.args):
            binding = _match_formula(p, t, binding)
            if binding is None:
                return None
        return binding
    return binding if pattern == target else None


def _match_side(patterns: list, goal: tuple, binding: dict) -> Iterator[tuple[dict, tuple]]:
    """Assign each formula pattern to a distinct goal item; yield (binding, leftover)."""
    if not patterns:
        yield binding, goal
        return
    head, rest = patterns[0], patterns[1:]
    tried = set()
    for i, target in enumerate(goal):
        if target in tried:
            continue
        tried.add(target)
        b = _match_formula(head, target, binding)
        if b is not None:
            yield from _match_side(rest, goal[:i] + goal[i + 1:], b)


def distributions(items: tuple, n: int) -> list[tuple]:
    """All ways to split a multiset among ``n`` ordered parts (parts may be empty)."""
    if n == 0:
        return [()] if not items else []
    seen = set()
    out = []
    for assignment in product(range(n), repeat=len(items)):
        parts = [[] for _ in range(n)]
        for item, j in zip(items, assignment):
            parts[j].append(item)
        key = tuple(_sorted_items(p) for p in parts)
        if key not in seen:
            seen.add(key)
            out.append(key)
    return out


def match_conclusion(rule: Rule, goal: Sequent) -> list[Substitution]:
    """All substitutions sending the rule's conclusion onto ``goal``, sorted."""
    pat = rule.conclusion
    results = {}
    ant_f = [x for x in pat.antecedent if is_formula(x)]
    suc_f = [x for x in pat.succedent if is_formula(x)]
    ant_c = [x for x in pat.antecedent if isinstance(x, ContextVar)]
    suc_c = [x for x in pat.succedent if isinstance(x, ContextVar)]
    for b1, rest_ant in _match_side(ant_f, goal.antecedent, {}):
        for b2, rest_suc in _match_side(suc_f, goal.succedent, b1):
            for da in distributions(rest_ant, len(ant_c)):
                for ds in distributions(rest_suc, len(suc_c)):
                    ctx = {}
                    ok = True
                    for var, part in (*zip(ant_c, da), *zip(suc_c, ds)):
                        if var in ctx and ctx[var] != part:
                            ok = False
                            break
                        ctx[var] = part
                    if ok:
                        sub = Substitution.of(b2, ctx)
                        results[sub] = None
    return sorted(results, key=Substitution.sort_key)


# ---------------------------------------------------------------------------
# Structural operations


def is_axiom(seq: Sequent) -> bool:
    return (len(seq.antecedent) == 1 and len(seq.succedent) == 1
            and is_formula(seq.antecedent[0]) and seq.antecedent[0] == seq.succedent[0])


def cut(s1: Sequent, s2: Sequent, f: Formula) -> Sequent:
    """Cut ``s1`` (f on the right) against ``s2`` (f on the left)."""
    if f not in s1.succedent or f not in s2.antecedent:
        raise CutFormulaAbsent(f"cannot cut {s1} and {s2} on {f}")
    return Sequent(s1.antecedent + remove_one(s2.antecedent, f),
                   remove_one(s1.succedent, f) + s2.succedent)


@dataclass(frozen=True)
class Violation:
    code: str
    message: str


def validate_visibility(rule: Rule) -> list[Violation]:
    out = []
    principal_side = rule.conclusion.side(rule.side)
    extra = [x for x in principal_side if not isinstance(x, Compound)]
    if extra or len(principal_side) != 1:
        out.append(Violation("principal-side-context",
                             f"{rule.name}: principal formula shares its side with "
                             f"{', '.join(map(str, extra)) or 'other formulas'}"))
    for i, prem in enumerate(rule.premises, 1):
        for side in SIDES:
            items = prem.side(side)
            if any(is_formula(x) for x in items) and any(isinstance(x, ContextVar) for x in items):
                out.append(Violation("premise-side-context",
                                     f"{rule.name}: premise {i} mixes active formulas and contexts on the {side}"))
    return out


# ---------------------------------------------------------------------------
# Derivations


@dataclass(frozen=True)
class Axiom:
    conclusion: Sequent


@dataclass(frozen=True)
class Hypothesis:
    """An open leaf; only valid when the replaying caller lists it."""

    conclusion: Sequent


@dataclass(frozen=True)
class RuleApp:
    conclusion: Sequent
    rule: str
    substitution: Substitution
    premises: tuple


@dataclass(frozen=True)
class Cut:
    conclusion: Sequent
    formula: Formula
    left: "Derivation"
    right: "Derivation"


Derivation = Union[Axiom, Hypothesis, RuleApp, Cut]


def children(d: Derivation) -> tuple:
    if isinstance(d, RuleApp):
        return d.premises
    if isinstance(d, Cut):
        return (d.left, d.right)
    return ()


def iter_nodes(d: Derivation) -> Iterator[Derivation]:
    yield d
    for c in children(d):
        yield from iter_nodes(c)


def rules_used(d: Derivation) -> list[str]:
    return [n.rule for n in iter_nodes(d) if isinstance(n, RuleApp)]


def height(d: Derivation) -> int:
    """Number of rule applications on the longest branch."""
    below = max((height(c) for c in children(d)), default=0)
    return below + (1 if isinstance(d, RuleApp) else 0)


@dataclass(frozen=True)
class ReplayResult:
    ok: bool
    path: tuple = ()
    message: str = ""

    def __bool__(self) -> bool:
        return self.ok


def replay(d: Derivation, spec: ConnectiveSpec | None = None, *, extra_rules: Iterable[Rule] = (),
           hypotheses: Iterable[Sequent] = ()) -> ReplayResult:
    """Re-check every inference of ``d``; the result is falsy with a path to the first bad node."""
    rules = {r.name: r for r in (spec.rules if spec else ())}
    rules.update((r.name, r) for r in extra_rules)
    hyps = set(hypotheses)

    def check(node, path):
        if isinstance(node, Axiom):
            if not is_axiom(node.conclusion):
                return ReplayResult(False, path, f"not an axiom: {node.conclusion}")
        elif isinstance(node, Hypothesis):
            if node.conclusion not in hyps:
                return ReplayResult(False, path, f"undeclared hypothesis: {node.conclusion}")
        elif isinstance(node, RuleApp):
            rule = rules.get(node.rule)
            if rule is None:
                return ReplayResult(False, path, f"unknown rule {node.rule!r}")
            try:
                prems = apply_rule(rule, node.substitution)
            except IncompleteSubstitution as exc:
                return ReplayResult(False, path, str(exc))
            if substitute(rule.conclusion, node.substitution) != node.conclusion:
                return ReplayResult(False, path, f"{rule.name} does not conclude {node.conclusion}")
            if prems != tuple(c.conclusion for c in node.premises):
                return ReplayResult(False, path, f"{rule.name}: premises differ from sub-derivations")
        elif isinstance(node, Cut):
            try:
                expect = cut(node.left.conclusion, node.right.conclusion, node.formula)
            except CutFormulaAbsent as exc:
                return ReplayResult(False, path, str(exc))
            if expect != node.conclusion:
                return ReplayResult(False, path, f"cut yields {expect}, not {node.conclusion}")
        else:
            return ReplayResult(False, path, f"unknown node {node!r}")
        for i, child in enumerate(children(node)):
            res = check(child, path + (i,))
            if not res:
                return res
        return ReplayResult(True)

    return check(d, ())


# ---------------------------------------------------------------------------
# Equality up to renaming

_MAX_CANON_CONTEXTS = 8


def rule_key(rule: Rule) -> tuple:
    """Key equal for rules that differ only by context names, rule name and premise order.

    Premises are compared as a set, as conjoined assumptions. Metavariables keep
    their argument positions. The key is the minimum over all renamings of the
    context variables onto ``0..k-1``.
    """
    _, contexts = rule.symbols()
    names = sorted(contexts, key=item_key)
    if len(names) > _MAX_CANON_CONTEXTS:
        raise CalculusError(f"{rule.name}: too many context variables to canonicalize")

    def seq_key(seq, rename):
        def side(items):
            return tuple(sorted((3, rename[x]) if isinstance(x, ContextVar) else item_key(x) for x in items))
        return (side(seq.antecedent), side(seq.succedent))

    best = None
    for perm in permutations(range(len(names))):
        rename = dict(zip(names, perm))
        cand = (rule.side, tuple(sorted({seq_key(p, rename) for p in rule.premises})),
                seq_key(rule.conclusion, rename))
        if best is None or cand < best:
            best = cand
    return best


def same_rules(a: Iterable[Rule], b: Iterable[Rule]) -> bool:
    """Rule collections equal as sets, up to renaming and reordering."""
    return {rule_key(r) for r in a} == {rule_key(r) for r in b}
