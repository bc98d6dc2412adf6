"""Textual rule-definition language.

::

    # additive conjunction
    connective With(A, B) {
      right "with-R":  [G |- A; G |- B] => G |- *;
      left  "with-L1": [A |- D] => * |- D;
      left  "with-L2": [B |- D] => * |- D;
    }

Identifiers declared in the header are metavariables, every other identifier
in a sequent is a context variable, ``*`` is the principal formula, ``.`` an
empty side and ``#`` starts a comment.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .calculus import (
    LEFT, RIGHT, ArityError, CalculusError, Compound, ConnectiveSpec, ContextVar, MetaVar, MultiPrincipalError,
    Rule, Sequent, DuplicateRuleName,
)


@dataclass(frozen=True)
class SourceSpan:
    line: int
    column: int
    start: int
    end: int

    def __str__(self) -> str:
        return f"{self.line}:{self.column}"


class ParseError(Exception):
    def __init__(self, message: str, span: SourceSpan | None = None):
        self.span = span
        super().__init__(f"{span}: {message}" if span else message)


_TOKEN = re.compile(r"""
    (?P<ws>\s+|\#[^\n]*)
  | (?P<turnstile>\|-)
  | (?P<arrow>=>)
  | (?P<string>"[^"\n]*")
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<punct>[{}()\[\];,:*.])
""", re.VERBOSE)


@dataclass(frozen=True)
class _Tok:
    kind: str
    text: str
    span: SourceSpan


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        start_b = len(text[:pos].encode())
        if not m:
            span = SourceSpan(line, pos - line_start + 1, start_b, start_b + len(text[pos].encode()))
            raise ParseError(f"unexpected character {text[pos]!r}", span)
        kind, value = m.lastgroup, m.group()
        span = SourceSpan(line, pos - line_start + 1, start_b, start_b + len(value.encode()))
        if kind != "ws":
            toks.append(_Tok(value if kind == "punct" else kind, value, span))
        newlines = value.count("\n")
        if newlines:
            line += newlines
            line_start = pos + value.rindex("\n") + 1
        pos = m.end()
    end = len(text.encode())
    toks.append(_Tok("eof", "", SourceSpan(line, pos - line_start + 1, end, end + 1)))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def take(self, kind: str, what: str | None = None) -> _Tok:
        tok = self.peek()
        if tok.kind != kind or (what is not None and tok.text != what):
            want = what or kind
            raise ParseError(f"expected {want!r}, found {tok.text or 'end of input'!r}", tok.span)
        self.i += 1
        return tok

    def parse(self) -> list[ConnectiveSpec]:
        specs = []
        while self.peek().kind != "eof":
            specs.append(self.connective())
        return specs

    def connective(self) -> ConnectiveSpec:
        head = self.take("ident", "connective")
        name = self.take("ident").text
        self.take("(")
        params = [self.take("ident")]
        while self.peek().kind == ",":
            self.take(",")
            params.append(self.take("ident"))
        self.take(")")
        names = [t.text for t in params]
        if len(set(names)) != len(names):
            raise ArityError(f"{head.span}: {name}: repeated argument name")
        metas = {t.text: MetaVar(i, t.text) for i, t in enumerate(params, 1)}
        self.take("{")
        rules = []
        while self.peek().kind != "}":
            rules.append(self.rule(name, metas))
        self.take("}")
        try:
            return ConnectiveSpec(name, tuple(metas.values()), tuple(rules), provenance="parsed")
        except (ArityError, DuplicateRuleName, MultiPrincipalError) as exc:
            raise type(exc)(f"{head.span}: {exc}") from None
        except CalculusError as exc:
            raise ParseError(str(exc), head.span) from None

    def rule(self, conn: str, metas: dict) -> Rule:
        side_tok = self.take("ident")
        if side_tok.text not in (LEFT, RIGHT):
            raise ParseError(f"expected 'left' or 'right', found {side_tok.text!r}", side_tok.span)
        name = self.take("string").text[1:-1]
        if not name:
            raise ParseError("rule name may not be empty", side_tok.span)
        self.take(":")
        self.take("[")
        premises = []
        if self.peek().kind != "]":
            premises.append(self.sequent(conn, metas, allow_star=False))
            while self.peek().kind == ";":
                self.take(";")
                premises.append(self.sequent(conn, metas, allow_star=False))
        self.take("]")
        self.take("arrow")
        concl_tok = self.peek()
        conclusion, stars = self.sequent(conn, metas, allow_star=True, count_stars=True)
        self.take(";")
        if sum(stars.values()) != 1:
            raise MultiPrincipalError(
                f"{concl_tok.span}: rule {name!r} needs exactly one '*' in its conclusion")
        where = LEFT if stars[LEFT] else RIGHT
        if where != side_tok.text:
            raise ParseError(f"rule {name!r} is declared {side_tok.text} but '*' is on the {where}",
                             concl_tok.span)
        return Rule(name, tuple(premises), conclusion, side_tok.text)

    def sequent(self, conn, metas, allow_star, count_stars=False):
        stars = {LEFT: 0, RIGHT: 0}
        ant = self.side_items(conn, metas, allow_star, stars, LEFT)
        self.take("turnstile")
        suc = self.side_items(conn, metas, allow_star, stars, RIGHT)
        seq = Sequent(tuple(ant), tuple(suc))
        return (seq, stars) if count_stars else seq

    def side_items(self, conn, metas, allow_star, stars, side):
        if self.peek().kind == ".":
            self.take(".")
            return []
        items = [self.item(conn, metas, allow_star, stars, side)]
        while self.peek().kind == ",":
            self.take(",")
            items.append(self.item(conn, metas, allow_star, stars, side))
        seen = set()
        for x in items:
            if isinstance(x, ContextVar):
                if x in seen:
                    raise ParseError(f"context {x} occurs twice on one side", self.peek().span)
                seen.add(x)
        return items

    def item(self, conn, metas, allow_star, stars, side):
        tok = self.peek()
        if tok.kind == "*":
            self.take("*")
            if not allow_star:
                raise ParseError("'*' (the principal formula) may not occur in a premise", tok.span)
            stars[side] += 1
            return Compound(conn, tuple(metas.values()))
        name = self.take("ident").text
        if name in metas:
            return metas[name]
        return ContextVar(name, side)


def parse_spec(text: str) -> list[ConnectiveSpec]:
    return _Parser(text).parse()


# ---------------------------------------------------------------------------
# Rendering


def render_sequent(seq: Sequent, principal: Compound | None = None) -> str:
    def show(items):
        if not items:
            return "."
        return ", ".join("*" if x == principal else str(x) for x in items)
    return f"{show(seq.antecedent)} |- {show(seq.succedent)}"


def render_rule(rule: Rule, principal: Compound | None = None) -> str:
    if principal is None:
        principal = rule.principal()
    prems = "; ".join(render_sequent(p, principal) for p in rule.premises)
    return f'{rule.side} "{rule.name}": [{prems}] => {render_sequent(rule.conclusion, principal)};'


def render_spec_text(spec: ConnectiveSpec) -> str:
    header = ", ".join(str(m) for m in spec.metavars)
    lines = [f"connective {spec.name}({header}) {{"]
    lines += [f"  {render_rule(r, spec.principal)}" for r in spec.rules]
    lines.append("}")
    return "\n".join(lines) + "\n"


def spec_to_json(spec: ConnectiveSpec) -> dict:
    return {
        "connective": spec.name,
        "arity": spec.arity,
        "arguments": [str(m) for m in spec.metavars],
        "provenance": spec.provenance,
        "rules": [rule_to_json(r, spec.principal) for r in spec.rules],
    }


def rule_to_json(rule: Rule, principal: Compound | None = None) -> dict:
    if principal is None:
        principal = rule.principal()
    return {
        "name": rule.name,
        "side": rule.side,
        "premises": [render_sequent(p, principal) for p in rule.premises],
        "conclusion": render_sequent(rule.conclusion, principal),
    }


def render(value, format: str = "text") -> str:
    """Render a :class:`ConnectiveSpec` or an analysis report as text or JSON."""
    import json

    from .report import AnalysisReport, report_to_json, report_to_text

    if isinstance(value, AnalysisReport):
        if format == "json":
            return json.dumps(report_to_json(value), indent=2, ensure_ascii=False) + "\n"
        return report_to_text(value)
    if isinstance(value, ConnectiveSpec):
        if format == "json":
            return json.dumps(spec_to_json(value), indent=2, ensure_ascii=False) + "\n"
        return render_spec_text(value)
    raise TypeError(f"cannot render {type(value).__name__}")
