"""Harmony checks for sequent-calculus connectives: deducibility of identicals,
the main cut step, definitional reflection and synthetic-connective shape."""
from .calculus import (
    LEFT, RIGHT, Atom, Axiom, Compound, ConnectiveSpec, ContextVar, Cut, Hypothesis, MetaVar, Rule, RuleApp,
    Sequent, Substitution, replay, rule_key, same_rules,
)
from .classify import Classification, SchemeMatrix, classify, matrix_to_rules, normalize_to_scheme
from .corpus import CORPUS_TEXT, builtin_corpus, corpus_spec
from .cutstep import check_main_cut_step, reduce_principal_cut
from .doi import check_doi
from .dsl import ParseError, parse_spec, render
from .generator import MUTATIONS, GenBounds, MutationInapplicable, mutate, random_connective
from .reflection import build_equation, check_reflection, derive_uniqueness, solve
from .report import (
    AnalysisOptions, AnalysisReport, analyze, equivalence_violations, summarize, verify_equivalence,
)

__version__ = "0.1.0"

__all__ = [
    "LEFT", "RIGHT", "Atom", "Axiom", "Compound", "ConnectiveSpec", "ContextVar", "Cut", "Hypothesis", "MetaVar",
    "Rule", "RuleApp", "Sequent", "Substitution", "replay", "rule_key", "same_rules",
    "Classification", "SchemeMatrix", "classify", "matrix_to_rules", "normalize_to_scheme",
    "CORPUS_TEXT", "builtin_corpus", "corpus_spec", "check_main_cut_step", "reduce_principal_cut", "check_doi",
    "ParseError", "parse_spec", "render", "MUTATIONS", "GenBounds", "MutationInapplicable", "mutate",
    "random_connective", "build_equation", "check_reflection", "derive_uniqueness", "solve",
    "AnalysisOptions", "AnalysisReport", "analyze", "equivalence_violations", "summarize", "verify_equivalence",
]
