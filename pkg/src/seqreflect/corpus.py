"""Built-in corpus: the MALL connectives, the ternary A*(B+C) connective, tonk and mutants."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .calculus import ConnectiveSpec
from .dsl import parse_spec

CORPUS_TEXT = """\
# Built-in corpus. Expected verdicts live in seqreflect.corpus.EXPECTED.

connective Tensor(A, B) {
  right "tensor-R": [G1 |- A; G2 |- B] => G1, G2 |- *;
  left "tensor-L": [A, B |- D] => * |- D;
}

connective With(A, B) {
  right "with-R": [G |- A; G |- B] => G |- *;
  left "with-L1": [A |- D] => * |- D;
  left "with-L2": [B |- D] => * |- D;
}

connective Plus(A, B) {
  right "plus-R1": [G |- A] => G |- *;
  right "plus-R2": [G |- B] => G |- *;
  left "plus-L": [A |- D; B |- D] => * |- D;
}

connective Par(A, B) {
  right "par-R": [G |- A, B] => G |- *;
  left "par-L": [A |- D1; B |- D2] => * |- D1, D2;
}

# A*(B+C) taken as a primitive ternary connective.
connective TensorPlus(A, B, C) {
  right "tp-R1": [G1 |- A; G2 |- B] => G1, G2 |- *;
  right "tp-R2": [G1 |- A; G2 |- C] => G1, G2 |- *;
  left "tp-L": [A, B |- D; A, C |- D] => * |- D;
}

connective Tonk(A, B) {
  right "tonk-R": [G |- A] => G |- *;
  left "tonk-L": [B |- D] => * |- D;
}

# The premises' context {G} is a proper subset of the conclusion's {G, H}.
connective CtxChange(A, B) {
  right "cc-R": [G |- A; G |- B] => G, H |- *;
  left "cc-L1": [A |- D] => * |- D;
  left "cc-L2": [B |- D] => * |- D;
}

connective MultiForm(A, B) {
  right "mf-R1": [G |- A; G |- B] => G |- *;
  right "mf-R2": [G |- A; G |- A, B] => G |- *;
  left "mf-L1": [A |- D] => * |- D;
  left "mf-L2": [B |- D] => * |- D;
}

connective WithDropped(A, B) {
  right "wd-R": [G |- A; G |- B] => G |- *;
  left "wd-L1": [A |- D] => * |- D;
}
"""


@dataclass(frozen=True)
class ExpectedVerdicts:
    doi: bool
    main_cut: bool
    left_solvable: bool
    right_solvable: bool
    reflection: bool
    witness_side: str | None
    synthetic: bool
    scheme: str | None

    @property
    def consistent(self) -> bool:
        return (self.doi and self.main_cut) == self.reflection == self.synthetic


@dataclass(frozen=True)
class CorpusEntry:
    spec: ConnectiveSpec
    expected: ExpectedVerdicts


E = ExpectedVerdicts
EXPECTED = {
    "Tensor": E(True, True, True, False, True, "left", True, "II"),
    "With": E(True, True, False, True, True, "right", True, "I"),
    "Plus": E(True, True, True, False, True, "left", True, "II"),
    "Par": E(True, True, False, True, True, "right", True, "I"),
    "TensorPlus": E(True, True, True, False, True, "left", True, "II"),
    # both sides solve, but neither solution is the other side's given rule
    "Tonk": E(False, False, True, True, False, None, False, None),
    "CtxChange": E(True, False, False, False, False, None, False, None),
    "MultiForm": E(True, False, False, False, False, None, False, None),
    "WithDropped": E(False, True, True, True, False, None, False, None),
}
del E


@lru_cache(maxsize=None)
def builtin_corpus() -> tuple[CorpusEntry, ...]:
    entries = []
    for spec in parse_spec(CORPUS_TEXT):
        spec = ConnectiveSpec(spec.name, spec.metavars, spec.rules, provenance="builtin")
        entries.append(CorpusEntry(spec, EXPECTED[spec.name]))
    return tuple(entries)


def corpus_spec(name: str) -> ConnectiveSpec:
    for entry in builtin_corpus():
        if entry.spec.name == name:
            return entry.spec
    raise KeyError(name)
