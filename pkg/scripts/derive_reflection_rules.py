"""Print the explicit reflection rules derived for tensor, with and the ternary A*(B+C),
next to the rules they should coincide with."""
from seqreflect import LEFT, RIGHT, build_equation, corpus_spec, same_rules, solve
from seqreflect.dsl import parse_spec, render_rule
from seqreflect.report import derivation_lines

# the reference rules, written independently of the corpus
REFERENCE = {
    ("Tensor", LEFT): """connective Tensor(A, B) {
        right "ref": [G1 |- A; G2 |- B] => G1, G2 |- *;
        left "unused": [A, B |- D] => * |- D; }""",
    ("With", RIGHT): """connective With(A, B) {
        right "unused": [G |- A; G |- B] => G |- *;
        left "ref1": [A |- D] => * |- D;
        left "ref2": [B |- D] => * |- D; }""",
    ("TensorPlus", LEFT): """connective TensorPlus(A, B, C) {
        right "ref1": [G1 |- A; G2 |- B] => G1, G2 |- *;
        right "ref2": [G1 |- A; G2 |- C] => G1, G2 |- *;
        left "unused": [A, B |- D; A, C |- D] => * |- D; }""",
}


def main() -> int:
    ok = True
    for (name, side), text in REFERENCE.items():
        spec = corpus_spec(name)
        sol = solve(build_equation(spec, side), spec)
        (ref,) = parse_spec(text)
        expected = [r for r in ref.rules if r.name.startswith("ref")]
        same = same_rules(sol.derived_explicit_rules, expected)
        ok &= same
        print(f"== {name}: {side} equation  {sol.equation}")
        for r in sol.derived_explicit_rules:
            print(f"   derived   {render_rule(r, spec.principal)}")
        for r in expected:
            print(f"   reference {render_rule(r, ref.principal)}")
        for tr in sol.trace:
            print("\n".join(derivation_lines(tr.derivation, 2)))
        print(f"   equal up to renaming: {'yes' if same else 'NO'}\n")
    return 0 if ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
