"""Run the equivalence suite: built-in corpus, then seeded synthetic connectives and their mutants.

    python3 scripts/run_equivalence_suite.py --count 500 --seed 42
"""
import argparse
import sys
import time

from seqreflect.batch import fuzz_to_text, run_corpus, run_fuzz
from seqreflect.generator import GenBounds
from seqreflect.report import summarize


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=500)
    ap.add_argument("--seed", default="42")
    ap.add_argument("--max-arity", type=int, default=4)
    args = ap.parse_args(argv)

    t0 = time.perf_counter()
    rows = run_corpus()
    corpus = summarize(r.report for r in rows)
    mismatched = [r.report.spec.name for r in rows if not r.matches]
    print(f"corpus: {len(rows)} connectives, {len(corpus.violations)} violations, "
          f"{len(mismatched)} verdict mismatches {mismatched or ''}")

    run = run_fuzz(args.count, args.seed, GenBounds(max_arity=args.max_arity))
    print(fuzz_to_text(run), end="")
    reports = [r.report for r in rows] + [rep for _, _, rep in run.reports]
    certs = sum(r.self_check.certificates for r in reports)
    lemma_checks = sum(1 for r in reports for e in r.equations if e.lemma is not None)
    uniq = sum(1 for r in reports if r.reflection.satisfied and r.uniqueness is not None)
    print(f"certificates replayed: {certs}")
    print(f"equations with a lemma pre-check: {lemma_checks}")
    print(f"uniqueness pairs derived: {uniq}/{sum(r.reflection.satisfied for r in reports)}")
    print(f"wall time: {time.perf_counter() - t0:.1f} s")
    return 0 if corpus.ok and not mismatched and run.summary.ok else 1


if __name__ == "__main__":
    sys.exit(main())
