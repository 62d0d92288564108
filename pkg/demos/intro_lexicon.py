"""Induce word orders from bags of types.

Each word of the sample carries a commutative (compact closed) type. We ask
for pivotal types, i.e. an order and a sign for every letter, such that every
sentence still reduces. The word t1 appears in both sentences and the two
contexts together leave only orders with B last.

    python3 demos/intro_lexicon.py
"""

from pathlib import Path

from typelift.corpus import load_sample
from typelift.kernel import Functor, System, format_type, parse_type
from typelift.solver import InductionProblem, enumerate_solutions

sample = load_sample(Path(__file__).parent.parent / "tests" / "fixtures" / "intro.sample")
problem = InductionProblem(Functor.PIV_TO_CC, sample, require_functional=False)
solutions = enumerate_solutions(problem)
print(f"{len(solutions)} solutions")

t1 = ("t1", parse_type(System.COMPACT_CLOSED, "{A,B,C}"))
for t in sorted({format_type(s.lexicon[t1]) for s in solutions}):
    print("t1 can be", t)

print("\nfirst solution:")
for line in solutions[0].lexicon.lines(sample.keys()):
    print(" ", line)
