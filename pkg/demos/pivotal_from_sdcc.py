"""Betweenness as induction from unsigned bags all the way to pivotal syntax.

Every gadget word whose signed type is not a single positive letter gets a
forcing fragment; each fragment is checked to pin that type before the
pieces are glued together.

    python3 demos/pivotal_from_sdcc.py
"""

import time

from typelift import gadgets
from typelift.exactness import cor1_fragments, compose_cor1
from typelift.kernel import format_type
from typelift.solver import solve

inst = gadgets.BetweennessInstance(("a", "b", "c"), (("a", "b", "c"),))
t0 = time.time()
_, forced = cor1_fragments(inst)
for fk in forced:
    print(f"{fk.word:14} forced to {format_type(fk.target):16} {fk.verdict}")
problem = compose_cor1(inst)
print(f"{len(problem.sample.sentences)} sentences, built in {time.time() - t0:.1f}s")
sol = solve(problem)
print("order:", " ".join(gadgets.extract_betweenness(problem, sol)))
