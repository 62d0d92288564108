"""Encode a betweenness instance, solve it as induction, read the order back.

    python3 demos/betweenness_gadget.py
"""

from typelift import gadgets
from typelift.corpus import serialize_sample
from typelift.oracles import solve_betweenness_bruteforce
from typelift.solver import solve

inst = gadgets.parse_betweenness("set a b c x\ntriple a b c\ntriple b x c\n")
problem = gadgets.gen_betweenness_cc(inst, gadgets.Mode.FUNCTIONAL_SAFE)
print(serialize_sample(problem.sample))

sol = solve(problem)
order = gadgets.extract_betweenness(problem, sol)
print("order from the lexicon:", " ".join(order))
print("brute force agrees on solvability:", solve_betweenness_bruteforce(inst) is not None)

# the same reduction for 3-SAT
f = gadgets.parse_dimacs("p cnf 3 2\n1 -2 3 0\n-1 2 0\n")
sat = gadgets.gen_sat_cc(f)
assignment = gadgets.extract_assignment(sat, solve(sat))
print("assignment:", assignment, "satisfies:", f.satisfied_by(assignment))
