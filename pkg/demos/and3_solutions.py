"""
Extensional and intensional solutions to AND
============================================

A two-input AND gate with one output variable.  The mimic memorises the
four correct responses; the intensional solution keeps only what groups
of them share, and turns out to be shorter.
"""

from intensional import (
    encoding_length,
    extensional_solution,
    gen_logic_task,
    intensional_solutions,
    prime_implicants,
    problem_from_task,
)

t = gen_logic_task("AND", 2)
print("goals:", sorted(str(g) for g in t.goals))

# Every reachable response that is not a goal must be rejected.
p = problem_from_task(t)

# The extensional solution lists the goals verbatim.
ext = extensional_solution(t.goals, t.n)
print("extensional:", ext, f"({encoding_length(ext)} bits)")

# Prime implicants are the weakest conjunctions that stay clear of the
# wrong responses.
print("primes:", sorted(term.pattern for term in prime_implicants(p)))

# The intensional solution covers the goals with primes, maximising the
# number of states it admits and then minimising length.
[best] = intensional_solutions(p)
print("intensional:", best.statement, f"({best.bits} bits, weakness {best.weakness})")
