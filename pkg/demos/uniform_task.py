"""
Structureless goals
===================

When the goals are scattered at random there is little for an
intensional solution to share, and it ends up close to the extensional
enumeration.
"""

from intensional import extensional_solution, gen_uniform_task, intensional_solutions, problem_from_task

for density in (0.05, 0.1, 0.25):
    for seed in range(3):
        t = gen_uniform_task(6, density, seed)
        best = intensional_solutions(problem_from_task(t))[0]
        ext = extensional_solution(t.goals, t.n)
        print(f"density {density:.2f} seed {seed}: |G|={len(t.goals):2d} "
              f"intensional {best.terms} terms / {best.bits} bits, extensional {len(ext.terms)} terms")
