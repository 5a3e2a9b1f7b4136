"""Agents that answer situations by abduction.

Abduction intersects a solution's extension with the completions of the
situation.  An intentional agent abducts from an Intensional Solution, a
mimic from the Extensional Solution of its training goals, and a hybrid
consults the mimic's lookup table before falling back to abduction.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from . import _bits
from .errors import DimensionError, InputError
from .induction import (
    SolverConfig,
    extensional_solution,
    intensional_solutions,
    problem_from_ostensive,
)
from .statement import Statement, Term
from .task import OstensiveDefinition, PartialAssignment, bits_from_states, states_from_bits

KINDS = ("intentional", "mimic", "hybrid")


@dataclass(frozen=True)
class Agent:
    kind: str
    n: int
    solution: Statement
    lookup: Statement | None = None  # hybrid only: extensional heuristic
    exact: bool = True

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InputError(f"unknown agent kind {self.kind!r}")
        if self.kind == "hybrid" and self.lookup is None:
            raise InputError("hybrid agent needs an extensional lookup")


def train_agent(kind: str, o: OstensiveDefinition, cfg: SolverConfig = SolverConfig()) -> Agent:
    n = o.task.n
    mimic = extensional_solution(o.goals_o, n)
    if kind == "mimic":
        return Agent("mimic", n, mimic)
    best = intensional_solutions(problem_from_ostensive(o), cfg)[0]
    if kind == "intentional":
        return Agent("intentional", n, best.statement, exact=best.exact)
    if kind == "hybrid":
        return Agent("hybrid", n, best.statement, lookup=mimic, exact=best.exact)
    raise InputError(f"unknown agent kind {kind!r}")


def _abduct_bits(c, s):
    if c.n != s.n:
        raise DimensionError(f"statement has {c.n} variables, situation has {s.n}")
    _bits.check_cap(s.n)
    return c.states() & _bits.cube_states(s.n, s.mask, s.value)


def abduct(c: Statement, s: PartialAssignment) -> frozenset[PartialAssignment]:
    """Responses extending `s` of which `c` is true."""
    return states_from_bits(s.n, _abduct_bits(c, s))


def _candidates(a: Agent, s):
    if a.kind == "hybrid":
        hit = _abduct_bits(a.lookup, s)
        if hit:
            return hit
    return _abduct_bits(a.solution, s)


def _first_state(n, bits):
    # smallest under numeric order of the pattern (x0 most significant)
    return min(states_from_bits(n, bits), key=PartialAssignment.sort_key) if bits else None


def decide(a: Agent, s: PartialAssignment, mode: str = "deterministic", goals: Iterable[PartialAssignment] | None = None):
    """Respond to `s`.

    ``deterministic`` returns the first abducted response in canonical
    order (or None).  ``expected`` returns the fraction of abducted
    responses that are in `goals`, 0.0 when nothing is abducted.
    """
    cands = _candidates(a, s)
    if mode == "deterministic":
        return _first_state(s.n, cands)
    if mode == "expected":
        if goals is None:
            raise InputError("expected mode needs a goal oracle")
        goal_bits = goals if isinstance(goals, int) else bits_from_states(goals)
        total = cands.bit_count()
        return (cands & goal_bits).bit_count() / total if total else 0.0
    raise InputError(f"unknown mode {mode!r}")


def rationale(c_self: Statement, observed_r: PartialAssignment) -> frozenset[Term]:
    """Disjuncts of one's own solution that the observed response satisfies.

    Empty means the behaviour has no rationale under this solution.
    """
    if c_self.n != observed_r.n:
        raise DimensionError("statement and response over different variable counts")
    if not observed_r.is_complete:
        raise InputError(f"observed response {observed_r} is not complete")
    return frozenset(t for t in c_self.terms if t.matches(observed_r))
