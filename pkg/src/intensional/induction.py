"""Constructing solutions to tasks.

An `InductionProblem` splits the complete states into three parts: ``on``
(goal states that must be accepted), ``off`` (reachable non-goals that must
be rejected), and the don't-care remainder.  A statement is a solution when
its extension, restricted to ``on | off``, is exactly ``on``.

The Extensional Solution lists the goals one by one.  Intensional Solutions
are covers by prime implicants chosen to maximise weakness, with encoding
length and canonical order as tie-breakers.
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple

from . import _bits
from .errors import CapacityError, InputError
from .statement import Statement, Term, encoding_length
from .task import (
    OstensiveDefinition,
    PartialAssignment,
    Task,
    bits_from_states,
    reach_states,
    states_from_bits,
)

log = logging.getLogger(__name__)

EXACT_CAP = 20
ORACLE_CAP = 4
MAX_TIES = 4096


@dataclass(frozen=True)
class InductionProblem:
    n: int
    on: frozenset[PartialAssignment]
    off: frozenset[PartialAssignment]

    def __post_init__(self):
        object.__setattr__(self, "on", frozenset(self.on))
        object.__setattr__(self, "off", frozenset(self.off))
        for z in self.on | self.off:
            if z.n != self.n or not z.is_complete:
                raise InputError(f"{z} is not a complete state over {self.n} variables")
        if self.on & self.off:
            raise InputError("on and off sets overlap")

    @classmethod
    def from_states(cls, n, on_bits, off_bits):
        return cls(n, states_from_bits(n, on_bits), states_from_bits(n, off_bits))

    @classmethod
    def from_patterns(cls, n, on=(), off=()):
        return cls(n, {PartialAssignment.parse(p) for p in on}, {PartialAssignment.parse(p) for p in off})

    @cached_property
    def on_bits(self) -> int:
        return bits_from_states(self.on)

    @cached_property
    def off_bits(self) -> int:
        return bits_from_states(self.off)

    @property
    def care_bits(self) -> int:
        return self.on_bits | self.off_bits

    @property
    def dc_bits(self) -> int:
        return _bits.universe(self.n) & ~self.care_bits


def problem_from_task(t: Task) -> InductionProblem:
    on = bits_from_states(t.goals)
    reachable = reach_states(t.situations, t.n)
    return InductionProblem.from_states(t.n, on, reachable & ~on)


def problem_from_ostensive(o: OstensiveDefinition) -> InductionProblem:
    """Training problem: reachable non-training states count as wrong."""
    n = o.task.n
    on = bits_from_states(o.goals_o)
    reachable = reach_states(o.situations_o, n)
    return InductionProblem.from_states(n, on, reachable & ~on)


def unlisted_reachable_goals(o: OstensiveDefinition) -> int:
    """How many task goals outside ``goals_o`` training treats as wrong.

    These are goals reachable from the trained situations that the closed
    world marks ``off``; nonzero only for tasks with several correct
    responses per situation.
    """
    reachable = reach_states(o.situations_o, o.task.n)
    return (reachable & bits_from_states(o.task.goals - o.goals_o)).bit_count()


@dataclass(frozen=True)
class SolverConfig:
    max_primes: int = 64
    max_results: int = 8
    greedy: bool = False
    cap: int = EXACT_CAP


@dataclass(frozen=True)
class SolutionReport:
    statement: Statement
    weakness: int
    bits: int
    valid: bool
    exact: bool = True
    trace: tuple[str, ...] = ()
    fallback: str | None = None

    @property
    def terms(self):
        return len(self.statement.terms)

    def to_record(self) -> dict:
        rec = {
            "statement": str(self.statement),
            "weakness": self.weakness,
            "bits": self.bits,
            "terms": self.terms,
            "valid": self.valid,
            "exact": self.exact,
        }
        if self.fallback:
            rec["fallback"] = self.fallback
        return rec

    def to_text(self) -> str:
        lines = [
            f"statement: {self.statement}",
            f"weakness: {self.weakness}",
            f"bits: {self.bits}",
            f"terms: {self.terms}",
            f"valid: {str(self.valid).lower()}",
            f"exact: {str(self.exact).lower()}",
        ]
        if self.fallback:
            lines.append(f"fallback: {self.fallback}")
        return "\n".join(lines)


def make_report(c: Statement, p: InductionProblem | None = None, **kw) -> SolutionReport:
    valid = is_solution(c, p) if p is not None else True
    return SolutionReport(c, c.states().bit_count(), encoding_length(c), valid, **kw)


def is_solution(c: Statement, p: InductionProblem, cap: int = _bits.ENUMERATION_CAP) -> bool:
    _bits.check_cap(p.n, cap)
    return c.states() & p.care_bits == p.on_bits


def is_grounded(c: Statement, p: InductionProblem) -> bool:
    """True when every disjunct is true of at least one ``on`` state."""
    return all(t.states() & p.on_bits for t in c.terms)


def extensional_solution(goals: Iterable[PartialAssignment], n: int) -> Statement:
    terms = []
    for g in goals:
        if not g.is_complete:
            raise InputError(f"goal {g} is not complete")
        terms.append(Term.from_assignment(g))
    return Statement(n, tuple(terms))


# -- prime implicants --------------------------------------------------------


def _complement_cover(n, states):
    """Disjoint cube cover of the states *not* listed, by Shannon expansion."""
    out = []

    def rec(states, var, mask, value):
        if not states:
            out.append((mask, value))
            return
        if var == n:
            return
        bit = 1 << var
        lo = [z for z in states if not z & bit]
        hi = [z for z in states if z & bit]
        rec(lo, var + 1, mask | bit, value)
        rec(hi, var + 1, mask | bit, value | bit)

    rec(list(states), 0, 0, 0)
    return out


def _consensus(a, b):
    am, av = a
    bm, bv = b
    clash = am & bm & (av ^ bv)
    if clash.bit_count() != 1:
        return None
    mask = (am | bm) & ~clash
    return mask, (av | bv) & mask


def _absorbed(cube, cubes):
    return any(_bits.contains(c, cube) for c in cubes)


def _all_primes(n, off_bits):
    """Every maximal cube that avoids `off_bits` (iterated consensus)."""
    cubes = set()
    for c in _complement_cover(n, _bits.iter_bits(off_bits)):
        if not _absorbed(c, cubes):
            cubes = {d for d in cubes if not _bits.contains(c, d)}
            cubes.add(c)
    work = sorted(cubes)
    while work:
        c = work.pop()
        if c not in cubes:
            continue
        for d in list(cubes):
            e = _consensus(c, d)
            if e is None or _absorbed(e, cubes):
                continue
            cubes = {x for x in cubes if not _bits.contains(e, x)}
            cubes.add(e)
            work.append(e)
            if c not in cubes:
                break
    return cubes


def prime_implicants(p: InductionProblem, cap: int = EXACT_CAP) -> frozenset[Term]:
    """Maximal terms avoiding ``off`` that are true of some ``on`` state."""
    _bits.check_cap(p.n, cap)
    if not p.on_bits:
        return frozenset()
    primes = set()
    for mask, value in _all_primes(p.n, p.off_bits):
        if _bits.cube_states(p.n, mask, value) & p.on_bits:
            primes.add(Term(p.n, mask, value))
    return frozenset(primes)


# -- cover search ------------------------------------------------------------


def _min_cost_covers(target, sets, costs, limit=MAX_TIES):
    """All minimum-cost selections of `sets` whose union equals `target`.

    Branches on the uncovered element with the fewest candidates; sibling
    branches forbid the candidates already tried so each selection is
    produced once.  A branch dies when some uncovered element has no
    remaining candidate, i.e. when the remaining sets can no longer reach
    the weakness of `target`.  Returns (best cost, list of index tuples,
    truncated flag).
    """
    holders = {}
    for e in _bits.iter_bits(target):
        holders[e] = [i for i, s in enumerate(sets) if (s >> e) & 1]
    best = math.inf
    found = []
    truncated = False
    min_cost = min(costs) if costs else 0

    def lower_bound(uncovered, forbidden):
        widest = max(((s & uncovered).bit_count() for i, s in enumerate(sets) if not forbidden >> i & 1), default=0)
        if widest == 0:
            return math.inf
        return min_cost * -(-uncovered.bit_count() // widest)

    def rec(covered, chosen, cost, forbidden):
        nonlocal best, truncated
        uncovered = target & ~covered
        if not uncovered:
            if cost < best:
                best = cost
                found.clear()
                truncated = False
            if len(found) < limit:
                found.append(tuple(sorted(chosen)))
            else:
                truncated = True
            return
        if cost + lower_bound(uncovered, forbidden) > best:
            return
        pick, cands = None, None
        for e in _bits.iter_bits(uncovered):
            c = [i for i in holders[e] if not forbidden >> i & 1]
            if pick is None or len(c) < len(cands):
                pick, cands = e, c
                if len(c) <= 1:
                    break
        for i in cands:
            if cost + costs[i] <= best:
                rec(covered | sets[i], chosen + [i], cost + costs[i], forbidden)
            forbidden |= 1 << i

    rec(0, [], 0, 0)
    return best, found, truncated


def _greedy_cover(target, sets, costs):
    chosen = []
    covered = 0
    while covered != target:
        gain = [((s & ~covered).bit_count() / costs[i], -i) for i, s in enumerate(sets)]
        g, neg_i = max(gain)
        if g == 0:
            break
        chosen.append(-neg_i)
        covered |= sets[-neg_i]
    # drop selections made redundant by later picks
    for i in sorted(chosen, key=lambda i: -costs[i]):
        rest = 0
        for j in chosen:
            if j != i:
                rest |= sets[j]
        if rest == target:
            chosen.remove(i)
    return tuple(sorted(chosen))


def intensional_solutions(p: InductionProblem, cfg: SolverConfig = SolverConfig()) -> list[SolutionReport]:
    """Weakness-maximal solutions, shortest first, built from prime implicants.

    The weakest reachable extension is the union of all primes, so the
    search looks for the cheapest prime covers of that union under the
    fixed-width encoding.  Up to ``cfg.max_results`` optima are returned in
    canonical order.
    """
    if not p.on_bits:
        return [make_report(Statement.false(p.n), p, trace=("empty on-set",))]
    primes = sorted(prime_implicants(p, cfg.cap), key=Term.sort_key)
    if len(primes) > cfg.max_primes and not cfg.greedy:
        raise CapacityError(f"{len(primes)} prime implicants exceed max_primes={cfg.max_primes}")
    sets = [t.states() for t in primes]
    costs = [encoding_length(Statement(p.n, (t,))) for t in primes]
    target = 0
    for s in sets:
        target |= s
    trace = [f"{len(primes)} primes; weakness bound {target.bit_count()}"]
    if cfg.greedy:
        picks = [_greedy_cover(target, sets, costs)]
        exact = False
        trace.append("greedy cover (not exact)")
    else:
        best, picks, truncated = _min_cost_covers(target, sets, costs)
        exact = True
        trace.append(f"{len(picks)} cover(s) at {best} bits")
        if truncated:
            trace.append(f"tie list truncated at {MAX_TIES}")
    stmts = sorted((Statement(p.n, tuple(primes[i] for i in pick)) for pick in picks), key=Statement.sort_key)
    if len(stmts) > 1:
        trace.append(f"ties ordered canonically; kept {min(len(stmts), cfg.max_results)}")
    return [make_report(c, p, exact=exact, trace=tuple(trace)) for c in stmts[: cfg.max_results]]


# -- meets and one-class learning --------------------------------------------


def _meet(a, b):
    am, av = a
    bm, bv = b
    mask = am & bm & ~(av ^ bv)
    return mask, av & mask


def meet(states: Iterable[PartialAssignment]) -> Term:
    """Term holding exactly the literals every state agrees on."""
    states = list(states)
    if not states:
        raise InputError("meet of an empty set")
    n = states[0].n
    cube = (states[0].mask, states[0].value)
    for z in states[1:]:
        if z.n != n:
            raise InputError("states over different variable counts")
        cube = _meet(cube, (z.mask, z.value))
    return Term(n, *cube)


@dataclass(frozen=True)
class OneClassConfig:
    forbid_tautology: bool = True
    closure_cap: int = 4096


def _meet_closure(cubes, cap):
    closed = set(cubes)
    frontier = list(closed)
    while frontier:
        nxt = []
        for a in frontier:
            for b in list(closed):
                m = _meet(a, b)
                if m not in closed:
                    closed.add(m)
                    nxt.append(m)
                    if len(closed) > cap:
                        return None
        frontier = nxt
    return closed


def one_class_learn(positives: Iterable[PartialAssignment], cfg: OneClassConfig = OneClassConfig()) -> SolutionReport:
    """Learn a classifier from positive examples only.

    Candidates are the meets of subsets of the positives, obtained as the
    pairwise-meet closure.  The weakest cover by candidates is chosen, ties
    broken by fewer terms and then canonical order.  When nothing beyond
    the positives themselves survives, the result is their enumeration and
    the report is flagged ``fallback="extensional"``.
    """
    positives = sorted(set(positives), key=PartialAssignment.sort_key)
    if not positives:
        raise InputError("one-class learning needs at least one positive")
    n = positives[0].n
    for z in positives:
        if z.n != n or not z.is_complete:
            raise InputError(f"positive {z} is not a complete state over {n} variables")
    minterms = [(z.mask, z.value) for z in positives]
    closed = _meet_closure(minterms, cfg.closure_cap)
    trace = []
    if closed is None:
        trace.append(f"meet closure exceeded {cfg.closure_cap} terms")
        closed = set(minterms)
    if cfg.forbid_tautology:
        closed.discard((0, 0))
    fallback = None
    if len(positives) > 1 and closed <= set(minterms):
        fallback = "extensional"
    # only maximal candidates can appear in a fewest-terms cover
    maximal = [c for c in closed if not any(d != c and _bits.contains(d, c) for d in closed)]
    cands = sorted((Term(n, *c) for c in maximal), key=Term.sort_key)
    sets = [t.states() for t in cands]
    target = 0
    for s in sets:
        target |= s
    _, picks, _ = _min_cost_covers(target, sets, [1] * len(sets))
    stmts = sorted((Statement(n, tuple(cands[i] for i in pick)) for pick in picks), key=Statement.sort_key)
    trace.append(f"{len(closed)} closed terms, {len(cands)} maximal")
    return make_report(stmts[0], None, trace=tuple(trace), fallback=fallback)


# -- exhaustive oracle -------------------------------------------------------


def enumerate_all_solutions(p: InductionProblem, max_terms: int = 4, max_literals: int = 3) -> list[SolutionReport]:
    """Every canonical statement within the bounds that solves `p`.

    Brute force over antichains of admissible terms; meant as an oracle
    for n <= 4.  Order: canonical.
    """
    if p.n > ORACLE_CAP:
        raise CapacityError(f"exhaustive enumeration is limited to n <= {ORACLE_CAP}")
    if max_terms > 6:
        raise CapacityError("max_terms above 6 is outside oracle scale")
    max_literals = min(max_literals, p.n)
    admissible = []
    for pattern in itertools.product("01*", repeat=p.n):
        t = Term.from_pattern("".join(pattern))
        if t.size <= max_literals and not t.states() & p.off_bits:
            admissible.append(t)
    admissible.sort(key=Term.sort_key)
    sets = [t.states() for t in admissible]
    out = []

    def rec(start, chosen, union):
        if union & p.on_bits == p.on_bits:
            c = Statement(p.n, tuple(admissible[i] for i in chosen))
            out.append(make_report(c, p))
        if len(chosen) == max_terms:
            return
        for i in range(start, len(admissible)):
            t = admissible[i]
            if any(admissible[j].subsumes(t) or t.subsumes(admissible[j]) for j in chosen):
                continue
            rec(i + 1, chosen + [i], union | sets[i])

    rec(0, [], 0)
    out.sort(key=lambda r: r.statement.sort_key())
    return out


def generality(c: Statement, t: Task, cap: int = _bits.ENUMERATION_CAP) -> int:
    _bits.check_cap(t.n, cap)
    return (c.states() & bits_from_states(t.goals)).bit_count()


class Sufficiency(NamedTuple):
    sufficient: bool
    witness: Statement | None


def is_sufficient(o: OstensiveDefinition, cfg: SolverConfig = SolverConfig()) -> Sufficiency:
    """Whether every optimum learned from `o` also solves the whole task."""
    full = problem_from_task(o.task)
    for r in intensional_solutions(problem_from_ostensive(o), cfg):
        if not is_solution(r.statement, full):
            return Sufficiency(False, r.statement)
    return Sufficiency(True, None)
