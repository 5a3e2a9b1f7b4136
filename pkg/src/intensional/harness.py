"""Task generators and the generalisation / archive experiments.

All experiments are pure functions of (task, fractions, seeds, agents):
records come back ordered by (seed, fraction, agent) whatever the worker
count, and `write_csv` prints them byte-stably.
"""

from __future__ import annotations

import io
import logging
import math
import random
import statistics
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from . import _bits
from .agents import KINDS, Agent, decide
from .errors import CapacityError, EmptyOstensiveError, GenerationError, InputError
from .induction import (
    SolverConfig,
    enumerate_all_solutions,
    extensional_solution,
    intensional_solutions,
    is_grounded,
    problem_from_ostensive,
    problem_from_task,
    unlisted_reachable_goals,
)
from .statement import Statement, encoding_length
from .task import (
    OstensiveDefinition,
    PartialAssignment,
    Task,
    bits_from_states,
    make_ostensive,
)

log = logging.getLogger(__name__)

BENCH_EXACT_CAP = 16
BENCH_GREEDY_CAP = 24

CSV_HEADER = "seed,task,n,train_fraction,agent,acc_heldout,acc_trained,weakness,bits,terms,exact,elapsed_ms"

LOGIC_OPS = ("AND", "OR", "XOR", "PARITY")


# -- generators --------------------------------------------------------------


def gen_addition_task(k: int) -> Task:
    """k-bit adder: variables a_0..a_{k-1}, b_0..b_{k-1}, o_0..o_k, low bits first."""
    if not 1 <= k <= 5:
        raise GenerationError(f"adder width must be in 1..5, got {k}")
    n = 3 * k + 1
    situations, goals = set(), set()
    for a in range(1 << k):
        for b in range(1 << k):
            inputs = a | (b << k)
            in_mask = (1 << (2 * k)) - 1
            situations.add(PartialAssignment(n, in_mask, inputs))
            goals.add(PartialAssignment.complete(n, inputs | ((a + b) << (2 * k))))
    return Task(n, frozenset(situations), frozenset(goals))


def _logic_output(op, bits, k):
    ones = bits.bit_count()
    if op == "AND":
        return int(ones == k)
    if op == "OR":
        return int(ones > 0)
    if op == "XOR":
        # exclusive in the strict sense: exactly one input set
        return int(ones == 1)
    return ones & 1


def gen_logic_task(op: str, k: int) -> Task:
    """k inputs x_0..x_{k-1} and one output x_k.

    XOR means exactly one input is set; PARITY is the odd-parity bit.  The
    two coincide for k = 2.
    """
    op = op.upper()
    if op not in LOGIC_OPS:
        raise GenerationError(f"unknown logic op {op!r}")
    if k < 1:
        raise GenerationError("need at least one input")
    n = k + 1
    _bits.check_cap(n)
    in_mask = (1 << k) - 1
    situations = frozenset(PartialAssignment(n, in_mask, x) for x in range(1 << k))
    goals = frozenset(PartialAssignment.complete(n, x | (_logic_output(op, x, k) << k)) for x in range(1 << k))
    return Task(n, situations, goals)


def gen_uniform_task(n: int, density: float, seed: int) -> Task:
    """Goals drawn uniformly at the given density; one fully open situation."""
    if n > 12:
        raise CapacityError(f"uniform tasks are limited to n <= 12, got {n}")
    if n < 1 or not 0 <= density <= 1:
        raise GenerationError("need n >= 1 and density in [0, 1]")
    count = round(density * (1 << n))
    if count == 0:
        raise GenerationError(f"density {density} yields no goals at n={n}")
    rng = random.Random(seed)
    goals = frozenset(PartialAssignment.complete(n, z) for z in rng.sample(range(1 << n), count))
    return Task(n, frozenset({PartialAssignment(n, 0, 0)}), goals)


def parse_generator(spec: str) -> Task:
    """``and:k``, ``or:k``, ``xor:k``, ``parity:k``, ``add:k``, ``uniform:n:density:seed``."""
    parts = spec.split(":")
    try:
        kind = parts[0].lower()
        if kind == "add" and len(parts) == 2:
            return gen_addition_task(int(parts[1]))
        if kind.upper() in LOGIC_OPS and len(parts) == 2:
            return gen_logic_task(kind, int(parts[1]))
        if kind == "uniform" and len(parts) == 4:
            return gen_uniform_task(int(parts[1]), float(parts[2]), int(parts[3]))
    except ValueError as exc:
        if isinstance(exc, InputError):
            raise
        raise GenerationError(f"bad generator spec {spec!r}: {exc}") from None
    raise GenerationError(f"bad generator spec {spec!r}")


# -- ostensive definitions from reward ---------------------------------------


def reward_ostensive(
    t: Task,
    reward: Callable[[PartialAssignment], float],
    threshold: float,
    trials: int,
    seed: int,
) -> OstensiveDefinition:
    """Try random responses and keep those rewarded at least `threshold`."""
    if trials < 1:
        raise InputError("trials must be at least 1")
    if not t.situations:
        raise EmptyOstensiveError("task has no situations to sample")
    rng = random.Random(seed)
    situations = t.sorted_situations()
    full = _bits.full_mask(t.n)
    accepted = set()
    for _ in range(trials):
        s = rng.choice(situations)
        fill = rng.getrandbits(t.n) & full & ~s.mask
        r = PartialAssignment.complete(t.n, s.value | fill)
        if reward(r) >= threshold:
            accepted.add(r)
    if not accepted:
        raise EmptyOstensiveError(f"no response reached reward {threshold} in {trials} trials")
    return OstensiveDefinition(t, frozenset(accepted))


# -- evaluation --------------------------------------------------------------


@dataclass(frozen=True)
class EvalRecord:
    seed: int
    task: str
    n: int
    train_fraction: float
    agent: str
    acc_heldout: float
    acc_trained: float
    weakness: int
    bits: int
    terms: int
    exact: bool
    elapsed_ms: float = field(default=0.0, compare=False)

    def csv_row(self, timing=False) -> str:
        return ",".join(
            [
                str(self.seed),
                self.task,
                str(self.n),
                f"{self.train_fraction:.6f}",
                self.agent,
                f"{self.acc_heldout:.6f}",
                f"{self.acc_trained:.6f}",
                str(self.weakness),
                str(self.bits),
                str(self.terms),
                "true" if self.exact else "false",
                f"{self.elapsed_ms if timing else 0.0:.6f}",
            ]
        )


def write_csv(records: Iterable[EvalRecord], out=None, timing=False) -> str:
    """Render records as CSV.  Timings are zeroed unless `timing` is set,
    since wall-clock values would break byte-for-byte reproducibility."""
    buf = io.StringIO()
    buf.write(CSV_HEADER + "\n")
    for r in records:
        buf.write(r.csv_row(timing) + "\n")
    text = buf.getvalue()
    if out is not None:
        out.write(text)
    return text


def _mean_score(agent, situations, goal_bits):
    situations = sorted(situations, key=PartialAssignment.sort_key)
    if not situations:
        return 0.0
    return statistics.fmean(decide(agent, s, "expected", goal_bits) for s in situations)


def _eval_unit(args):
    t, name, fraction, seed, agents, cfg = args
    if t.n > (BENCH_GREEDY_CAP if cfg.greedy else BENCH_EXACT_CAP):
        raise CapacityError(f"benchmarks are limited to n <= {BENCH_EXACT_CAP} exact / {BENCH_GREEDY_CAP} greedy")
    o = make_ostensive(t, fraction, seed)
    log.info("seed %d fraction %g: %d unlisted reachable goal(s) treated as off", seed, fraction, unlisted_reachable_goals(o))
    goal_bits = bits_from_states(t.goals)
    heldout, trained = o.heldout_situations, o.situations_o

    start = time.perf_counter()
    mimic = extensional_solution(o.goals_o, t.n)
    mimic_ms = (time.perf_counter() - start) * 1000
    intens = None
    intens_ms = 0.0
    if any(a != "mimic" for a in agents):
        start = time.perf_counter()
        intens = intensional_solutions(problem_from_ostensive(o), cfg)[0]
        intens_ms = (time.perf_counter() - start) * 1000

    out = []
    for kind in agents:
        start = time.perf_counter()
        if kind == "mimic":
            agent = Agent("mimic", t.n, mimic)
            stats = (mimic.states().bit_count(), encoding_length(mimic), len(mimic.terms), True)
            train_ms = mimic_ms
        elif kind == "intentional":
            agent = Agent("intentional", t.n, intens.statement, exact=intens.exact)
            stats = (intens.weakness, intens.bits, intens.terms, intens.exact)
            train_ms = intens_ms
        elif kind == "hybrid":
            agent = Agent("hybrid", t.n, intens.statement, lookup=mimic, exact=intens.exact)
            # the hybrid archive carries both statements
            stats = (
                (intens.statement.states() | mimic.states()).bit_count(),
                intens.bits + encoding_length(mimic),
                intens.terms + len(mimic.terms),
                intens.exact,
            )
            train_ms = mimic_ms + intens_ms
        else:
            raise InputError(f"unknown agent kind {kind!r}")
        acc_h = _mean_score(agent, heldout, goal_bits)
        acc_t = _mean_score(agent, trained, goal_bits)
        elapsed = train_ms + (time.perf_counter() - start) * 1000
        out.append(EvalRecord(seed, name, t.n, fraction, kind, acc_h, acc_t, *stats, elapsed_ms=elapsed))
    return out


def _run_units(units, workers):
    if workers and workers > 1 and len(units) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_eval_unit, units))
    else:
        results = [_eval_unit(u) for u in units]
    return [r for chunk in results for r in chunk]


def _check_agents(agents):
    agents = list(agents)
    for a in agents:
        if a not in KINDS:
            raise InputError(f"unknown agent kind {a!r}")
    return agents


def eval_generalisation(
    t: Task,
    fraction: float,
    seeds: Sequence[int],
    agents: Sequence[str] = KINDS,
    cfg: SolverConfig = SolverConfig(),
    name: str = "task",
    workers: int = 1,
) -> list[EvalRecord]:
    """Per seed: draw an ostensive definition, train each agent, score it.

    Scores are the expected-mode accuracy against the full goal set, averaged
    over held-out situations (``acc_heldout``) and trained ones
    (``acc_trained``).
    """
    return sample_efficiency_curve(t, [fraction], seeds, agents, cfg, name, workers)


def sample_efficiency_curve(
    t: Task,
    fractions: Sequence[float],
    seeds: Sequence[int],
    agents: Sequence[str] = KINDS,
    cfg: SolverConfig = SolverConfig(),
    name: str = "task",
    workers: int = 1,
) -> list[EvalRecord]:
    agents = tuple(_check_agents(agents))
    units = [(t, name, f, s, agents, cfg) for s in seeds for f in fractions]
    return _run_units(units, workers)


def summarize(records: Iterable[EvalRecord]):
    """Mean and standard error of held-out accuracy per (fraction, agent)."""
    groups = {}
    for r in records:
        groups.setdefault((r.train_fraction, r.agent), []).append(r.acc_heldout)
    out = {}
    for key, vals in sorted(groups.items()):
        mean = statistics.fmean(vals)
        se = statistics.stdev(vals) / math.sqrt(len(vals)) if len(vals) > 1 else 0.0
        out[key] = (mean, se)
    return out


# -- archive length ----------------------------------------------------------


@dataclass(frozen=True)
class ArchiveReport:
    n: int
    solutions: int
    min_bits: int
    shortest: tuple[Statement, ...]
    max_weakness: int
    weakest: tuple[Statement, ...]
    intensional: tuple[Statement, ...]
    extensional: Statement

    @property
    def intersection(self):
        weakest = set(self.weakest)
        return tuple(c for c in self.shortest if c in weakest)

    @property
    def claim_holds(self):
        return bool(self.intersection)

    @property
    def intensional_is_extensional(self):
        return self.intensional == (self.extensional,)

    def to_record(self) -> dict:
        return {
            "n": self.n,
            "solutions": self.solutions,
            "min_bits": self.min_bits,
            "shortest": [str(c) for c in self.shortest],
            "max_weakness": self.max_weakness,
            "weakest": [str(c) for c in self.weakest],
            "intersection": [str(c) for c in self.intersection],
            "claim_holds": self.claim_holds,
            "intensional": [str(c) for c in self.intensional],
            "extensional": str(self.extensional),
            "extensional_bits": encoding_length(self.extensional),
            "intensional_is_extensional": self.intensional_is_extensional,
        }

    def to_text(self) -> str:
        lines = [
            f"valid solutions within bounds: {self.solutions}",
            f"shortest archive: {self.min_bits} bits ({len(self.shortest)} solution(s))",
        ]
        lines += [f"  {c}" for c in self.shortest]
        lines.append(f"weakness-maximal: weakness {self.max_weakness} ({len(self.weakest)} solution(s))")
        lines += [f"  {c}  [{encoding_length(c)} bits]" for c in self.weakest]
        lines.append(f"intersection nonempty: {str(self.claim_holds).lower()}")
        lines.append(f"extensional: {self.extensional}  [{encoding_length(self.extensional)} bits]")
        lines.append(f"intensional equals extensional: {str(self.intensional_is_extensional).lower()}")
        return "\n".join(lines)


def archive_study(t: Task, max_terms: int = 4, max_literals: int = 3) -> ArchiveReport:
    """Compare the shortest solution archives with the weakest solutions.

    Weakness-maximal means maximal among grounded solutions (every disjunct
    true of some goal); a disjunct that no goal satisfies plays no part in
    reconstructing the goals.
    """
    if t.n > 3:
        raise CapacityError(f"archive study is limited to n <= 3, got {t.n}")
    p = problem_from_task(t)
    sols = enumerate_all_solutions(p, max_terms, max_literals)
    if not sols:
        raise InputError("no valid solution within the given bounds")
    min_bits = min(r.bits for r in sols)
    shortest = tuple(r.statement for r in sols if r.bits == min_bits)
    grounded = [r for r in sols if is_grounded(r.statement, p)]
    max_w = max(r.weakness for r in grounded)
    weakest = tuple(r.statement for r in grounded if r.weakness == max_w)
    intens = tuple(r.statement for r in intensional_solutions(p))
    return ArchiveReport(
        t.n, len(sols), min_bits, shortest, max_w, weakest, intens, extensional_solution(t.goals, t.n)
    )
