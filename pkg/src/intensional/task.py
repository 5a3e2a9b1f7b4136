"""Assignments, tasks and ostensive definitions.

A task over ``n`` binary variables is a set of situations (partial
assignments in which a decision is taken) and a set of goal states
(complete assignments counting as success).  Every situation must have a
goal that extends it.  Patterns are written as strings over ``{0,1,*}``
where position ``i`` gives the value of variable ``x_i``::

    >>> t = Task.from_patterns(3, situations=["00*", "01*"], goals=["000", "010"])
    >>> validate_task(t)
    []
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable, NamedTuple

from . import _bits
from .errors import (
    DimensionError,
    InputError,
    MergeError,
    PropernessError,
    TaskFileError,
)

OSTENSIVE_RETRIES = 64


@dataclass(frozen=True)
class PartialAssignment:
    """Consistent assignment of bits to a subset of ``n`` variables.

    Stored packed: ``mask`` marks the assigned variables, ``value`` their
    bits.  Equality is equality of the packed pair.
    """

    n: int
    mask: int
    value: int

    def __post_init__(self):
        if self.n < 1:
            raise DimensionError(f"variable count must be positive, got {self.n}")
        if self.mask >> self.n or self.mask < 0:
            raise DimensionError(f"defined indices must lie in [0, {self.n})")
        if self.value & ~self.mask:
            raise InputError("value bits set outside the defined variables")

    @classmethod
    def parse(cls, text: str) -> PartialAssignment:
        mask = value = 0
        for i, ch in enumerate(text):
            if ch == "1":
                mask |= 1 << i
                value |= 1 << i
            elif ch == "0":
                mask |= 1 << i
            elif ch != "*":
                raise InputError(f"bad pattern character {ch!r} in {text!r}")
        return cls(len(text), mask, value)

    @classmethod
    def from_values(cls, n: int, values: dict[int, int]) -> PartialAssignment:
        mask = value = 0
        for i, bit in values.items():
            if not 0 <= i < n:
                raise DimensionError(f"index {i} outside [0, {n})")
            mask |= 1 << i
            if bit:
                value |= 1 << i
        return cls(n, mask, value)

    @classmethod
    def complete(cls, n: int, state: int) -> PartialAssignment:
        return cls(n, _bits.full_mask(n), state)

    @property
    def defined(self) -> frozenset[int]:
        return frozenset(_bits.iter_bits(self.mask))

    @property
    def values(self) -> dict[int, int]:
        return {i: (self.value >> i) & 1 for i in _bits.iter_bits(self.mask)}

    @property
    def is_complete(self) -> bool:
        return self.mask == _bits.full_mask(self.n)

    @property
    def pattern(self) -> str:
        out = []
        for i in range(self.n):
            if not (self.mask >> i) & 1:
                out.append("*")
            else:
                out.append("1" if (self.value >> i) & 1 else "0")
        return "".join(out)

    def sort_key(self):
        # the pattern read as a numeral; for complete states this is numeric order
        return self.pattern

    def __str__(self):
        return self.pattern

    def __repr__(self):
        return f"PartialAssignment({self.pattern!r})"


def _same_n(a, b):
    if a.n != b.n:
        raise DimensionError(f"variable counts differ: {a.n} vs {b.n}")


def is_subsequence(a: PartialAssignment, b: PartialAssignment) -> bool:
    """True when ``b`` extends ``a`` without conflict."""
    _same_n(a, b)
    return _bits.contains((a.mask, a.value), (b.mask, b.value))


def completion_states(n, mask, value):
    free = _bits.full_mask(n) & ~mask
    for sub in _bits.submasks(free):
        yield value | sub


def completions(s: PartialAssignment, cap: int = _bits.ENUMERATION_CAP) -> frozenset[PartialAssignment]:
    _bits.check_cap(s.n, cap)
    full = _bits.full_mask(s.n)
    return frozenset(PartialAssignment(s.n, full, z) for z in completion_states(s.n, s.mask, s.value))


def reach_states(situations, n):
    """State set (bitset) of every completion of every situation."""
    _bits.check_cap(n)
    bits = 0
    for s in situations:
        if s.n != n:
            raise DimensionError(f"situation {s} has {s.n} variables, expected {n}")
        bits |= _bits.cube_states(n, s.mask, s.value)
    return bits


def reach(situations: Iterable[PartialAssignment], n: int) -> frozenset[PartialAssignment]:
    bits = reach_states(situations, n)
    return states_from_bits(n, bits)


def states_from_bits(n, bits):
    full = _bits.full_mask(n)
    return frozenset(PartialAssignment(n, full, z) for z in _bits.iter_bits(bits))


def bits_from_states(states):
    bits = 0
    for z in states:
        bits |= 1 << z.value
    return bits


@dataclass(frozen=True)
class Task:
    """Situations and goal states over ``n`` variables.

    Construction only checks variable counts.  The existence condition
    (every situation has a goal supersequence) and goal completeness are
    reported by `validate_task` so that invalid inputs can be diagnosed.
    """

    n: int
    situations: frozenset[PartialAssignment]
    goals: frozenset[PartialAssignment]

    def __post_init__(self):
        object.__setattr__(self, "situations", frozenset(self.situations))
        object.__setattr__(self, "goals", frozenset(self.goals))
        for z in self.situations | self.goals:
            if z.n != self.n:
                raise DimensionError(f"{z} has {z.n} variables, expected {self.n}")

    @classmethod
    def from_patterns(cls, n, situations=(), goals=()):
        return cls(
            n,
            frozenset(PartialAssignment.parse(p) for p in situations),
            frozenset(PartialAssignment.parse(p) for p in goals),
        )

    def sorted_situations(self):
        return sorted(self.situations, key=PartialAssignment.sort_key)

    def sorted_goals(self):
        return sorted(self.goals, key=PartialAssignment.sort_key)


class Violation(NamedTuple):
    item: PartialAssignment
    kind: str  # "situation" or "goal"
    reason: str

    def __str__(self):
        return f"{self.kind} {self.item}: {self.reason}"


def validate_task(t: Task) -> list[Violation]:
    """Return every violated task invariant; an empty list means valid."""
    out = []
    for g in t.sorted_goals():
        if not g.is_complete:
            out.append(Violation(g, "goal", "goal is not a complete assignment"))
    for s in t.sorted_situations():
        if not any(is_subsequence(s, g) for g in t.goals):
            out.append(Violation(s, "situation", "no goal supersequence"))
    return out


def check_task(t: Task) -> Task:
    problems = validate_task(t)
    if problems:
        raise InputError("invalid task: " + "; ".join(map(str, problems)))
    return t


def _covered(situations, goals):
    return frozenset(s for s in situations if any(is_subsequence(s, g) for g in goals))


@dataclass(frozen=True)
class OstensiveDefinition:
    """A proper training subsample of a task's goals.

    ``situations_o`` is derived: the task situations that some training
    goal extends.  At least one task situation must be left uncovered.
    """

    task: Task
    goals_o: frozenset[PartialAssignment]
    situations_o: frozenset[PartialAssignment] = field(default=None)

    def __post_init__(self):
        goals_o = frozenset(self.goals_o)
        object.__setattr__(self, "goals_o", goals_o)
        derived = _covered(self.task.situations, goals_o)
        if self.situations_o is None:
            object.__setattr__(self, "situations_o", derived)
        elif frozenset(self.situations_o) != derived:
            raise InputError("situations_o does not match the goals it was derived from")
        else:
            object.__setattr__(self, "situations_o", derived)
        if not goals_o <= self.task.goals:
            stray = sorted(goals_o - self.task.goals, key=PartialAssignment.sort_key)
            raise InputError(f"training goals outside the task goals: {', '.join(map(str, stray))}")
        if goals_o == self.task.goals or derived == self.task.situations:
            raise PropernessError("ostensive definition covers every situation of the task")

    @property
    def heldout_situations(self):
        return self.task.situations - self.situations_o


def make_ostensive(t: Task, fraction: float, seed: int) -> OstensiveDefinition:
    """Sample ``ceil(fraction * |G|)`` goals without replacement.

    Redraws (at most 64 times, same generator) until some situation is left
    without a training goal.
    """
    if not 0 < fraction < 1:
        raise InputError(f"fraction must lie in (0, 1), got {fraction}")
    goals = t.sorted_goals()
    if len(goals) < 2:
        raise PropernessError("need at least two goals to hold one out")
    k = max(1, math.ceil(fraction * len(goals) - 1e-9))
    if k >= len(goals):
        raise PropernessError(f"fraction {fraction} selects all {len(goals)} goals")
    rng = random.Random(seed)
    for _ in range(OSTENSIVE_RETRIES):
        chosen = frozenset(rng.sample(goals, k))
        if _covered(t.situations, chosen) != t.situations:
            return OstensiveDefinition(t, chosen)
    raise PropernessError(f"no proper draw of {k} goals in {OSTENSIVE_RETRIES} attempts")


def merge_tasks(t1: Task, t2: Task) -> Task:
    if t1.n != t2.n:
        raise DimensionError(f"variable counts differ: {t1.n} vs {t2.n}")
    merged = Task(t1.n, t1.situations | t2.situations, t1.goals | t2.goals)
    problems = validate_task(merged)
    if problems:
        raise MergeError("merged task is invalid: " + "; ".join(map(str, problems)))
    return merged


def subdivide_task(t: Task, keep: Callable[[PartialAssignment], bool]) -> Task:
    situations = frozenset(s for s in t.situations if keep(s))
    goals = frozenset(g for g in t.goals if any(is_subsequence(s, g) for s in situations))
    return Task(t.n, situations, goals)


# -- task files --------------------------------------------------------------


def parse_task(text: str, validate: bool = True) -> Task:
    """Parse the line-oriented task format.

    ``vars <n>`` comes first, followed by ``goal <pattern>`` and
    ``situation <pattern>`` lines.  ``#`` starts a comment.
    """
    n = None
    situations, goals = {}, {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if n is None:
            if len(parts) != 2 or parts[0] != "vars":
                raise TaskFileError("expected 'vars <n>' first", lineno)
            try:
                n = int(parts[1])
            except ValueError:
                raise TaskFileError(f"bad variable count {parts[1]!r}", lineno) from None
            if n < 1:
                raise TaskFileError("variable count must be positive", lineno)
            continue
        if len(parts) != 2 or parts[0] not in ("goal", "situation"):
            raise TaskFileError(f"expected 'goal <pattern>' or 'situation <pattern>', got {line!r}", lineno)
        kind, pat = parts
        if len(pat) != n:
            raise TaskFileError(f"pattern {pat!r} has length {len(pat)}, expected {n}", lineno)
        try:
            z = PartialAssignment.parse(pat)
        except InputError as exc:
            raise TaskFileError(str(exc), lineno) from None
        if kind == "goal":
            if "*" in pat:
                raise TaskFileError(f"goal {pat} must be a complete assignment", lineno)
            goals.setdefault(z, lineno)
        else:
            situations.setdefault(z, lineno)
    if n is None:
        raise TaskFileError("missing 'vars <n>' line")
    task = Task(n, frozenset(situations), frozenset(goals))
    if validate:
        problems = validate_task(task)
        if problems:
            lines = [(situations if v.kind == "situation" else goals)[v.item] for v in problems]
            detail = "; ".join(f"line {ln}: {v}" for ln, v in zip(lines, problems))
            raise TaskFileError(f"invalid task: {detail}", lines[0] if len(lines) == 1 else None)
    return task


def load_task(path) -> Task:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise TaskFileError(f"cannot read {path}: {exc.strerror or exc}") from None
    return parse_task(text)


def dump_task(t: Task) -> str:
    lines = [f"vars {t.n}"]
    lines += [f"goal {g}" for g in t.sorted_goals()]
    lines += [f"situation {s}" for s in t.sorted_situations()]
    return "\n".join(lines) + "\n"
