"""Canonical DNF statements.

The language is flat disjunctive normal form over literals ``x<i>=<bit>``::

    statement := 'FALSE' | term ('|' term)*
    term      := 'TRUE'  | literal ('&' literal)*
    literal   := 'x' digits '=' ('0' | '1')

A `Statement` is a canonical set of `Term` disjuncts: duplicates are removed,
terms subsumed by a weaker term are pruned, and the rest are ordered by
literal count, then by their ``(var, polarity)`` sequences.  Weakness is the
number of complete states a statement is true of.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable

from . import _bits
from .errors import (
    ContradictionError,
    DimensionError,
    InputError,
    ScopeError,
    StatementSyntaxError,
)
from .task import PartialAssignment, states_from_bits


@dataclass(frozen=True, order=True)
class Literal:
    var: int
    polarity: int

    def __str__(self):
        return f"x{self.var}={self.polarity}"


@dataclass(frozen=True)
class Term:
    """Conjunction of literals, stored as a packed cube."""

    n: int
    mask: int
    value: int

    def __post_init__(self):
        if self.mask >> self.n or self.mask < 0:
            raise ScopeError(f"term uses a variable outside [0, {self.n})")
        if self.value & ~self.mask:
            raise InputError("value bits set outside the term's variables")

    @classmethod
    def true(cls, n):
        return cls(n, 0, 0)

    @classmethod
    def from_literals(cls, n: int, literals: Iterable[Literal | tuple[int, int]]) -> Term:
        mask = value = 0
        for lit in literals:
            var, pol = lit
            if not 0 <= var < n:
                raise ScopeError(f"variable x{var} outside [0, {n})")
            if (mask >> var) & 1:
                if ((value >> var) & 1) != pol:
                    raise ContradictionError(f"contradictory literals: x{var} asserted both 0 and 1")
                raise InputError(f"duplicate literal x{var}={pol}")
            mask |= 1 << var
            if pol:
                value |= 1 << var
        return cls(n, mask, value)

    @classmethod
    def from_pattern(cls, text: str) -> Term:
        z = PartialAssignment.parse(text)
        return cls(z.n, z.mask, z.value)

    @classmethod
    def from_assignment(cls, z: PartialAssignment) -> Term:
        return cls(z.n, z.mask, z.value)

    @property
    def literals(self) -> tuple[Literal, ...]:
        return tuple(Literal(i, (self.value >> i) & 1) for i in _bits.iter_bits(self.mask))

    @property
    def size(self):
        return self.mask.bit_count()

    @property
    def pattern(self):
        return PartialAssignment(self.n, self.mask, self.value).pattern

    def assignment(self):
        return PartialAssignment(self.n, self.mask, self.value)

    def sort_key(self):
        return (self.size, tuple((lit.var, lit.polarity) for lit in self.literals))

    def matches(self, z: PartialAssignment) -> bool:
        return z.value & self.mask == self.value

    def subsumes(self, other: Term) -> bool:
        """True when every state satisfying `other` satisfies this term."""
        return _bits.contains((self.mask, self.value), (other.mask, other.value))

    def states(self):
        return _bits.cube_states(self.n, self.mask, self.value)

    def __and__(self, other: Term) -> Term:
        if self.n != other.n:
            raise DimensionError("terms over different variable counts")
        if (self.mask & other.mask) & (self.value ^ other.value):
            raise ContradictionError(f"{self} and {other} conflict")
        return Term(self.n, self.mask | other.mask, self.value | other.value)

    def __str__(self):
        if not self.mask:
            return "TRUE"
        return " & ".join(map(str, self.literals))

    def __repr__(self):
        return f"Term({self.pattern!r})"


def _canonical_terms(terms):
    kept = []
    for t in sorted(set(terms), key=Term.sort_key):
        if not any(k.subsumes(t) for k in kept):
            kept.append(t)
    return tuple(kept)


@dataclass(frozen=True)
class Statement:
    n: int
    terms: tuple[Term, ...] = ()

    def __post_init__(self):
        terms = tuple(self.terms)
        for t in terms:
            if t.n != self.n:
                raise DimensionError(f"term {t!r} has {t.n} variables, expected {self.n}")
        object.__setattr__(self, "terms", _canonical_terms(terms))

    @classmethod
    def false(cls, n):
        return cls(n, ())

    @classmethod
    def true(cls, n):
        return cls(n, (Term.true(n),))

    @classmethod
    def from_patterns(cls, n, patterns):
        return cls(n, tuple(Term.from_pattern(p) for p in patterns))

    def sort_key(self):
        return tuple(t.sort_key() for t in self.terms)

    def evaluate(self, z: PartialAssignment) -> bool:
        return evaluate(self, z)

    def states(self):
        """Extension as a state bitset."""
        bits = 0
        for t in self.terms:
            bits |= t.states()
        return bits

    def __or__(self, other: Statement) -> Statement:
        if self.n != other.n:
            raise DimensionError("statements over different variable counts")
        return Statement(self.n, self.terms + other.terms)

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    def __str__(self):
        return print_statement(self)

    def __repr__(self):
        return f"Statement({self.n}, {' | '.join(t.pattern for t in self.terms) or 'FALSE'})"


def evaluate(c: Statement, z: PartialAssignment) -> bool:
    if c.n != z.n:
        raise DimensionError(f"statement has {c.n} variables, state has {z.n}")
    if not z.is_complete:
        raise InputError(f"statements are evaluated on complete states, got {z}")
    return any(t.matches(z) for t in c.terms)


def extension_states(c: Statement, cap: int = _bits.ENUMERATION_CAP) -> int:
    _bits.check_cap(c.n, cap)
    return c.states()


def extension(c: Statement, cap: int = _bits.ENUMERATION_CAP) -> frozenset[PartialAssignment]:
    return states_from_bits(c.n, extension_states(c, cap))


def weakness(c: Statement, cap: int = _bits.ENUMERATION_CAP) -> int:
    return extension_states(c, cap).bit_count()


def term_weakness(t: Term, n: int | None = None) -> int:
    n = t.n if n is None else n
    return 1 << (n - t.size)


def encoding_length(c: Statement) -> int:
    """Bits for the fixed-width encoding of a statement.

    Each term costs one continuation bit; each literal a polarity bit plus
    ``ceil(log2 n)`` index bits.  FALSE costs a single bit.
    """
    if not c.terms:
        return 1
    per_literal = 1 + _bits.ceil_log2(c.n)
    return sum(1 + t.size * per_literal for t in c.terms)


def split_symbols(c: Statement, cap: int = _bits.ENUMERATION_CAP):
    """One ``(term, extension)`` pair per disjunct, in canonical order."""
    _bits.check_cap(c.n, cap)
    return [(t, states_from_bits(c.n, t.states())) for t in c.terms]


# -- surface syntax ----------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<lit>x(?P<var>\d+)\s*=\s*(?P<bit>[01]))|(?P<kw>TRUE|FALSE)|(?P<op>[&|]))")


def _byte_offset(text, pos):
    return len(text[:pos].encode("utf-8"))


def _tokens(text):
    pos = 0
    end = len(text.rstrip())
    while pos < end:
        m = _TOKEN.match(text, pos)
        if not m:
            start = pos + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise StatementSyntaxError(f"unexpected input {text[start:start + 8]!r}", _byte_offset(text, start))
        start = m.start(m.lastgroup)
        if m.group("lit"):
            yield ("lit", (int(m.group("var")), int(m.group("bit"))), start)
        elif m.group("kw"):
            yield (m.group("kw"), None, start)
        else:
            yield (m.group("op"), None, start)
        pos = m.end()
    yield ("end", None, _byte_offset(text, len(text)))


def parse_statement(text: str, n: int) -> Statement:
    """Parse DSL text into a canonical statement over ``n`` variables.

    Repeated identical literals inside one term collapse; conflicting ones
    raise `ContradictionError`.
    """
    toks = list(_tokens(text))
    i = 0

    def offset(tok):
        kind, _, pos = tok
        return pos if kind == "end" else _byte_offset(text, pos)

    def expect_term():
        nonlocal i
        kind, val, _ = toks[i]
        if kind == "TRUE":
            i += 1
            return Term.true(n)
        if kind != "lit":
            raise StatementSyntaxError("expected a literal or TRUE", offset(toks[i]))
        mask = value = 0
        while True:
            kind, val, _ = toks[i]
            if kind != "lit":
                raise StatementSyntaxError("expected a literal", offset(toks[i]))
            var, bit = val
            if var >= n:
                raise ScopeError(f"variable x{var} outside [0, {n})", offset(toks[i]))
            if (mask >> var) & 1 and ((value >> var) & 1) != bit:
                raise ContradictionError(f"contradictory literals: x{var} asserted both 0 and 1", offset(toks[i]))
            mask |= 1 << var
            value |= bit << var
            i += 1
            if toks[i][0] != "&":
                return Term(n, mask, value)
            i += 1

    if n < 1:
        raise DimensionError("variable count must be positive")
    if toks[0][0] == "FALSE":
        if toks[1][0] != "end":
            raise StatementSyntaxError("FALSE must stand alone", offset(toks[1]))
        return Statement.false(n)
    terms = [expect_term()]
    while toks[i][0] == "|":
        i += 1
        terms.append(expect_term())
    if toks[i][0] != "end":
        raise StatementSyntaxError(f"unexpected {toks[i][0]!r}", offset(toks[i]))
    return Statement(n, tuple(terms))


def print_statement(c: Statement) -> str:
    if not c.terms:
        return "FALSE"
    return " | ".join(str(t) for t in c.terms)
