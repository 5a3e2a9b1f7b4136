import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import pa, pats
from intensional import (
    CapacityError,
    ContradictionError,
    ScopeError,
    Statement,
    StatementSyntaxError,
    Term,
    encoding_length,
    evaluate,
    extension,
    parse_statement,
    print_statement,
    split_symbols,
    term_weakness,
    weakness,
)
from oracles import all_states, naive_eval


def S(n, *patterns):
    return Statement.from_patterns(n, patterns)


@st.composite
def statements(draw, max_n=6, max_terms=5):
    n = draw(st.integers(1, max_n))
    pats_ = draw(st.lists(st.text(alphabet="01*", min_size=n, max_size=n), max_size=max_terms))
    return n, pats_


def test_term_basics():
    t = Term.from_pattern("0*0")
    assert [str(l) for l in t.literals] == ["x0=0", "x2=0"]
    assert str(t) == "x0=0 & x2=0"
    assert str(Term.true(3)) == "TRUE"
    with pytest.raises(ContradictionError):
        Term.from_literals(3, [(1, 0), (1, 1)])
    with pytest.raises(ValueError):
        Term.from_literals(3, [(1, 0), (1, 0)])
    with pytest.raises(ScopeError):
        Term.from_literals(3, [(3, 0)])


def test_canonical_order():
    c = S(3, "111", "*00", "0*0")
    assert [t.pattern for t in c.terms] == ["0*0", "*00", "111"]
    assert [t.pattern for t in S(3, "1*1", "*00", "0*0").terms] == ["0*0", "1*1", "*00"]


def test_subsumption_pruning():
    c = S(3, "0*0", "000", "010", "0*0")
    assert [t.pattern for t in c.terms] == ["0*0"]
    assert S(3, "***", "101") == Statement.true(3)


@pytest.mark.parametrize(
    "c, z, expected",
    [
        (Statement.false(3), "010", False),
        (S(3, "***", "101"), "010", True),
        (S(3, "0*0", "*00", "111"), "010", True),
        (S(3, "0*0", "*00", "111"), "110", False),
    ],
)
def test_evaluate(c, z, expected):
    assert evaluate(c, pa(z)) is expected


def test_evaluate_rejects_partial():
    with pytest.raises(ValueError):
        evaluate(S(3, "0*0"), pa("01*"))


@settings(max_examples=300)
@given(statements(max_n=8), st.data())
def test_evaluate_matches_naive(stmt, data):
    n, patterns = stmt
    c = Statement.from_patterns(n, patterns)
    z = data.draw(st.text(alphabet="01", min_size=n, max_size=n))
    assert evaluate(c, pa(z)) == naive_eval(patterns, z)


def test_extension_and_weakness():
    assert weakness(Statement.true(3)) == 8
    assert weakness(S(3, "0*0")) == 2
    assert pats(extension(S(3, "0*0", "*00", "111"))) == {"000", "010", "100", "111"}
    with pytest.raises(CapacityError):
        weakness(Statement.true(25))


@settings(max_examples=150)
@given(statements(max_n=6))
def test_extension_is_brute_force(stmt):
    n, patterns = stmt
    c = Statement.from_patterns(n, patterns)
    assert pats(extension(c)) == {z for z in all_states(n) if naive_eval(patterns, z)}


def test_term_weakness():
    assert term_weakness(Term.true(4)) == 16
    assert term_weakness(Term.from_pattern("111")) == 1
    assert term_weakness(Term.from_pattern("1*1"), 3) == 2


@settings(max_examples=150)
@given(statements(max_n=6), statements(max_n=6))
def test_connectives_weaken_and_strengthen(s1, s2):
    n, p1 = s1
    c1 = Statement.from_patterns(n, p1)
    c2 = Statement.from_patterns(n, [p[:n].ljust(n, "*") for p in s2[1]])
    assert weakness(c1 | c2) >= max(weakness(c1), weakness(c2))
    for a in c1.terms:
        for b in c2.terms:
            try:
                ab = a & b
            except ContradictionError:
                continue
            assert term_weakness(ab) <= min(term_weakness(a), term_weakness(b))


def test_encoding_length():
    assert encoding_length(Statement.false(3)) == 1
    assert encoding_length(S(3, "0*0")) == 7
    assert encoding_length(S(3, "000", "010", "100", "111")) == 40
    assert encoding_length(S(3, "0*0", "*00", "111")) == 24
    assert encoding_length(Statement.true(3)) == 1


@settings(max_examples=150)
@given(statements(max_n=8), st.data())
def test_encoding_length_monotone(stmt, data):
    n, patterns = stmt
    c = Statement.from_patterns(n, patterns)
    base = encoding_length(c)
    # adding a literal to a term
    for t in c.terms:
        free = [i for i in range(n) if not (t.mask >> i) & 1]
        if free:
            i = data.draw(st.sampled_from(free))
            longer = Term(n, t.mask | (1 << i), t.value)
            assert encoding_length(Statement(n, (longer,))) > encoding_length(Statement(n, (t,)))
    # adding a term that survives canonicalisation; FALSE and TRUE both cost 1
    if not c.terms:
        return
    extra = Term.from_pattern(data.draw(st.text(alphabet="01*", min_size=n, max_size=n)))
    bigger = Statement(n, c.terms + (extra,))
    if len(bigger.terms) == len(c.terms) + 1:
        assert encoding_length(bigger) > base


@settings(max_examples=150)
@given(statements(max_n=6, max_terms=8))
def test_canonicalisation_idempotent_and_extension_preserving(stmt):
    n, patterns = stmt
    c = Statement.from_patterns(n, patterns)
    assert Statement(n, c.terms) == c
    raw = {z for z in all_states(n) if naive_eval(patterns, z)}
    assert pats(extension(c)) == raw


def test_parse_examples():
    assert parse_statement("x0=0 & x2=0 | x1=0 & x2=0", 3) == S(3, "0*0", "*00")
    assert parse_statement("  x2=0&x0=0 ", 3) == S(3, "0*0")
    assert parse_statement("FALSE", 3) == Statement.false(3)
    assert parse_statement("TRUE | x1=1", 3) == Statement.true(3)
    assert parse_statement("x1=0 & x1=0", 3) == S(3, "*0*")


def test_print():
    assert print_statement(S(3, "111", "0*0", "*00")) == "x0=0 & x2=0 | x1=0 & x2=0 | x0=1 & x1=1 & x2=1"
    assert print_statement(Statement.false(2)) == "FALSE"
    assert print_statement(Statement.true(2)) == "TRUE"


@pytest.mark.parametrize(
    "text, exc, offset",
    [
        ("x5=1", ScopeError, 0),
        ("x0=0 & x5=1", ScopeError, 7),
        ("x0=1 & x0=0", ContradictionError, 7),
        ("x0=1 &", StatementSyntaxError, 6),
        ("x0=2", StatementSyntaxError, 0),
        ("", StatementSyntaxError, 0),
        ("FALSE | x0=1", StatementSyntaxError, 6),
        ("TRUE & x0=1", StatementSyntaxError, 5),
        ("x0=1 | | x1=0", StatementSyntaxError, 7),
        ("é x0=1", StatementSyntaxError, 0),
        ("x0=1 é", StatementSyntaxError, 5),
    ],
)
def test_parse_errors(text, exc, offset):
    with pytest.raises(exc) as err:
        parse_statement(text, 3)
    assert err.value.offset == offset


def test_byte_offsets_count_utf8():
    with pytest.raises(StatementSyntaxError) as err:
        parse_statement("x0=1 | é", 3)
    assert err.value.offset == 7
    with pytest.raises(StatementSyntaxError) as err:
        parse_statement("x0=1 é |", 3)
    assert err.value.offset == 5


def test_split_symbols():
    assert split_symbols(Statement.false(3)) == []
    [(t1, e1), (t2, e2)] = split_symbols(S(3, "0*0", "111"))
    assert (t1.pattern, pats(e1)) == ("0*0", {"000", "010"})
    assert (t2.pattern, pats(e2)) == ("111", {"111"})
    c = S(3, "1**")
    [(t, e)] = split_symbols(c)
    assert e == extension(c)


def test_parse_print_round_trip_sample():
    rng = random.Random(5)
    for _ in range(200):
        n = rng.randint(1, 10)
        terms = ["".join(rng.choice("01**") for _ in range(n)) for _ in range(rng.randint(0, 5))]
        c = Statement.from_patterns(n, terms)
        assert parse_statement(print_statement(c), n) == c
