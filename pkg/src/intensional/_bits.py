# Packed-state helpers.
#
# A cube (partial assignment or term) is a pair (mask, value) of ints over n
# variables: bit i of `mask` is set when x_i is assigned, and bit i of
# `value` then holds its bit.  A complete state is identified with its value
# int.  A *state set* is an int bitset of width 2**n whose bit z is set when
# the complete state with value z belongs to the set.

from functools import lru_cache

from .errors import CapacityError

ENUMERATION_CAP = 24


def check_cap(n, cap=ENUMERATION_CAP):
    if n > cap:
        raise CapacityError(f"n={n} exceeds the enumeration cap of {cap}")


def full_mask(n):
    return (1 << n) - 1


def submasks(mask):
    """Yield every submask of `mask`, including 0 and `mask` itself."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def iter_bits(bitset):
    while bitset:
        low = bitset & -bitset
        yield low.bit_length() - 1
        bitset ^= low


@lru_cache(maxsize=None)
def _var_rows(n):
    # rows[i] = state set of all z with x_i = 1
    width = 1 << n
    rows = []
    for i in range(n):
        block = 1 << i
        period = block << 1
        unit = ((1 << block) - 1) << block
        repeat = ((1 << width) - 1) // ((1 << period) - 1)
        rows.append(unit * repeat)
    return tuple(rows)


def universe(n):
    return (1 << (1 << n)) - 1


def cube_states(n, mask, value):
    """State set of all completions of the cube (mask, value)."""
    bits = universe(n)
    rows = _var_rows(n)
    for i in iter_bits(mask):
        if (value >> i) & 1:
            bits &= rows[i]
        else:
            bits &= ~rows[i]
    return bits


def contains(outer, inner):
    """True when cube `inner` (as (mask, value)) lies inside cube `outer`."""
    om, ov = outer
    im, iv = inner
    return om & ~im == 0 and iv & om == ov


def ceil_log2(n):
    return (n - 1).bit_length() if n > 1 else 0
