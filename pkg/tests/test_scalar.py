import math

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from dualperron.errors import DivisionUndefinedError, DualOverflowError
from dualperron.scalar import (
    EPS,
    DualNumber,
    Ordering,
    add,
    compare,
    conjugate,
    divide,
    magnitude,
    mul,
)

# magnitudes kept in [1e-6, 1e6] so that no intermediate product reaches the subnormal range
finite = st.floats(min_value=-1e6, max_value=1e6, allow_nan=False, allow_infinity=False).filter(
    lambda x: x == 0.0 or abs(x) >= 1e-6
)
duals = st.builds(DualNumber, finite, finite)
tie_prone = st.builds(DualNumber, st.sampled_from([-1.0, 0.0, 1.0, 2.5]), st.sampled_from([-1.0, 0.0, 3.0]))


def D(s, d=0.0):
    return DualNumber(s, d)


def size(a):
    return abs(a.s) + abs(a.d)


def close(a, b, scale, rtol):
    return abs(a.s - b.s) <= rtol * scale and abs(a.d - b.d) <= rtol * scale


# -- worked examples -----------------------------------------------------------


@pytest.mark.parametrize(
    "a, b, expected",
    [((1, 2), (3, -5), (4, -3)), ((0, 0), (7.5, -2), (7.5, -2)), ((1, 1), (-1, -1), (0, 0))],
)
def test_add_examples(a, b, expected):
    assert add(D(*a), D(*b)) == D(*expected)


@pytest.mark.parametrize(
    "a, b, expected",
    [((1, 1), (2, 3), (2, 5)), ((0, 1), (0, 1), (0, 0)), ((2, 0), (3.5, -4), (7, -8))],
)
def test_mul_examples(a, b, expected):
    assert mul(D(*a), D(*b)) == D(*expected)


@pytest.mark.parametrize("a, expected", [((-2, 3), (2, -3)), ((0, -4), (4, 0)), ((5, 0), (5, 0))])
def test_magnitude_examples(a, expected):
    assert magnitude(D(*a)) == D(*expected)


@pytest.mark.parametrize(
    "a, b, expected",
    [((1, -100), (0.5, 100), Ordering.GREATER), ((1, 2), (1, 3), Ordering.LESS), ((1, 2), (1, 2), Ordering.EQUAL)],
)
def test_compare_examples(a, b, expected):
    assert compare(D(*a), D(*b)) is expected


def test_divide_examples():
    assert divide(D(1, 2), D(2, 1)) == D(0.5, 0.75)
    assert divide(D(3.25, -1.5), D(1, 0)) == D(3.25, -1.5)
    q = divide(D(0, 3), D(0, 2))
    assert q == D(1.5, 0)
    assert q.unique is False
    assert divide(D(1, 2), D(2, 1)).unique is True


@pytest.mark.parametrize("a, b", [((1, 0), (0, 2)), ((0, 1), (0, 0)), ((1, 1), (0, 0))])
def test_divide_undefined(a, b):
    with pytest.raises(DivisionUndefinedError):
        divide(D(*a), D(*b))


@pytest.mark.parametrize("a", [(1, 2), (0, 0), (-3, 4)])
def test_conjugate_is_identity(a):
    assert conjugate(D(*a)) == D(*a)


def test_construction_rejects_non_finite():
    for bad in [(math.nan, 0), (0, math.inf), (-math.inf, 1)]:
        with pytest.raises(ValueError):
            DualNumber(*bad)


def test_overflow_raises():
    with pytest.raises(DualOverflowError):
        mul(D(1e200, 0), D(1e200, 0))
    with pytest.raises(DualOverflowError):
        add(D(1.7e308, 0), D(1.7e308, 0))


def test_operators_and_order_follow_dual_rules():
    a, b = D(1, 2), D(1, 3)
    assert a < b and b > a and a <= a
    assert a + 1 == D(2, 2)
    assert 2 * a == D(2, 4)
    assert a - b == D(0, -1)
    assert EPS * EPS == D(0, 0)
    assert (a / b) * b == a
    assert abs(D(-2, 3)) == D(2, -3)
    assert sorted([D(1, 5), D(0.5, 100), D(1, -1)]) == [D(0.5, 100), D(1, -1), D(1, 5)]


# -- properties -----------------------------------------------------------------


@given(duals, duals)
def test_commutativity(a, b):
    assert add(a, b) == add(b, a)
    assert mul(a, b) == mul(b, a)


@given(duals, duals, duals)
def test_associativity_and_distributivity(a, b, c):
    scale = size(a) + size(b) + size(c)
    assert close(add(add(a, b), c), add(a, add(b, c)), scale, 1e-14)
    pscale = size(a) * size(b) * size(c)
    assert close(mul(mul(a, b), c), mul(a, mul(b, c)), pscale, 1e-14)
    dscale = size(a) * (size(b) + size(c))
    assert close(mul(a, add(b, c)), add(mul(a, b), mul(a, c)), dscale, 1e-14)


@given(finite, finite, finite, finite)
def test_eps_squared_is_zero(x, y, u, v):
    assert mul(D(0, x), D(0, y)) == D(0, 0)
    assume(u != 0 or v != 0)
    assert mul(D(0, u), D(0, v)).s == 0.0


@given(duals, duals)
def test_division_roundtrip(a, b):
    assume(abs(b.s) > 1e-3)
    q = divide(a, b)
    back = mul(q, b)
    scale = max(abs(a.s), abs(a.d), abs(a.s * b.d / b.s), 1e-300)
    assert close(back, a, scale, 1e-12)


@given(st.one_of(duals, tie_prone), st.one_of(duals, tie_prone), st.one_of(duals, tie_prone))
def test_order_total_and_transitive(a, b, c):
    ab, ba = compare(a, b), compare(b, a)
    assert ab.value == -ba.value
    assert [a < b, a == b, a > b].count(True) == 1
    if compare(a, b) is not Ordering.GREATER and compare(b, c) is not Ordering.GREATER:
        assert compare(a, c) is not Ordering.GREATER


@given(duals, duals)
def test_magnitude_multiplicative(a, b):
    assume(a.s != 0 and b.s != 0)
    assert close(magnitude(mul(a, b)), mul(magnitude(a), magnitude(b)), size(a) * size(b), 1e-14)


@given(duals)
def test_magnitude_nonnegative(a):
    assert compare(magnitude(a), D(0, 0)) is not Ordering.LESS
