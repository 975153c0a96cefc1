import math
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from adequate.polyarith import IntPoly
from adequate.realalg import (AmbiguousRootError, NoRootError, RealAlgError, format_alg,
                              parse_alg, ra_compare, ra_make, ra_rational, ra_sign_at,
                              ra_sqrt, real_roots)

X = sympy.Symbol("x")


def minpoly(expr):
    return [int(c) for c in reversed(sympy.Poly(sympy.minimal_polynomial(expr, X), X).all_coeffs())]


@pytest.fixture(scope="module")
def s2():
    return ra_make(IntPoly((-2, 0, 1)), (1, 2))


@pytest.fixture(scope="module")
def s3():
    return ra_make(IntPoly((-3, 0, 1)), (1, 2))


def test_sum_is_annihilated(s2, s3):
    a = s2 + s3
    assert ra_sign_at(IntPoly((1, 0, -10, 0, 1)), a) == "0"
    assert a.defining.coeffs == tuple(minpoly(sympy.sqrt(2) + sympy.sqrt(3)))
    assert abs(a.approx() - (math.sqrt(2) + math.sqrt(3))) < 1e-12


def test_shared_base_products_collapse(s2):
    assert (s2 * s2).rational == 2
    assert (s2 - s2).is_zero()
    assert (1 / s2).defining.coeffs == (-1, 0, 2)


def test_cross_products(s2, s3):
    assert (s2 * s3).defining.coeffs == (-6, 0, 1)
    assert (s2 * s3) == ra_sqrt(ra_rational(6))


def test_compare_and_sign(s2, s3):
    assert ra_compare(s2, s3) == "<"
    assert ra_compare(s2 * s2, ra_rational(2)) == "="
    assert (s2 - ra_rational(Fraction(141421, 100000))).sign() == 1
    assert (s2 - ra_rational(Fraction(141422, 100000))).sign() == -1


def test_make_errors():
    with pytest.raises(NoRootError):
        ra_make(IntPoly((1, 0, 1)), (-5, 5))
    with pytest.raises(AmbiguousRootError):
        ra_make(IntPoly((-2, 0, 1)), (-5, 5))


def test_endpoint_root_is_moved_off():
    a = ra_make(IntPoly((0, -2, 0, 1)), (0, 2))  # root 0 sits on the left end
    assert a == ra_sqrt(ra_rational(2))


def test_sqrt_of_negative_rejected(s2):
    with pytest.raises(RealAlgError):
        ra_sqrt(ra_rational(1) - s2)


def test_nested_sqrt(s2):
    w = ra_sqrt(s2 - 1)
    assert w * w == s2 - 1
    assert w.defining.coeffs == tuple(minpoly(sympy.sqrt(sympy.sqrt(2) - 1)))


def test_literal_round_trip(s2, s3):
    for v in (s2, s2 + s3, ra_rational(Fraction(-7, 3)), 1 / s2):
        text = format_alg(v)
        back = parse_alg(text)
        assert back == v
        assert format_alg(back) == text
    assert format_alg(ra_rational(2)) == "rat{2}"


@given(st.lists(st.integers(-5, 5), min_size=2, max_size=5))
def test_real_roots_agree_with_sympy(cs):
    P = IntPoly(cs)
    if P.degree < 1:
        return
    ours = real_roots(P)
    theirs = sorted(set(sympy.Poly(sum(c * X**i for i, c in enumerate(cs)), X).real_roots()),
                    key=lambda r: float(r))
    assert len(ours) == len(theirs)
    for a, b in zip(ours, theirs):
        assert abs(a.approx() - float(b)) < 1e-9
        assert ra_sign_at(P, a) == "0"


@given(st.integers(1, 30), st.integers(1, 30), st.sampled_from(["+", "*", "-"]))
def test_field_operations_match_floats(a, b, op):
    x, y = ra_sqrt(ra_rational(a)), ra_sqrt(ra_rational(b))
    z = {"+": x + y, "*": x * y, "-": x - y}[op]
    fz = {"+": math.sqrt(a) + math.sqrt(b), "*": math.sqrt(a * b),
          "-": math.sqrt(a) - math.sqrt(b)}[op]
    assert abs(z.approx() - fz) < 1e-9
    if op == "-":
        assert (z + y) == x


def test_text_interval_is_canonical(s2, s3):
    assert format_alg(-s2) == "alg{poly=[-2, 0, 1]; interval=(-2, -1)}"
    assert (s2 + s3).interval.lo == 3 and (s2 + s3).interval.hi == 4
    assert format_alg(1 / s2) == "alg{poly=[-1, 0, 2]; interval=(0, 1)}"
    # both roots of 8x^2 - 8x + 1 lie in (0, 1), so a finer cell is needed
    low = ra_make(IntPoly((1, -8, 8)), (0, Fraction(1, 2)))
    assert (low.interval.lo, low.interval.hi) == (0, Fraction(1, 2))
