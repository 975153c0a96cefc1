from fractions import Fraction

import pytest

from adequate.adequacy import verify_symbolic
from adequate.builders import (BuildError, SizeGuardError, build_padic_thm7, build_real_chain,
                               build_real_proof1, build_real_proof2, choose_alpha_beta,
                               padic_build_spec, proof2_recover, real_build_spec,
                               transform_proof2)
from adequate.formats import format_set, parse_set
from adequate.padic import PrecisionError, padic_roots
from adequate.polyarith import IntPoly
from adequate.realalg import ra_make, ra_rational, ra_sign_at, ra_sqrt


@pytest.fixture(scope="module")
def s2():
    return ra_sqrt(ra_rational(2))


def test_alpha_beta_isolate_the_root(s2):
    a, b = choose_alpha_beta(s2)
    assert (a, b) == (1, 2)
    assert ra_rational(a) < s2 < ra_rational(b)
    cube = ra_make(IntPoly((-2, 0, 0, 1)), (1, 2))
    a, b = choose_alpha_beta(cube)
    assert a < 1.26 < b


def test_proof1_set_is_adequate(s2):
    A = build_real_proof1(s2)
    assert len(A) == 67 and A.r == s2
    assert verify_symbolic(A).adequate


def test_proof1_size_guard(s2):
    with pytest.raises(SizeGuardError, match="chain builder"):
        build_real_proof1(s2, size_limit=10)
    assert real_build_spec(s2).a >= 2


def test_transform_examples(s2):
    T2 = transform_proof2(IntPoly((-2, 0, 1)), 1, 2)
    assert T2.coeffs == (-2, 0, 0, 0, 1)
    x0, back = proof2_recover(T2, 1, 2)
    assert back == s2
    assert ra_sign_at(T2, -x0) == "0"


def test_transform_is_even_and_recovers_cubic_root():
    r = ra_make(IntPoly((-2, 0, 0, 1)), (1, 2))
    a, b = choose_alpha_beta(r)
    T2 = transform_proof2(r.defining, a, b)
    assert all(c == 0 for c in T2.coeffs[1::2])
    assert proof2_recover(T2, a, b)[1] == r


def test_chain_variants(s2):
    assert len(build_real_chain(s2)) == 10
    build_real_chain(ra_make(IntPoly((-2, 0, 0, 1)), (1, 2)), certificates=False)
    build_real_chain(ra_sqrt(ra_rational(3)) + s2)


def test_proof2_set(s2):
    A = build_real_proof2(s2)
    assert A.r == s2 and verify_symbolic(A).adequate


def test_rational_target():
    A = build_real_chain(ra_rational(Fraction(-3, 2)))
    assert A.r == ra_rational(Fraction(-3, 2))


@pytest.fixture(scope="module")
def x2p2_roots():
    return padic_roots(IntPoly((2, 0, 1)), 3, 48).roots


def test_padic_spec_and_set(x2p2_roots):
    r = x2p2_roots[0]
    spec = padic_build_spec(IntPoly((2, 0, 1)), r, 48)
    assert spec.separators == [(0, 1)] and spec.a == 3
    A = build_padic_thm7(IntPoly((2, 0, 1)), r, 48)
    assert len(A) == 145
    res = verify_symbolic(A)
    assert res.label == "Adequate@48"


def test_padic_precision_guard(x2p2_roots):
    r2 = padic_roots(IntPoly((2, 0, 1)), 3, 2).roots[0]
    with pytest.raises(PrecisionError, match="not separable"):
        build_padic_thm7(IntPoly((2, 0, 1)), r2, 2)


def test_padic_rejects_non_root(x2p2_roots):
    with pytest.raises(BuildError):
        padic_build_spec(IntPoly((-2, 0, 1)), x2p2_roots[0], 48)


def test_padic_size_guard(x2p2_roots):
    with pytest.raises(SizeGuardError):
        build_padic_thm7(IntPoly((2, 0, 1)), x2p2_roots[0], 48, size_limit=20)


def test_padic_linear_target():
    r = padic_roots(IntPoly((-5, 1)), 3, 48).roots[0]
    A = build_padic_thm7(IntPoly((-5, 1)), r, 48)
    assert verify_symbolic(A).adequate


def test_set_file_round_trip(s2, x2p2_roots):
    for A in (build_real_chain(s2),
              build_padic_thm7(IntPoly((2, 0, 1)), x2p2_roots[1], 48)):
        text = format_set(A)
        B = parse_set(text)
        assert format_set(B) == text
        assert B.elements == A.elements
