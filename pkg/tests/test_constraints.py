import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from adequate.carriers import FiniteFieldCarrier, RealCarrier
from adequate.constraints import (ConstraintError, ConstraintSystem, DuplicateElementError,
                                  cs_closure, cs_combine_single, cs_count_bound,
                                  cs_distinguished_constrained, cs_enumerate, cs_extract,
                                  format_system, make_set, parse_system)
from adequate.builders import build_real_chain
from adequate.finfield import ff_build
from adequate.polyarith import IntPoly, SymPoly
from adequate.realalg import ra_rational, ra_sqrt

R = RealCarrier()


def q(*xs):
    return [ra_rational(x) for x in xs]


def brute_relations(vals):
    """Every relation among a list of Fractions, found by direct search."""
    n = len(vals)
    ones = {i + 1 for i in range(n) if vals[i] == 1}
    adds = {(i + 1, j + 1, k + 1) for i in range(n) for j in range(i, n) for k in range(n)
            if vals[i] + vals[j] == vals[k]}
    muls = {(i + 1, j + 1, k + 1) for i in range(n) for j in range(i, n) for k in range(n)
            if vals[i] * vals[j] == vals[k]}
    return ones, adds, muls


def test_extract_examples():
    S = cs_extract(q(2, 1), 1, R)
    assert S.ones == {2} and S.adds == {(2, 2, 1)} and S.muls == {(1, 2, 1), (2, 2, 2)}
    S = cs_extract(q(1), 1, R)
    assert S.ones == {1} and S.muls == {(1, 1, 1)} and not S.adds
    S = cs_extract(q(0), 1, R)
    assert S.adds == {(1, 1, 1)} and S.muls == {(1, 1, 1)} and not S.ones


def test_extract_moves_distinguished_first():
    S = cs_extract(q(1, 2), 2, R)
    assert S.ones == {2} and (2, 2, 1) in S.adds


def test_duplicates_rejected():
    with pytest.raises(DuplicateElementError):
        cs_extract(q(1, 2, 1), 1, R)


@given(st.lists(st.fractions(min_value=-4, max_value=4, max_denominator=3), min_size=1,
                max_size=7, unique=True))
def test_extract_is_exhaustive(vals):
    S = cs_extract([ra_rational(v) for v in vals], 1, R, audit=True)
    ones, adds, muls = brute_relations(vals)
    assert (S.ones, S.adds, S.muls) == (ones, adds, muls)


def test_distinguished_constrained():
    assert cs_distinguished_constrained(cs_extract(q(2, 1), 1, R))
    assert not cs_distinguished_constrained(ConstraintSystem(1))
    assert not cs_distinguished_constrained(ConstraintSystem(2, ones={2}))


def test_count_bound_values():
    assert [cs_count_bound(n) for n in (1, 2, 3)] == [8, 2187, 4**13]


@pytest.mark.parametrize("n", [1, 2])
def test_enumeration_count_and_uniqueness(n):
    systems = list(cs_enumerate(n))
    assert len(systems) == cs_count_bound(n)
    assert len(set(systems)) == len(systems)
    for S in systems:
        assert all(i <= j for i, j, _ in S.adds | S.muls)


def test_enumeration_contains_expected_systems():
    systems = set(cs_enumerate(1))
    assert ConstraintSystem(1) in systems
    assert ConstraintSystem(1, {1}, {(1, 1, 1)}, {(1, 1, 1)}) in systems


def test_enumeration_guard():
    with pytest.raises(ConstraintError):
        next(cs_enumerate(4))


def test_system_validation():
    with pytest.raises(ConstraintError):
        ConstraintSystem(2, adds={(2, 1, 1)})
    with pytest.raises(ConstraintError):
        ConstraintSystem(2, ones={3})


def test_text_round_trip_and_errors():
    S = cs_extract(q(2, 1, 0, -1), 1, R)
    text = format_system(S)
    assert parse_system(text) == S
    assert format_system(parse_system(text)) == text
    with pytest.raises(ConstraintError, match="line 2"):
        parse_system("n 2\nadd 2 1 1\n")
    with pytest.raises(ConstraintError, match="line 3"):
        parse_system("n 2\none 1\nmul 1 x 2\n")


@pytest.fixture(scope="module")
def chain2():
    return build_real_chain(ra_sqrt(ra_rational(2)))


def test_closure_contents(chain2):
    r = chain2.r
    neg = cs_closure(chain2, "neg")
    assert neg.r == -r and any(v == ra_rational(0) for v in neg.elements)
    inv = cs_closure(chain2, "inv")
    assert inv.r * r == ra_rational(1)
    s3 = build_real_chain(ra_sqrt(ra_rational(3)))
    tot = cs_closure(chain2, "sum", s3)
    assert tot.r == r + s3.r
    assert len(tot) <= len(chain2) + len(s3) + 1
    for A in (neg, inv, tot):
        for i, a in enumerate(A.elements):
            assert not any(a == b for b in A.elements[i + 1:])


def test_inverse_closure_of_zero_rejected():
    Z = make_set(q(0, 1), 1, R)
    with pytest.raises(ConstraintError):
        cs_closure(Z, "inv")


def test_closure_over_finite_field():
    F = ff_build(5, 1)
    A = make_set([F(2), F(1)], 1, FiniteFieldCarrier(F))
    B = cs_closure(A, "inv")
    assert B.r == F(3)


def test_combine_examples():
    u, v = SymPoly.var("u"), SymPoly.var("v")
    assert cs_combine_single([u, v], IntPoly((1, 0, 1))) == u * u + v * v
    x1, x2, x3 = (SymPoly.var(f"x{i}") for i in (1, 2, 3))
    e1, e2 = x1 + x2 - x3, x1 * x1 - x2
    assert cs_combine_single([e1, e2], IntPoly((1, 0, 1))) == e1 * e1 + e2 * e2
    assert cs_combine_single([e1], IntPoly((1, 0, 1))) == e1
    with pytest.raises(ConstraintError):
        cs_combine_single([], IntPoly((1, 0, 1)))
    with pytest.raises(ConstraintError):
        cs_combine_single([e1], IntPoly((1, 1)))
    with pytest.raises(ConstraintError, match="exceeds the limit"):
        cs_combine_single([e1] * 80, IntPoly((1, 0, 1)))


def test_combine_three_equations_zero_set(rng):
    x1, x2, x3 = (SymPoly.var(f"x{i}") for i in (1, 2, 3))
    eqs = [x1 - 2, x1 + x1 - x2, x1 * x2 - x3]
    B = cs_combine_single(eqs, IntPoly((1, 0, 1)))
    assert B.evaluate({"x1": 2, "x2": 4, "x3": 8}) == 0
    for _ in range(50):
        pt = {f"x{i}": Fraction(rng.randint(-9, 9), rng.randint(1, 2)) for i in (1, 2, 3)}
        assert (B.evaluate(pt) == 0) == all(e.evaluate(pt) == 0 for e in eqs)


def test_combine_zero_set_randomized(rng):
    x1, x2, x3 = (SymPoly.var(f"x{i}") for i in (1, 2, 3))
    eqs = [x1 + x2 - x3, x1 * x1 - x2]
    B = cs_combine_single(eqs, IntPoly((1, 0, 1)))
    for _ in range(50):
        a = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
        pt = {"x1": a, "x2": a * a, "x3": a + a * a} if rng.random() < 0.5 else \
            {f"x{i}": Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for i in (1, 2, 3)}
        both = all(e.evaluate(pt) == 0 for e in eqs)
        assert (B.evaluate(pt) == 0) == both


def test_combine_with_cubic_no_root_poly(rng):
    # x^3 - 2 has no rational root; its homogenization folds over Q
    u, v = SymPoly.var("u"), SymPoly.var("v")
    B = cs_combine_single([u, v], IntPoly((-2, 0, 0, 1)))
    for _ in range(50):
        pt = {"u": Fraction(rng.randint(-3, 3)), "v": Fraction(rng.randint(-3, 3))}
        assert (B.evaluate(pt) == 0) == (pt["u"] == 0 and pt["v"] == 0)


def test_system_equations_form():
    S = cs_extract(q(2, 1), 1, R)
    eqs = S.equations()
    assert len(eqs) == S.relation_count()
    pt = {"x1": Fraction(2), "x2": Fraction(1)}
    assert all(e.evaluate(pt) == 0 for e in eqs)


def test_random_realizations_over_gf7(seed):
    rng = random.Random(seed)
    F = ff_build(7, 1)
    C = FiniteFieldCarrier(F)
    for _ in range(30):
        els = rng.sample(F.elements(), rng.randint(1, 6))
        A = make_set(els, 1, C)
        for i, j, k in A.system.adds:
            assert els_eq(A.elements[i - 1] + A.elements[j - 1], A.elements[k - 1])


def els_eq(a, b):
    return a == b
