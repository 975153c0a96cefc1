"""End-to-end acceptance checks, one test per numbered criterion.

Each test asserts its own runtime ceiling; the terminal summary prints one
PASS/FAIL line per criterion.
"""

import random
import time
from fractions import Fraction

import pytest

from adequate.adequacy import (check_assignment, frobenius_counterexample, verify_bruteforce_ff,
                               verify_symbolic)
from adequate.builders import (build_padic_thm7, build_real_chain, build_real_proof1,
                               chain_elements, padic_build_spec, proof2_recover,
                               transform_proof2)
from adequate.carriers import FiniteFieldCarrier, RealCarrier
from adequate.constraints import (cs_closure, cs_combine_single, cs_count_bound, cs_enumerate,
                                  make_set)
from adequate.finfield import ff_build
from adequate.padic import (NotUnitBall, PadicNum, UnitBallWitness, lemma2_witness,
                            pa_congruent, pa_norm, padic_roots)
from adequate.polyarith import IntPoly, SymPoly, root_bound, sturm_count
from adequate.realalg import ra_make, ra_rational, ra_sign_at, ra_sqrt

N48 = 48


class Clock:
    def __init__(self, limit):
        self.limit = limit
        self.t0 = time.perf_counter()

    def check(self):
        spent = time.perf_counter() - self.t0
        assert spent < self.limit, f"took {spent:.1f}s, limit {self.limit}s"


@pytest.fixture(scope="module")
def s2():
    return ra_sqrt(ra_rational(2))


@pytest.mark.criterion(1, "system count bound and enumeration")
def test_c1_count_bound_and_enumeration():
    clock = Clock(10)
    assert cs_count_bound(1) == 8
    assert cs_count_bound(2) == 2187
    assert cs_count_bound(3) == 4**13
    for n in (1, 2):
        systems = list(cs_enumerate(n))
        assert len(systems) == cs_count_bound(n)
        assert len(set(systems)) == len(systems)
    clock.check()


@pytest.mark.criterion(2, "power-sum build for sqrt(2)")
def test_c2_power_sum_build(s2):
    clock = Clock(60)
    A = build_real_proof1(s2)
    assert len(A) == 67
    res = verify_symbolic(A)
    assert res.verdict == "Adequate"
    clock.check()


@pytest.mark.criterion(3, "interval certificates are necessary")
def test_c3_certificates(s2):
    clock = Clock(30)
    bare = make_set(chain_elements(s2, certificates=False), 1, RealCarrier(), dedupe=True)
    res = verify_symbolic(bare)
    assert res.verdict == "Counterexample"
    assert res.assignment[0] == -s2
    assert check_assignment(bare, res.assignment)[0]
    clock.check()

    clock = Clock(30)
    full = build_real_chain(s2, certificates=True, verify=False)
    assert verify_symbolic(full).verdict == "Adequate"
    clock.check()

    clock = Clock(30)
    cube = ra_make(IntPoly((-2, 0, 0, 1)), (1, 2))
    A = make_set(chain_elements(cube, certificates=False), 1, RealCarrier(), dedupe=True)
    assert verify_symbolic(A).verdict == "Adequate"
    clock.check()


@pytest.mark.criterion(4, "even transform of x^2 - 2 on (1, 2)")
def test_c4_transform(s2):
    clock = Clock(5)
    T2 = transform_proof2(IntPoly((-2, 0, 1)), 1, 2)
    assert T2 == IntPoly((-2, 0, 0, 0, 1))
    B = root_bound(T2) + 1
    assert sturm_count(T2, (-B, B)) == 2
    x0, back = proof2_recover(T2, 1, 2)
    q = ra_make(IntPoly((-2, 0, 0, 0, 1)), (1, 2))  # 2^(1/4)
    assert x0 == q or x0 == -q
    assert ra_sign_at(T2, -x0) == "0"
    assert back == s2
    assert ra_rational(1) + ra_rational(1) / (ra_rational(1) + x0 * x0) == s2
    clock.check()


@pytest.mark.criterion(5, "x^2 + 2 over Q_3 end to end")
def test_c5_padic_end_to_end():
    clock = Clock(60)
    P = IntPoly((2, 0, 1))
    rep = padic_roots(P, 3, N48)
    assert len(rep.roots) == 2
    r, r2 = rep.roots
    assert sorted(x.unit * 3**x.val % 9 for x in rep.roots) == [4, 5]
    spec = padic_build_spec(P, r, N48)
    assert spec.separators == [(0, 1)]
    m, u = spec.separators[0]
    scale = PadicNum.from_rational(Fraction(3) ** (m + 1), 3, N48)
    assert pa_norm((r - u) / scale) <= 1
    assert pa_norm((r2 - u) / scale) > 1
    A = build_padic_thm7(P, r, N48)
    res = verify_symbolic(A)
    assert res.label == "Adequate@48"
    forced = verify_symbolic(A, assume={1: r2})
    assert forced.verdict == "Adequate"
    assert any("not divisible by 2" in line for line in forced.trace)
    clock.check()


def _random_padic(rng, p):
    v = rng.randint(-5, 5)
    while True:
        a, b = rng.randint(1, 10**6), rng.randint(1, 10**6)
        if a % p and b % p:
            break
    sign = rng.choice((1, -1))
    return PadicNum.from_rational(sign * Fraction(a, b) * Fraction(p) ** v, p, N48)


@pytest.mark.criterion(6, "unit-ball witness property")
@pytest.mark.parametrize("p", [3, 2])
def test_c6_unit_ball_witness(p, seed):
    rng = random.Random(seed + p)
    e = 3 if p == 2 else 2
    failures = 0
    for _ in range(200):
        x = _random_padic(rng, p)
        w = lemma2_witness(x, N48)
        c = 1 + p * x**e
        if pa_norm(x) <= 1:
            ok = isinstance(w, UnitBallWitness) and pa_congruent(w.y**e, c, N48)
        else:
            # v(c) = 1 + e v(x) is not a multiple of e, so c has no e-th root
            ok = isinstance(w, NotUnitBall) and c.val % e != 0
        failures += not ok
    assert failures == 0


@pytest.mark.criterion(7, "Frobenius counterexamples over GF(4), GF(8), GF(9)")
def test_c7_frobenius(seed):
    clock = Clock(60)
    rng = random.Random(seed)
    for p, k in ((2, 2), (2, 3), (3, 2)):
        F = ff_build(p, k)
        C = FiniteFieldCarrier(F)
        outside = [x for x in F.elements() if not F.in_prime_field(x)]
        for _ in range(200):
            r = rng.choice(outside)
            rest = [x for x in F.elements() if x != r]
            A = make_set([r] + rng.sample(rest, rng.randint(0, min(4, len(rest)))), 1, C)
            f = frobenius_counterexample(A)
            assert f is not None and f[0] != r
            assert check_assignment(A, f)[0]
            assert verify_bruteforce_ff(A).verdict == "Counterexample"
    clock.check()


@pytest.mark.criterion(8, "symbolic engine agrees with brute force")
def test_c8_oracle_agreement(seed):
    rng = random.Random(seed * 3)
    fields = [ff_build(5, 1), ff_build(7, 1)]
    for i in range(100):
        F = fields[i % 2]
        A = make_set(rng.sample(F.elements(), rng.randint(1, 4)), 1, FiniteFieldCarrier(F))
        brute = verify_bruteforce_ff(A)
        sym = verify_symbolic(A)
        assert sym.verdict == brute.verdict
        for res in (brute, sym):
            if res.verdict == "Counterexample":
                assert check_assignment(A, res.assignment)[0]


@pytest.mark.criterion(9, "folding a system into one equation")
def test_c9_combination(seed):
    rng = random.Random(seed)
    x1, x2, x3 = (SymPoly.var(f"x{i}") for i in (1, 2, 3))
    eqs = [x1 + x2 - x3, x1 * x1 - x2]
    B = cs_combine_single(eqs, IntPoly((1, 0, 1)))
    mismatches = 0
    for i in range(50):
        a = Fraction(rng.randint(-20, 20), rng.randint(1, 9))
        if i % 2:
            pt = {"x1": a, "x2": a * a, "x3": a + a * a}
        else:
            pt = {"x1": a, "x2": Fraction(rng.randint(-20, 20), rng.randint(1, 9)),
                  "x3": Fraction(rng.randint(-20, 20), rng.randint(1, 9))}
        both = all(e.evaluate(pt) == 0 for e in eqs)
        mismatches += (B.evaluate(pt) == 0) != both
    assert mismatches == 0


@pytest.mark.criterion(10, "algebraic arithmetic and closure sets")
def test_c10_closures(s2):
    clock = Clock(120)
    s3 = ra_sqrt(ra_rational(3))
    assert ra_sign_at(IntPoly((1, 0, -10, 0, 1)), s2 + s3) == "0"
    A2 = build_real_chain(s2)
    A3 = build_real_chain(s3)
    cases = [("neg", None, -s2), ("inv", None, 1 / s2), ("sum", A3, s2 + s3),
             ("prod", A3, s2 * s3)]
    for variant, other, target in cases:
        C = cs_closure(A2, variant, other)
        assert C.r == target
        assert verify_symbolic(C).verdict == "Adequate", variant
    clock.check()
