import itertools

import pytest
from hypothesis import given, strategies as st

from adequate.finfield import (FieldError, ff_build, ff_frobenius, is_irreducible,
                               parse_element, parse_field)


def naive_mul(F, a, b):
    """Schoolbook product of coefficient vectors modulo the field modulus."""
    va, vb, m, p, k = a.vector, b.vector, F.modulus, F.p, F.k
    prod = [0] * (2 * k)
    for i, x in enumerate(va):
        for j, y in enumerate(vb):
            prod[i + j] += x * y
    for i in range(2 * k - 1, k - 1, -1):
        c = prod[i] % p
        for j in range(k + 1):
            prod[i - k + j] -= c * m[j]
    return [c % p for c in prod[:k]]


FIELDS = [(2, 1), (2, 2), (2, 3), (3, 2), (5, 1), (7, 1), (2, 4)]


@pytest.mark.parametrize("p,k", FIELDS)
def test_field_axioms_exhaustive_small(p, k):
    F = ff_build(p, k)
    els = F.elements()
    assert len(els) == p**k
    for a, b in itertools.product(els, repeat=2):
        assert (a * b).vector == naive_mul(F, a, b)
        assert a + b == b + a
        if b:
            assert (a / b) * b == a


def test_gf4_default_modulus_and_frobenius():
    F = ff_build(2, 2)
    assert F.modulus == (1, 1, 1)
    t = F.gen()
    assert ff_frobenius(F, t).vector == [1, 1]
    assert ff_frobenius(F, t + 1).vector == [0, 1]


def test_gf9_modulus_and_reducible_rejected():
    assert ff_build(3, 2).modulus == (1, 0, 1)
    with pytest.raises(FieldError):
        ff_build(2, 2, [0, 0, 1])
    with pytest.raises(FieldError):
        ff_build(4, 1)
    with pytest.raises(FieldError):
        ff_build(2, 13)


@pytest.mark.parametrize("p,k", [(2, 3), (3, 2), (2, 4), (5, 2)])
def test_frobenius_fixes_exactly_prime_field(p, k):
    F = ff_build(p, k)
    fixed = [x for x in F.elements() if ff_frobenius(F, x) == x]
    assert len(fixed) == p
    assert all(F.in_prime_field(x) for x in fixed)


def test_irreducibility_matches_root_count_for_small_degree():
    for m in itertools.product(range(3), repeat=3):
        m = m + (1,)
        has_root = any(sum(c * x**i for i, c in enumerate(m)) % 3 == 0 for x in range(3))
        assert is_irreducible(m, 3) == (not has_root)


def test_spec_and_element_round_trip():
    F = ff_build(3, 2)
    G = parse_field(F.spec)
    assert G == F
    x = parse_element(G, "[2,1]")
    assert repr(x) == "[2,1]"
    with pytest.raises(FieldError):
        parse_element(G, "[3,0]")


@given(st.integers(0, 255), st.integers(0, 255), st.integers(0, 255))
def test_gf256_distributive(a, b, c):
    F = ff_build(2, 8)
    x, y, z = F.element(a), F.element(b), F.element(c)
    assert x * (y + z) == x * y + x * z
