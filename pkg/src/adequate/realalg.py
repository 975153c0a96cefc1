"""Exact real algebraic numbers.

A value is either a rational or ``g(theta)`` where ``theta`` is an isolated
real root (squarefree integer polynomial plus isolating rational interval)
and ``g`` is a rational polynomial reduced modulo the defining polynomial.
Values that share a root are combined with plain polynomial arithmetic;
values on different roots are combined through resultants.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import isqrt

from .polyarith import (
    EndpointRootError,
    IntPoly,
    PolyError,
    RatInterval,
    _add,
    _mul,
    _qdivmod,
    _trim,
    eliminate,
    isolate_real_roots,
    parse_fraction,
    parse_interval,
    parse_poly,
    poly_gcd,
    primitive_part,
    reciprocal,
    resultant,
    sign_at,
    squarefree_part,
    sturm_count,
    sturm_sequence,
    substitute_square,
)

REFINE_BUDGET = 256


class RealAlgError(ValueError):
    pass


class NoRootError(RealAlgError):
    pass


class AmbiguousRootError(RealAlgError):
    pass


class _Root:
    """Isolated root of a squarefree primitive polynomial.

    ``lo``/``hi`` shrink under refinement; ``display()`` gives a canonical
    interval that depends only on the value, so its text form is stable.
    """

    __slots__ = ("poly", "lo", "hi", "shown", "rational", "_slo", "_seq", "mat", "_canon")

    def __init__(self, poly: IntPoly, lo: Fraction, hi: Fraction):
        self.poly = poly
        self.lo, self.hi = Fraction(lo), Fraction(hi)
        self.shown = (self.lo, self.hi)
        self._canon = None
        self.rational = None
        self._slo = sign_at(poly, self.lo)
        self._seq = None
        self.mat: dict = {}
        if poly.degree == 1:
            self._set_rational(Fraction(-poly.coeffs[0], poly.coeffs[1]))
        else:
            self._detect_rational()

    def _set_rational(self, q: Fraction) -> None:
        self.rational = q
        self.lo = self.hi = q

    @property
    def sturm(self):
        if self._seq is None:
            self._seq = sturm_sequence(self.poly)
        return self._seq

    def bisect(self) -> None:
        if self.rational is not None:
            return
        m = (self.lo + self.hi) / 2
        s = sign_at(self.poly, m)
        if s == 0:
            self._set_rational(m)
        elif s == self._slo:
            self.lo = m
        else:
            self.hi = m

    def width(self) -> Fraction:
        return self.hi - self.lo

    def display(self) -> tuple[Fraction, Fraction]:
        """Coarsest dyadic cell (c/2^k, (c+1)/2^k), k >= 0, isolating the root."""
        if self.rational is not None:
            return self.rational, self.rational
        if self._canon is None:
            k = 0
            while True:
                w = Fraction(1, 2**k)
                while (-(-self.hi // w)) - (self.lo // w) > 1 and self.rational is None:
                    self.bisect()
                if self.rational is not None:
                    return self.rational, self.rational
                c = self.lo // w
                lo, hi = c * w, (c + 1) * w
                if sign_at(self.poly, lo) and sign_at(self.poly, hi) \
                        and sturm_count(self.poly, (lo, hi), self.sturm) == 1:
                    self._canon = (lo, hi)
                    break
                k += 1
        return self._canon

    def _detect_rational(self) -> None:
        # a rational root has the form k / lc(P); look at the few such points
        # inside a narrow copy of the interval
        lc = abs(self.poly.lc)
        lo, hi, slo = self.lo, self.hi, self._slo
        for _ in range(REFINE_BUDGET):
            if (hi - lo) * lc < 2:
                break
            m = (lo + hi) / 2
            s = sign_at(self.poly, m)
            if s == 0:
                self._set_rational(m)
                return
            if s == slo:
                lo = m
            else:
                hi = m
        k0 = -((-lo * lc).__floor__())
        k1 = (hi * lc).__floor__()
        for k in range(k0, k1 + 1):
            q = Fraction(k, lc)
            if lo < q < hi and sign_at(self.poly, q) == 0:
                self._set_rational(q)
                return


def _rat_root(q: Fraction) -> _Root:
    return _Root(IntPoly((-q.numerator, q.denominator)), q - 1, q + 1)


def _reduce(g, P: IntPoly) -> tuple:
    g = _trim(Fraction(c) for c in g)
    if len(g) > P.degree:
        g = _qdivmod(g, P.coeffs)[1]
    return g


def _horner_interval(g, lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
    a = b = Fraction(0)
    for c in reversed(g):
        ps = (a * lo, a * hi, b * lo, b * hi)
        a, b = min(ps) + c, max(ps) + c
    return a, b


def _eval_q(g, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(g):
        acc = acc * x + c
    return acc


def _int_numer(g) -> IntPoly:
    return IntPoly.from_rational(g)


def _qinv_mod(g, P: IntPoly):
    """Inverse of g modulo P over Q, or None when gcd(g, P) is nontrivial."""
    r0, r1 = tuple(Fraction(c) for c in P.coeffs), tuple(g)
    s0, s1 = (), (Fraction(1),)
    while r1 and len(r1) > 1:
        q, r = _qdivmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _add(s0, tuple(-c for c in _mul(q, s1)))
    if not r1:
        return None
    c = r1[0]
    return _reduce(tuple(x / c for x in s1), P)


class RealAlg:
    """Exact real algebraic number."""

    __slots__ = ("_q", "_node", "_g")

    def __init__(self, *, q=None, node: _Root | None = None, g=(0, 1)):
        if q is not None:
            self._q, self._node, self._g = Fraction(q), None, None
            return
        if node.rational is not None:
            self._q, self._node, self._g = _eval_q(g, node.rational), None, None
            return
        g = _reduce(g, node.poly)
        if len(g) <= 1:
            self._q, self._node, self._g = (g[0] if g else Fraction(0)), None, None
        else:
            self._q, self._node, self._g = None, node, g

    # -- basic predicates --------------------------------------------------

    def is_rational(self) -> bool:
        self._settle()
        return self._q is not None

    @property
    def rational(self) -> Fraction | None:
        self._settle()
        return self._q

    def _settle(self) -> None:
        if self._q is None and self._node.rational is not None:
            self._q = _eval_q(self._g, self._node.rational)
            self._node = self._g = None

    def enclosure(self) -> tuple[Fraction, Fraction]:
        self._settle()
        if self._q is not None:
            return self._q, self._q
        return _horner_interval(self._g, self._node.lo, self._node.hi)

    def refine(self) -> None:
        if self._node is not None:
            self._node.bisect()
        self._settle()

    def is_zero(self) -> bool:
        self._settle()
        if self._q is not None:
            return self._q == 0
        L, U = self.enclosure()
        if L > 0 or U < 0:
            return False
        G = poly_gcd(_int_numer(self._g), self._node.poly)
        if G.degree < 1:
            return False
        node = self._node
        return sturm_count(G, (node.lo, node.hi)) > 0 if node.rational is None else G(node.rational) == 0

    def __bool__(self) -> bool:
        return not self.is_zero()

    def sign(self) -> int:
        if self.is_zero():
            return 0
        for _ in range(REFINE_BUDGET * 4):
            L, U = self.enclosure()
            if L > 0:
                return 1
            if U < 0:
                return -1
            self.refine()
        raise RealAlgError("sign undecided within refinement budget")

    def approx(self) -> float:
        for _ in range(REFINE_BUDGET):
            L, U = self.enclosure()
            if U - L <= Fraction(1, 2**60) * (1 + abs(L)):
                break
            self.refine()
        return float((L + U) / 2)

    # -- arithmetic ----------------------------------------------------------

    @staticmethod
    def _coerce(x) -> "RealAlg":
        if isinstance(x, RealAlg):
            return x
        if isinstance(x, (int, Fraction)):
            return RealAlg(q=x)
        return NotImplemented

    def _shared(self, other: "RealAlg"):
        """Common root of two values, or None when they live on different roots."""
        self._settle()
        other._settle()
        if self._q is not None:
            return other._node if other._q is None else False
        if other._q is not None or other._node is self._node:
            return self._node
        return None

    def _poly(self) -> tuple:
        return (self._q,) if self._q is not None else self._g

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        node = self._shared(other)
        if node is False:
            return RealAlg(q=self._q + other._q)
        if node is not None:
            return RealAlg(node=node, g=_add(self._poly(), other._poly()))
        return _cross(self, other, "sum")

    __radd__ = __add__

    def __neg__(self):
        self._settle()
        if self._q is not None:
            return RealAlg(q=-self._q)
        return RealAlg(node=self._node, g=tuple(-c for c in self._g))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        node = self._shared(other)
        if node is False:
            return RealAlg(q=self._q * other._q)
        if node is not None:
            return RealAlg(node=node, g=_mul(self._poly(), other._poly()))
        return _cross(self, other, "product")

    __rmul__ = __mul__

    def inverse(self) -> "RealAlg":
        self._settle()
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        if self._q is not None:
            return RealAlg(q=1 / self._q)
        inv = _qinv_mod(self._g, self._node.poly)
        if inv is not None:
            return RealAlg(node=self._node, g=inv)
        A = self.materialize()
        while A.lo <= 0 <= A.hi and A.rational is None:
            A.bisect()
        if A.rational is not None:
            return RealAlg(q=1 / A.rational)
        R = reciprocal(A.poly)
        return RealAlg(node=_isolate_in(R, lambda: (1 / A.hi, 1 / A.lo), [A]))

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = RealAlg(q=1)
        for _ in range(k):
            out = out * self
        return out

    # -- comparisons -----------------------------------------------------------

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return False
        node = self._shared(other)
        if node is False:
            return self._q == other._q
        if node is not None:
            return (self - other).is_zero()
        return _roots_equal(self.materialize(), other.materialize())

    __hash__ = None

    def compare(self, other) -> int:
        other = self._coerce(other)
        if self == other:
            return 0
        for _ in range(REFINE_BUDGET * 4):
            a0, a1 = self.enclosure()
            b0, b1 = other.enclosure()
            if a1 < b0:
                return -1
            if b1 < a0:
                return 1
            self.refine()
            other.refine()
        raise RealAlgError("comparison undecided within refinement budget")

    def __lt__(self, other):
        return self.compare(other) < 0

    def __le__(self, other):
        return self.compare(other) <= 0

    def __gt__(self, other):
        return self.compare(other) > 0

    def __ge__(self, other):
        return self.compare(other) >= 0

    # -- explicit form -----------------------------------------------------------

    def materialize(self) -> _Root:
        """Explicit (defining polynomial, isolating interval) form of the value."""
        self._settle()
        if self._q is not None:
            return _rat_root(self._q)
        g, node = self._g, self._node
        if g == (0, 1):
            return node
        if g in node.mat:
            return node.mat[g]
        num = _int_numer(g)
        den = num.coeffs[-1] / g[-1]  # num = den * g
        P = node.poly

        def fiber(x0):
            return P.coeffs, _add((den * x0,), tuple(-c for c in num.coeffs))

        R = squarefree_part(eliminate(P.degree, fiber))
        out = _isolate_in(R, self.enclosure, [node])
        node.mat[g] = out
        return out

    @property
    def defining(self) -> IntPoly:
        return self.materialize().poly

    @property
    def interval(self) -> RatInterval:
        A = self.materialize()
        lo, hi = A.display() if A.rational is None else A.shown
        return RatInterval(lo, hi)

    def eval_poly(self, P) -> "RealAlg":
        coeffs = P.coeffs if isinstance(P, IntPoly) else P
        acc = RealAlg(q=0)
        for c in reversed(coeffs):
            acc = acc * self + c
        return acc

    def __repr__(self) -> str:
        return format_alg(self)

    __str__ = __repr__


def _isolate_in(R: IntPoly, bounds, parents: list[_Root]) -> _Root:
    """Root of R inside the shrinking interval ``bounds()`` (parents get refined)."""
    seq = sturm_sequence(R)
    for _ in range(REFINE_BUDGET * 4):
        lo, hi = bounds()
        if lo == hi:
            return _rat_root(lo)
        if sign_at(R, lo) and sign_at(R, hi):
            n = sturm_count(R, (lo, hi), seq)
            if n == 1:
                return _Root(R, lo, hi)
            if n == 0:
                raise RealAlgError("lost the root while isolating")
        for p in parents:
            p.bisect()
    raise RealAlgError("isolation did not converge within budget")


def _cross(a: RealAlg, b: RealAlg, role: str) -> RealAlg:
    A, B = a.materialize(), b.materialize()
    R = squarefree_part(resultant(A.poly, B.poly, role))
    if role == "sum":
        def bounds():
            return A.lo + B.lo, A.hi + B.hi
    else:
        def bounds():
            ps = (A.lo * B.lo, A.lo * B.hi, A.hi * B.lo, A.hi * B.hi)
            return min(ps), max(ps)
    return RealAlg(node=_isolate_in(R, bounds, [A, B]))


def _roots_equal(A: _Root, B: _Root) -> bool:
    if A is B:
        return True
    if A.rational is not None and B.rational is not None:
        return A.rational == B.rational
    if A.hi < B.lo or B.hi < A.lo:
        return False
    if A.rational is not None:
        return sign_at(B.poly, A.rational) == 0 and B.lo < A.rational < B.hi
    if B.rational is not None:
        return _roots_equal(B, A)
    G = poly_gcd(A.poly, B.poly)
    if G.degree < 1 or sturm_count(G, (A.lo, A.hi)) == 0:
        return False
    # A is a root of B.poly; B is the only such root inside B's interval
    for _ in range(REFINE_BUDGET * 4):
        if B.lo < A.lo and A.hi < B.hi:
            return True
        if A.hi <= B.lo or B.hi <= A.lo:
            return False
        A.bisect()
        if A.rational is not None:
            return B.lo < A.rational < B.hi
    raise RealAlgError("equality undecided within budget")


# -- public operations ---------------------------------------------------------


def ra_make(P: IntPoly, I: RatInterval | tuple) -> RealAlg:
    """The unique root of P in the open interval I."""
    if P.is_zero():
        raise RealAlgError("zero polynomial has no isolated roots")
    if not isinstance(I, RatInterval):
        I = RatInterval(*I)
    P = squarefree_part(P)
    if P.degree == 0:
        raise NoRootError(f"{P} has no roots")
    lo, hi = I.lo, I.hi
    if sign_at(P, lo) == 0:
        lo = _push_off(P, lo, hi)
    if sign_at(P, hi) == 0:
        hi = _push_off(P, hi, lo)
    n = sturm_count(P, (lo, hi))
    if n == 0:
        raise NoRootError(f"no root of {P} in {I}")
    if n > 1:
        raise AmbiguousRootError(f"{n} roots of {P} in {I}")
    return RealAlg(node=_Root(P, lo, hi))


def _push_off(P: IntPoly, x: Fraction, toward: Fraction) -> Fraction:
    """Move an endpoint root x toward the other endpoint past no other root."""
    for k in range(1, REFINE_BUDGET):
        d = (toward - x) / 2**k
        inner, outer = x + d, x - d
        if sign_at(P, inner) and sign_at(P, outer):
            lo, hi = min(inner, outer), max(inner, outer)
            if sturm_count(P, (lo, hi)) == 1:
                return inner
    raise RealAlgError("could not move off an endpoint root")


def ra_rational(q) -> RealAlg:
    return RealAlg(q=Fraction(q))


def ra_arith(a: RealAlg, b: RealAlg, op: str) -> RealAlg:
    if op == "+":
        return a + b
    if op == "-":
        return a - b
    if op in ("*", "×"):
        return a * b
    if op in ("/", "÷"):
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def _sqrt_bounds(q: Fraction, bits: int) -> tuple[Fraction, Fraction]:
    s = 4**bits
    lo = isqrt((q * s).__floor__())
    hi = isqrt(-((-q * s).__floor__())) + 1
    return Fraction(lo, 2**bits), Fraction(hi, 2**bits)


def ra_sqrt(a: RealAlg) -> RealAlg:
    """Nonnegative square root."""
    s = a.sign()
    if s < 0:
        raise RealAlgError("square root of a negative number")
    if s == 0:
        return RealAlg(q=0)
    q = a.rational
    if q is not None:
        n, d = q.numerator, q.denominator
        if isqrt(n) ** 2 == n and isqrt(d) ** 2 == d:
            return RealAlg(q=Fraction(isqrt(n), isqrt(d)))
    A = a.materialize()
    P = A.poly
    if P.coeffs[0] == 0:
        P = IntPoly(P.coeffs[1:])
    R = squarefree_part(substitute_square(P))
    while A.lo <= 0 and A.rational is None:
        A.bisect()
    bits = [-2]

    def bounds():
        bits[0] += 2
        lo = _sqrt_bounds(A.lo, bits[0])[0]
        hi = _sqrt_bounds(A.hi, bits[0])[1]
        return max(lo, Fraction(0)), hi

    return RealAlg(node=_isolate_in(R, bounds, [A]))


def ra_compare(a: RealAlg, b: RealAlg) -> str:
    return {-1: "<", 0: "=", 1: ">"}[a.compare(b)]


def ra_sign_at(P: IntPoly, a: RealAlg) -> str:
    return {-1: "-", 0: "0", 1: "+"}[a.eval_poly(P).sign()]


def real_roots(P: IntPoly) -> list[RealAlg]:
    """All real roots of a nonzero polynomial, ascending."""
    if P.is_zero():
        raise RealAlgError("real roots of the zero polynomial")
    P = squarefree_part(P)
    return [RealAlg(node=_Root(P, I.lo, I.hi)) for I in isolate_real_roots(P)]


# -- literals ----------------------------------------------------------------------


def format_alg(a: RealAlg) -> str:
    q = a.rational
    if q is not None:
        return f"rat{{{q}}}"
    A = a.materialize()
    lo, hi = A.display()
    return f"alg{{poly=[{', '.join(str(c) for c in A.poly.coeffs)}]; interval=({lo}, {hi})}}"


_ALG_RE = re.compile(r"^\s*alg\s*\{\s*poly\s*=\s*(\[[^\]]*\])\s*;\s*interval\s*=\s*(\([^)]*\))\s*\}\s*$")
_RAT_RE = re.compile(r"^\s*rat\s*\{\s*([^}]*)\}\s*$")


def parse_alg(text: str) -> RealAlg:
    """Parse ``alg{poly=[...]; interval=(p/q, r/s)}`` or ``rat{p/q}``."""
    m = _RAT_RE.match(text)
    if m:
        return RealAlg(q=parse_fraction(m.group(1)))
    m = _ALG_RE.match(text)
    if not m:
        raise PolyError(f"malformed algebraic literal: {text!r}")
    return ra_make(parse_poly(m.group(1)), parse_interval(m.group(2)))
