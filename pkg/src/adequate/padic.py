"""p-adic numbers at finite working precision.

A nonzero value is ``p^val * unit`` with ``unit`` an integer known modulo
``p^prec`` (``prec`` significant digits).  A zero value records how many
digits of it are known (``prec`` is then an absolute precision, ``inf`` for
an exact zero).
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .polyarith import IntPoly, PolyError, squarefree_part

INF = math.inf
DEFAULT_PRECISION = 48


class PadicError(ValueError):
    pass


class PrecisionError(PadicError):
    """Two values cannot be told apart at the working precision."""


class HenselError(PadicError):
    pass


class NonRootResidueError(HenselError):
    """F(a0) is not divisible by p."""


class SingularDerivativeError(HenselError):
    """F'(a0) is divisible by p."""


def _vp(n: int, p: int) -> int:
    if n == 0:
        return INF
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


class PadicNum:
    __slots__ = ("p", "val", "unit", "prec")

    def __init__(self, p: int, val, unit: int, prec):
        self.p, self.val, self.unit, self.prec = p, val, unit, prec

    # -- construction --------------------------------------------------------

    @classmethod
    def zero(cls, p: int, abs_prec=INF) -> "PadicNum":
        return cls(p, INF, 0, abs_prec)

    @classmethod
    def from_rational(cls, q, p: int, N: int = DEFAULT_PRECISION) -> "PadicNum":
        q = Fraction(q)
        if q == 0:
            return cls.zero(p)
        num, den = q.numerator, q.denominator
        vn, vd = _vp(num, p), _vp(den, p)
        num //= p**vn
        den //= p**vd
        mod = p**N
        return cls(p, vn - vd, num * pow(den, -1, mod) % mod, N)

    @classmethod
    def from_residue(cls, a: int, p: int, abs_prec: int) -> "PadicNum":
        """The element known as ``a mod p^abs_prec``."""
        a %= p**abs_prec
        if a == 0:
            return cls.zero(p, abs_prec)
        v = _vp(a, p)
        return cls(p, v, a // p**v, abs_prec - v)

    @classmethod
    def from_digits(cls, p: int, val, digits: Sequence[int]) -> "PadicNum":
        if val == INF:
            return cls.zero(p, len(digits) if digits else INF)
        if not digits or digits[0] == 0:
            raise PadicError("leading digit of a nonzero p-adic number must be nonzero")
        if any(not 0 <= d < p for d in digits):
            raise PadicError(f"digits must lie in [0, {p - 1}]")
        unit = sum(d * p**i for i, d in enumerate(digits))
        return cls(p, val, unit, len(digits))

    # -- properties --------------------------------------------------------------

    def is_zero(self) -> bool:
        return self.val == INF

    def __bool__(self) -> bool:
        return not self.is_zero()

    @property
    def abs_prec(self):
        return self.prec if self.is_zero() else self.val + self.prec

    @property
    def digits(self) -> list[int]:
        out, u = [], self.unit
        for _ in range(self.prec if not self.is_zero() else 0):
            u, d = divmod(u, self.p)
            out.append(d)
        return out

    def digit(self, k: int):
        """Coefficient of p^k, or None when beyond the known precision."""
        if k >= self.abs_prec:
            return None
        if self.is_zero() or k < self.val:
            return 0
        return (self.unit // self.p ** (k - self.val)) % self.p

    def norm(self) -> Fraction:
        if self.is_zero():
            return Fraction(0)
        return Fraction(self.p) ** (-self.val)

    def truncate(self, N: int) -> "PadicNum":
        if self.is_zero() or self.prec <= N:
            return self
        return PadicNum(self.p, self.val, self.unit % self.p**N, N)

    def to_fraction(self) -> Fraction:
        """The rational sum of the known digits."""
        if self.is_zero():
            return Fraction(0)
        return Fraction(self.unit) * Fraction(self.p) ** self.val

    def sort_key(self):
        return (self.val, tuple(self.digits))

    # -- arithmetic -----------------------------------------------------------------

    def _coerce(self, x, mul: bool = False) -> "PadicNum":
        if isinstance(x, PadicNum):
            if x.p != self.p:
                raise PadicError(f"mixed primes {self.p} and {x.p}")
            return x
        if isinstance(x, (int, Fraction)):
            if x == 0:
                return PadicNum.zero(self.p)
            need = self.prec if mul or self.is_zero() else self.abs_prec - _vq(Fraction(x), self.p)
            need = need if need != INF else DEFAULT_PRECISION
            return PadicNum.from_rational(x, self.p, max(int(need), 1) + 2)
        return NotImplemented

    def __add__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        a, p = self, self.p
        A = min(a.abs_prec, b.abs_prec)
        if a.is_zero() and b.is_zero():
            return PadicNum.zero(p, A)
        if a.is_zero() or b.is_zero():
            x = b if a.is_zero() else a
            if A == INF:
                return x
            if A <= x.val:
                return PadicNum.zero(p, A)
            return PadicNum(p, x.val, x.unit % p ** (A - x.val), A - x.val)
        v = min(a.val, b.val)
        M = A - v
        if M <= 0:
            return PadicNum.zero(p, A)
        mod = p**M
        x = (a.unit * p ** (a.val - v) + b.unit * p ** (b.val - v)) % mod
        if x == 0:
            return PadicNum.zero(p, A)
        w = _vp(x, p)
        return PadicNum(p, v + w, x // p**w, M - w)

    __radd__ = __add__

    def __neg__(self):
        if self.is_zero():
            return self
        mod = self.p**self.prec
        return PadicNum(self.p, self.val, (-self.unit) % mod, self.prec)

    def __sub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return self + (-b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        b = self._coerce(other, mul=True)
        if b is NotImplemented:
            return b
        a, p = self, self.p
        if a.is_zero() or b.is_zero():
            if a.is_zero() and b.is_zero():
                return PadicNum.zero(p, a.prec + b.prec)
            z, x = (a, b) if a.is_zero() else (b, a)
            return PadicNum.zero(p, z.prec + x.val)
        N = min(a.prec, b.prec)
        return PadicNum(p, a.val + b.val, a.unit * b.unit % p**N, N)

    __rmul__ = __mul__

    def inverse(self) -> "PadicNum":
        if self.is_zero():
            raise ZeroDivisionError("inverse of p-adic zero")
        mod = self.p**self.prec
        return PadicNum(self.p, -self.val, pow(self.unit, -1, mod), self.prec)

    def __truediv__(self, other):
        b = self._coerce(other, mul=True)
        if b is NotImplemented:
            return b
        return self * b.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other, mul=True) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = PadicNum.from_rational(1, self.p, self.prec if not self.is_zero() else DEFAULT_PRECISION)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, PadicNum) and other.p != self.p:
            return False
        try:
            d = self - other
        except TypeError:
            return False
        if d is NotImplemented:
            return False
        return d.is_zero()

    __hash__ = None

    def __repr__(self) -> str:
        return format_padic(self)


def _vq(q: Fraction, p: int):
    if q == 0:
        return INF
    return _vp(q.numerator, p) - _vp(q.denominator, p)


def pa_norm(x: PadicNum) -> Fraction:
    return x.norm()


def pa_congruent(a: PadicNum, b: PadicNum, n: int) -> bool:
    """a ≡ b (mod p^n), i.e. |a - b|_p ≤ p^-n."""
    if isinstance(a, PadicNum) and isinstance(b, PadicNum) and a.p != b.p:
        raise PadicError(f"mixed primes {a.p} and {b.p}")
    d = a - b
    if d.is_zero():
        if d.abs_prec < n:
            raise PrecisionError(f"difference known only modulo p^{d.abs_prec}")
        return True
    return d.val >= n


# -- Hensel lifting ----------------------------------------------------------


def _as_padic(c, p: int, N: int) -> PadicNum:
    if isinstance(c, PadicNum):
        return c
    return PadicNum.from_rational(c, p, N)


def _integral_residues(coeffs, p: int, M: int) -> tuple[list[int], int]:
    """Integer representatives of Z_p coefficients and the usable precision."""
    out = []
    for c in coeffs:
        c = _as_padic(c, p, M)
        if not c.is_zero() and c.val < 0:
            raise HenselError("coefficients must lie in Z_p")
        M = min(M, c.abs_prec) if c.abs_prec != INF else M
        out.append(c)
    M = int(M)
    mod = p**M
    return [0 if c.is_zero() else c.unit * p**c.val % mod for c in out], M


def _peval(cs: Sequence[int], x: int, mod: int) -> int:
    acc = 0
    for c in reversed(cs):
        acc = (acc * x + c) % mod
    return acc


def _pderiv(cs: Sequence[int]) -> list[int]:
    return [i * c for i, c in enumerate(cs)][1:]


def _newton_lift(cs: list[int], a: int, p: int, M: int) -> int:
    d = _pderiv(cs)
    k = 1
    while k < M:
        k = min(2 * k, M)
        mod = p**k
        a = (a - _peval(cs, a, mod) * pow(_peval(d, a, mod), -1, mod)) % mod
    return a % p**M


def hensel_lift(F, a0: PadicNum, N: int = DEFAULT_PRECISION) -> PadicNum:
    """Lift a simple root of F modulo p to a root in Z_p known modulo p^N."""
    coeffs = F.coeffs if isinstance(F, IntPoly) else list(F)
    p = a0.p
    if not a0.is_zero() and a0.val < 0:
        raise HenselError("starting point must satisfy |a0|_p <= 1")
    cs, M = _integral_residues(coeffs, p, N)
    a = 0 if a0.is_zero() else a0.unit * p**a0.val % p
    if _peval(cs, a, p):
        raise NonRootResidueError(f"F(a0) is not divisible by {p}")
    if _peval(_pderiv(cs), a, p) == 0:
        raise SingularDerivativeError(f"F'(a0) is divisible by {p}")
    return PadicNum.from_residue(_newton_lift(cs, a, p, M), p, M)


# -- unit-ball witnesses ----------------------------------------------------------


@dataclass(frozen=True)
class UnitBallWitness:
    """y with y^e = 1 + p x^e (e = 2 for odd p, e = 3 for p = 2)."""

    y: PadicNum
    exponent: int


@dataclass(frozen=True)
class NotUnitBall:
    """|x|_p > 1: v_p(1 + p x^e) = 1 + e v_p(x) is not divisible by e."""

    valuation: int
    exponent: int

    def __str__(self) -> str:
        return (f"v_p(1+p*x^{self.exponent}) = {self.valuation} is not divisible by "
                f"{self.exponent}, so no {'square' if self.exponent == 2 else 'cube'} root")


def lemma2_exponent(p: int) -> int:
    return 3 if p == 2 else 2


def lemma2_witness(x: PadicNum, N: int | None = None) -> UnitBallWitness | NotUnitBall:
    p = x.p
    e = lemma2_exponent(p)
    if not x.is_zero() and x.val < 0:
        return NotUnitBall(1 + e * x.val, e)
    one = PadicNum.from_rational(1, p, N or DEFAULT_PRECISION)
    c = 1 + p * x**e if not x.is_zero() else one
    N = N or int(min(c.abs_prec, DEFAULT_PRECISION * 4))
    F = [-c] + [0] * (e - 1) + [1]
    return UnitBallWitness(hensel_lift(F, one, N), e)


# -- digit separation ---------------------------------------------------------------


def separate(c: PadicNum, d: PadicNum) -> tuple[int, Fraction]:
    """(m, u) with |(c-u)/p^(m+1)|_p <= 1 < |(d-u)/p^(m+1)|_p."""
    if c.p != d.p:
        raise PadicError(f"mixed primes {c.p} and {d.p}")
    p = c.p
    s = min(c.val, d.val)
    top = min(c.abs_prec, d.abs_prec)
    if s == INF or s >= top:
        raise PrecisionError("values are indistinguishable at the working precision")
    k = s
    while k < top:
        ck, dk = c.digit(k), d.digit(k)
        if ck != dk:
            u = sum(Fraction(c.digit(i)) * Fraction(p) ** i for i in range(s, k + 1))
            return k, u
        k += 1
    raise PrecisionError("values are indistinguishable at the working precision")


# -- root finding ----------------------------------------------------------------------


@dataclass
class PadicRootReport:
    roots: list[PadicNum]
    precision_limited: bool = False
    notes: list[str] = field(default_factory=list)


def _taylor_shift(cs: Sequence[int], a: int, p: int, mod: int) -> list[int]:
    """Coefficients in w of Q(a + p w) modulo ``mod``."""
    acc: list[int] = [0]
    for c in reversed(cs):
        nxt = [0] * (len(acc) + 1)
        for i, x in enumerate(acc):
            nxt[i] = (nxt[i] + x * a) % mod
            nxt[i + 1] = (nxt[i + 1] + x * p) % mod
        nxt[0] = (nxt[0] + c) % mod
        acc = nxt
    return acc


def _zp_roots(cs: list[int], p: int, M: int, depth: int, max_depth: int):
    """Roots in Z_p of a polynomial known mod p^M with a unit coefficient."""
    out: list[tuple[int, int]] = []
    limited = False
    d = _pderiv(cs)
    for a in range(p):
        if _peval(cs, a, p):
            continue
        if _peval(d, a, p):
            out.append((_newton_lift(cs, a, p, M), M))
            continue
        if depth >= max_depth or M <= 1:
            limited = True
            continue
        mod = p**M
        shifted = _taylor_shift(cs, a, p, mod)
        c = min((_vp(x, p) for x in shifted if x), default=INF)
        if c >= M:
            limited = True
            continue
        sub, lim = _zp_roots([x // p**c for x in shifted], p, M - c, depth + 1, max_depth)
        limited |= lim
        out.extend(((a + p * w) % p ** (pr + 1), pr + 1) for w, pr in sub)
    return out, limited


def _lower_hull(points: list[tuple[int, int]]) -> list[tuple[int, int]]:
    hull: list[tuple[int, int]] = []
    for pt in points:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (y2 - y1) * (pt[0] - x1) >= (pt[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(pt)
    return hull


def roots_of(coeffs: Sequence, p: int, N: int = DEFAULT_PRECISION) -> PadicRootReport:
    """Roots in Q_p of a polynomial with rational or p-adic coefficients."""
    work = N * 2 + 8
    cs = [_as_padic(c, p, work) for c in coeffs]
    report = PadicRootReport([])
    while cs and cs[-1].is_zero():
        if cs[-1].abs_prec != INF:
            report.precision_limited = True
        cs.pop()
    if not cs:
        raise PadicError("root finding for the zero polynomial")
    roots: list[PadicNum] = []
    if len(cs) > 1 and cs[0].is_zero():
        if cs[0].abs_prec != INF:
            report.precision_limited = True
        roots.append(PadicNum.zero(p))
        while len(cs) > 1 and cs[0].is_zero():
            cs.pop(0)
    pts = [(i, c.val) for i, c in enumerate(cs) if not c.is_zero()]
    hull = _lower_hull(pts)
    for (i, vi), (j, vj) in zip(hull, hull[1:]):
        slope = Fraction(vj - vi, j - i)
        sigma = -slope
        if sigma.denominator != 1:
            report.notes.append(
                f"Newton slope {slope} gives root valuation {sigma}, not an integer")
            continue
        sigma = int(sigma)
        scaled = [c * Fraction(p) ** (sigma * k) if not c.is_zero() else c for k, c in enumerate(cs)]
        mu = min(c.val for c in scaled if not c.is_zero())
        scaled = [c * Fraction(p) ** (-mu) for c in scaled]
        M = int(min(min((c.abs_prec for c in scaled if c.abs_prec != INF), default=work), work))
        if M < 1:
            report.precision_limited = True
            continue
        mod = p**M
        ints = [0 if c.is_zero() else c.unit * p**c.val % mod for c in scaled]
        found, lim = _zp_roots(ints, p, M, 0, 2 * N)
        report.precision_limited |= lim
        for z, pr in found:
            if z % p == 0:
                continue
            roots.append(PadicNum(p, sigma, z, pr).truncate(N))
    if not roots and not report.notes:
        report.notes.append("no residue lifts to a root")
    roots.sort(key=lambda r: (0, 0) if r.is_zero() else (1, r.sort_key()))
    report.roots = roots
    return report


def padic_roots(P: IntPoly, p: int, N: int = DEFAULT_PRECISION) -> PadicRootReport:
    """All roots of P in Q_p to N significant digits."""
    if P.is_zero():
        raise PolyError("p-adic roots of the zero polynomial")
    return roots_of(squarefree_part(P).coeffs, p, N)


# -- literals ----------------------------------------------------------------------------


def format_padic(x: PadicNum) -> str:
    if x.is_zero():
        return f"pad{{p={x.p}; val=inf; digits=[]}}"
    return f"pad{{p={x.p}; val={x.val}; digits=[{','.join(str(d) for d in x.digits)}]}}"


_PAD_RE = re.compile(
    r"^\s*pad\s*\{\s*p\s*=\s*(\d+)\s*;\s*val\s*=\s*(-?\d+|inf)\s*;\s*digits\s*=\s*\[([^\]]*)\]\s*\}\s*$")


def parse_padic(text: str) -> PadicNum:
    m = _PAD_RE.match(text)
    if not m:
        raise PadicError(f"malformed p-adic literal: {text!r}")
    p = int(m.group(1))
    val = INF if m.group(2) == "inf" else int(m.group(2))
    body = m.group(3).strip()
    digits = [int(d) for d in body.split(",")] if body else []
    return PadicNum.from_digits(p, val, digits)
