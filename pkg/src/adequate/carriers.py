"""Uniform access to the three value domains used by adequate sets.

A carrier knows how to make small integers, test exact equality, find roots
of univariate polynomials whose coefficients are carrier values, order values
canonically, and read/write value literals.
"""

from __future__ import annotations

import bisect
import itertools
from fractions import Fraction

from .finfield import FiniteField, GFElem, parse_element, parse_field
from .padic import (DEFAULT_PRECISION, PadicError, PadicNum, format_padic, parse_padic,
                    roots_of)
from .polyarith import IntPoly
from .realalg import (RealAlg, format_alg, parse_alg, ra_rational, ra_sqrt,
                      real_roots)


class Unsupported(Exception):
    """The carrier cannot decide the requested root problem."""


class RootResult:
    """Roots in canonical order, plus a note when there are none or the search was limited."""

    __slots__ = ("roots", "reason", "precision_limited")

    def __init__(self, roots, reason: str = "", precision_limited: bool = False):
        self.roots, self.reason, self.precision_limited = roots, reason, precision_limited


def _trim(cs):
    cs = list(cs)
    while cs and not cs[-1]:
        cs.pop()
    return cs


class Carrier:
    tag = ""
    finite = False
    label_suffix = ""

    def from_int(self, n: int):
        raise NotImplementedError

    def from_rational(self, q):
        raise NotImplementedError

    @property
    def one(self):
        return self.from_int(1)

    @property
    def zero(self):
        return self.from_int(0)

    def eq(self, a, b) -> bool:
        return a == b

    def is_zero(self, a) -> bool:
        return not a

    def sort_key(self, a):
        raise NotImplementedError

    def samples(self):
        """Values to try when instantiating a free symbol."""
        for k in itertools.count():
            yield self.from_int((k + 1) // 2 * (1 if k % 2 else -1))

    def roots(self, coeffs) -> RootResult:
        raise NotImplementedError

    def index(self, values) -> "ValueIndex":
        return ValueIndex(self, values)

    def format(self, a) -> str:
        raise NotImplementedError

    def parse(self, text: str):
        raise NotImplementedError

    def header(self) -> str:
        raise NotImplementedError


# -- real algebraic numbers ---------------------------------------------------------


class RealCarrier(Carrier):
    tag = "real"

    def from_int(self, n):
        return ra_rational(n)

    def from_rational(self, q):
        return ra_rational(Fraction(q))

    def coerce(self, x):
        return x if isinstance(x, RealAlg) else ra_rational(Fraction(x))

    def sort_key(self, a):
        return _RealKey(a)

    def roots(self, coeffs) -> RootResult:
        cs = _trim(self.coerce(c) for c in coeffs)
        if not cs:
            raise ValueError("roots of the zero polynomial")
        n = len(cs) - 1
        if n == 0:
            return RootResult([], "nonzero constant")
        if all(c.is_rational() for c in cs):
            P = IntPoly.from_rational([c.rational for c in cs])
            out = real_roots(P)
            return RootResult(out, "" if out else f"{_show_poly(P)} has no real root")
        if n == 1:
            return RootResult([-cs[0] / cs[1]])
        if n == 2:
            a, b, c = cs[2], cs[1], cs[0]
            disc = b * b - 4 * a * c
            s = disc.sign()
            if s < 0:
                if b.is_zero():
                    return RootResult([], f"no real square root of {-c / a!r} < 0")
                return RootResult([], "negative discriminant, no real root")
            if s == 0:
                return RootResult([-b / (2 * a)])
            w = ra_sqrt(disc)
            out = [(-b - w) / (2 * a), (-b + w) / (2 * a)]
            out.sort(key=self.sort_key)
            return RootResult(out)
        raise Unsupported(f"degree-{n} equation with irrational coefficients")

    def format(self, a) -> str:
        return format_alg(a)

    def parse(self, text: str):
        return parse_alg(text)

    def header(self) -> str:
        return "real"


class _RealKey:
    __slots__ = ("v",)

    def __init__(self, v):
        self.v = v

    def __lt__(self, other):
        return self.v.compare(other.v) < 0

    def __eq__(self, other):
        return self.v == other.v


def _show_poly(P: IntPoly) -> str:
    terms = []
    for i in range(P.degree, -1, -1):
        c = P.coeffs[i]
        if c:
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            coef = str(c) if (not mono or abs(c) != 1) else ("-" if c < 0 else "")
            terms.append(f"{coef}{mono}")
    return " + ".join(terms).replace("+ -", "- ")


# -- p-adic numbers -----------------------------------------------------------------


class PadicCarrier(Carrier):
    tag = "padic"

    def __init__(self, p: int, N: int = DEFAULT_PRECISION):
        self.p, self.N = p, N
        self.label_suffix = f"@{N}"

    def from_int(self, n):
        return PadicNum.from_rational(n, self.p, self.N + 8)

    def from_rational(self, q):
        return PadicNum.from_rational(Fraction(q), self.p, self.N + 8)

    def sort_key(self, a):
        return (0, ()) if a.is_zero() else (1, a.sort_key())

    def samples(self):
        for k in itertools.count():
            yield self.from_int((k + 1) // 2 * (1 if k % 2 else -1))

    def roots(self, coeffs) -> RootResult:
        cs = [c if isinstance(c, PadicNum) else self.from_rational(c) for c in coeffs]
        cs = _trim(cs)
        if not cs:
            raise ValueError("roots of the zero polynomial")
        if len(cs) == 1:
            return RootResult([], "nonzero constant")
        rep = roots_of(cs, self.p, self.N)
        reason = ""
        if not rep.roots:
            reason = self._no_root_reason(cs) or "; ".join(rep.notes)
        return RootResult(rep.roots, reason, rep.precision_limited)

    def _no_root_reason(self, cs):
        # x^e - c: a pure power has no root when v(c) is not divisible by e
        e = len(cs) - 1
        if e in (2, 3) and all(c.is_zero() for c in cs[1:-1]) and not cs[0].is_zero():
            c = -cs[0] / cs[-1]
            if c.val % e:
                kind = "square" if e == 2 else "cube"
                return f"value has valuation {c.val}, not divisible by {e}: no {kind} root in Q_{self.p}"
        return ""

    def format(self, a) -> str:
        return format_padic(a)

    def parse(self, text: str):
        x = parse_padic(text)
        if x.p != self.p:
            raise PadicError(f"literal has p={x.p}, expected {self.p}")
        return x

    def header(self) -> str:
        return f"padic p={self.p} N={self.N}"


# -- finite fields ------------------------------------------------------------------


class FiniteFieldCarrier(Carrier):
    tag = "ff"
    finite = True

    def __init__(self, field: FiniteField):
        self.field = field

    def from_int(self, n):
        return self.field(n)

    def from_rational(self, q):
        q = Fraction(q)
        return self.field(q.numerator) / self.field(q.denominator)

    def sort_key(self, a):
        return a.code

    def elements(self):
        return self.field.elements()

    def samples(self):
        return iter(self.field.elements())

    def roots(self, coeffs) -> RootResult:
        cs = _trim(self.field(c) if not isinstance(c, GFElem) else c for c in coeffs)
        if not cs:
            raise ValueError("roots of the zero polynomial")
        out = []
        for x in self.field.elements():
            acc = self.field(0)
            for c in reversed(cs):
                acc = acc * x + c
            if not acc:
                out.append(x)
        return RootResult(out, "" if out else f"no root in GF({self.field.size})")

    def format(self, a) -> str:
        return repr(a)

    def parse(self, text: str):
        return parse_element(self.field, text)

    def header(self) -> str:
        return self.field.spec


# -- lookup of computed values among a finite list -------------------------------------


class ValueIndex:
    """Find the position of an exact value among a fixed list of distinct values."""

    def __init__(self, carrier: Carrier, values):
        self.carrier, self.values = carrier, list(values)
        self._kind = carrier.tag
        if self._kind == "ff":
            self._map = {v.code: i for i, v in enumerate(self.values)}
        elif self._kind == "real":
            approx = [(v.approx(), i) for i, v in enumerate(self.values)]
            approx.sort()
            self._keys = [a for a, _ in approx]
            self._pos = [i for _, i in approx]
        else:
            self._buckets: dict = {}
            for i, v in enumerate(self.values):
                self._buckets.setdefault(self._pkey(v), []).append(i)

    def _pkey(self, v):
        if v.is_zero():
            return ("z",)
        p = v.p
        return (v.val, v.unit % p ** min(2, v.prec))

    def find(self, x):
        """Index of x in the list, or None."""
        if self._kind == "ff":
            return self._map.get(x.code)
        if self._kind == "real":
            a = x.approx()
            tol = 1e-9 * (1 + abs(a))
            lo = bisect.bisect_left(self._keys, a - tol)
            hi = bisect.bisect_right(self._keys, a + tol)
            for t in range(lo, hi):
                i = self._pos[t]
                if self.values[i] == x:
                    return i
            return None
        for i in self._buckets.get(self._pkey(x), ()):
            if self.values[i] == x:
                return i
        if not x.is_zero() and x.prec < 2:
            for i, v in enumerate(self.values):
                if v == x:
                    return i
        return None


def parse_carrier(text: str) -> Carrier:
    t = text.strip()
    if t == "real":
        return RealCarrier()
    if t.startswith("padic"):
        fields = dict(kv.split("=", 1) for kv in t.split()[1:])
        try:
            return PadicCarrier(int(fields["p"]), int(fields.get("N", DEFAULT_PRECISION)))
        except (KeyError, ValueError) as e:
            raise ValueError(f"malformed p-adic carrier line: {text!r}") from e
    if t.startswith("gf"):
        return FiniteFieldCarrier(parse_field(t))
    raise ValueError(f"unknown carrier: {text!r}")


def carrier_of(value) -> Carrier:
    """A carrier suitable for the given value."""
    if isinstance(value, RealAlg):
        return RealCarrier()
    if isinstance(value, PadicNum):
        return PadicCarrier(value.p)
    if isinstance(value, GFElem):
        return FiniteFieldCarrier(value.field)
    raise TypeError(f"no carrier for {type(value).__name__}")


__all__ = ["Carrier", "RealCarrier", "PadicCarrier", "FiniteFieldCarrier", "RootResult",
           "Unsupported", "ValueIndex", "parse_carrier", "carrier_of"]
