"""Exact univariate polynomial arithmetic, Sturm sequences and resultants.

Integer polynomials are stored with ascending coefficients (``c0, c1, ...``).
The small multivariate :class:`SymPoly` type carries the symbolic values used
by the adequacy search.
"""

from __future__ import annotations

import operator
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Callable, Iterable, Sequence


class PolyError(ValueError):
    """Raised for invalid polynomial input (zero polynomial, endpoint roots...)."""


class EndpointRootError(PolyError):
    pass


def _trim(cs: Iterable) -> tuple:
    cs = list(cs)
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


@dataclass(frozen=True)
class IntPoly:
    coeffs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _trim(operator.index(c) for c in self.coeffs))

    @classmethod
    def from_rational(cls, coeffs: Sequence) -> "IntPoly":
        """Clear denominators of a rational coefficient list (result is primitive)."""
        fr = [Fraction(c) for c in coeffs]
        den = reduce(lambda a, b: a * b // gcd(a, b), (c.denominator for c in fr), 1)
        return primitive_part(cls([int(c * den) for c in fr]))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other: "IntPoly") -> "IntPoly":
        return IntPoly(_add(self.coeffs, other.coeffs))

    def __sub__(self, other: "IntPoly") -> "IntPoly":
        return IntPoly(_add(self.coeffs, tuple(-c for c in other.coeffs)))

    def __neg__(self) -> "IntPoly":
        return IntPoly(tuple(-c for c in self.coeffs))

    def __mul__(self, other) -> "IntPoly":
        if isinstance(other, int):
            return IntPoly(tuple(c * other for c in self.coeffs))
        return IntPoly(_mul(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "IntPoly":
        out = IntPoly((1,))
        for _ in range(k):
            out = out * self
        return out

    def __str__(self) -> str:
        return format_poly(self)


def _add(a: Sequence, b: Sequence) -> tuple:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return _trim(out)


def _mul(a: Sequence, b: Sequence) -> tuple:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _qdivmod(a: Sequence, b: Sequence) -> tuple[tuple, tuple]:
    """Division with remainder over Q (coefficients become Fractions)."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = [Fraction(c) for c in a]
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lb = Fraction(b[-1])
    db = len(b) - 1
    for i in range(len(r) - 1, db - 1, -1):
        c = r[i] / lb
        if c:
            q[i - db] = c
            for j in range(db + 1):
                r[i - db + j] -= c * b[j]
    return _trim(q), _trim(r[:db])


def content(P: IntPoly) -> int:
    return reduce(gcd, P.coeffs, 0)


def primitive_part(P: IntPoly) -> IntPoly:
    """Primitive associate of ``P`` with positive leading coefficient."""
    if P.is_zero():
        return P
    g = content(P)
    if P.lc < 0:
        g = -g
    return IntPoly(tuple(c // g for c in P.coeffs))


def derivative(P: IntPoly) -> IntPoly:
    return IntPoly(tuple(i * c for i, c in enumerate(P.coeffs))[1:])


def pseudo_rem(A: IntPoly, B: IntPoly) -> IntPoly:
    """lc(B)^(deg A - deg B + 1) * A mod B, computed in Z[x]."""
    if B.is_zero():
        raise ZeroDivisionError("pseudo-remainder by zero polynomial")
    r = list(A.coeffs)
    db, lb = B.degree, B.lc
    e = len(r) - 1 - db + 1
    while len(r) - 1 >= db and r:
        c = r[-1]
        r = [x * lb for x in r]
        shift = len(r) - 1 - db
        for j in range(db + 1):
            r[shift + j] -= c * B.coeffs[j]
        r = list(_trim(r))
        e -= 1
    if e > 0:
        r = [x * lb**e for x in r]
    return IntPoly(tuple(r))


def poly_gcd(A: IntPoly, B: IntPoly) -> IntPoly:
    """Primitive gcd in Z[x] (positive leading coefficient)."""
    A, B = primitive_part(A), primitive_part(B)
    if A.degree < B.degree:
        A, B = B, A
    while not B.is_zero():
        A, B = B, primitive_part(pseudo_rem(A, B))
    if A.degree == 0:
        return IntPoly((1,))
    return A


def exact_div(A: IntPoly, B: IntPoly) -> IntPoly:
    q, r = _qdivmod(A.coeffs, B.coeffs)
    if r or any(c.denominator != 1 for c in q):
        raise PolyError("inexact polynomial division")
    return IntPoly(tuple(int(c) for c in q))


def squarefree_part(P: IntPoly) -> IntPoly:
    if P.is_zero():
        raise PolyError("squarefree part of the zero polynomial")
    g = poly_gcd(P, derivative(P))
    return primitive_part(IntPoly.from_rational(_qdivmod(P.coeffs, g.coeffs)[0]))


def sign_at(P: IntPoly, x) -> int:
    """Exact sign of P(x) for an int or Fraction x."""
    x = Fraction(x)
    p, q = x.numerator, x.denominator
    n = P.degree
    acc = 0
    qp = 1
    # homogenised: sum c_i p^i q^(n-i)
    for c in reversed(P.coeffs):
        acc = acc * p + c * qp
        qp *= q
    return (acc > 0) - (acc < 0)


# -- Sturm machinery -------------------------------------------------------


def sturm_sequence(P: IntPoly) -> list[IntPoly]:
    """Sturm chain with primitive-part reduction after every pseudo-remainder."""
    seq = [primitive_part(P), primitive_part(derivative(P))]
    while not seq[-1].is_zero() and seq[-1].degree > 0:
        A, B = seq[-2], seq[-1]
        r = pseudo_rem(A, B)
        if r.is_zero():
            break
        # prem carries the factor lc(B)^(delta+1); keep only positive multiples
        g = content(r)
        if B.lc < 0 and (A.degree - B.degree + 1) % 2:
            g = -g
        seq.append(IntPoly(tuple(-c // g for c in r.coeffs)))
    return [s for s in seq if not s.is_zero()]


def _variations(seq: Sequence[IntPoly], x) -> int:
    signs = [s for s in (sign_at(p, x) for p in seq) if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


@dataclass(frozen=True)
class RatInterval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if not self.lo < self.hi:
            raise PolyError(f"empty interval ({self.lo}, {self.hi})")

    def __str__(self) -> str:
        return f"({self.lo}, {self.hi})"


def sturm_count(P: IntPoly, I, seq: Sequence[IntPoly] | None = None) -> int:
    """Number of distinct real roots of P in the open interval I."""
    if P.is_zero():
        raise PolyError("Sturm count of the zero polynomial")
    lo, hi = (I.lo, I.hi) if isinstance(I, RatInterval) else map(Fraction, I)
    if sign_at(P, lo) == 0 or sign_at(P, hi) == 0:
        raise EndpointRootError(f"polynomial vanishes at an endpoint of ({lo}, {hi})")
    seq = seq if seq is not None else sturm_sequence(P)
    return _variations(seq, lo) - _variations(seq, hi)


def root_bound(P: IntPoly) -> Fraction:
    """Cauchy bound: every real root lies strictly inside (-B, B)."""
    lc = abs(P.lc)
    return 1 + Fraction(max(abs(c) for c in P.coeffs[:-1]) if P.degree > 0 else 0, lc) + 1


def _nonroot_near(P: IntPoly, lo: Fraction, hi: Fraction) -> Fraction:
    mid = (lo + hi) / 2
    if sign_at(P, mid):
        return mid
    step = (hi - lo) / 4
    for k in range(1, 200):
        for c in (mid - step / k, mid + step / k):
            if lo < c < hi and sign_at(P, c):
                return c
    raise PolyError("could not find a non-root split point")


def isolate_real_roots(P: IntPoly) -> list[RatInterval]:
    """Isolating intervals of the real roots of a squarefree P, ascending."""
    if P.is_zero():
        raise PolyError("root isolation of the zero polynomial")
    if P.degree == 0:
        return []
    seq = sturm_sequence(P)
    B = root_bound(P)
    out = []
    stack = [(-B, B)]
    while stack:
        lo, hi = stack.pop()
        n = _variations(seq, lo) - _variations(seq, hi)
        if n == 0:
            continue
        if n == 1:
            out.append(RatInterval(lo, hi))
            continue
        m = _nonroot_near(P, lo, hi)
        stack.append((lo, m))
        stack.append((m, hi))
    out.sort(key=lambda I: I.lo)
    return out


# -- resultants ------------------------------------------------------------


def _res_q(a: Sequence, b: Sequence) -> Fraction:
    """Resultant of two univariate polynomials over Q via the Euclidean recurrence."""
    a, b = _trim(a), _trim(b)
    if not a or not b:
        return Fraction(0)
    res = Fraction(1)
    while True:
        da, db = len(a) - 1, len(b) - 1
        if db == 0:
            return res * Fraction(b[0]) ** da
        _, r = _qdivmod(a, b)
        if not r:
            return Fraction(0)
        dr = len(r) - 1
        if (da * db) % 2:
            res = -res
        res *= Fraction(b[-1]) ** (da - dr)
        a, b = b, r


def _interpolate(xs: Sequence[int], ys: Sequence[Fraction]) -> tuple:
    """Newton interpolation; returns ascending coefficients."""
    n = len(xs)
    dd = [Fraction(y) for y in ys]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - j])
    coeffs = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        # coeffs = coeffs * (x - xs[i]) + dd[i]
        new = [Fraction(0)] * n
        for k in range(n - 1):
            new[k + 1] += coeffs[k]
        for k in range(n):
            new[k] -= xs[i] * coeffs[k]
        new[0] += dd[i]
        coeffs = new
    return _trim(coeffs)


def eliminate(deg_bound: int, fiber: Callable[[int], tuple[Sequence, Sequence]]) -> IntPoly:
    """Res_y(A_x(y), B_x(y)) as a polynomial in x by evaluation/interpolation.

    ``fiber(x0)`` returns the two univariate polynomials in y at x = x0;
    ``deg_bound`` bounds the x-degree of the resultant.
    """
    xs = list(range(deg_bound + 1))
    ys = [_res_q(*fiber(x0)) for x0 in xs]
    coeffs = _interpolate(xs, ys)
    if any(c.denominator != 1 for c in coeffs):
        return IntPoly.from_rational(coeffs)
    return IntPoly(tuple(int(c) for c in coeffs))


def _shift_arg(P: Sequence, x0) -> tuple:
    """Coefficients in y of P(x0 - y)."""
    out = (0,)
    for c in reversed(P):
        out = _add(_mul(out, (x0, -1)), (c,))
    return out


def resultant(P: IntPoly, Q: IntPoly, role: str = "plain") -> IntPoly:
    """Resultant of P and Q.

    ``role`` selects what is eliminated:

    * ``"plain"``: Res(P, Q) as a constant polynomial;
    * ``"sum"``: Res_y(P(y), Q(x - y)), vanishing at every a + b;
    * ``"product"``: Res_y(P(y), y^m Q(x / y)), vanishing at every a * b.
    """
    if P.is_zero() or Q.is_zero():
        raise PolyError("resultant with the zero polynomial")
    if role == "plain":
        r = _res_q(P.coeffs, Q.coeffs)
        return IntPoly((int(r),))
    n, m = P.degree, Q.degree
    if role == "sum":
        R = eliminate(n * m, lambda x0: (P.coeffs, _shift_arg(Q.coeffs, x0)))
    elif role == "product":
        # y^m Q(x/y) = sum q_i x^i y^(m-i)
        def fiber(x0):
            return P.coeffs, tuple(Q.coeffs[m - k] * x0 ** (m - k) for k in range(m + 1))
        R = eliminate(n * m, fiber)
    else:
        raise PolyError(f"unknown resultant role {role!r}")
    return primitive_part(R)


def reciprocal(P: IntPoly) -> IntPoly:
    """Polynomial whose roots are the inverses of the nonzero roots of P."""
    cs = list(P.coeffs)
    while cs and cs[0] == 0:
        cs.pop(0)
    return primitive_part(IntPoly(tuple(reversed(cs))))


def substitute_square(P: IntPoly) -> IntPoly:
    """P(x^2)."""
    out = []
    for c in P.coeffs:
        out.extend((c, 0))
    return IntPoly(tuple(out))


# -- text format -----------------------------------------------------------


def format_poly(P: IntPoly) -> str:
    return "[" + ", ".join(str(c) for c in P.coeffs) + "]"


_POLY_RE = re.compile(r"^\s*\[\s*(-?\d+(?:\s*,\s*-?\d+)*)?\s*,?\s*\]\s*$")


def parse_poly(text: str) -> IntPoly:
    """Parse ``[c0, c1, ..., cn]``; a leading ``poly =`` is accepted."""
    t = text.strip()
    if t.startswith("poly"):
        t = t[4:].lstrip().lstrip("=")
    m = _POLY_RE.match(t)
    if not m:
        raise PolyError(f"malformed polynomial literal: {text!r}")
    body = m.group(1)
    return IntPoly(tuple(int(c) for c in body.split(","))) if body else IntPoly(())


def parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise PolyError(f"malformed rational {text!r}") from exc


def parse_interval(text: str) -> RatInterval:
    t = text.strip()
    if t.startswith("interval"):
        t = t[8:].lstrip().lstrip("=").strip()
    if not (t.startswith("(") and t.endswith(")")) or t.count(",") != 1:
        raise PolyError(f"malformed interval literal: {text!r}")
    lo, hi = t[1:-1].split(",")
    return RatInterval(parse_fraction(lo), parse_fraction(hi))


# -- symbolic multivariate polynomials --------------------------------------


class SymBudgetError(ArithmeticError):
    """A symbolic value exceeded the symbol-count or degree budget."""


def _sym_key(name: str):
    return [int(t) if t.isdigit() else t for t in re.split(r"(\d+)", name)]


class SymPoly:
    """Sparse polynomial in named symbols.

    Coefficients may be Fractions or any exact field values that support
    ``+``, ``*`` and truthiness as a nonzero test.  Zero terms are never stored
    and unused symbols are dropped, so two equal polynomials compare equal
    structurally.
    """

    __slots__ = ("symbols", "terms")

    def __init__(self, terms: dict | None = None, symbols: Sequence[str] = ()):
        symbols = tuple(symbols)
        terms = {e: c for e, c in (terms or {}).items() if c}
        used = [any(e[i] for e in terms) for i in range(len(symbols))]
        if not all(used) or list(symbols) != sorted(symbols, key=_sym_key):
            keep = sorted((s for s, u in zip(symbols, used) if u), key=_sym_key)
            pos = [symbols.index(s) for s in keep]
            terms = {tuple(e[i] for i in pos): c for e, c in terms.items()}
            symbols = tuple(keep)
        self.symbols = symbols
        self.terms = terms

    @classmethod
    def var(cls, name: str) -> "SymPoly":
        return cls({(1,): 1}, (name,))

    @classmethod
    def const(cls, c) -> "SymPoly":
        return cls({(): c})

    def _lift(self, syms: tuple) -> dict:
        pos = [syms.index(s) for s in self.symbols]
        out = {}
        for e, c in self.terms.items():
            full = [0] * len(syms)
            for p, k in zip(pos, e):
                full[p] = k
            out[tuple(full)] = c
        return out

    def _union(self, other: "SymPoly") -> tuple:
        return tuple(sorted(set(self.symbols) | set(other.symbols), key=_sym_key))

    @staticmethod
    def _coerce(x) -> "SymPoly":
        return x if isinstance(x, SymPoly) else SymPoly.const(x)

    def __add__(self, other) -> "SymPoly":
        other = self._coerce(other)
        syms = self._union(other)
        out = self._lift(syms)
        for e, c in other._lift(syms).items():
            out[e] = out[e] + c if e in out else c
        return SymPoly(out, syms)

    __radd__ = __add__

    def __neg__(self) -> "SymPoly":
        return SymPoly({e: -c for e, c in self.terms.items()}, self.symbols)

    def __sub__(self, other) -> "SymPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "SymPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "SymPoly":
        other = self._coerce(other)
        syms = self._union(other)
        a, b = self._lift(syms), other._lift(syms)
        out: dict = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                v = ca * cb
                out[e] = out[e] + v if e in out else v
        return SymPoly(out, syms)

    __rmul__ = __mul__

    def __truediv__(self, c) -> "SymPoly":
        if isinstance(c, SymPoly):
            if not c.is_constant():
                raise TypeError("division by a non-constant symbolic value")
            c = c.constant_value()
        if isinstance(c, int):
            c = Fraction(c)
        return SymPoly({e: v / c for e, v in self.terms.items()}, self.symbols)

    def __pow__(self, k: int) -> "SymPoly":
        out = SymPoly.const(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        return (self - other).is_zero()

    __hash__ = None

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.symbols

    def constant_value(self):
        return self.terms.get((), 0) if not self.symbols else None

    @property
    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def used_symbols(self) -> tuple:
        return self.symbols

    def substitute(self, name: str, value) -> "SymPoly":
        if name not in self.symbols:
            return self
        i = self.symbols.index(name)
        rest = self.symbols[:i] + self.symbols[i + 1:]
        out = SymPoly({}, rest)
        powers = {}
        for e, c in self.terms.items():
            k = e[i]
            if k not in powers:
                powers[k] = value ** k if k else 1
            mono = SymPoly({e[:i] + e[i + 1:]: c}, rest)
            out = out + mono * powers[k]
        return out

    def evaluate(self, mapping: dict):
        acc = 0
        for e, c in self.terms.items():
            t = c
            for s, k in zip(self.symbols, e):
                if k:
                    t = t * mapping[s] ** k
            acc = acc + t
        return acc

    def univariate_coeffs(self) -> list | None:
        """Ascending coefficient list when exactly one symbol remains."""
        if len(self.symbols) != 1:
            return None
        n = self.degree
        out = [0] * (n + 1)
        for (k,), c in self.terms.items():
            out[k] = c
        return out

    def check_budget(self, max_symbols: int = 4, max_degree: int = 32) -> "SymPoly":
        if len(self.symbols) > max_symbols:
            raise SymBudgetError(f"{len(self.symbols)} symbols exceeds budget {max_symbols}")
        if self.degree > max_degree:
            raise SymBudgetError(f"degree {self.degree} exceeds budget {max_degree}")
        return self

    def __repr__(self) -> str:
        return f"SymPoly({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=lambda e: (-sum(e), tuple(-k for k in e))):
            c = self.terms[e]
            mono = "*".join(s if k == 1 else f"{s}^{k}" for s, k in zip(self.symbols, e) if k)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def sym_normalize(e: SymPoly) -> tuple[SymPoly, IntPoly | None]:
    """Canonical form plus the univariate integer polynomial, when one symbol remains.

    The univariate extraction clears denominators and requires rational
    coefficients.
    """
    e = SymPoly(dict(e.terms), e.symbols)
    cs = e.univariate_coeffs()
    if cs is None:
        return e, None
    try:
        return e, IntPoly.from_rational(cs)
    except (TypeError, ValueError):
        return e, None
