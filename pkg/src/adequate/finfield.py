"""Small finite fields GF(p^k) with every element enumerable."""

from __future__ import annotations

import itertools
import re
from functools import cached_property

MAX_FIELD_SIZE = 4096


class FieldError(ValueError):
    pass


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % d for d in range(2, int(n**0.5) + 1))


def _pmod(a: list[int], m: tuple[int, ...], p: int) -> list[int]:
    """Remainder of a modulo the monic polynomial m over GF(p)."""
    a = [x % p for x in a]
    k = len(m) - 1
    for i in range(len(a) - 1, k - 1, -1):
        c = a[i]
        if c:
            for j in range(k + 1):
                a[i - k + j] = (a[i - k + j] - c * m[j]) % p
    return a[:k]


def _monic_polys(p: int, d: int):
    for tail in itertools.product(range(p), repeat=d):
        yield tuple(reversed(tail)) + (1,)


def _divides(f: tuple, g: tuple, p: int) -> bool:
    """Does monic f divide g over GF(p)?"""
    r = _pmod(list(g), f, p)
    return not any(r)


def is_irreducible(m: tuple[int, ...], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg(m)/2."""
    k = len(m) - 1
    if k < 1:
        return False
    for d in range(1, k // 2 + 1):
        for f in _monic_polys(p, d):
            # enumerate ascending coefficients c0..c_{d-1}
            if _divides(f, m, p):
                return False
    return True


class FiniteField:
    """GF(p^k) = GF(p)[t] / (modulus)."""

    def __init__(self, p: int, k: int, modulus: tuple[int, ...]):
        self.p, self.k, self.modulus = p, k, tuple(modulus)
        self.size = p**k
        self._exp, self._log = self._tables()

    def _mul_codes_slow(self, a: int, b: int) -> int:
        va, vb = self.vector(a), self.vector(b)
        prod = [0] * (2 * self.k - 1)
        for i, x in enumerate(va):
            if x:
                for j, y in enumerate(vb):
                    prod[i + j] += x * y
        return self.code(_pmod(prod, self.modulus, self.p) if self.k > 1 else [prod[0] % self.p])

    def _tables(self):
        q = self.size
        order = q - 1
        for g in range(1, q):
            pows, x = [1], g
            while x not in (0, 1) and len(pows) < order:
                pows.append(x)
                x = self._mul_codes_slow(x, g)
            if len(pows) == order and x == 1:
                log = [0] * q
                for i, x in enumerate(pows):
                    log[x] = i
                return pows, log
        raise FieldError("no primitive element; modulus is not irreducible")

    # -- codes and vectors -----------------------------------------------------

    def vector(self, code: int) -> list[int]:
        out = []
        for _ in range(self.k):
            code, d = divmod(code, self.p)
            out.append(d)
        return out

    def code(self, vec) -> int:
        vec = list(vec) + [0] * (self.k - len(vec))
        return sum((c % self.p) * self.p**i for i, c in enumerate(vec[: self.k]))

    def add_codes(self, a: int, b: int) -> int:
        p, out, s = self.p, 0, 1
        for _ in range(self.k):
            a, x = divmod(a, p)
            b, y = divmod(b, p)
            out += ((x + y) % p) * s
            s *= p
        return out

    def neg_code(self, a: int) -> int:
        return self.code([-c for c in self.vector(a)])

    def mul_codes(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.size - 1)]

    def inv_code(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        return self._exp[(-self._log[a]) % (self.size - 1)]

    @property
    def exp_table(self) -> list[int]:
        return self._exp

    @property
    def log_table(self) -> list[int]:
        return self._log

    # -- elements -----------------------------------------------------------------

    def __call__(self, x) -> "GFElem":
        if isinstance(x, GFElem):
            return x
        if isinstance(x, int):
            return GFElem(self, x % self.p)
        return GFElem(self, self.code(x))

    def element(self, code: int) -> "GFElem":
        return GFElem(self, code)

    def elements(self) -> list["GFElem"]:
        return [GFElem(self, c) for c in range(self.size)]

    def gen(self) -> "GFElem":
        """The class of t."""
        return self([0, 1]) if self.k > 1 else self(0)

    def in_prime_field(self, x: "GFElem") -> bool:
        return x.code < self.p

    @cached_property
    def spec(self) -> str:
        return f"gf{{p={self.p};k={self.k};mod=[{','.join(map(str, self.modulus))}]}}"

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteField) and (self.p, self.k, self.modulus) == (
            other.p, other.k, other.modulus)

    def __hash__(self) -> int:
        return hash((self.p, self.k, self.modulus))

    def __repr__(self) -> str:
        return self.spec


class GFElem:
    __slots__ = ("field", "code")

    def __init__(self, field: FiniteField, code: int):
        self.field, self.code = field, code

    def _other(self, x) -> "GFElem":
        if isinstance(x, GFElem):
            if x.field is not self.field and x.field != self.field:
                raise FieldError("elements of different fields")
            return x
        if isinstance(x, int):
            return self.field(x)
        return NotImplemented

    def __add__(self, x):
        x = self._other(x)
        if x is NotImplemented:
            return x
        return GFElem(self.field, self.field.add_codes(self.code, x.code))

    __radd__ = __add__

    def __neg__(self):
        return GFElem(self.field, self.field.neg_code(self.code))

    def __sub__(self, x):
        x = self._other(x)
        if x is NotImplemented:
            return x
        return self + (-x)

    def __rsub__(self, x):
        return (-self) + x

    def __mul__(self, x):
        x = self._other(x)
        if x is NotImplemented:
            return x
        return GFElem(self.field, self.field.mul_codes(self.code, x.code))

    __rmul__ = __mul__

    def inverse(self) -> "GFElem":
        return GFElem(self.field, self.field.inv_code(self.code))

    def __truediv__(self, x):
        x = self._other(x)
        return self * x.inverse()

    def __rtruediv__(self, x):
        return self._other(x) * self.inverse()

    def __pow__(self, n: int) -> "GFElem":
        if n < 0:
            return self.inverse() ** (-n)
        out = GFElem(self.field, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __bool__(self) -> bool:
        return self.code != 0

    def __eq__(self, x) -> bool:
        if isinstance(x, int):
            x = self.field(x)
        return isinstance(x, GFElem) and x.code == self.code and x.field == self.field

    def __hash__(self) -> int:
        return hash(self.code)

    @property
    def vector(self) -> list[int]:
        return self.field.vector(self.code)

    def __repr__(self) -> str:
        return "[" + ",".join(map(str, self.vector)) + "]"


def ff_build(p: int, k: int, modulus=None) -> FiniteField:
    if not _is_prime(p):
        raise FieldError(f"{p} is not prime")
    if k < 1:
        raise FieldError("extension degree must be positive")
    if p**k > MAX_FIELD_SIZE:
        raise FieldError(f"field size {p}^{k} exceeds {MAX_FIELD_SIZE}")
    if modulus is not None:
        m = tuple(int(c) % p for c in modulus)
        if len(m) != k + 1 or m[-1] == 0:
            raise FieldError(f"modulus must have degree {k}")
        inv = pow(m[-1], -1, p)
        m = tuple(c * inv % p for c in m)
        if not is_irreducible(m, p):
            raise FieldError(f"modulus {list(modulus)} is reducible over GF({p})")
        return FiniteField(p, k, m)
    if k == 1:
        return FiniteField(p, 1, (0, 1))
    for m in _monic_polys(p, k):
        if is_irreducible(m, p):
            return FiniteField(p, k, m)
    raise FieldError("no irreducible modulus found")


def ff_frobenius(F: FiniteField, x: GFElem) -> GFElem:
    return F(x) ** F.p


_GF_RE = re.compile(r"^\s*gf\s*\{\s*p\s*=\s*(\d+)\s*;\s*k\s*=\s*(\d+)\s*(?:;\s*mod\s*=\s*\[([^\]]*)\])?\s*\}\s*$")


def parse_field(text: str) -> FiniteField:
    m = _GF_RE.match(text)
    if not m:
        raise FieldError(f"malformed field spec: {text!r}")
    mod = [int(c) for c in m.group(3).split(",")] if m.group(3) else None
    return ff_build(int(m.group(1)), int(m.group(2)), mod)


def parse_element(F: FiniteField, text: str) -> GFElem:
    t = text.strip()
    if not (t.startswith("[") and t.endswith("]")):
        raise FieldError(f"malformed field element: {text!r}")
    vec = [int(c) for c in t[1:-1].split(",") if c.strip()]
    if len(vec) != F.k or any(not 0 <= c < F.p for c in vec):
        raise FieldError(f"element {text!r} is not a vector of {F.k} digits mod {F.p}")
    return F(vec)
