"""Relation systems over finite element lists.

A system records, for a list of pairwise distinct values x_1..x_n, which of
x_i = 1, x_i + x_j = x_k and x_i * x_j = x_k (i <= j) hold.  Indices are
1-based and x_1 is always the distinguished value.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .carriers import Carrier, carrier_of
from .polyarith import IntPoly, SymPoly

MAX_ENUM_N = 3
COMBINE_DEGREE_LIMIT = 64


class ConstraintError(ValueError):
    pass


class DuplicateElementError(ConstraintError):
    pass


@dataclass(frozen=True)
class ConstraintSystem:
    n: int
    ones: frozenset = frozenset()
    adds: frozenset = frozenset()
    muls: frozenset = frozenset()
    distinguished: int = 1

    def __post_init__(self):
        object.__setattr__(self, "ones", frozenset(self.ones))
        object.__setattr__(self, "adds", frozenset(tuple(t) for t in self.adds))
        object.__setattr__(self, "muls", frozenset(tuple(t) for t in self.muls))
        for i in self.ones:
            if not 1 <= i <= self.n:
                raise ConstraintError(f"index {i} outside [1, {self.n}]")
        for t in self.adds | self.muls:
            if not all(1 <= x <= self.n for x in t):
                raise ConstraintError(f"triple {t} has an index outside [1, {self.n}]")
            if t[0] > t[1]:
                raise ConstraintError(f"triple {t} violates i <= j")

    def relation_count(self) -> int:
        return len(self.ones) + len(self.adds) + len(self.muls)

    def equations(self) -> list[SymPoly]:
        """The polynomial forms x_i - 1, x_i + x_j - x_k, x_i x_j - x_k."""
        x = [None] + [SymPoly.var(f"x{i}") for i in range(1, self.n + 1)]
        out = [x[i] - 1 for i in sorted(self.ones)]
        out += [x[i] + x[j] - x[k] for i, j, k in sorted(self.adds)]
        out += [x[i] * x[j] - x[k] for i, j, k in sorted(self.muls)]
        return out


def cs_extract(elements, distinguished: int = 1, carrier: Carrier | None = None,
               audit: bool = False) -> ConstraintSystem:
    """All relations satisfied by the list, with ``elements[distinguished-1]`` as x_1.

    The returned system refers to the reordered list ``reorder(elements, distinguished)``.
    """
    elements = reorder(elements, distinguished)
    if not elements:
        raise ConstraintError("empty element list")
    carrier = carrier or carrier_of(elements[0])
    index = carrier.index(elements)
    for i, v in enumerate(elements):
        j = index.find(v)
        if j != i:
            raise DuplicateElementError(f"elements {j + 1} and {i + 1} are equal")
    n = len(elements)
    one = carrier.one
    ones = {i + 1 for i, v in enumerate(elements) if v == one}
    adds, muls = set(), set()
    for i in range(n):
        for j in range(i, n):
            k = index.find(elements[i] + elements[j])
            if k is not None:
                adds.add((i + 1, j + 1, k + 1))
            k = index.find(elements[i] * elements[j])
            if k is not None:
                muls.add((i + 1, j + 1, k + 1))
    S = ConstraintSystem(n, ones, adds, muls)
    if audit:
        _audit(S, elements)
    return S


def _audit(S: ConstraintSystem, elements) -> None:
    """Recheck every pair against every member by direct comparison."""
    n = len(elements)
    for i in range(n):
        for j in range(i, n):
            s, p = elements[i] + elements[j], elements[i] * elements[j]
            for k in range(n):
                if (s == elements[k]) != ((i + 1, j + 1, k + 1) in S.adds):
                    raise ConstraintError(f"audit: add relation ({i + 1},{j + 1},{k + 1}) mismatch")
                if (p == elements[k]) != ((i + 1, j + 1, k + 1) in S.muls):
                    raise ConstraintError(f"audit: mul relation ({i + 1},{j + 1},{k + 1}) mismatch")


def reorder(elements, distinguished: int = 1) -> list:
    elements = list(elements)
    if not 1 <= distinguished <= len(elements):
        raise ConstraintError(f"distinguished index {distinguished} outside the list")
    d = distinguished - 1
    return [elements[d]] + elements[:d] + elements[d + 1:]


def cs_distinguished_constrained(S: ConstraintSystem) -> bool:
    if 1 in S.ones:
        return True
    return any(1 in t for t in S.adds | S.muls)


def cs_count_bound(n: int) -> int:
    if n < 1:
        raise ConstraintError("n must be positive")
    return (n + 1) ** (n * n + n + 1)


def cs_enumerate(n: int):
    """Every syntactic choice of relations on n variables.

    One slot chooses which variable (if any) equals 1; each pair i <= j has an
    add slot and a mul slot choosing the result index (or none).
    """
    if n < 1:
        raise ConstraintError("n must be positive")
    if n > MAX_ENUM_N:
        raise ConstraintError(f"enumeration is limited to n <= {MAX_ENUM_N}")
    pairs = [(i, j) for i in range(1, n + 1) for j in range(i, n + 1)]
    opts = range(n + 1)  # 0 means "no relation"
    for one in opts:
        ones = frozenset([one]) if one else frozenset()
        for add_choice in itertools.product(opts, repeat=len(pairs)):
            adds = frozenset((i, j, k) for (i, j), k in zip(pairs, add_choice) if k)
            for mul_choice in itertools.product(opts, repeat=len(pairs)):
                muls = frozenset((i, j, k) for (i, j), k in zip(pairs, mul_choice) if k)
                yield ConstraintSystem(n, ones, adds, muls)


# -- adequate sets -------------------------------------------------------------------


@dataclass(frozen=True)
class AdequateSet:
    """A candidate set with r = elements[0] and its extracted system."""

    carrier: Carrier = field(compare=False)
    elements: tuple
    system: ConstraintSystem = field(compare=False)

    @property
    def r(self):
        return self.elements[0]

    @property
    def distinguished(self) -> int:
        return 1

    def __len__(self) -> int:
        return len(self.elements)


def make_set(elements, distinguished: int = 1, carrier: Carrier | None = None,
             dedupe: bool = False) -> AdequateSet:
    elements = reorder(elements, distinguished)
    carrier = carrier or carrier_of(elements[0])
    if dedupe:
        elements = dedupe_values(elements, carrier)
    S = cs_extract(elements, 1, carrier)
    return AdequateSet(carrier, tuple(elements), S)


def dedupe_values(values, carrier: Carrier) -> list:
    """Drop repeated values, keeping first occurrences in order."""
    out: list = []
    approx: list = []
    real = carrier.tag == "real"
    for v in values:
        a = v.approx() if real else None
        for w, b in zip(out, approx):
            if real and abs(a - b) > 1e-9 * (1 + abs(a)):
                continue
            if w == v:
                break
        else:
            out.append(v)
            approx.append(a)
    return out


def cs_closure(A, variant: str, B=None) -> AdequateSet:
    """Sets for -r, 1/r, r1 + r2, r1 * r2 built from sets for r (and r2)."""
    r = A.r
    C = A.carrier
    if variant == "neg":
        new = [-r, C.zero]
        rest = list(A.elements)
    elif variant == "inv":
        if C.is_zero(r):
            raise ConstraintError("the inverse closure needs r != 0")
        new = [C.one / r if C.tag != "ff" else r.inverse(), C.one]
        rest = list(A.elements)
    elif variant in ("sum", "prod"):
        if B is None:
            raise ConstraintError(f"{variant} closure needs two sets")
        new = [r + B.r if variant == "sum" else r * B.r]
        rest = list(A.elements) + list(B.elements)
    else:
        raise ConstraintError(f"unknown closure variant {variant!r}")
    return make_set(new + rest, 1, C, dedupe=True)


# -- single-equation combination -------------------------------------------------------


def cs_combine_single(equations, no_root_poly: IntPoly,
                      max_degree: int = COMBINE_DEGREE_LIMIT) -> SymPoly:
    """One polynomial vanishing exactly where every equation vanishes.

    ``no_root_poly`` must have no root in the target field; its homogenization
    B(x, y) vanishes only at x = y = 0, so B(u, v) folds u = 0 and v = 0.
    """
    eqs = list(equations)
    if not eqs:
        raise ConstraintError("need at least one equation")
    T = no_root_poly
    if T.degree < 2:
        raise ConstraintError("the root-free polynomial must have degree >= 2")
    n = T.degree
    eqs = [SymPoly._coerce(e) for e in eqs]
    depth = (len(eqs) - 1).bit_length()
    est = max(e.degree for e in eqs) * n ** depth
    if est > max_degree:
        raise ConstraintError(f"combined degree {est} exceeds the limit {max_degree}; "
                              f"combining is limited to small systems")
    # pair up level by level so the degree grows with log(#equations)
    while len(eqs) > 1:
        nxt = [_fold(T, eqs[i], eqs[i + 1]) for i in range(0, len(eqs) - 1, 2)]
        if len(eqs) % 2:
            nxt.append(eqs[-1])
        eqs = nxt
    return eqs[0]


def _fold(T: IntPoly, u: SymPoly, v: SymPoly) -> SymPoly:
    # B(x, y) = sum a_i x^i y^(n-i)
    n = T.degree
    return sum((u ** i * v ** (n - i) * c for i, c in enumerate(T.coeffs) if c), SymPoly())


# -- text format --------------------------------------------------------------------------


def format_system(S: ConstraintSystem) -> str:
    lines = [f"n {S.n}"]
    lines += [f"one {i}" for i in sorted(S.ones)]
    lines += [f"add {i} {j} {k}" for i, j, k in sorted(S.adds)]
    lines += [f"mul {i} {j} {k}" for i, j, k in sorted(S.muls)]
    return "\n".join(lines) + "\n"


def parse_system(text: str, first_line: int = 1) -> ConstraintSystem:
    n = None
    ones, adds, muls = set(), set(), set()
    for ln, raw in enumerate(text.splitlines(), first_line):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        kw, args = parts[0], parts[1:]
        try:
            nums = [int(a) for a in args]
        except ValueError:
            raise ConstraintError(f"line {ln}: non-integer argument in {raw.strip()!r}") from None
        want = {"n": 1, "one": 1, "add": 3, "mul": 3}.get(kw)
        if want is None:
            raise ConstraintError(f"line {ln}: unknown declaration {kw!r}")
        if len(nums) != want:
            raise ConstraintError(f"line {ln}: {kw} takes {want} argument(s)")
        if kw == "n":
            if n is not None:
                raise ConstraintError(f"line {ln}: repeated n")
            if nums[0] < 1:
                raise ConstraintError(f"line {ln}: n must be positive")
            n = nums[0]
            continue
        if n is None:
            raise ConstraintError(f"line {ln}: relation before n")
        if any(not 1 <= x <= n for x in nums):
            raise ConstraintError(f"line {ln}: index outside [1, {n}]")
        if kw == "one":
            ones.add(nums[0])
        else:
            if nums[0] > nums[1]:
                raise ConstraintError(f"line {ln}: {kw} requires i <= j")
            (adds if kw == "add" else muls).add(tuple(nums))
    if n is None:
        raise ConstraintError("missing n declaration")
    return ConstraintSystem(n, ones, adds, muls)
