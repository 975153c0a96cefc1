"""Constructions of adequate sets for real and p-adic algebraic numbers."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import floor, ceil

from .adequacy import Budget, VerifyResult, verify_symbolic
from .carriers import PadicCarrier, RealCarrier
from .constraints import AdequateSet, make_set
from .padic import (NotUnitBall, PadicNum, PadicRootReport, PrecisionError, lemma2_witness,
                    padic_roots, separate)
from .polyarith import IntPoly, primitive_part, sign_at, sturm_count
from .realalg import RealAlg, ra_rational, ra_sqrt, real_roots

DEFAULT_SIZE_LIMIT = 10**5
SEPARATION_MARGIN = 4
MAX_DENOMINATOR = 16


class BuildError(ValueError):
    pass


class SizeGuardError(BuildError):
    pass


class ChainRejected(BuildError):
    """The compact set failed verification; ``result`` holds the diagnostics."""

    def __init__(self, message: str, aset: AdequateSet, result: VerifyResult):
        super().__init__(message)
        self.aset, self.result = aset, result


@dataclass
class RealBuildSpec:
    r: RealAlg
    poly: IntPoly
    alpha: Fraction
    beta: Fraction
    a: int
    size_limit: int = DEFAULT_SIZE_LIMIT


@dataclass
class PadicBuildSpec:
    r: PadicNum
    P: IntPoly
    roots: PadicRootReport
    separators: list = field(default_factory=list)
    witnesses: list = field(default_factory=list)
    a: int = 0


# -- real: interval choice -----------------------------------------------------------


def _one_root_closed(P: IntPoly, lo: Fraction, hi: Fraction) -> bool:
    return bool(sign_at(P, lo)) and bool(sign_at(P, hi)) and sturm_count(P, (lo, hi)) == 1


def choose_alpha_beta(r: RealAlg) -> tuple[Fraction, Fraction]:
    """Rationals alpha < r < beta with small denominators and r the only root between."""
    node = r.materialize()
    P = node.poly
    for den in itertools.chain([1, 2, 4, 8, MAX_DENOMINATOR], (2**k for k in itertools.count(5))):
        while node.rational is None and (node.hi - node.lo) * den > 1:
            node.bisect()
        if node.rational is not None:
            q = node.rational
            lo, hi = Fraction(floor(q * den) - 1, den), Fraction(ceil(q * den) + 1, den)
        else:
            lo, hi = Fraction(floor(node.lo * den), den), Fraction(ceil(node.hi * den), den)
        if _one_root_closed(P, lo, hi):
            return lo, hi
        if den > 2**40:
            break
    raise BuildError("could not find a rational interval around r")


def real_build_spec(r: RealAlg, size_limit: int = DEFAULT_SIZE_LIMIT) -> RealBuildSpec:
    P = primitive_part(r.defining)
    alpha, beta = choose_alpha_beta(r)
    a = max([abs(c) for c in P.coeffs] + [abs(alpha.numerator), alpha.denominator,
                                           abs(beta.numerator), beta.denominator])
    return RealBuildSpec(r, P, alpha, beta, a, size_limit)


def _power_sums(r, n: int, a: int, zero):
    """Every sum b_0 + b_1 r + ... + b_n r^n with integer |b_i| <= a."""
    powers = [None] + [r ** i for i in range(1, n + 1)]
    out = []
    for bs in itertools.product(range(-a, a + 1), repeat=n + 1):
        acc = zero + bs[0]
        for i in range(1, n + 1):
            if bs[i]:
                acc = acc + powers[i] * bs[i]
        out.append(acc)
    return out


def build_real_proof1(r: RealAlg, size_limit: int = DEFAULT_SIZE_LIMIT) -> AdequateSet:
    """Power sums of r with bounded integer coefficients plus the two square-root certificates."""
    spec = real_build_spec(r, size_limit)
    n, a = spec.poly.degree, spec.a
    count = (2 * a + 1) ** (n + 1)
    if count > size_limit:
        raise SizeGuardError(f"{count} power sums exceed the size limit {size_limit}; "
                             "use the chain builder instead")
    R = RealCarrier()
    al, be = ra_rational(spec.alpha), ra_rational(spec.beta)
    extra = [al, r - al, ra_sqrt(r - al), be, be - r, ra_sqrt(be - r)]
    values = [r] + _power_sums(r, n, a, ra_rational(0)) + extra
    return make_set(values, 1, R, dedupe=True)


# -- real: the x0^2 transform -----------------------------------------------------------


def _qpoly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def transform_proof2(T: IntPoly, alpha, beta) -> IntPoly:
    """(1+x^2)^d T(alpha + (beta-alpha)/(1+x^2)), integral, primitive, positive leading term."""
    alpha, beta = Fraction(alpha), Fraction(beta)
    if T.is_zero():
        raise BuildError("zero polynomial")
    if not alpha < beta:
        raise BuildError("need alpha < beta")
    if not (sign_at(T, alpha) and sign_at(T, beta)):
        raise BuildError("T vanishes at an interval endpoint")
    cnt = sturm_count(T, (alpha, beta))
    if cnt != 1:
        raise BuildError(f"T has {cnt} roots in [{alpha}, {beta}], need exactly one")
    d = T.degree
    one_x2 = [Fraction(1), Fraction(0), Fraction(1)]
    inner = [alpha + (beta - alpha), Fraction(0), alpha]  # alpha (1+x^2) + (beta-alpha)
    acc = [Fraction(0)]
    for i, c in enumerate(T.coeffs):
        if not c:
            continue
        term = [Fraction(c)]
        for _ in range(i):
            term = _qpoly_mul(term, inner)
        for _ in range(d - i):
            term = _qpoly_mul(term, one_x2)
        acc = acc + [Fraction(0)] * (len(term) - len(acc))
        acc = [x + (term[k] if k < len(term) else 0) for k, x in enumerate(acc)]
    out = primitive_part(IntPoly.from_rational(acc))
    roots = real_roots(out)
    if len(roots) != 2 or not roots[0] == -roots[1]:
        raise BuildError(f"transformed polynomial has {len(roots)} real roots, expected a symmetric pair")
    return out


def proof2_recover(T2: IntPoly, alpha, beta) -> tuple[RealAlg, RealAlg]:
    """The positive root x0 of the transform and alpha + (beta-alpha)/(1+x0^2)."""
    roots = real_roots(T2)
    x0 = roots[-1]
    return x0, ra_rational(alpha) + ra_rational(Fraction(beta) - Fraction(alpha)) / (x0 * x0 + 1)


# -- real: compact chain sets -----------------------------------------------------------------


def _integers(M: int) -> list[RealAlg]:
    out = [ra_rational(0)]
    for k in range(1, M + 1):
        out += [ra_rational(k), ra_rational(-k)]
    return out


def chain_elements(r: RealAlg, certificates: bool = True, alpha=None, beta=None) -> list:
    P = primitive_part(r.defining)
    n = P.degree
    if certificates:
        if alpha is None or beta is None:
            alpha, beta = choose_alpha_beta(r)
        bound = [alpha.numerator, alpha.denominator, beta.numerator, beta.denominator]
    else:
        bound = []
    M = max([abs(c) for c in P.coeffs] + [abs(x) for x in bound] + [1])
    vals = [r] + _integers(M)
    powers = [ra_rational(1), r]
    for _ in range(2, n + 1):
        powers.append(powers[-1] * r)
    vals += powers[2:]
    s = ra_rational(P.coeffs[0])
    for i in range(1, n + 1):
        term = powers[i] * P.coeffs[i]
        s = s + term
        vals += [term, s]
    if certificates:
        al, be = ra_rational(alpha), ra_rational(beta)
        vals += [al, be, r - al, ra_sqrt(r - al), be - r, ra_sqrt(be - r)]
    return vals


def build_real_chain(r: RealAlg, certificates: bool = True, verify: bool = True,
                     budget: Budget | None = None) -> AdequateSet:
    """Compact set: integers, powers, the defining relation and interval certificates.

    The set is verified before it is returned; a failing set raises
    ``ChainRejected`` carrying the verifier result.
    """
    A = make_set(chain_elements(r, certificates), 1, RealCarrier(), dedupe=True)
    if verify:
        res = verify_symbolic(A, budget)
        if not res.adequate:
            raise ChainRejected(f"chain set rejected: {res.label}", A, res)
    return A


def build_real_proof2(r: RealAlg, budget: Budget | None = None) -> AdequateSet:
    """r = alpha + (beta-alpha)/(1+x0^2) with x0 a root of the even transform.

    Starts from the uncertified chain set of x0 and adds the intermediate values;
    both conjugates +-x0 give the same x0^2, which is what pins r.
    """
    alpha, beta = choose_alpha_beta(r)
    T2 = transform_proof2(primitive_part(r.defining), alpha, beta)
    x0, back = proof2_recover(T2, alpha, beta)
    if not back == r:
        raise BuildError("transform did not recover r")
    w = x0 * x0
    one = ra_rational(1)
    al, gap = ra_rational(alpha), ra_rational(beta - alpha)
    tail = [w, w + one, one / (w + one), gap / (w + one)]
    rats = [al, gap] + _integers(max(abs(alpha.numerator), alpha.denominator,
                                     abs((beta - alpha).numerator), (beta - alpha).denominator))
    vals = [r] + chain_elements(x0, certificates=False) + tail + rats
    A = make_set(vals, 1, RealCarrier(), dedupe=True)
    res = verify_symbolic(A, budget)
    if not res.adequate:
        raise ChainRejected(f"composed set rejected: {res.label}", A, res)
    return A


# -- p-adic ------------------------------------------------------------------------------------


def padic_build_spec(P: IntPoly, r: PadicNum, N: int) -> PadicBuildSpec:
    p = r.p
    val = _peval(P, r)
    if not val.is_zero():
        raise BuildError("r is not a root of P at the working precision")
    rep = padic_roots(P, p, N)
    mine = [i for i, x in enumerate(rep.roots) if x == r]
    if len(mine) != 1:
        raise PrecisionError(f"r matches {len(mine)} computed roots at precision {N}")
    spec = PadicBuildSpec(r, P, rep)
    for j, other in enumerate(rep.roots):
        if j == mine[0]:
            continue
        try:
            m, u = separate(r, other)
        except PrecisionError as e:
            raise PrecisionError(f"roots not separable at precision {N}: {e}") from None
        room = min(r.abs_prec, other.abs_prec)
        if m + 1 + SEPARATION_MARGIN > room:
            raise PrecisionError(f"roots not separable at precision {N}: they agree up to "
                                 f"p^{m} and only {room} digits are known")
        z = (r - u) / PadicNum.from_rational(Fraction(p) ** (m + 1), p, N + 8)
        w = lemma2_witness(z)
        if isinstance(w, NotUnitBall):
            raise BuildError(f"separator failed for root {j + 1}: {w}")
        spec.separators.append((m, u))
        spec.witnesses.append((z, w.y))
    a = max([p] + [abs(c) for c in P.coeffs]
            + [max(abs(u.numerator), u.denominator) for _, u in spec.separators]
            + [abs(m + 1) for m, _ in spec.separators])
    spec.a = a
    return spec


def _peval(P: IntPoly, x: PadicNum) -> PadicNum:
    acc = PadicNum.zero(x.p)
    for c in reversed(P.coeffs):
        acc = acc * x + c
    return acc


def build_padic_thm7(P: IntPoly, r: PadicNum, N: int = 48,
                     size_limit: int = DEFAULT_SIZE_LIMIT) -> AdequateSet:
    spec = padic_build_spec(P, r, N)
    p, a = r.p, spec.a
    n = P.degree
    count = (2 * a + 1) ** (n + 1)
    if count > size_limit:
        raise SizeGuardError(f"{count} power sums exceed the size limit {size_limit}")
    C = PadicCarrier(p, N)
    vals = [r] + _power_sums(r, n, a, PadicNum.zero(p))
    vals += [C.from_rational(Fraction(p) ** w) for w in range(-a, a + 1)]
    pp = C.from_int(p)
    for (m, u), (z, y) in zip(spec.separators, spec.witnesses):
        uu = C.from_rational(u)
        vals += [uu, r - uu, z, z * z, z * z * z, pp * z * z, pp * z * z * z, y, y * y, y * y * y]
    vals = [v.truncate(N) if not v.is_zero() else v for v in vals]
    return make_set(vals, 1, C, dedupe=True)


__all__ = ["BuildError", "SizeGuardError", "ChainRejected", "RealBuildSpec", "PadicBuildSpec",
           "choose_alpha_beta", "real_build_spec", "build_real_proof1", "transform_proof2",
           "proof2_recover", "chain_elements", "build_real_chain", "build_real_proof2",
           "padic_build_spec", "build_padic_thm7"]
