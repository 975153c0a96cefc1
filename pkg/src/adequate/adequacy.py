"""Deciding whether every partial homomorphism on a set fixes its distinguished value.

Two procedures:

* ``verify_bruteforce_ff`` walks every map A -> GF(q) (exact, small fields only);
* ``verify_symbolic`` propagates values through the relation system, turns
  unresolved variables into symbols and branches on the carrier roots of any
  univariate equation that appears.  It never claims more than it has shown:
  anything it cannot settle comes back Inconclusive.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from . import _kernels
from .carriers import Unsupported
from .constraints import AdequateSet
from .polyarith import SymPoly

BRUTEFORCE_LIMIT = 10**8
TRACE_LIMIT = 200


class SearchSpaceError(ValueError):
    pass


class ReplayError(AssertionError):
    """A produced counterexample failed its own replay (internal bug guard)."""


@dataclass(frozen=True)
class Budget:
    max_symbols: int = 4
    max_degree: int = 32
    max_branches: int = 10_000

    def __post_init__(self):
        if min(self.max_symbols, self.max_degree, self.max_branches) < 1:
            raise ValueError("budgets must be positive")


@dataclass
class VerifyResult:
    verdict: str  # Adequate | Counterexample | Inconclusive
    assignment: list | None = None
    reason: str = ""  # free-symbol | budget | precision (Inconclusive only)
    detail: str = ""
    precision: int | None = None
    precision_limited: bool = False
    branches: int = 0
    symbols: int = 0
    method: str = ""
    trace: list = field(default_factory=list)

    @property
    def label(self) -> str:
        if self.verdict == "Adequate" and self.precision is not None:
            return f"Adequate@{self.precision}"
        return self.verdict

    @property
    def adequate(self) -> bool:
        return self.verdict == "Adequate"


# -- replay -------------------------------------------------------------------------


def check_assignment(aset: AdequateSet, f) -> tuple[bool, str]:
    """Does f satisfy every relation of the set while moving r?"""
    S, C = aset.system, aset.carrier
    if len(f) != S.n:
        return False, "assignment has the wrong length"
    one = C.one
    for i in sorted(S.ones):
        if not f[i - 1] == one:
            return False, f"f(x{i}) must be 1"
    for i, j, k in sorted(S.adds):
        if not f[i - 1] + f[j - 1] == f[k - 1]:
            return False, f"add relation ({i},{j},{k}) fails"
    for i, j, k in sorted(S.muls):
        if not f[i - 1] * f[j - 1] == f[k - 1]:
            return False, f"mul relation ({i},{j},{k}) fails"
    if f[0] == aset.r:
        return False, "f fixes r"
    return True, ""


def _checked(aset, f, **kw) -> VerifyResult:
    ok, why = check_assignment(aset, f)
    if not ok:
        raise ReplayError(f"counterexample does not replay: {why}")
    return VerifyResult("Counterexample", assignment=list(f), **kw)


# -- finite fields ------------------------------------------------------------------


def verify_bruteforce_ff(aset: AdequateSet, backend: str | None = None) -> VerifyResult:
    C = aset.carrier
    if C.tag != "ff":
        raise TypeError("brute force needs a finite-field carrier")
    F = C.field
    n = aset.system.n
    if F.size ** n > BRUTEFORCE_LIMIT:
        raise SearchSpaceError(f"{F.size}^{n} maps exceed the limit {BRUTEFORCE_LIMIT}")
    S = aset.system
    fn = _kernels.find_counterexample_py if backend == "python" else _kernels.find_counterexample
    codes, visited = fn(F.size, F.p, F.k, F.exp_table, F.log_table, n,
                        [i - 1 for i in sorted(S.ones)],
                        [(i - 1, j - 1, k - 1) for i, j, k in sorted(S.adds)],
                        [(i - 1, j - 1, k - 1) for i, j, k in sorted(S.muls)],
                        aset.r.code, 1)
    if codes is None:
        return VerifyResult("Adequate", branches=visited, method="bruteforce")
    return _checked(aset, [F.element(c) for c in codes], branches=visited, method="bruteforce")


def frobenius_counterexample(aset: AdequateSet):
    """x -> x^p restricted to A, when r lies outside the prime field."""
    F = aset.carrier.field
    if F.k < 2 or F.in_prime_field(aset.r):
        return None
    f = [x ** F.p for x in aset.elements]
    ok, why = check_assignment(aset, f)
    if not ok:
        raise ReplayError(f"Frobenius restriction does not replay: {why}")
    return f


# -- symbolic search ----------------------------------------------------------------


class _Prune(Exception):
    pass


class _Stop(Exception):
    def __init__(self, reason: str, detail: str):
        super().__init__(detail)
        self.reason, self.detail = reason, detail


class _State:
    __slots__ = ("vals", "open", "pending", "path")

    def __init__(self, vals, open_, pending, path):
        self.vals, self.open, self.pending, self.path = vals, open_, pending, path

    def copy(self) -> "_State":
        return _State(list(self.vals), set(self.open), list(self.pending), self.path)


class _Engine:
    def __init__(self, aset: AdequateSet, budget: Budget, assume=None):
        self.aset, self.C, self.budget = aset, aset.carrier, budget
        S = aset.system
        self.n = S.n
        rels = [("one", i - 1, i - 1, i - 1) for i in sorted(S.ones)]
        rels += [("add", i - 1, j - 1, k - 1) for i, j, k in sorted(S.adds)]
        rels += [("mul", i - 1, j - 1, k - 1) for i, j, k in sorted(S.muls)]
        self.rels = rels
        self.by_var = [[] for _ in range(self.n)]
        for rid, (_, i, j, k) in enumerate(rels):
            for v in {i, j, k}:
                self.by_var[v].append(rid)
        self.assume = dict(assume or {})
        self.branches = 0
        self.symbols_used = 0
        self.counter = 0
        self.trace: list[str] = []
        self.precision_limited = False
        self.inconclusive: _Stop | None = None

    # -- value helpers --------------------------------------------------------

    def _norm(self, v):
        if isinstance(v, SymPoly):
            if v.is_constant():
                c = v.terms.get((), 0)
                return self.C.from_int(c) if isinstance(c, int) else c
            return v
        if isinstance(v, int):
            return self.C.from_int(v)
        return v

    @staticmethod
    def _lift(v):
        return v if isinstance(v, SymPoly) else SymPoly.const(v)

    def _is_const(self, v) -> bool:
        return not isinstance(v, SymPoly)

    def _note(self, st: _State, msg: str) -> None:
        if len(self.trace) < TRACE_LIMIT:
            self.trace.append(f"[{st.path or 'root'}] {msg}")

    # -- propagation --------------------------------------------------------------

    def _assign(self, st: _State, u: int, value, work: list) -> None:
        value = self._norm(value)
        if isinstance(value, SymPoly) and value.degree > self.budget.max_degree:
            raise _Stop("budget", f"value degree {value.degree} exceeds {self.budget.max_degree}")
        st.vals[u] = value
        work.extend(rid for rid in self.by_var[u] if rid in st.open)

    def _equation(self, st: _State, E, what: str) -> None:
        E = self._norm(E)
        if self._is_const(E):
            if not self.C.is_zero(E):
                raise _Prune(f"{what} fails")
            return
        if E.degree > self.budget.max_degree:
            raise _Stop("budget", f"equation degree {E.degree} exceeds {self.budget.max_degree}")
        st.pending.append(E)

    def _describe(self, rid: int) -> str:
        kind, i, j, k = self.rels[rid]
        if kind == "one":
            return f"x{i + 1} = 1"
        op = "+" if kind == "add" else "*"
        return f"x{i + 1} {op} x{j + 1} = x{k + 1}"

    def _process(self, st: _State, rid: int, work: list) -> bool:
        """Try to use one relation; True when it is fully accounted for."""
        kind, i, j, k = self.rels[rid]
        y = st.vals
        C = self.C
        if kind == "one":
            if y[i] is None:
                self._assign(st, i, C.one, work)
            else:
                self._equation(st, self._lift(y[i]) - C.one, self._describe(rid))
            return True
        unknown = {v for v in (i, j, k) if y[v] is None}
        if not unknown:
            L = self._lift
            if kind == "add":
                E = L(y[i]) + L(y[j]) - L(y[k])
            else:
                E = L(y[i]) * L(y[j]) - L(y[k])
            self._equation(st, E, self._describe(rid))
            return True
        if len(unknown) > 1:
            return False
        (u,) = unknown
        L = self._lift
        if kind == "add":
            A = C.from_int((i == u) + (j == u) - (k == u))
            B = SymPoly()
            for v, sgn in ((i, 1), (j, 1), (k, -1)):
                if v != u:
                    B = B + L(y[v]) if sgn > 0 else B - L(y[v])
        else:
            a = (i == u) + (j == u)
            b = k == u
            if a == 2:
                return False
            if a == 1:
                other = y[j] if i == u else y[i]
                A = self._norm(L(other) - (C.one if b else C.zero))
                B = SymPoly() if b else -L(y[k])
            else:
                A = C.from_int(-1)
                B = L(y[i]) * L(y[j])
        if not self._is_const(A):
            return False
        if C.is_zero(A):
            self._equation(st, B, self._describe(rid))
            return True
        self._assign(st, u, (-L(B)) / A, work)
        return True

    def _propagate(self, st: _State, work: list) -> None:
        while work:
            rid = work.pop()
            if rid not in st.open:
                continue
            if self._process(st, rid, work):
                st.open.discard(rid)
            if st.pending and len(st.pending[-1].symbols) == 1:
                # branch now, before unreduced powers of the symbol pile up
                return

    # -- search -----------------------------------------------------------------

    def _live_symbols(self, st: _State) -> set:
        out = set()
        for v in st.vals:
            if isinstance(v, SymPoly):
                out.update(v.symbols)
        for E in st.pending:
            out.update(E.symbols)
        return out

    def _fixed(self, st: _State) -> bool:
        v = st.vals[0]
        return v is not None and self._is_const(v) and v == self.aset.r

    def _substitute(self, st: _State, name: str, value) -> _State:
        child = st.copy()
        child.vals = [v.substitute(name, value) if isinstance(v, SymPoly) else v
                      for v in child.vals]
        child.vals = [None if v is None else self._norm(v) for v in child.vals]
        old, child.pending = child.pending, []
        for E in old:
            self._equation(child, E.substitute(name, value), "pending equation")
        return child

    def _count_branch(self) -> None:
        self.branches += 1
        if self.branches > self.budget.max_branches:
            raise _Stop("budget", f"more than {self.budget.max_branches} branches")

    def _fmt(self, v) -> str:
        return self.C.format(v) if self._is_const(v) else str(v)

    def explore(self, st: _State, work: list):
        """Returns ('fixed', None) or ('cex', assignment); inconclusive branches count as fixed
        but are remembered in ``self.inconclusive``."""
        try:
            self._propagate(st, work)
            while True:
                if self._fixed(st):
                    return "fixed", None
                uni = [E for E in st.pending if len(E.symbols) == 1]
                if uni:
                    return self._branch_roots(st, min(uni, key=lambda E: E.degree))
                unknown = [v for v in range(self.n) if st.vals[v] is None]
                if unknown:
                    u = self._pick(st, unknown)
                    live = self._live_symbols(st)
                    if len(live) + 1 > self.budget.max_symbols:
                        raise _Stop("budget", f"more than {self.budget.max_symbols} live symbols")
                    self.counter += 1
                    name = f"s{self.counter}"
                    self.symbols_used = max(self.symbols_used, len(live) + 1)
                    work = []
                    self._assign(st, u, SymPoly({(1,): self.C.one}, (name,)), work)
                    self._propagate(st, work)
                    continue
                if st.pending:
                    return self._branch_multivariate(st)
                return self._terminal(st)
        except _Prune as e:
            self._note(st, f"pruned: {e}")
            return "fixed", None
        except _Stop as e:
            self._note(st, f"gave up: {e.detail}")
            if self.inconclusive is None:
                self.inconclusive = e
            return "fixed", None

    def _pick(self, st: _State, unknown: list) -> int:
        y = st.vals
        for rid in sorted(st.open):
            kind, i, j, k = self.rels[rid]
            if kind == "mul" and i == j and y[i] is None and k != i and y[k] is not None \
                    and self._is_const(y[k]):
                return i
        return unknown[0]

    def _branch_roots(self, st: _State, E: SymPoly):
        (name,) = E.symbols
        coeffs = E.univariate_coeffs()
        try:
            res = self.C.roots(coeffs)
        except Unsupported as e:
            raise _Stop("free-symbol", f"cannot solve {E} = 0: {e}") from None
        self.precision_limited |= res.precision_limited
        if not res.roots:
            raise _Prune(f"{E} = 0 has no root: {res.reason}")
        for rho in res.roots:
            self._count_branch()
            child_path = f"{st.path}, {name}={self._fmt(rho)}" if st.path else f"{name}={self._fmt(rho)}"
            try:
                child = self._substitute(st, name, rho)
            except _Prune as e:
                self._note(_State(None, None, None, child_path), f"pruned: {e}")
                continue
            child.path = child_path
            verdict, f = self.explore(child, sorted(child.open))
            if verdict == "cex":
                return verdict, f
        return "fixed", None

    def _branch_multivariate(self, st: _State):
        if not self.C.finite:
            E = st.pending[0]
            raise _Stop("free-symbol", f"entangled equation {E} = 0 in {len(E.symbols)} symbols")
        E = st.pending[0]
        name = E.symbols[0]
        for x in self.C.elements():
            self._count_branch()
            child_path = f"{st.path}, {name}={self._fmt(x)}" if st.path else f"{name}={self._fmt(x)}"
            try:
                child = self._substitute(st, name, x)
            except _Prune:
                continue
            child.path = child_path
            verdict, f = self.explore(child, sorted(child.open))
            if verdict == "cex":
                return verdict, f
        return "fixed", None

    def _terminal(self, st: _State):
        """All variables valued, every relation holds identically in the free symbols."""
        free = sorted(self._live_symbols(st))
        y1 = st.vals[0]
        r = self.aset.r
        dep = [s for s in free if isinstance(y1, SymPoly) and s in y1.symbols]
        rest = [s for s in free if s not in dep]
        base = {s: next(iter(self.C.samples())) for s in rest}
        if not dep:
            return "cex", self._instantiate(st, base)
        if self.C.finite:
            pools = [list(self.C.elements()) for _ in dep]
        else:
            width = y1.degree + 2
            pools = [list(itertools.islice(self.C.samples(), width)) for _ in dep]
        tried = 0
        for combo in itertools.product(*pools):
            tried += 1
            if tried > self.budget.max_branches:
                raise _Stop("budget", "too many instantiations of free symbols")
            m = dict(base, **dict(zip(dep, combo)))
            if not self._norm(y1.evaluate(m)) == r:
                self._note(st, f"free symbols {', '.join(dep)} move r")
                return "cex", self._instantiate(st, m)
        self._note(st, "every instantiation of the free symbols fixes r")
        return "fixed", None

    def _instantiate(self, st: _State, m: dict) -> list:
        return [self._norm(v.evaluate(m)) if isinstance(v, SymPoly) else v for v in st.vals]

    def run(self) -> VerifyResult:
        st = _State([None] * self.n, set(range(len(self.rels))), [], "")
        work = sorted(st.open)
        for idx, val in self.assume.items():
            st.vals[idx - 1] = val
        if self.assume:
            st.path = ", ".join(f"x{i} := {self.C.format(v)}" for i, v in sorted(self.assume.items()))
        verdict, f = self.explore(st, work)
        prec = getattr(self.C, "N", None)
        kw = dict(branches=self.branches, symbols=self.symbols_used, method="symbolic",
                  precision=prec, precision_limited=self.precision_limited, trace=self.trace)
        if verdict == "cex":
            return _checked(self.aset, f, **kw)
        if self.inconclusive is not None:
            return VerifyResult("Inconclusive", reason=self.inconclusive.reason,
                                detail=self.inconclusive.detail, **kw)
        if self.precision_limited:
            return VerifyResult("Inconclusive", reason="precision",
                                detail="root finding hit the precision limit", **kw)
        return VerifyResult("Adequate", **kw)


def verify_symbolic(aset: AdequateSet, budget: Budget | None = None, assume=None) -> VerifyResult:
    """Symbolic adequacy check; ``assume`` maps 1-based indices to forced values."""
    return _Engine(aset, budget or Budget(), assume).run()


def verify(aset: AdequateSet, budget: Budget | None = None) -> VerifyResult:
    """Brute force for small finite fields, the symbolic engine otherwise."""
    if aset.carrier.tag == "ff" and aset.carrier.field.size ** aset.system.n <= BRUTEFORCE_LIMIT:
        return verify_bruteforce_ff(aset)
    return verify_symbolic(aset, budget)
