"""Command-line front end.

Exit status: 0 success or Adequate, 1 Counterexample, 2 Inconclusive,
64 usage error, 65 malformed input, 66 unreadable file, 69 a guard or
construction refused the request.
"""

from __future__ import annotations

import argparse
import os
import random
import sys
from dataclasses import dataclass

from .adequacy import (Budget, SearchSpaceError, verify, verify_bruteforce_ff,
                       verify_symbolic)
from .builders import (BuildError, ChainRejected, build_padic_thm7, build_real_chain,
                       build_real_proof1, build_real_proof2, proof2_recover, transform_proof2)
from .constraints import (ConstraintError, cs_combine_single, cs_count_bound, cs_enumerate,
                          cs_extract, cs_closure, format_system, parse_system)
from .formats import FormatError, format_set, parse_set
from .padic import (DEFAULT_PRECISION, PadicError, PadicNum, PrecisionError, format_padic, hensel_lift,
                    padic_roots, parse_padic)
from .polyarith import PolyError, format_poly, parse_fraction, parse_poly
from .realalg import RealAlgError, format_alg, parse_alg

EXIT_OK, EXIT_CEX, EXIT_INCONCLUSIVE = 0, 1, 2
EXIT_USAGE, EXIT_DATA, EXIT_NOINPUT, EXIT_REFUSED = 64, 65, 66, 69

_VERDICT_EXIT = {"Adequate": EXIT_OK, "Counterexample": EXIT_CEX, "Inconclusive": EXIT_INCONCLUSIVE}


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    precision: int = DEFAULT_PRECISION
    size_limit: int = 10**5
    max_symbols: int = 4
    max_degree: int = 32
    max_branches: int = 10_000
    output: str = "text"

    def __post_init__(self):
        if self.precision < 8:
            raise UsageError("precision N must be at least 8")
        if min(self.size_limit, self.max_symbols, self.max_degree, self.max_branches) < 1:
            raise UsageError("all limits must be positive")
        if self.output not in ("text", "lines"):
            raise UsageError(f"unknown output format {self.output!r}")

    @property
    def budget(self) -> Budget:
        return Budget(self.max_symbols, self.max_degree, self.max_branches)


_ENV = {
    "precision": "ADEQUATE_PRECISION",
    "size_limit": "ADEQUATE_SIZE_LIMIT",
    "max_symbols": "ADEQUATE_MAX_SYMBOLS",
    "max_degree": "ADEQUATE_MAX_DEGREE",
    "max_branches": "ADEQUATE_MAX_BRANCHES",
    "output": "ADEQUATE_OUTPUT",
}


def config_from(args, env=None) -> RunConfig:
    env = os.environ if env is None else env
    kw = {}
    for name, var in _ENV.items():
        if var in env:
            kw[name] = env[var] if name == "output" else _int_env(var, env[var])
        val = getattr(args, name, None)
        if val is not None:
            kw[name] = val
    return RunConfig(**kw)


def _int_env(var, text):
    try:
        return int(text)
    except ValueError:
        raise UsageError(f"{var} must be an integer, got {text!r}") from None


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _emit(out, fmt: str, pairs) -> None:
    for k, v in pairs:
        text = str(v)
        if fmt == "lines" or "\n" not in text:
            out.write(f"{k}: {text}\n" if text else f"{k}:\n")
        else:
            out.write(f"{k}:\n{text}")


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise FileNotFoundError(f"{path}: {e.strerror}") from None


def _write_set(out, A, dest=None) -> None:
    text = format_set(A)
    if dest:
        with open(dest, "w", encoding="utf-8") as fh:
            fh.write(text)
        out.write(f"wrote {len(A)} elements to {dest}\n")
    else:
        out.write(text)


def report_lines(res) -> list[tuple[str, str]]:
    pairs = [("verdict", res.label if res.verdict == "Adequate" else res.verdict)]
    if res.verdict == "Inconclusive":
        pairs.append(("reason", f"{res.reason}: {res.detail}"))
    pairs.append(("method", res.method))
    pairs.append(("budget", f"branches={res.branches} symbols={res.symbols}"))
    prec = "exact" if res.precision is None else f"N={res.precision}"
    if res.precision_limited:
        prec += " (limited)"
    pairs.append(("precision", prec))
    if res.assignment is not None:
        pairs.append(("counterexample", ""))
    return pairs


# -- subcommands -------------------------------------------------------------------------


def cmd_count_bound(a, cfg, out):
    bound = cs_count_bound(a.n)
    out.write(f"bound: {bound}\n" if cfg.output == "lines" else f"{bound}\n")
    return EXIT_OK


def cmd_enumerate(a, cfg, out):
    seen, count = set(), 0
    for S in cs_enumerate(a.n):
        count += 1
        if a.check_duplicates:
            seen.add(S)
        if a.emit:
            out.write(format_system(S) + "\n")
    pairs = [("n", a.n), ("count", count), ("bound", cs_count_bound(a.n))]
    if a.check_duplicates:
        pairs.append(("distinct", len(seen)))
    _emit(out, cfg.output, pairs)
    return EXIT_OK


def cmd_build_real(a, cfg, out):
    r = parse_alg(a.literal)
    try:
        if a.method == "proof1":
            A = build_real_proof1(r, cfg.size_limit)
        elif a.method == "proof2":
            A = build_real_proof2(r, cfg.budget)
        else:
            A = build_real_chain(r, certificates=not a.no_certificates, budget=cfg.budget)
    except ChainRejected as e:
        sys.stderr.write(f"{e}\n")
        _emit(out, cfg.output, report_lines(e.result))
        _emit_assignment(out, e.aset, e.result)
        return _VERDICT_EXIT[e.result.verdict]
    _write_set(out, A, a.output_file)
    return EXIT_OK


def cmd_build_padic(a, cfg, out):
    P = parse_poly(a.poly)
    N = a.N or cfg.precision
    if a.root.strip().startswith("pad"):
        r = parse_padic(a.root)
    else:
        a0 = PadicNum.from_residue(int(a.root), a.p, 1)
        r = hensel_lift(P, a0, N)
    if r.p != a.p:
        raise PadicError(f"root literal has p={r.p}, expected {a.p}")
    A = build_padic_thm7(P, r, N, cfg.size_limit)
    _write_set(out, A, a.output_file)
    return EXIT_OK


def cmd_transform2(a, cfg, out):
    T = parse_poly(a.poly)
    alpha, beta = parse_fraction(a.alpha), parse_fraction(a.beta)
    T2 = transform_proof2(T, alpha, beta)
    x0, back = proof2_recover(T2, alpha, beta)
    _emit(out, cfg.output, [("poly", format_poly(T2)), ("x0", format_alg(x0)),
                            ("r", format_alg(back))])
    return EXIT_OK


def _emit_assignment(out, A, res):
    if res.assignment is None:
        return
    for i, v in enumerate(res.assignment, 1):
        out.write(f"  x{i} -> {A.carrier.format(v)}\n")


def cmd_verify(a, cfg, out):
    A = parse_set(_read(a.file), a.file)
    assume = {}
    for item in a.assume or []:
        idx, _, lit = item.partition("=")
        try:
            assume[int(idx.lstrip("x"))] = A.carrier.parse(lit)
        except ValueError as e:
            raise UsageError(f"bad --assume {item!r}: {e}") from None
    if a.method == "bruteforce":
        res = verify_bruteforce_ff(A)
    elif a.method == "symbolic" or assume:
        res = verify_symbolic(A, cfg.budget, assume or None)
    else:
        res = verify(A, cfg.budget)
    _emit(out, cfg.output, report_lines(res))
    _emit_assignment(out, A, res)
    if a.trace:
        for line in res.trace:
            out.write(f"trace: {line}\n")
    return _VERDICT_EXIT[res.verdict]


def cmd_extract(a, cfg, out):
    A = parse_set(_read(a.file), a.file, check_system=False)
    cs_extract(A.elements, 1, A.carrier, audit=a.audit)
    out.write(format_system(A.system))
    return EXIT_OK


def cmd_closure(a, cfg, out):
    sets = [parse_set(_read(f), f) for f in a.files]
    need = 2 if a.variant in ("sum", "prod") else 1
    if len(sets) != need:
        raise UsageError(f"closure {a.variant} takes {need} set file(s)")
    A = cs_closure(sets[0], a.variant, sets[1] if need == 2 else None)
    _write_set(out, A, a.output_file)
    return EXIT_OK


def cmd_combine(a, cfg, out):
    T = parse_poly(a.no_root_poly)
    text = _read(a.file)
    if text.lstrip().startswith("carrier"):
        S = parse_set(text, a.file).system
    else:
        S = parse_system(text)
    E = cs_combine_single(S.equations(), T)
    _emit(out, cfg.output, [("combined", E)])
    return EXIT_OK


def cmd_padic_roots(a, cfg, out):
    P = parse_poly(a.poly)
    rep = padic_roots(P, a.p, a.N or cfg.precision)
    pairs = [("count", len(rep.roots))]
    pairs += [(f"root{i}", format_padic(x)) for i, x in enumerate(rep.roots, 1)]
    pairs += [("note", n) for n in rep.notes]
    pairs.append(("precision_limited", str(rep.precision_limited).lower()))
    _emit(out, cfg.output, pairs)
    return EXIT_OK


def cmd_hensel(a, cfg, out):
    P = parse_poly(a.poly)
    N = a.N or cfg.precision
    a0 = parse_padic(a.a0) if a.a0.strip().startswith("pad") else \
        PadicNum.from_residue(int(a.a0), a.p, 1)
    y = hensel_lift(P, a0, N)
    _emit(out, cfg.output, [("root", format_padic(y))])
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    def common(parser, default):
        parser.add_argument("--format", dest="output", choices=["text", "lines"], default=default)
        parser.add_argument("--precision", dest="precision", type=int, default=default)
        parser.add_argument("--size-limit", type=int, default=default)
        parser.add_argument("--max-symbols", type=int, default=default)
        parser.add_argument("--max-degree", type=int, default=default)
        parser.add_argument("--max-branches", type=int, default=default)
        parser.add_argument("--seed", type=int, default=default)

    p = _Parser(prog="adequate", description="Adequate sets for algebraic numbers.")
    common(p, None)
    shared = _Parser(add_help=False)
    common(shared, argparse.SUPPRESS)
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    _add = sub.add_parser

    def add_parser(name):
        return _add(name, parents=[shared])

    sub.add_parser = add_parser

    s = sub.add_parser("count-bound")
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(func=cmd_count_bound)

    s = sub.add_parser("enumerate")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--emit", action="store_true", help="print every system")
    s.add_argument("--check-duplicates", action="store_true")
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("build-real")
    s.add_argument("literal")
    s.add_argument("--method", choices=["proof1", "chain", "proof2"], default="chain")
    s.add_argument("--no-certificates", action="store_true")
    s.add_argument("-o", "--output-file")
    s.set_defaults(func=cmd_build_real)

    s = sub.add_parser("build-padic")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--poly", required=True)
    s.add_argument("--root", required=True, help="pad{...} literal or a residue to lift")
    s.add_argument("--N", type=int)
    s.add_argument("-o", "--output-file")
    s.set_defaults(func=cmd_build_padic)

    s = sub.add_parser("transform2")
    s.add_argument("--poly", required=True)
    s.add_argument("--alpha", required=True)
    s.add_argument("--beta", required=True)
    s.set_defaults(func=cmd_transform2)

    s = sub.add_parser("verify")
    s.add_argument("file")
    s.add_argument("--method", choices=["auto", "bruteforce", "symbolic"], default="auto")
    s.add_argument("--assume", action="append", metavar="I=LITERAL")
    s.add_argument("--trace", action="store_true")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("extract")
    s.add_argument("file")
    s.add_argument("--audit", action="store_true")
    s.set_defaults(func=cmd_extract)

    s = sub.add_parser("closure")
    s.add_argument("--variant", choices=["neg", "inv", "sum", "prod"], required=True)
    s.add_argument("files", nargs="+")
    s.add_argument("-o", "--output-file")
    s.set_defaults(func=cmd_closure)

    s = sub.add_parser("combine")
    s.add_argument("--no-root-poly", required=True)
    s.add_argument("file")
    s.set_defaults(func=cmd_combine)

    s = sub.add_parser("padic-roots")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--poly", required=True)
    s.add_argument("--N", type=int)
    s.set_defaults(func=cmd_padic_roots)

    s = sub.add_parser("hensel")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--poly", required=True)
    s.add_argument("--a0", required=True)
    s.add_argument("--N", type=int)
    s.set_defaults(func=cmd_hensel)
    return p


def run_command(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if not getattr(args, "func", None):
            raise UsageError("missing subcommand")
        if args.seed is not None:
            random.seed(args.seed)
        cfg = config_from(args)
        return args.func(args, cfg, out)
    except UsageError as e:
        err.write(f"usage error: {e}\n")
        return EXIT_USAGE
    except FileNotFoundError as e:
        err.write(f"error: {e}\n")
        return EXIT_NOINPUT
    except (FormatError, PolyError, PadicError, RealAlgError, ConstraintError) as e:
        if isinstance(e, PrecisionError) or (isinstance(e, ConstraintError)
                                             and "limited" in str(e)):
            err.write(f"refused: {e}\n")
            return EXIT_REFUSED
        err.write(f"input error: {e}\n")
        return EXIT_DATA
    except (BuildError, SearchSpaceError) as e:
        err.write(f"refused: {e}\n")
        return EXIT_REFUSED
    except ValueError as e:
        err.write(f"input error: {e}\n")
        return EXIT_DATA


def main() -> None:
    sys.exit(run_command())


if __name__ == "__main__":
    main()
