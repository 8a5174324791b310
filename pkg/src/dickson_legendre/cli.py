"""Command-line front end.

Every subcommand builds a :class:`RunReport` and writes it to stdout (or
``--out``) as json, csv or text.  Exit codes: 0 pass, 1 failed check,
2 usage or domain error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import random
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Sequence

from . import dickson, ode, specfn
from .errors import DicksonError, DomainError, EmptyBasis, FormatUnsupported
from .exactalg import ParamPoly, format_param_poly, rational_to_str

THREADS_ENV = "DICKSON_THREADS"

EXIT_PASS, EXIT_FAIL, EXIT_ERROR = 0, 1, 2


@dataclass
class RunReport:
    command: list[str]
    status: str
    summary: str
    payload: dict[str, Any] = field(default_factory=dict)
    timing_ms: float | None = None

    @property
    def exit_code(self) -> int:
        return {"pass": EXIT_PASS, "fail": EXIT_FAIL}.get(self.status, EXIT_ERROR)


def _jsonable(value):
    if isinstance(value, Fraction):
        return rational_to_str(value)
    if isinstance(value, complex):
        return {"re": value.real, "im": value.imag}
    if isinstance(value, ParamPoly):
        return value.to_json()
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def _csv_cell(value):
    if isinstance(value, Fraction):
        return rational_to_str(value)
    if isinstance(value, float):
        return repr(value)
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def emit_report(report: RunReport, fmt: str = "json") -> bytes:
    """Serialize deterministically; csv needs a ``columns``/``rows`` payload."""
    if fmt == "json":
        doc = {
            "command": report.command,
            "status": report.status,
            "summary": report.summary,
            "payload": _jsonable(report.payload),
        }
        if report.timing_ms is not None:
            doc["timing_ms"] = round(report.timing_ms, 3)
        return (json.dumps(doc, indent=2, sort_keys=True) + "\n").encode()
    if fmt == "csv":
        if "columns" not in report.payload or "rows" not in report.payload:
            raise FormatUnsupported("csv output needs a tabular payload")
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(report.payload["columns"])
        for row in report.payload["rows"]:
            writer.writerow([_csv_cell(v) for v in row])
        return buf.getvalue().encode()
    if fmt == "text":
        line = f"{report.status.upper()} {report.summary}"
        if report.timing_ms is not None:
            line += f" ({report.timing_ms:.0f}ms)"
        return (line + "\n").encode()
    raise FormatUnsupported(f"unknown format {fmt!r}")


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def _threads() -> int:
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


def _map_ordered(fn: Callable, items: Sequence) -> list:
    # results keep input order regardless of thread count
    workers = _threads()
    if workers == 1 or len(items) < 2:
        return [fn(i) for i in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def _random_rational(rng: random.Random, bound: int = 50) -> Fraction:
    num = rng.randint(-bound, bound)
    while num == 0:
        num = rng.randint(-bound, bound)
    return Fraction(num, rng.randint(1, bound))


def _status(ok: bool) -> str:
    return "pass" if ok else "fail"


# --- subcommand handlers: each returns (status, summary, payload) ---------


def _family_from_args(args) -> tuple[dickson.FamilySpec, str]:
    if args.b is not None:
        return dickson.FamilySpec(dickson.DicksonType(args.b), args.n), f"B={rational_to_str(args.b)}"
    if args.kind < 1:
        raise DomainError("--kind counts from 1 (first kind)")
    return dickson.FamilySpec(dickson.KthKind(args.kind - 1), args.n), f"kind={args.kind}"


def cmd_gen(args):
    spec, label = _family_from_args(args)
    poly = dickson.by_recurrence(spec) if args.method == "recurrence" else dickson.closed_form(spec)
    rows = [[xd, ad, c] for (xd, ad), c in sorted(poly.terms().items())]
    payload = {
        "n": args.n,
        "family": label,
        "coeffs": poly,
        "text": format_param_poly(poly),
        "columns": ["x_degree", "a_degree", "coeff"],
        "rows": rows,
    }
    return "pass", f"gen {label} n={args.n}: {format_param_poly(poly)}", payload


def _verify_range(name: str, check: Callable[[int], bool], n_min: int, n_max: int):
    ns = list(range(n_min, n_max + 1))
    results = _map_ordered(check, ns)
    rows = [[n, ok] for n, ok in zip(ns, results)]
    failed = [n for n, ok in rows if not ok]
    payload = {"columns": ["n", "zero_residual"], "rows": rows, "failed": failed}
    return _status(not failed), f"{name} n={n_min}..{n_max}", payload


def cmd_verify(args):
    if args.what == "lemma":
        return _verify_range("lemma", ode.verify_lemma_third, args.n_min, args.n_max)
    if args.what in ("first", "second"):
        return _verify_range(
            args.what, lambda n: ode.verify_classical(args.what, n), args.n_min, args.n_max
        )
    if args.what == "functional":
        return _verify_functional(args)
    if args.what == "ff":
        return _verify_ff(args)
    raise AssertionError(args.what)


def _verify_functional(args):
    rng = random.Random(args.seed)
    rows = []
    for kind in args.kinds:
        for _ in range(args.trials):
            u = _random_rational(rng)
            if kind == "third-degenerate":
                a, sign = u * u, rng.choice((1, -1))
            else:
                a, sign = _random_rational(rng), 1
                while kind == "third" and a == u * u:
                    a = _random_rational(rng)
            for n in range(args.n_min, args.n_max + 1):
                res = dickson.functional_residual(kind, n, u, a, sign)
                rows.append([kind, n, u, a, sign, res])
    failed = sum(1 for r in rows if r[-1] != 0)
    payload = {"columns": ["kind", "n", "u", "a", "sign", "residual"], "rows": rows, "failures": failed}
    summary = f"functional {','.join(args.kinds)} n={args.n_min}..{args.n_max} trials={args.trials} seed={args.seed}"
    return _status(failed == 0), summary, payload


def _ff_recurrence_eval(n: int, k: int, a: int, x: int, p: int) -> int:
    prev, cur = (2 - k) % p, x % p
    if n == 0:
        return prev
    for _ in range(n - 1):
        prev, cur = cur, (x * cur - a * prev) % p
    return cur


def _verify_ff(args):
    rows = []
    for p in (q for q in range(2, args.p_max + 1) if dickson.is_prime(q)):
        for n in range(args.n_max + 1):
            for k in range(args.k_max + 1):
                for a in range(1, p):
                    ae = dickson.PrimeFieldElem(a, p)
                    image = {_ff_recurrence_eval(n, k, a, x, p) for x in range(p)}
                    brute = len(image) == p
                    perm = dickson.ff_is_permutation(n, k, ae)
                    evals_ok = all(
                        dickson.ff_eval(n, k, ae, dickson.PrimeFieldElem(x, p)).value
                        == _ff_recurrence_eval(n, k, a, x, p)
                        for x in range(p)
                    )
                    rows.append([p, n, k, a, perm, perm == brute and evals_ok])
    failed = sum(1 for r in rows if not r[-1])
    payload = {"columns": ["p", "n", "k", "a", "permutation", "agrees"], "rows": rows, "failures": failed}
    return _status(failed == 0), f"ff p<={args.p_max} n<={args.n_max} k<={args.k_max}", payload


def cmd_particular(args):
    fp = ode.particular_solution(args.n, args.a)
    residual = ode.ode_residual(fp.poly(), ode.known_form("third-nonhomogeneous", args.n).at_a(args.a))
    ok = residual.is_zero() and fp.b[-1] == 1 and (args.n < 2 or fp.b[-2] == 0)
    payload = {
        "n": args.n,
        "a": args.a,
        "b": list(fp.b),
        "residual_zero": residual.is_zero(),
        "columns": ["k", "b_k"],
        "rows": [[k, b] for k, b in enumerate(fp.b)],
    }
    return _status(ok), f"particular n={args.n} a={rational_to_str(args.a)}", payload


def cmd_decompose(args):
    rep = ode.decompose(args.n, args.a)
    payload = {
        "n": args.n,
        "a": args.a,
        "b": list(rep.particular.b),
        "remainder": rep.remainder,
        "remainder_is_zero": rep.remainder.is_zero(),
        "remainder_is_homogeneous_solution": rep.remainder_is_homogeneous_solution,
    }
    return (
        _status(rep.remainder_is_homogeneous_solution),
        f"decompose n={args.n} a={rational_to_str(args.a)}",
        payload,
    )


def cmd_fit_stoll(args):
    f = dickson.kth_kind(args.n, args.k)
    try:
        basis = ode.fit_stoll(args.n, args.k)
    except EmptyBasis as exc:
        return "fail", f"fit-stoll n={args.n} k={args.k}: {exc}", {"basis": []}
    verified = [ode.stoll_residual(v, f).is_zero() for v in basis.basis]
    payload = {
        "n": args.n,
        "k": args.k,
        "dimension": basis.dimension,
        "basis": basis.as_dicts(),
        "verified": verified,
        "columns": ["vector", *ode.STOLL_NAMES],
        "rows": [[i, *v] for i, v in enumerate(basis.basis)],
    }
    return _status(all(verified)), f"fit-stoll n={args.n} k={args.k} dim={basis.dimension}", payload


def _grid(args) -> list[float]:
    if args.z:
        return list(args.z)
    if args.points < 1:
        raise DomainError("--points must be positive")
    if args.points == 1:
        return [args.z_min]
    step = (args.z_max - args.z_min) / (args.points - 1)
    return [args.z_min + i * step for i in range(args.points)]


def cmd_special(args):
    what = args.what
    if what == "gamma":
        value = specfn.gamma_fn(args.x)
        return "pass", f"gamma({args.x!r}) = {value!r}", {"x": args.x, "value": value}
    if what == "2f1":
        value = specfn.hyp2f1(args.a, args.b, args.c, complex(args.z_re, args.z_im))
        payload = {"a": args.a, "b": args.b, "c": args.c, "z": complex(args.z_re, args.z_im), "value": value}
        return "pass", f"2F1({args.a!r},{args.b!r};{args.c!r};z) = {value!r}", payload
    if what in ("p", "q"):
        params = specfn.LegendreParams(args.n)
        fn = specfn.legendre_p_half if what == "p" else specfn.legendre_q_half
        rows, ok = [], True
        for z in _grid(args):
            v = fn(params, z)
            res = None
            if 1.05 <= z <= 2.9:
                res = specfn.assoc_legendre_ode_residual(params, z, what.upper(), args.h)
                ok &= res < args.tol
            rows.append([z, v.real, v.imag, res])
        payload = {"n": args.n, "nu": params.nu, "columns": ["x", "re", "im", "residual"], "rows": rows}
        return _status(ok), f"{what.upper()} n={args.n} points={len(rows)}", payload
    if what == "residual":
        params = specfn.LegendreParams(args.n)
        rows, ok = [], True
        for z in _grid(args):
            res = specfn.assoc_legendre_ode_residual(params, z, args.which, args.h)
            ok &= res < args.tol
            rows.append([z, args.which, res])
        payload = {"n": args.n, "tol": args.tol, "columns": ["z", "which", "residual"], "rows": rows}
        return _status(ok), f"residual {args.which} n={args.n} tol={args.tol!r}", payload
    if what == "fc":
        A = complex(args.A_re, args.A_im)
        B = complex(args.B_re, args.B_im)
        root = 2 * math.sqrt(args.a_param)
        rows, ok = [], True
        for z in _grid(args):
            x = root * z
            v = specfn.homogeneous_eval(args.n, args.a_param, x, A, B)
            res = None
            if 1.05 <= z <= 2.9:
                res = specfn.homogeneous_ode_residual(args.n, args.a_param, x, A, B, args.h)
                ok &= res < args.tol
            rows.append([x, v.real, v.imag, res])
        payload = {"n": args.n, "a": args.a_param, "A": A, "B": B, "columns": ["x", "re", "im", "residual"], "rows": rows}
        return _status(ok), f"Fc n={args.n} a={args.a_param!r} points={len(rows)}", payload
    raise AssertionError(what)


def cmd_fit_constants(args):
    if args.xs:
        xs = list(args.xs)
    else:
        root = 2 * math.sqrt(args.a)
        lo, hi = 1.1 * root, 2.9 * root
        xs = [lo + i * (hi - lo) / (args.points - 1) for i in range(args.points)]
    fit = specfn.fit_constants(args.n, args.a, xs)
    ok = abs(fit.A) < args.tol and abs(fit.B) < args.tol
    payload = {
        "n": args.n,
        "a": args.a,
        "A": fit.A,
        "B": fit.B,
        "residual_norm": fit.residual_norm,
        "condition": fit.condition,
        "sample_xs": xs,
    }
    return _status(ok), f"fit-constants n={args.n} a={args.a!r} |A|={abs(fit.A):.3g} |B|={abs(fit.B):.3g}", payload


def cmd_ff(args):
    a = dickson.PrimeFieldElem(args.a, args.p)
    if args.what == "eval":
        y = dickson.ff_eval(args.n, args.k, a, dickson.PrimeFieldElem(args.x, args.p))
        payload = {"n": args.n, "k": args.k, "a": a.value, "x": args.x % args.p, "p": args.p, "value": y.value}
        return "pass", f"ff eval D_{{{args.n},{args.k}}}({args.x},{args.a}) mod {args.p} = {y.value}", payload
    perm = dickson.ff_is_permutation(args.n, args.k, a, bound=args.bound)
    payload = {"n": args.n, "k": args.k, "a": a.value, "p": args.p, "permutation": perm}
    return "pass", f"ff perm n={args.n} k={args.k} a={a.value} p={args.p}: {perm}", payload


# --- parser --------------------------------------------------------------


def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--format", choices=("json", "csv", "text"), default="json")
    p.add_argument("--out", help="write the report to this path instead of stdout")
    p.add_argument("--timing", action="store_true", help="include wall-clock milliseconds")


def _add_grid(p: argparse.ArgumentParser, lo: float, hi: float):
    p.add_argument("--z", type=float, action="append", help="evaluation point (repeatable)")
    p.add_argument("--z-min", type=float, default=lo)
    p.add_argument("--z-max", type=float, default=hi)
    p.add_argument("--points", type=int, default=5)
    p.add_argument("--h", type=float, default=specfn.FD_STEP, help="finite-difference step")
    p.add_argument("--tol", type=float, default=1e-6, help="residual tolerance")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dickson-legendre",
        description="Dickson polynomial identities and Legendre-function solutions.",
    )
    sub = parser.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("gen", help="print a polynomial family")
    p.add_argument("--kind", type=int, default=1, help="1 = first kind, 2 = second, 3 = third, ...")
    p.add_argument("--b", type=_rational, help="Stoll parameter B (overrides --kind)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--method", choices=("closed", "recurrence"), default="closed")
    _add_common(p)
    p.set_defaults(handler=cmd_gen)

    p = sub.add_parser("verify", help="exact identity checks")
    p.add_argument("what", choices=("lemma", "first", "second", "functional", "ff"))
    p.add_argument("--n-min", type=int, default=1)
    p.add_argument("--n-max", type=int, default=16)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument(
        "--kinds",
        type=lambda s: s.split(","),
        default=["first", "third", "third-degenerate"],
        help="comma-separated functional-equation kinds",
    )
    p.add_argument("--p-max", type=int, default=13)
    p.add_argument("--k-max", type=int, default=3)
    _add_common(p)
    p.set_defaults(handler=cmd_verify)

    for name, handler in (("particular", cmd_particular), ("decompose", cmd_decompose)):
        p = sub.add_parser(name)
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--a", type=_rational, required=True)
        _add_common(p)
        p.set_defaults(handler=handler)

    p = sub.add_parser("fit-stoll")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    _add_common(p)
    p.set_defaults(handler=cmd_fit_stoll)

    p = sub.add_parser("special", help="special-function evaluation")
    p.add_argument("what", choices=("p", "q", "2f1", "gamma", "fc", "residual"))
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--x", type=float, default=1.0, help="gamma argument")
    p.add_argument("--a", type=float, default=1.0, help="2F1 parameter a")
    p.add_argument("--b", type=float, default=1.0)
    p.add_argument("--c", type=float, default=1.0)
    p.add_argument("--z-re", type=float, default=0.0)
    p.add_argument("--z-im", type=float, default=0.0)
    p.add_argument("--which", choices=("P", "Q"), default="P")
    p.add_argument("--a-param", type=float, default=1.0, help="Dickson parameter a for fc")
    for coef in ("A", "B"):
        p.add_argument(f"--{coef}-re", type=float, default=1.0 if coef == "A" else 0.0)
        p.add_argument(f"--{coef}-im", type=float, default=0.0)
    _add_grid(p, 1.1, 2.5)
    _add_common(p)
    p.set_defaults(handler=cmd_special)

    p = sub.add_parser("fit-constants")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--a", type=float, default=1.0)
    p.add_argument("--xs", type=float, action="append", help="sample point in x (repeatable)")
    p.add_argument("--points", type=int, default=8)
    p.add_argument("--tol", type=float, default=1e-6)
    _add_common(p)
    p.set_defaults(handler=cmd_fit_constants)

    p = sub.add_parser("ff", help="prime-field evaluation")
    p.add_argument("what", choices=("eval", "perm"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--x", type=int, default=0)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--bound", type=int, default=dickson.DEFAULT_PERMUTATION_BOUND)
    _add_common(p)
    p.set_defaults(handler=cmd_ff)
    return parser


def run_command(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> tuple[int, RunReport | None]:
    """Parse, execute, emit.  Returns the exit code and the report."""
    stdout = stdout if stdout is not None else sys.stdout.buffer
    stderr = stderr if stderr is not None else sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return (EXIT_ERROR if exc.code else EXIT_PASS), None

    start = time.perf_counter()
    try:
        status, summary, payload = args.handler(args)
    except (DicksonError, ValueError, ArithmeticError) as exc:
        status, summary, payload = "error", f"{type(exc).__name__}: {exc}", {}
        print(f"error: {type(exc).__name__}: {exc}", file=stderr)
    elapsed = (time.perf_counter() - start) * 1e3
    report = RunReport(argv, status, summary, payload, elapsed if args.timing else None)

    try:
        data = emit_report(report, args.format)
    except FormatUnsupported as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_ERROR, report
    if args.out:
        with open(args.out, "wb") as fh:
            fh.write(data)
    else:
        stdout.write(data)
        stdout.flush()
    return report.exit_code, report


def main(argv: Sequence[str] | None = None) -> int:
    code, _ = run_command(argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
