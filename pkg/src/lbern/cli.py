"""Command line interface: ``lbern <kind> ...``, ``lbern verify``, ``lbern padic ...``.

Exit codes: 0 ok, 1 verification failure, 2 malformed input or p-adic domain
violation, 3 mode violation (e.g. a parameter the chosen lambda mode forbids).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction

from . import padic, special_values as sv, verify
from .dirichlet import character, generalized_bernoulli
from .exact_scalar import (
    CyclotomicElement,
    InvalidLambda,
    LambdaDescriptor,
    LogPolynomial,
    format_rational,
    scalar_to_json,
)
from .frobenius_euler import InvalidParameter, fe_order_r_row
from .lambda_bernoulli import barnes_multiweight, lb_numbers, lb_order_r_row

TABLE_KINDS = (
    "bern",
    "bern-poly",
    "bern-order-r",
    "barnes",
    "fe",
    "gen-bern",
    "zeta-neg",
    "l-neg",
    "multi-zeta",
)
FORMATS = ("json", "csv", "text")


class UsageError(Exception):
    """Malformed input: exit code 2."""


class ModeViolation(Exception):
    """Valid syntax, but not allowed in the chosen mode: exit code 3."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _lambda(text: str) -> LambdaDescriptor:
    try:
        return LambdaDescriptor.parse(text)
    except InvalidLambda as exc:
        raise ModeViolation(str(exc)) from exc
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"not a rational number: {text!r}") from exc


def _fe_parameter(text: str):
    """u for Frobenius-Euler tables: a rational or Z:m,k."""
    if text.upper().startswith("Z:"):
        return _lambda(text).value
    return _rational(text)


def _complex(text: str) -> complex:
    t = text.strip()
    if t.upper().startswith("R:"):
        t = t[2:]
    try:
        return complex(float(Fraction(t)))
    except (ValueError, ZeroDivisionError):
        pass
    try:
        return complex(t.replace("i", "j").replace(" ", ""))
    except ValueError as exc:
        raise UsageError(f"not a number: {text!r}") from exc


# formatting


def scalar_text(c) -> str:
    if isinstance(c, CyclotomicElement):
        return f"Q(zeta_{c.m})[" + ", ".join(format_rational(x) for x in c.coeffs) + "]"
    return format_rational(c)


def logpoly_text(v: LogPolynomial) -> str:
    if v.degree <= 0:
        return scalar_text(v.scalar() if not v.is_zero() else 0)
    parts = []
    for i in range(v.degree + 1):
        c = v.coeff(i)
        if c == 0 and not isinstance(c, CyclotomicElement):
            continue
        if isinstance(c, CyclotomicElement) and c.is_zero():
            continue
        s = scalar_text(c)
        parts.append(s if i == 0 else f"({s})*L" + (f"^{i}" if i > 1 else ""))
    return " + ".join(parts)


def _row(index, value, numeric=None, index_name="n") -> dict:
    value = LogPolynomial.coerce(value)
    row = {index_name: index, **value.to_json()}
    if numeric is not None:
        z = value.evaluate(numeric)
        row["numeric"] = {"re": z.real, "im": z.imag}
    return row


def emit(rows: list[dict], fmt: str, out, meta: dict | None = None) -> None:
    if fmt == "json":
        doc = {**(meta or {}), "rows": rows}
        out.write(json.dumps(doc, sort_keys=False) + "\n")
        return
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        index_name = next(iter(rows[0])) if rows else "n"
        width = max((len(r["L_coeffs"]) for r in rows), default=1)
        header = [index_name, "value"] + [f"L^{i}" for i in range(width)]
        has_numeric = any("numeric" in r for r in rows)
        if has_numeric:
            header += ["numeric_re", "numeric_im"]
        w.writerow(header)
        for r in rows:
            v = LogPolynomial.from_json(r)
            cells = [r[index_name], logpoly_text(v)]
            cells += [_cell(c) for c in r["L_coeffs"]] + [""] * (width - len(r["L_coeffs"]))
            if has_numeric:
                num = r.get("numeric", {})
                cells += [repr(num.get("re", "")), repr(num.get("im", ""))]
            w.writerow(cells)
        out.write(buf.getvalue())
        return
    for r in rows:
        index_name = next(iter(r))
        v = LogPolynomial.from_json(r)
        line = f"{index_name}={r[index_name]}: {logpoly_text(v)}"
        if "numeric" in r:
            line += f"  ~ {complex(r['numeric']['re'], r['numeric']['im'])}"
        out.write(line + "\n")


def _cell(c) -> str:
    if isinstance(c, str):
        return c
    return json.dumps(c, sort_keys=True)


# commands


def _numeric_log(args, lam: LambdaDescriptor):
    if not getattr(args, "numeric", False):
        return None
    if lam.is_rational:
        return sv.principal_log(float(lam.base))
    return 0.0


def cmd_table(args, out) -> int:
    kind = args.kind
    if kind == "multi-zeta":
        ms = range(args.m, args.m + 1) if args.m is not None else range(args.max_m + 1)
        rows = [_row(m, sv.multiple_zeta_neg(args.r, m), index_name="m") for m in ms]
        meta = {"kind": kind, "r": args.r}
        if args.format == "text" and len(rows) == 1:
            out.write(format_rational(sv.multiple_zeta_neg(args.r, ms[0])) + "\n")
            return 0
        emit(rows, args.format, out, meta)
        return 0
    if kind == "fe":
        u = _fe_parameter(args.u)
        try:
            vals = fe_order_r_row(u, args.r, _rational(args.x), args.max_n)
        except InvalidParameter as exc:
            raise ModeViolation(str(exc)) from exc
        rows = [_row(n, v) for n, v in enumerate(vals)]
        emit(rows, args.format, out, {"kind": kind, "u": scalar_to_json(u), "r": args.r, "x": args.x})
        return 0

    lam = _lambda(args.lam)
    L_num = _numeric_log(args, lam)
    meta = {"kind": kind, "lambda": lam.to_json()}
    if kind == "bern":
        vals = lb_numbers(lam, args.max_n)
    elif kind == "bern-poly":
        x = _rational(args.x)
        vals = lb_order_r_row(lam, 1, x, args.max_n)
        meta["x"] = format_rational(x)
    elif kind == "bern-order-r":
        x = _rational(args.x)
        if args.r < 1:
            raise ModeViolation("order r must be positive")
        vals = lb_order_r_row(lam, args.r, x, args.max_n)
        meta.update(r=args.r, x=format_rational(x))
    elif kind == "barnes":
        weights = []
        for w in args.weights.split(","):
            q = _rational(w)
            if q.denominator != 1 or q < 1:
                raise ModeViolation(f"Barnes weights must be positive integers, got {w}")
            weights.append(int(q))
        vals = [barnes_multiweight(lam, weights, n) for n in range(args.max_n + 1)]
        meta["weights"] = weights
    elif kind == "gen-bern":
        chi = _character(args)
        vals = [generalized_bernoulli(chi, lam, n, args.F) for n in range(args.max_n + 1)]
        meta["character"] = {"modulus": chi.modulus, "index": chi.index}
    elif kind == "zeta-neg":
        x = _rational(args.x)
        if x <= 0:
            raise UsageError("x must be positive")
        rows = [_row(k, sv.hurwitz_zeta_neg(lam, k, x), L_num, "k") for k in range(1, args.max_k + 1)]
        meta["x"] = format_rational(x)
        emit(rows, args.format, out, meta)
        return 0
    elif kind == "l-neg":
        chi = _character(args)
        rows = [_row(k, sv.l_value_neg(lam, k, chi), L_num, "k") for k in range(1, args.max_k + 1)]
        meta["character"] = {"modulus": chi.modulus, "index": chi.index}
        emit(rows, args.format, out, meta)
        return 0
    else:  # pragma: no cover - argparse restricts choices
        raise UsageError(f"unknown kind {kind}")
    rows = [_row(n, v, L_num) for n, v in enumerate(vals)]
    emit(rows, args.format, out, meta)
    return 0


def _character(args):
    try:
        return character(args.modulus, args.index)
    except (IndexError, ValueError) as exc:
        raise UsageError(str(exc)) from exc


def cmd_zeta(args, out) -> int:
    lam = _complex(args.lam)
    s = _complex(args.s)
    x = float(_rational(args.x))
    try:
        if args.modulus is not None:
            chi = _character(args)
            num = sv.l_series_numeric(lam, s, chi, args.tol)
            fn = "L_lambda"
            arguments = {"modulus": chi.modulus, "index": chi.index}
        else:
            chi = None
            num = sv.zeta_series_numeric(lam, s, x, args.tol)
            fn = "zeta_lambda"
            arguments = {"x": args.x}
    except (sv.NonConvergent, sv.PoleAtOne) as exc:
        raise ModeViolation(str(exc)) from exc
    arguments.update({"lambda": args.lam, "s": [s.real, s.imag]})
    report = sv.SpecialValueReport(fn, arguments, numeric=num, tol=args.tol)
    k = 1 - s.real
    q = _maybe_rational(args.lam)
    if q is not None and s.imag == 0 and k >= 1 and k == int(k):
        desc = LambdaDescriptor.rational(q) if q != 1 else LambdaDescriptor.one()
        if chi is None:
            exact = sv.hurwitz_zeta_neg(desc, int(k), _rational(args.x))
        else:
            exact = sv.l_value_neg(desc, int(k), chi)
        report.exact = exact
        report.residual = abs(num - exact.evaluate(sv.principal_log(lam)))
    if args.format == "json":
        out.write(json.dumps(report.to_json()) + "\n")
    else:
        out.write(f"{fn}{arguments} = {num}\n")
        if report.exact is not None:
            out.write(f"exact: {logpoly_text(report.exact)}  residual {report.residual:.3e}\n")
    return 0


def _maybe_rational(text: str) -> Fraction | None:
    t = text.strip()
    if t.upper().startswith("R:"):
        t = t[2:]
    try:
        return Fraction(t)
    except (ValueError, ZeroDivisionError):
        return None


def cmd_verify(args, out) -> int:
    if args.suite != "all" and args.suite not in verify.SUITES:
        raise UsageError(f"unknown suite {args.suite!r}")
    results = verify.run(args.suite, verify.Config(max_n=args.max_n, seed=args.seed))
    ok = all(r.passed for r in results)
    if args.format == "json":
        out.write(json.dumps({"suite": args.suite, "passed": ok,
                              "checks": [r.to_json() for r in results]}) + "\n")
    elif args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["suite", "anchor", "name", "passed", "detail"])
        for r in results:
            w.writerow([r.suite, r.anchor, r.name, r.passed, r.detail])
    else:
        for r in results:
            out.write(r.line() + "\n")
        passed = sum(r.passed for r in results)
        out.write(f"{passed}/{len(results)} identities hold\n")
    return 0 if ok else 1


def cmd_padic(args, out) -> int:
    p, N = args.p, args.prec
    if not padic._is_odd_prime(p):
        raise UsageError(f"p = {p} is not an odd prime")
    if not 1 <= N <= padic.MAX_PREC:
        raise UsageError(f"precision must be between 1 and {padic.MAX_PREC}")
    try:
        doc = _padic_dispatch(args, p, N)
    except (padic.NotAUnit, padic.OutsideDomain, padic.CharacterNotRepresentable,
            padic.PrecisionLoss) as exc:
        raise UsageError(str(exc)) from exc
    out.write(json.dumps(doc) + "\n")
    return 0


def _padic_dispatch(args, p: int, N: int) -> dict:
    op = args.op
    if op == "teichmuller":
        t = padic.teichmuller(args.a, p, N)
        return {"a": t.a, **t.value.to_json()}
    if op == "log":
        q = _padic_rational(args.lam)
        return padic.padic_log(q, p, N).to_json()
    if op == "volkenborn":
        lam = _padic_lambda(args.lam)
        x = _rational(args.x)
        diag = padic.volkenborn_diagnostics(lam, args.n, x, p, args.steps)
        return {
            "p": p,
            "lambda": args.lam,
            "n": args.n,
            "x": format_rational(x),
            "partial_sums": [format_rational(s) for s in diag["partial_sums"]],
            "valuations": diag["valuations"],
            "limit": diag["exact"].to_json(),
        }
    lam = _padic_lambda(args.lam)
    if op == "h-p":
        F = args.F
        j = padic.h_p_lambda_neg(args.n, args.a, F, lam, p, N)
        c = padic.h_p_lambda_neg_closed(args.n, args.a, F, lam, p, N)
        return {"value": j.to_json(), "closed_form": c.to_json(), "agree": j.agrees(c, N)}
    if op == "l-p":
        chi = _character(args)
        a = padic.l_p_lambda_neg(args.n, chi, lam, p, N)
        b = padic.l_p_lambda_neg_euler(args.n, chi, lam, p, N)
        c = padic.L_P_SHORTFALL
        return {"value": a.to_json(), "euler_route": b.to_json(), "shortfall": c,
                "agree": a.agrees(b, N - c)}
    raise UsageError(f"unknown p-adic operation {op}")  # pragma: no cover


def _padic_rational(text: str) -> Fraction:
    t = text.strip()
    if t.upper().startswith("R:"):
        t = t[2:]
    return _rational(t)


def _padic_lambda(text: str) -> LambdaDescriptor:
    return _lambda(text)


# parser


def build_parser() -> argparse.ArgumentParser:
    default_fmt = os.environ.get("LBERN_FORMAT", "text")
    if default_fmt not in FORMATS:
        default_fmt = "text"
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default=default_fmt)

    parser = _Parser(prog="lbern", description="lambda-Bernoulli numbers and friends, exactly.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_table(sp, kind):
        sp.set_defaults(kind=kind, handler=cmd_table)
        if kind not in ("fe", "multi-zeta"):
            sp.add_argument("--lambda", dest="lam", default="1")
            sp.add_argument("--numeric", action="store_true",
                            help="also evaluate with L at the principal log")
        if kind in ("bern", "bern-poly", "bern-order-r", "barnes", "gen-bern", "fe"):
            sp.add_argument("--max-n", type=int, default=6)
        if kind in ("bern-poly", "bern-order-r", "zeta-neg", "fe"):
            sp.add_argument("--x", default="0" if kind != "zeta-neg" else "1")
        if kind in ("bern-order-r", "fe"):
            sp.add_argument("--r", type=int, default=1)
        if kind == "fe":
            sp.add_argument("--u", required=True)
        if kind == "barnes":
            sp.add_argument("--weights", required=True, help="comma separated, e.g. 1,2")
        if kind in ("gen-bern", "l-neg"):
            sp.add_argument("--modulus", type=int, required=True)
            sp.add_argument("--index", type=int, default=0)
        if kind == "gen-bern":
            sp.add_argument("--F", type=int, default=None)
        if kind in ("zeta-neg", "l-neg"):
            sp.add_argument("--max-k", type=int, default=4)
        if kind == "multi-zeta":
            sp.add_argument("--r", type=int, required=True)
            sp.add_argument("--m", type=int, default=None)
            sp.add_argument("--max-m", type=int, default=6)

    for kind in TABLE_KINDS:
        add_table(sub.add_parser(kind, parents=[common]), kind)

    table = sub.add_parser("table", help="same tables, grouped: table <kind> ...")
    tsub = table.add_subparsers(dest="kind_cmd", required=True)
    for kind in TABLE_KINDS:
        add_table(tsub.add_parser(kind, parents=[common]), kind)

    z = sub.add_parser("zeta", parents=[common], help="numeric series for |lambda| < 1")
    z.add_argument("--lambda", dest="lam", required=True)
    z.add_argument("--s", required=True)
    z.add_argument("--x", default="1")
    z.add_argument("--tol", type=float, default=1e-14)
    z.add_argument("--modulus", type=int, default=None)
    z.add_argument("--index", type=int, default=0)
    z.set_defaults(handler=cmd_zeta)

    v = sub.add_parser("verify", parents=[common])
    v.add_argument("--suite", default="all")
    v.add_argument("--max-n", type=int, default=12)
    v.add_argument("--seed", type=int, default=0)
    v.set_defaults(handler=cmd_verify)

    pa = sub.add_parser("padic")
    psub = pa.add_subparsers(dest="op", required=True)
    for op in ("teichmuller", "log", "volkenborn", "h-p", "l-p"):
        sp = psub.add_parser(op)
        sp.add_argument("--p", type=int, required=True)
        sp.add_argument("--prec", type=int, default=8)
        sp.set_defaults(handler=cmd_padic)
        if op == "teichmuller":
            sp.add_argument("--a", type=int, required=True)
        if op in ("log", "volkenborn", "h-p", "l-p"):
            sp.add_argument("--lambda", dest="lam", default="1")
        if op == "volkenborn":
            sp.add_argument("--n", type=int, required=True)
            sp.add_argument("--x", default="0")
            sp.add_argument("--steps", type=int, default=4)
        if op in ("h-p", "l-p"):
            sp.add_argument("--n", type=int, required=True)
        if op == "h-p":
            sp.add_argument("--a", type=int, required=True)
            sp.add_argument("--F", type=int, required=True)
        if op == "l-p":
            sp.add_argument("--modulus", type=int, default=1)
            sp.add_argument("--index", type=int, default=0)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        return args.handler(args, out)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ModeViolation as exc:
        print(f"mode violation: {exc}", file=sys.stderr)
        return 3
    except (ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
