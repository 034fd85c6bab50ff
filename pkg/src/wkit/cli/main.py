"""The ``wk`` command-line tool.

Exit status: 0 on success or a verified certificate, 1 on a refuted
certificate or a counterexample, 2 on usage or evaluation errors (the
error code is printed on stderr).
"""

import argparse
import json
import sys
from fractions import Fraction

from .. import __version__
from ..coefficients.fields import QQ
from ..coefficients.values import format_value, value_to_json
from ..errors import WkError
from ..expr.ast import max_var
from ..expr.evaluate import PuiseuxRing, SeriesRing, TateRing, evaluate
from ..expr.parser import parse_expression
from ..kochen.certificates import parse_certificate
from ..kochen.sampler import sample_p_definiteness
from ..kochen.verify import REFUTED, VERIFIED, verify
from ..powerseries import (
    hensel_root_series,
    implicit_solve,
    regularize,
    substitute,
    tau_shear,
    weierstrass_divide,
    weierstrass_prepare,
)
from ..tate import gauss_norm, tate_divide, tate_eval, tate_kth_root, tate_prepare
from ..valued.dominance import ValuationTag, coarsen_specialize, dominance_compare, valuation
from ..valued.evaluate import eval_infinitesimal


DEFAULT_ORDER = 10


class Report:
    """Collects ``name = value`` lines and the matching JSON object."""

    def __init__(self):
        self.lines = []
        self.data = {}

    def add(self, key, value, text=None):
        self.data[key] = value
        self.lines.append(f"{key} = {value if text is None else text}")

    def emit(self, as_json, out):
        if as_json:
            out.write(json.dumps(self.data, sort_keys=True) + "\n")
        else:
            out.write("\n".join(self.lines) + "\n")


def _split_top(text, sep=","):
    """Split at separators outside parentheses."""
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return [s.strip() for s in parts]


def _nvars(args, *texts):
    if args.vars:
        return args.vars
    return max([1] + [max_var(parse_expression(t)) for t in texts])


def _series(text, nvars, order, p=None):
    order = DEFAULT_ORDER if order is None else order
    return evaluate(parse_expression(text), SeriesRing(nvars, order, QQ, p))


def _tate(text, nvars, args):
    return evaluate(parse_expression(text), TateRing(nvars, args.p, args.N))


def _need_prime(args):
    if args.p is None:
        raise UsageError("this command needs -p")


class UsageError(WkError):
    code = "E_USAGE"


def _series_json(f):
    return {"text": str(f), **f.to_json()}


def _padic_json(x):
    if x.val is None:
        return {"p": x.p, "prec": x.prec, "zero": True}
    return {"p": x.p, "prec": x.prec, "val": x.val, "unit": x.unit}


# -- power series ------------------------------------------------------------------------


def cmd_divide(args, rep):
    m = _nvars(args, args.f, args.g)
    f = _series(args.f, m, args.order)
    g = _series(args.g, m, args.order)
    res = weierstrass_divide(f, g, args.var)
    rep.add("q", str(res.quotient))
    rep.add("r", str(res.remainder))
    rep.add("degree", res.degree)
    return 0


def cmd_prepare(args, rep):
    m = _nvars(args, args.g)
    prep = weierstrass_prepare(_series(args.g, m, args.order), args.var)
    rep.add("u", str(prep.unit))
    rep.add("w", str(prep.wpoly))
    rep.add("degree", prep.degree)
    return 0


def cmd_shear(args, rep):
    m = _nvars(args, args.f)
    rep.add("result", str(tau_shear(_series(args.f, m, args.order), args.d, args.inverse)))
    return 0


def cmd_regularize(args, rep):
    m = _nvars(args, *args.f)
    fs = [_series(t, m, args.order) for t in args.f]
    res = regularize(fs, args.bound)
    rep.add("d", res.d)
    for i, (s, o) in enumerate(zip(res.sheared, res.orders), start=1):
        rep.add(f"f{i}", str(s))
        rep.add(f"order{i}", o)
    return 0


def cmd_invert(args, rep):
    m = _nvars(args, args.f)
    rep.add("inverse", str(_series(args.f, m, args.order).inverse()))
    return 0


def cmd_subst(args, rep):
    m = _nvars(args, *args.g)
    gs = [_series(t, m, args.order) for t in args.g]
    f = _series(args.f, len(gs), args.order)
    rep.add("result", str(substitute(f, gs)))
    return 0


def cmd_hensel_root(args, rep):
    m = _nvars(args, args.f)
    rep.add("root", str(hensel_root_series(_series(args.f, m, args.order), args.k)))
    return 0


def cmd_ift(args, rep):
    m = _nvars(args, *args.f)
    fs = [_series(t, m, args.order) for t in args.f]
    for i, y in enumerate(implicit_solve(fs), start=1):
        rep.add(f"y{i}", str(y))
    return 0


# -- restricted power series ----------------------------------------------------------------


def cmd_gauss_norm(args, rep):
    _need_prime(args)
    f = _tate(args.f, _nvars(args, args.f), args)
    v = gauss_norm(f)
    rep.data["valuation"] = value_to_json(v)
    rep.lines.append(f"valuation = {format_value(v)}")
    return 0


def cmd_tate_divide(args, rep):
    _need_prime(args)
    m = _nvars(args, args.f, args.g)
    res = tate_divide(_tate(args.f, m, args), _tate(args.g, m, args), args.var)
    rep.add("q", str(res.quotient))
    rep.add("r", str(res.remainder))
    rep.add("degree", res.degree)
    return 0


def cmd_tate_prepare(args, rep):
    _need_prime(args)
    prep = tate_prepare(_tate(args.g, _nvars(args, args.g), args), args.var)
    rep.add("u", str(prep.unit))
    rep.add("w", str(prep.wpoly))
    rep.add("degree", prep.degree)
    return 0


def cmd_tate_root(args, rep):
    _need_prime(args)
    rep.add("root", str(tate_kth_root(_tate(args.f, _nvars(args, args.f), args), args.k)))
    return 0


# -- valued fields -----------------------------------------------------------------------------


def _puiseux(text, args):
    return evaluate(parse_expression(text), PuiseuxRing(QQ, args.p))


def cmd_eval(args, rep):
    coords = _split_top(args.at)
    m = len(coords)
    if args.p is not None:
        point = [Fraction(c) for c in coords]
        value = tate_eval(_tate(args.f, m, args), point)
        rep.data["value"] = _padic_json(value)
        rep.lines.append(f"value = {value}")
        return 0
    f = _series(args.f, m, args.order)
    point = [_puiseux(c, args) for c in coords]
    value = eval_infinitesimal(f, point)
    rep.data["value"] = value.to_json()
    tail = "" if value.prec is None else f" + O(t^({value.prec}))"
    rep.lines.append(f"value = {value}{tail}")
    return 0


def cmd_val(args, rep):
    tag = ValuationTag.parse(args.valuation)
    v = valuation(_puiseux(args.a, args), tag)
    rep.data["valuation"] = value_to_json(v)
    rep.lines.append(f"valuation = {format_value(v)}")
    return 0


def cmd_compare(args, rep):
    tag = ValuationTag.parse(args.valuation)
    verdict = dominance_compare(_puiseux(args.a, args), _puiseux(args.b, args), tag)
    for key, value in verdict.as_dict().items():
        rep.add(key, value, "undefined" if value is None else str(value).lower())
    return 0


def cmd_coarsen(args, rep):
    _need_prime(args)
    sp = coarsen_specialize(_puiseux(args.a, args), args.p)
    rep.add("coarse", str(sp.coarse))
    rep.add("residue", str(sp.residue))
    rep.data["composite"] = [str(sp.composite[0]), sp.composite[1]]
    rep.lines.append(f"composite = {format_value(sp.composite)}")
    return 0


# -- certificates --------------------------------------------------------------------------------


def cmd_verify(args, rep):
    text = sys.stdin.read() if args.file == "-" else open(args.file, encoding="utf-8").read()
    cert = parse_certificate(text)
    if args.order is not None:
        cert.order = args.order
    result = verify(cert)
    rep.data.update(result.to_json())
    rep.lines.append(str(result))
    if result.verdict == VERIFIED:
        return 0
    return 1 if result.verdict == REFUTED else 2


def cmd_sample_definite(args, rep):
    _need_prime(args)
    f = parse_expression(args.f)
    g = parse_expression(args.g)
    report = sample_p_definiteness(
        f, g, args.p, args.N, args.n, args.seed, germ=args.germ, nvars=args.vars, workers=args.workers
    )
    rep.data.update(report.to_json())
    rep.lines.append(str(report))
    return 1 if report.found else 0


# -- argument parsing ---------------------------------------------------------------------------------


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--vars", type=int, help="number of variables X1..Xm (default: largest index used)")
    common.add_argument("--order", type=int, help=f"truncation degree D (default {DEFAULT_ORDER})")
    common.add_argument("-p", type=int, help="prime p")
    common.add_argument("-N", type=int, default=20, help="p-adic precision N (default 20)")
    common.add_argument("--valuation", default="tadic", help="trivial | tadic | composite:p")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--var", type=int, help="division variable (default: the last one)")

    parser = argparse.ArgumentParser(prog="wk", description="Exact Weierstrass, p-adic and certificate computations.")
    parser.add_argument("--version", action="version", version=f"wk {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    def add(name, func, help_text):
        sp = sub.add_parser(name, parents=[common], help=help_text)
        sp.set_defaults(func=func)
        return sp

    sp = add("divide", cmd_divide, "Weierstrass division f = q*g + r")
    sp.add_argument("--f", required=True)
    sp.add_argument("--g", required=True)
    sp = add("prepare", cmd_prepare, "Weierstrass preparation g = u*w")
    sp.add_argument("--g", required=True)
    sp = add("shear", cmd_shear, "apply the shear X_i -> X_i + X_m^(d^(m-i))")
    sp.add_argument("--f", required=True)
    sp.add_argument("-d", type=int, required=True)
    sp.add_argument("--inverse", action="store_true")
    sp = add("regularize", cmd_regularize, "find a shear making every series regular in X_m")
    sp.add_argument("--f", action="append", required=True)
    sp.add_argument("--bound", type=int, default=16, help="largest shear parameter tried (default 16)")
    sp = add("invert", cmd_invert, "inverse of a unit series")
    sp.add_argument("--f", required=True)
    sp = add("subst", cmd_subst, "composition f(g1, ..., gn)")
    sp.add_argument("--f", required=True)
    sp.add_argument("--g", action="append", required=True)
    sp = add("hensel-root", cmd_hensel_root, "k-th root of a series")
    sp.add_argument("--f", required=True)
    sp.add_argument("-k", type=int, required=True)
    sp = add("ift", cmd_ift, "solve f_i(X, Y) = 0 for Y = y(X), unknowns are the last n variables")
    sp.add_argument("--f", action="append", required=True)
    sp = add("gauss-norm", cmd_gauss_norm, "valuation of the Gauss norm")
    sp.add_argument("--f", required=True)
    sp = add("tate-divide", cmd_tate_divide, "Weierstrass division of restricted series mod p^N")
    sp.add_argument("--f", required=True)
    sp.add_argument("--g", required=True)
    sp = add("tate-prepare", cmd_tate_prepare, "Weierstrass preparation of a restricted series")
    sp.add_argument("--g", required=True)
    sp = add("tate-root", cmd_tate_root, "k-th root of c^k times a 1-unit")
    sp.add_argument("--f", required=True)
    sp.add_argument("-k", type=int, required=True)
    sp = add("eval", cmd_eval, "evaluate at Puiseux infinitesimals (or at Z_p points with -p)")
    sp.add_argument("--f", required=True)
    sp.add_argument("--at", required=True, help="comma-separated coordinates")
    sp = add("val", cmd_val, "valuation of a Puiseux series")
    sp.add_argument("--a", required=True)
    sp = add("compare", cmd_compare, "dominance relations between a and b")
    sp.add_argument("--a", required=True)
    sp.add_argument("--b", required=True)
    sp = add("coarsen", cmd_coarsen, "coarse value, residue and composite value")
    sp.add_argument("--a", required=True)
    sp = add("verify", cmd_verify, "check a certificate file ('-' reads stdin)")
    sp.add_argument("file")
    sp = add("sample-definite", cmd_sample_definite, "search for a with |f(a)|_p > |g(a)|_p")
    sp.add_argument("--f", required=True)
    sp.add_argument("--g", required=True)
    sp.add_argument("-n", type=int, default=1000, help="number of samples")
    sp.add_argument("--germ", action="store_true", help="sample from p*Z_p")
    sp.add_argument("--workers", type=int, default=1)
    return parser


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    rep = Report()
    try:
        status = args.func(args, rep)
    except WkError as exc:
        err.write(f"error[{exc.code}]: {exc}\n")
        return 2
    except (ValueError, ArithmeticError, OSError) as exc:
        err.write(f"error[E_USAGE]: {exc}\n")
        return 2
    rep.emit(args.json, out)
    return status


if __name__ == "__main__":
    sys.exit(main())
