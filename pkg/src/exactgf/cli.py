"""Command-line surface: every pipeline behind one subcommand, JSON to
stdout by default, pretty algebraic text behind --pretty.

Exit codes: 0 success, 1 when a fit/budget/structure check fails (with a
JSON diagnostic), 2 for usage errors such as malformed input.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import spanning, toeplitz
from .cfinite import guess_rec
from .core import Poly, RationalFunction
from .errors import (
    BadVertexPair,
    BudgetExceeded,
    DataTooShort,
    ExactGFError,
    InconsistentSpec,
    NoFitWithinBudget,
    NotConnected,
)
from .graphs import graph_from_json_dict, path_graph

#: Grids this tall are stretch targets; refuse them unless asked nicely.
LONG_RUN_K = 6


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _build_parser() -> _Parser:
    p = _Parser(prog="exactgf", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("guess", help="fit a constant-coefficient recurrence")
    g.add_argument("--data", required=True, help="comma-separated exact terms")
    g.add_argument("--pretty", action="store_true")

    for name, help_text in (
        ("gf-grid", "spanning-tree generating function of the k-row grid"),
        ("gf-product", "spanning-tree generating function of graph x path"),
    ):
        q = sub.add_parser(name, help=help_text)
        if name == "gf-grid":
            q.add_argument("--k", type=int, required=True)
        else:
            q.add_argument("--graph", required=True, help="graph JSON file")
        q.add_argument("--pretty", action="store_true")
        q.add_argument("--emit-data", action="store_true")
        q.add_argument("--allow-long", action="store_true")
        q.add_argument("--max-terms", type=int, default=spanning.MAX_TERMS)

    q = sub.add_parser("gf-ver", help="bivariate vertical-edge generating function")
    q.add_argument("--k", type=int)
    q.add_argument("--graph")
    q.add_argument("--pretty", action="store_true")
    q.add_argument("--allow-long", action="store_true")
    q.add_argument("--max-terms", type=int, default=spanning.MAX_TERMS)

    q = sub.add_parser("c-poly", help="two-forest cofactor polynomial C_k")
    q.add_argument("--k", type=int, required=True)
    q.add_argument("--pretty", action="store_true")
    q.add_argument("--max-terms", type=int, default=spanning.MAX_TERMS)

    q = sub.add_parser("resistance", help="corner-to-corner grid resistance")
    q.add_argument("--k", type=int, required=True)
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--pretty", action="store_true")

    q = sub.add_parser("moments", help="vertical-edge statistic moments")
    q.add_argument("--k", type=int)
    q.add_argument("--graph")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--pretty", action="store_true")

    q = sub.add_parser("toeplitz-gf", help="banded Toeplitz det/perm GF")
    q.add_argument("--row", required=True, help="comma-separated first-row prefix")
    q.add_argument("--col", required=True, help="comma-separated first-column prefix")
    q.add_argument("--mode", choices=("det", "perm"), default="det")
    q.add_argument("--method", choices=("guess", "transfer"), default="transfer")
    q.add_argument("--n", type=int, default=50, help="data end for --method guess")
    q.add_argument("--pretty", action="store_true")

    q = sub.add_parser("toeplitz-scheme", help="dump the minor-state scheme")
    q.add_argument("--row", required=True)
    q.add_argument("--col", required=True)
    q.add_argument("--mode", choices=("det", "perm"), default="det")

    return p


def _parse_scalar(text: str):
    text = text.strip()
    if "/" in text:
        return Fraction(text)
    return int(text)


def _parse_csv(text: str):
    try:
        return [_parse_scalar(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise UsageError(f"bad numeric list {text!r}: {exc}") from exc


def _scalar_json(x):
    f = Fraction(x)
    return int(f) if f.denominator == 1 else str(f)


def _load_graph(path: str):
    try:
        with open(path) as fh:
            obj = json.load(fh)
        return graph_from_json_dict(obj)
    except (OSError, ValueError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read graph JSON {path!r}: {exc}") from exc


# ---------------------------------------------------------------------------
# pretty printing
# ---------------------------------------------------------------------------

def _fmt_nested(c: Poly) -> str:
    """Render a v-polynomial coefficient, pulling a common minus sign out."""
    if c.degree == 0:
        return str(c.coeffs[0])
    if sum(1 for x in c.coeffs if x) == 1:
        return _fmt_poly(c, "v", descending=False)  # bare monomial
    if all(x <= 0 for x in c.coeffs) and any(x < 0 for x in c.coeffs):
        return "-(" + _fmt_poly(-c, "v", descending=False) + ")"
    return "(" + _fmt_poly(c, "v", descending=False) + ")"


def _fmt_poly(p: Poly, var="t", descending=True) -> str:
    if not p:
        return "0"
    terms = []
    indices = range(len(p.coeffs) - 1, -1, -1) if descending else range(len(p.coeffs))
    for i in indices:
        c = p.coeffs[i]
        if not c:
            continue
        if isinstance(c, Poly) and c.degree == 0:
            c = c.coeffs[0]
        if i == 0:
            body = _fmt_nested(c) if isinstance(c, Poly) else str(c)
        else:
            pow_txt = var if i == 1 else f"{var}^{i}"
            if isinstance(c, Poly):
                body = f"{_fmt_nested(c)}*{pow_txt}"
            elif c == 1:
                body = pow_txt
            elif c == -1:
                body = f"-{pow_txt}"
            else:
                body = f"{c}*{pow_txt}"
        terms.append(body)
    out = ""
    for body in terms:
        if not out:
            out = body
        elif body.startswith("-"):
            out += "-" + body[1:]
        else:
            out += "+" + body
    return out


def _leading_scalar(p: Poly):
    lead = p.coeffs[-1]
    while isinstance(lead, Poly):
        lead = lead.coeffs[-1]
    return lead


def _fmt_ratfunc(rf: RationalFunction) -> str:
    num, den = rf.num, rf.den
    if den.degree == 0 and den.coeffs[0] == 1:
        return _fmt_poly(num)
    if _leading_scalar(den) < 0:
        num, den = -num, -den
    num_txt = _fmt_poly(num)
    if sum(1 for c in num.coeffs if c) > 1:
        num_txt = f"({num_txt})"
    return f"{num_txt}/({_fmt_poly(den)})"


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _emit(args, payload: dict, pretty_text: str | None):
    if getattr(args, "pretty", False) and pretty_text is not None:
        print(pretty_text)
    else:
        print(json.dumps(payload))


def _gf_payload(result: spanning.GFResult, emit_data=None) -> dict:
    payload = spanning.gf_to_json(
        result.gf, result.offset, result.spec.order, result.data_used
    )
    if emit_data is not None:
        payload["data"] = [str(x) for x in emit_data]
    return payload


def _cmd_guess(args) -> int:
    data = _parse_csv(args.data)
    spec = guess_rec(data)
    if spec is None:
        print(json.dumps({"error": "no recurrence found"}))
        return 1
    payload = {
        "initial": [_scalar_json(x) for x in spec.initial],
        "rec": [_scalar_json(x) for x in spec.rec],
    }
    _emit(args, payload, f"[{payload['initial']}, {payload['rec']}]")
    return 0


def _check_long(args, k: int):
    if k >= LONG_RUN_K and not args.allow_long:
        raise UsageError(
            f"k={k} is a long-running stretch target; pass --allow-long to proceed"
        )


def _cmd_gf_grid(args) -> int:
    _check_long(args, args.k)
    result = spanning.gf_grid(args.k, max_terms=args.max_terms)
    data = None
    if args.emit_data:
        from .cfinite import seq_from_rec

        data = seq_from_rec(result.spec, result.data_used)
    _emit(args, _gf_payload(result, data), _fmt_ratfunc(result.gf))
    return 0


def _cmd_gf_product(args) -> int:
    g = _load_graph(args.graph)
    result = spanning.gf_spanning(g, max_terms=args.max_terms)
    data = None
    if args.emit_data:
        from .cfinite import seq_from_rec

        data = seq_from_rec(result.spec, result.data_used)
    _emit(args, _gf_payload(result, data), _fmt_ratfunc(result.gf))
    return 0


def _base_graph(args):
    if getattr(args, "k", None):
        return path_graph(args.k)
    if getattr(args, "graph", None):
        return _load_graph(args.graph)
    raise UsageError("need --k or --graph")


def _cmd_gf_ver(args) -> int:
    if args.k is not None:
        _check_long(args, args.k)
        result = spanning.gf_ver_grid(args.k, max_terms=args.max_terms)
    else:
        result = spanning.gf_ver(_base_graph(args), max_terms=args.max_terms)
    _emit(args, _gf_payload(result), _fmt_ratfunc(result.gf))
    return 0


def _cmd_c_poly(args) -> int:
    poly = spanning.c_poly(args.k, max_terms=args.max_terms)
    payload = {"k": args.k, "c_poly": [str(c) for c in poly.coeffs]}
    _emit(args, payload, _fmt_poly(poly))
    return 0


def _cmd_resistance(args) -> int:
    value = spanning.resistance(args.k, args.n)
    payload = {"k": args.k, "n": args.n, "resistance": str(value)}
    _emit(args, payload, str(value))
    return 0


def _cmd_moments(args) -> int:
    report = spanning.moments(_base_graph(args), args.n)
    payload = {
        "n": report.n,
        "mean": str(report.mean),
        "variance": str(report.variance),
        "skewness": str(report.skewness) if report.skewness is not None else None,
        "kurtosis": str(report.kurtosis) if report.kurtosis is not None else None,
    }
    pretty = (
        f"n={report.n} mean={report.mean} variance={report.variance} "
        f"skewness={report.skewness} kurtosis={report.kurtosis}"
    )
    _emit(args, payload, pretty)
    return 0


def _cmd_toeplitz_gf(args) -> int:
    row = _parse_csv(args.row)
    col = _parse_csv(args.col)
    if args.method == "transfer":
        rf = toeplitz.gf_transfer(row, col, args.mode)
        terms_used = None
    else:
        fit_start = min(10, max(1, args.n // 2))
        rf = toeplitz.gf_family_guess(row, col, args.mode,
                                      fit_start=fit_start, fit_end=args.n)
        terms_used = args.n
    payload = spanning.gf_to_json(rf, 0, int(rf.den.degree), terms_used)
    payload["mode"] = args.mode
    payload["method"] = args.method
    _emit(args, payload, _fmt_ratfunc(rf))
    return 0


def _cmd_toeplitz_scheme(args) -> int:
    row = _parse_csv(args.row)
    col = _parse_csv(args.col)
    scheme = toeplitz.children_scheme(row, col, args.mode)
    print(json.dumps(toeplitz.scheme_to_json(scheme)))
    return 0


_COMMANDS = {
    "guess": _cmd_guess,
    "gf-grid": _cmd_gf_grid,
    "gf-product": _cmd_gf_product,
    "gf-ver": _cmd_gf_ver,
    "c-poly": _cmd_c_poly,
    "resistance": _cmd_resistance,
    "moments": _cmd_moments,
    "toeplitz-gf": _cmd_toeplitz_gf,
    "toeplitz-scheme": _cmd_toeplitz_scheme,
}

_USAGE_ERRORS = (
    UsageError,
    BadVertexPair,
    DataTooShort,
    InconsistentSpec,
    NotConnected,
    ValueError,
)


def run(argv) -> int:
    """Parse and execute; returns the exit code instead of exiting."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except _USAGE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NoFitWithinBudget as exc:
        diagnostic = {"error": str(exc), "data": [str(x) for x in exc.data]}
        print(json.dumps(diagnostic))
        return 1
    except BudgetExceeded as exc:
        print(json.dumps({"error": str(exc)}))
        return 1
    except ExactGFError as exc:
        print(json.dumps({"error": str(exc)}))
        return 1


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
