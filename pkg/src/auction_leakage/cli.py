"""Command-line interface.

Exit codes: 0 success, 1 usage, 2 domain error, 3 budget exceeded,
4 verification mismatch.
"""

import argparse
import csv
import io
import json
import sys

from ._validation import BUDGET_ENV_VAR, BudgetExceededError, DomainError, NumericError
from .auction import auction_price, auction_price_2, buyers, seller_benefit
from .conjecture import (
    SeriesMismatchError,
    conjecture_report,
    generate_series,
    polyfit_least_squares,
)
from .oracle import count_fixpoint_tuples, min_entropy_oracle, three_party_case_bruteforce
from .three_party import case_breakdown, c3_fast, h3_fast, three_party_limit
from .two_party import c2, h2_closed_form, two_party_limit

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_BUDGET, EXIT_MISMATCH = 0, 1, 2, 3, 4
MAX_RENDERED_TABLE = 200
ENGINES = ("auto", "oracle", "closed2", "fast3")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _bid_list(text):
    try:
        bids = [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bids must be comma-separated integers, got {text!r}")
    if not bids:
        raise argparse.ArgumentTypeError("bid list is empty")
    return bids


def _dump_json(obj):
    return json.dumps(obj, indent=2) + "\n"


def _csv_text(rows):
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def _sig6(v):
    return f"{v:.6g}"


# -- price -------------------------------------------------------------------


def cmd_price(args):
    price = auction_price(args.bids)
    who = [i + 1 for i in buyers(args.bids, price)]
    benefit = seller_benefit(args.bids, price)
    if args.format == "json":
        return _dump_json({"bids": args.bids, "price": price, "buyers": who, "benefit": benefit})
    if args.format == "csv":
        return _csv_text([["price", "benefit", "buyers"], [price, benefit, " ".join(map(str, who))]])
    return f"price: {price}\nbuyers: {', '.join(map(str, who))}\nbenefit: {benefit}\n"


# -- table -------------------------------------------------------------------


def price_table(m):
    """Two-bidder prices; ``rows[x-1][y-1] = f(x, y)``."""
    return [[auction_price_2(x, y) for y in range(1, m + 1)] for x in range(1, m + 1)]


def cmd_table(args):
    m = args.m
    if m < 1:
        raise DomainError(f"m must be >= 1, got {m}")
    if args.format != "csv" and m > MAX_RENDERED_TABLE:
        raise DomainError(f"m={m} is too large to render (max {MAX_RENDERED_TABLE}); use --format csv")
    rows = price_table(m)
    if args.format == "csv":
        return _csv_text([["x\\y", *range(1, m + 1)]] + [[x, *row] for x, row in enumerate(rows, 1)])
    if args.format == "json":
        return _dump_json({"m": m, "rows": rows})
    width = len(str(m))
    lines = [" " * width + " | " + " ".join(f"{y:>{width}}" for y in range(1, m + 1))]
    lines.append("-" * len(lines[0]))
    for x, row in enumerate(rows, 1):
        lines.append(f"{x:>{width}} | " + " ".join(f"{v:>{width}}" for v in row))
    return "\n".join(lines) + "\n"


# -- entropy -----------------------------------------------------------------


def resolve_engine(engine, n):
    if engine == "closed2" and n != 2:
        raise UsageError("engine closed2 requires --n 2")
    if engine == "fast3" and n != 3:
        raise UsageError("engine fast3 requires --n 3")
    if engine == "auto":
        return {2: "closed2", 3: "fast3"}.get(n, "oracle")
    return engine


def leakage_record(n, m, engine="auto", budget=None, threads=1):
    """Schema-stable dict describing the leakage of one bid."""
    engine = resolve_engine(engine, n)
    gap = None
    if engine == "closed2":
        res = h2_closed_form(m)
        report, gap = res.to_report(), res.gap_to_limit
    elif engine == "fast3":
        report = h3_fast(m, threads=threads).to_report()
    else:
        report = min_entropy_oracle(n, m, budget=budget, threads=threads)
    limit = {2: two_party_limit(), 3: three_party_limit()}.get(n)
    if limit is not None and gap is None:
        gap = limit - report.posterior_min_entropy
    return {
        "n": n,
        "m": m,
        "engine": engine,
        "vulnerability": {"num": report.vulnerability.numerator, "den": report.vulnerability.denominator},
        "entropy_bits": report.posterior_min_entropy,
        "prior_bits": report.prior_min_entropy,
        "limit_bits": limit,
        "gap_to_limit": gap,
    }


def cmd_entropy(args):
    rec = leakage_record(args.n, args.m, args.engine, args.budget, args.threads)
    if args.format == "json":
        return _dump_json(rec)
    if args.format == "csv":
        flat = {**rec, "vulnerability_num": rec["vulnerability"]["num"],
                "vulnerability_den": rec["vulnerability"]["den"]}
        del flat["vulnerability"]
        keys = list(flat)
        return _csv_text([keys, ["" if flat[k] is None else flat[k] for k in keys]])
    v = rec["vulnerability"]
    out = [
        f"n: {rec['n']}",
        f"m: {rec['m']}",
        f"engine: {rec['engine']}",
        f"vulnerability: {v['num']}/{v['den']}",
        f"entropy_bits: {_sig6(rec['entropy_bits'])}",
        f"prior_bits: {_sig6(rec['prior_bits'])}",
    ]
    if rec["limit_bits"] is not None:
        out.append(f"limit_bits: {_sig6(rec['limit_bits'])}")
        out.append(f"gap_to_limit: {_sig6(rec['gap_to_limit'])}")
    return "\n".join(out) + "\n"


# -- verify ------------------------------------------------------------------


def verification(n, max_m, budget=None, threads=1):
    """Compare the enumeration engine with the closed-form/linear engine."""
    if n not in (2, 3):
        raise UsageError("verify supports --n 2 or --n 3")
    if max_m < 1:
        raise DomainError(f"max_m must be >= 1, got {max_m}")
    fast_name = "closed2" if n == 2 else "fast3"
    rows, case_mismatches = [], []
    for m in range(1, max_m + 1):
        oracle = count_fixpoint_tuples(n, m, budget=budget, threads=threads)
        fast = c2(m) if n == 2 else c3_fast(m, threads=threads)
        rows.append({"m": m, "oracle": oracle, fast_name: fast, "match": oracle == fast})
        if n == 3:
            for x in range(1, m + 1):
                brute = three_party_case_bruteforce(x, m)
                derived = case_breakdown(x, m).as_dict()
                for key, val in derived.items():
                    if brute[key] != val:
                        case_mismatches.append(
                            {"m": m, "x": x, "case": key, "derived": val, "bruteforce": brute[key]}
                        )
    matches = sum(r["match"] for r in rows)
    return {
        "n": n,
        "max_m": max_m,
        "engine": fast_name,
        "matches": matches,
        "total": len(rows),
        "rows": rows,
        "case_mismatches": case_mismatches,
    }


def cmd_verify(args):
    rep = verification(args.n, args.max_m, args.budget, args.threads)
    if args.format == "json":
        text = _dump_json(rep)
    elif args.format == "csv":
        eng = rep["engine"]
        text = _csv_text([["m", "oracle", eng, "match"]]
                         + [[r["m"], r["oracle"], r[eng], int(r["match"])] for r in rep["rows"]])
    else:
        eng = rep["engine"]
        lines = [f"m={r['m']} oracle={r['oracle']} {eng}={r[eng]} {'ok' if r['match'] else 'MISMATCH'}"
                 for r in rep["rows"]]
        for cm in rep["case_mismatches"]:
            lines.append(f"case mismatch m={cm['m']} x={cm['x']} {cm['case']}: "
                         f"derived={cm['derived']} bruteforce={cm['bruteforce']}")
        lines.append(f"{rep['matches']}/{rep['total']} exact matches")
        text = "\n".join(lines) + "\n"
    failed = rep["matches"] != rep["total"] or rep["case_mismatches"]
    return text, (EXIT_MISMATCH if failed else EXIT_OK)


# -- series / fit ------------------------------------------------------------


def series_csv(series):
    return _csv_text([["m", "c_n"]] + [[m, c] for m, c in series.points])


def fit_record(series, degree=None, rescale=True):
    fit = polyfit_least_squares(series, degree, rescale=rescale)
    rec = fit.as_dict()
    if fit.degree == series.n:
        row = conjecture_report(series.n, series=series, rescale=rescale)
        rec["conjectured"] = row.conjectured
        rec["implied_limit_bits"] = row.implied_limit_bits
        rec["log2_n"] = row.log2_n
        if row.published_leading is not None:
            rec["paper_leading"] = row.published_leading
    return rec


def cmd_series(args):
    series = generate_series(args.n, args.max_m, engine=args.series_engine,
                             budget=args.budget, threads=args.threads)
    text = series_csv(series)
    if args.fit:
        text += "\n" + _dump_json(fit_record(series, args.degree, not args.raw))
    return text


def cmd_fit(args):
    series = generate_series(args.n, args.max_m, engine=args.series_engine,
                             budget=args.budget, threads=args.threads)
    return _dump_json(fit_record(series, args.degree, not args.raw))


# -- parser ------------------------------------------------------------------


def build_parser():
    parser = _Parser(prog="auction-leakage", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, formats=("human", "csv", "json")):
        p.add_argument("--format", choices=formats, default=formats[0])
        p.add_argument("--out", help="write output to this path instead of stdout")

    def heavy(p):
        p.add_argument("--budget", type=int, default=None,
                       help=f"max auction evaluations for enumeration (default ${BUDGET_ENV_VAR} or 2e9)")
        p.add_argument("--threads", type=int, default=1)

    p = sub.add_parser("price", help="optimal sales price for a bid vector")
    p.add_argument("--bids", type=_bid_list, required=True)
    common(p)
    p.set_defaults(func=cmd_price)

    p = sub.add_parser("table", help="two-bidder price grid")
    p.add_argument("--m", type=int, required=True)
    common(p)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("entropy", help="posterior min-entropy of one bid")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--engine", choices=ENGINES, default="auto")
    common(p)
    heavy(p)
    p.set_defaults(func=cmd_entropy)

    p = sub.add_parser("verify", help="enumeration vs closed-form engines")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--max-m", type=int, required=True)
    common(p)
    heavy(p)
    p.set_defaults(func=cmd_verify)

    for name, func, help_text in (
        ("series", cmd_series, "CSV of c_n(1..max_m)"),
        ("fit", cmd_fit, "least-squares polynomial fit of c_n"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--max-m", type=int, default=30)
        p.add_argument("--degree", type=int, default=None, help="defaults to n")
        p.add_argument("--raw", action="store_true", help="fit in m directly, without rescaling")
        p.add_argument("--series-engine", choices=("auto", "oracle"), default="auto")
        if name == "series":
            p.add_argument("--fit", action="store_true", help="append the fit as JSON")
        p.add_argument("--out", help="write output to this path instead of stdout")
        heavy(p)
        p.set_defaults(func=func, format="csv" if name == "series" else "json")
    return parser


def _emit(text, path):
    if path:
        with open(path, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "threads", 1) < 1:
        parser.error("--threads must be >= 1")
    for name in ("n", "m", "max_m"):
        val = getattr(args, name, None)
        if val is not None and val < 1:
            return _fail(f"--{name.replace('_', '-')} must be >= 1", EXIT_DOMAIN)
    try:
        result = args.func(args)
    except UsageError as exc:
        return _fail(str(exc), EXIT_USAGE)
    except BudgetExceededError as exc:
        return _fail(str(exc), EXIT_BUDGET)
    except SeriesMismatchError as exc:
        return _fail(str(exc), EXIT_MISMATCH)
    except (DomainError, NumericError) as exc:
        return _fail(str(exc), EXIT_DOMAIN)
    text, code = result if isinstance(result, tuple) else (result, EXIT_OK)
    _emit(text, args.out)
    return code


def _fail(message, code):
    print(f"auction-leakage: error: {message}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
