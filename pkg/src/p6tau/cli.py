"""Command-line front end.

Exit codes: 0 success, 1 a verify check failed, 2 usage error, 3 domain or
pole error (a JSON error record is written to stdout).
"""

import argparse
import csv
import json
import os
import re
import sys
import warnings

from . import __version__, _qseries, curves, modular, painleve
from .config import ENV_VAR, load_config
from .errors import BranchWarning, ConvergenceError, DomainError, PoleError
from .verify import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_DOMAIN = 0, 1, 2, 3
FORMS = ("simp", "tau", "x", "wp", "picard")
DEGENERATE = ("alpha_family", "L2", "L3", "L4")


def complex_arg(text):
    """'re,im' or 're' -> complex."""
    try:
        parts = [float(p) for p in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected re,im but got {text!r}") from None
    if len(parts) == 1:
        return complex(parts[0])
    if len(parts) == 2:
        return complex(parts[0], parts[1])
    raise argparse.ArgumentTypeError(f"expected re,im but got {text!r}")


def int_range(text):
    """'a..b' (inclusive) -> range."""
    try:
        lo, hi = (int(p) for p in text.split(".."))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a..b but got {text!r}") from None
    if hi < lo:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return range(lo, hi + 1)


def form_arg(text):
    if text in FORMS:
        return text
    if text.startswith("degenerate:") and text.split(":", 1)[1] in DEGENERATE:
        return text
    raise argparse.ArgumentTypeError(
        f"form must be one of {', '.join(FORMS)} or degenerate:{{{','.join(DEGENERATE)}}}"
    )


def _pair(z):
    return [z.real, z.imag]


def _provenance(form, cfg):
    return {"form": form, "tolerance": cfg.tolerance, "max_terms": cfg.max_terms,
            "version": __version__}


def _initial_data(args):
    A, B = args.A, args.B
    if args.convention == "tau":
        return painleve.InitialData.from_tau_form(A, B)
    if args.convention == "x":
        return painleve.InitialData.from_x_form(A, B)
    return painleve.InitialData(A, B)


def _y_function(form, data, alpha):
    if form in ("x", "simp", "tau", "wp"):
        return lambda x: painleve.hitchin_y_x(data, x), painleve.HITCHIN
    if form == "picard":
        return lambda x: painleve.picard_y(data, x), painleve.PICARD
    kind = form.split(":", 1)[1]
    return lambda x: painleve.degenerate_solutions(kind, alpha, x), painleve.HITCHIN


def _evaluate(form, data, alpha, x, tau):
    if form == "simp":
        return painleve.hitchin_y_tau(data, tau)
    if form == "tau":
        return painleve.hitchin_y_tau_logderiv(data, tau)
    if form == "x":
        return painleve.hitchin_y_x(data, x)
    if form == "wp":
        return painleve.y_from_wp(painleve.hitchin_wp(data, tau), tau)
    if form == "picard":
        return painleve.picard_y_tau(data, tau)
    return painleve.degenerate_solutions(form.split(":", 1)[1], alpha, x)


def cmd_eval(args, cfg, out):
    data = _initial_data(args)
    if args.x is not None:
        x = args.x
        tau = modular.tau_of_x(x)
    else:
        tau = args.tau
        x = modular.x_of_tau(tau)
    y = _evaluate(args.form, data, args.alpha, x, tau)
    record = {"x": _pair(x), "tau": _pair(tau), "y": _pair(y)}
    if args.form in ("simp", "tau", "wp", "x"):
        record["z"] = _pair(painleve.hitchin_z(data, tau))
    y_fn, params = _y_function(args.form, data, args.alpha)
    record["residual"] = painleve.p6_residual(y_fn, x, params)
    record.update(_provenance(args.form, cfg))
    if cfg.output_format == "json":
        json.dump(record, out)
        out.write("\n")
    else:
        w = csv.writer(out, lineterminator="\n")
        keys = ["x", "tau", "y"] + (["z"] if "z" in record else [])
        header = [f"{p}_{k}" for k in keys for p in ("re", "im")] + ["residual"]
        w.writerow(header)
        w.writerow([v for k in keys for v in record[k]] + [record["residual"]])
    return EXIT_OK


def _pole_rows(data, m_range, n_range, label):
    pl = painleve.poles(data, m_range, n_range)
    return [(idx.m, idx.n, x.real, x.imag, label) for idx, x in pl.points], pl


def cmd_poles(args, cfg, out):
    """Poles x_mn = x((m - B)/(n + A)) with (A, B) as given on the command line."""
    data = painleve.InitialData.from_tau_form(args.A, args.B)
    rows, filtered, unresolved = [], 0, 0
    groups = []
    if args.fix_n or args.fix_m:
        groups += [(args.m_range, range(n, n + 1), f"n={n}") for n in args.fix_n or ()]
        groups += [(range(m, m + 1), args.n_range, f"m={m}") for m in args.fix_m or ()]
    else:
        groups.append((args.m_range, args.n_range, ""))
    for m_range, n_range, label in groups:
        r, pl = _pole_rows(data, m_range, n_range, label)
        rows.extend(r)
        filtered += pl.filtered
        unresolved += pl.unresolved
    labelled = bool(args.fix_n or args.fix_m)
    if cfg.output_format == "json":
        json.dump({
            "points": [{"m": m, "n": n, "x": [re, im], **({"directrix": lab} if labelled else {})}
                       for m, n, re, im, lab in rows],
            "count": len(rows), "filtered": filtered, "unresolved": unresolved,
            **_provenance("poles", cfg),
        }, out)
        out.write("\n")
    else:
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["m", "n", "re_x", "im_x"] + (["directrix"] if labelled else []))
        for m, n, re, im, lab in rows:
            w.writerow([m, n, repr(re), repr(im)] + ([lab] if labelled else []))
        print(f"count={len(rows)} filtered={filtered} unresolved={unresolved}", file=sys.stderr)
    return EXIT_OK


def cmd_verify(args, cfg, out):
    checks = run_suite(args.suite, seed=cfg.seed)
    if cfg.output_format == "json":
        json.dump({"checks": [{"name": c.name, "value": c.value, "threshold": c.threshold,
                               "passed": c.passed} for c in checks],
                   **_provenance(f"verify:{args.suite}", cfg)}, out)
        out.write("\n")
    else:
        for c in checks:
            out.write(c.line() + "\n")
        n_ok = sum(c.passed for c in checks)
        out.write(f"{n_ok}/{len(checks)} checks passed\n")
    return EXIT_OK if all(c.passed for c in checks) else EXIT_FAIL


def cmd_catalog(args, cfg, out):
    json.dump({"curves": curves.catalog_table(), "version": __version__}, out, indent=1)
    out.write("\n")
    return EXIT_OK


# argparse only treats "-1" and "-.5" as values; "-1.5,2" would read as an option.
_NEGATIVE = re.compile(r"^-(\d|\.\d)[\d.,eE+-]*$")


def _global_options(parser, default=None):
    kw = {"default": default}
    parser.add_argument("--config", help=f"key=value config file (default: ${ENV_VAR})", **kw)
    parser.add_argument("--tolerance", type=float, **kw)
    parser.add_argument("--max-terms", type=int, **kw)
    parser.add_argument("--format", dest="output_format", choices=("csv", "json"), **kw)
    parser.add_argument("--seed", type=int, **kw)


def build_parser():
    p = argparse.ArgumentParser(prog="p6tau", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    _global_options(p)
    # the same options are accepted after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    _global_options(common, default=argparse.SUPPRESS)
    sub = p.add_subparsers(dest="command", required=True)
    add = lambda name, **kw: sub.add_parser(name, parents=[common], **kw)

    e = add("eval", help="evaluate a solution at one point")
    e.add_argument("--A", type=complex_arg, default=0j)
    e.add_argument("--B", type=complex_arg, default=0j)
    e.add_argument("--convention", choices=("canonical", "tau", "x"), default="canonical",
                   help="which form the constants A, B belong to")
    where = e.add_mutually_exclusive_group(required=True)
    where.add_argument("--x", type=complex_arg)
    where.add_argument("--tau", type=complex_arg)
    e.add_argument("--form", type=form_arg, default="x")
    e.add_argument("--alpha", type=complex_arg, default=0j, help="degenerate family parameter")
    e.set_defaults(func=cmd_eval)

    q = add("poles", help="enumerate the Picard pole series")
    q.add_argument("--A", type=complex_arg, required=True)
    q.add_argument("--B", type=complex_arg, required=True)
    q.add_argument("--m-range", type=int_range, default=range(-30, 71))
    q.add_argument("--n-range", type=int_range, default=range(-30, 71))
    q.add_argument("--fix-n", type=int, nargs="+", help="emit the directrices n = const")
    q.add_argument("--fix-m", type=int, nargs="+", help="emit the directrices m = const")
    q.set_defaults(func=cmd_poles)

    v = add("verify", help="run identity suites")
    v.add_argument("--suite", choices=tuple(SUITES) + ("all",), default="all")
    v.set_defaults(func=cmd_verify)

    c = add("catalog", help="export the curve catalog as JSON")
    c.set_defaults(func=cmd_catalog)
    for parser in (p, e, q, v, c):
        parser._negative_number_matcher = _NEGATIVE
    return p


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    defaults = {"verify": "csv", "poles": "csv"}
    try:
        cfg = load_config(args.config, tolerance=args.tolerance, max_terms=args.max_terms,
                          output_format=args.output_format, seed=args.seed)
    except (DomainError, OSError) as exc:
        parser.error(str(exc))
    if args.output_format is None and not (args.config or os.environ.get(ENV_VAR)):
        cfg = cfg.updated(output_format=defaults.get(args.command, "json"))
    try:
        with warnings.catch_warnings(), _qseries.truncation(cfg.max_terms):
            warnings.simplefilter("ignore", BranchWarning)
            return args.func(args, cfg, out)
    except (DomainError, PoleError, ConvergenceError) as exc:
        record = {"error": type(exc).__name__, "message": str(exc)}
        if isinstance(exc, PoleError):
            record["series"] = exc.series
        json.dump(record, out)
        out.write("\n")
        return EXIT_DOMAIN


def entry():
    try:
        return main()
    except BrokenPipeError:
        # downstream closed early (e.g. piped into head)
        devnull = os.open(os.devnull, os.O_WRONLY)
        os.dup2(devnull, sys.stdout.fileno())
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(entry())
