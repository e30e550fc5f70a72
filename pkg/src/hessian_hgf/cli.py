"""Command-line front end: ``hessian-hgf <command> [options]``.

Every command writes one table (CSV or JSON) and exits 0 when all of its
checks pass, 1 on a verification failure, 2 on a usage error and 3 on an
internal arithmetic error.
"""
from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction
from importlib import resources

import numpy as np

from . import charsum, classnum, combin, hessian, moments
from .config import RunConfig, load_config
from .errors import CaseNotCovered, HessianError, NoCubicCharacter
from .ffield import field_for_q, make_field

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_ARITH = 0, 1, 2, 3

MOMENT_COLUMNS = ["q", "r", "m", "direct", "classnum", "scaled", "target", "abs_error"]
DISTRIBUTION_COLUMNS = ["bin_lo", "bin_hi", "count", "ecdf", "scdf"]


class UsageError(Exception):
    pass


def _plain(x):
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, combin.SqrtPiScalar):
        return repr(x)
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.floating,)):
        return float(x)
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    return x


def report_schema() -> dict:
    text = resources.files("hessian_hgf").joinpath("report.schema.json").read_text()
    return json.loads(text)


def emit(cfg: RunConfig, command: str, columns, rows, summary: dict, passed: bool, stream=None):
    """Write the table; the summary goes to stderr in CSV mode."""
    doc = {
        "command": command,
        "status": "pass" if passed else "fail",
        "config": cfg.as_dict(),
        "columns": list(columns),
        "rows": [dict(zip(columns, _plain(list(r)))) for r in rows],
        "summary": _plain(summary),
    }
    own = stream is None and cfg.out is not None
    out = open(cfg.out, "w", newline="") if own else (stream or sys.stdout)
    try:
        if cfg.format == "json":
            json.dump(doc, out, indent=2)
            out.write("\n")
        else:
            w = csv.writer(out, lineterminator="\n")
            w.writerow(columns)
            for r in doc["rows"]:
                w.writerow([r[c] for c in columns])
            json.dump({k: doc[k] for k in ("command", "status", "summary")}, sys.stderr)
            sys.stderr.write("\n")
    finally:
        if own:
            out.close()
    return doc


def _field(args, cfg):
    return make_field(args.p, args.r, cap=cfg.cap)


# ---------------------------------------------------------------------------
# commands


def cmd_bridge(args, cfg):
    ft = _field(args, cfg)
    if (ft.q - 1) % 3:
        raise NoCubicCharacter(f"q = {ft.q} is not 1 mod 3")
    vals = moments.f21_values(ft, cfg.threads)
    tt = moments.trace_table(ft)
    three = ft.from_int(3)
    rows, bad = [], 0
    for lam in tt.keys():
        if lam == 0:
            continue
        arg = ft.div(three, lam)
        n, a = int(vals[arg]), tt[lam]
        ok = n == -a
        bad += not ok
        rows.append((lam, str(ft.coords(lam)), arg, n, a, ok))
    summary = {"q": ft.q, "checked": len(rows), "mismatches": bad}
    return ["lam", "coords", "arg", "n", "a", "ok"], rows, summary, bad == 0


def _moment_rows(ft, m_max, method, cfg, asymptotic):
    q = ft.q
    R, normalization = None, "printed"
    if ft.r % 2 == 0 and method != "direct":
        normalization = "trace"
        R = moments.estimate_R(q, normalization)
    rows, ok = [], True
    for m in range(1, m_max + 1):
        rep = moments.moment_report(q, m, method, R=R, normalization=normalization)
        if rep.classnum_side is not None:
            ok &= bool(rep.exact_match)
        if asymptotic:
            ok &= rep.abs_error <= cfg.tolerance(m)
        rows.append((q, ft.r, m, rep.direct, rep.classnum_side, rep.scaled, rep.target, rep.abs_error))
    summary = {"q": q, "kind": rep.kind, "R": R, "R_normalization": normalization if R is not None else None,
               "tolerances": {m: cfg.tolerance(m) for m in range(1, m_max + 1)}}
    return rows, summary, ok


def cmd_moments(args, cfg):
    if args.m_max < 1:
        raise UsageError("--m-max must be at least 1")
    ft = _field(args, cfg)
    if (ft.q - 1) % 3 == 0:
        moments.f21_values(ft, cfg.threads)
    rows, summary, ok = _moment_rows(ft, args.m_max, args.method, cfg, args.asymptotic)
    return MOMENT_COLUMNS, rows, summary, ok


def cmd_distribution(args, cfg):
    if args.bins < 1:
        raise UsageError("--bins must be positive")
    ft = _field(args, cfg)
    if (ft.q - 1) % 3 == 0 and not args.traces:
        moments.f21_values(ft, cfg.threads)
        rep = moments.distribution(ft.q, args.bins)
    else:
        rep = moments.trace_distribution(ft.q, args.bins)
    ok = rep.ks <= cfg.ks if args.asymptotic else True
    summary = {"q": ft.q, "kind": rep.kind, "n": len(rep.values), "ks": rep.ks, "ks_tolerance": cfg.ks}
    return DISTRIBUTION_COLUMNS, list(rep.rows()), summary, ok


def cmd_classnum(args, cfg):
    rows, bad = [], 0
    for D in range(0, args.d_max + 1):
        if D and not classnum.is_discriminant(D):
            continue
        H, Hs = classnum.hurwitz_H(D), classnum.hurwitz_Hstar(D)
        ok = classnum.hurwitz_by_forms(D, weighted=False) == H and classnum.hurwitz_by_forms(D) == Hs
        bad += not ok
        h = classnum.class_number_h(D) if D else None
        rows.append((D, h, H, Hs, ok))
    return ["D", "h", "H", "Hstar", "ok"], rows, {"d_max": args.d_max, "mismatches": bad}, bad == 0


def census_checks(q: int):
    """Census counts against every applicable Schoof case, as rows."""
    ft = field_for_q(q)
    cen = hessian.census(ft)
    b = charsum.hasse_bound(q)
    rows = []
    for s in range(-b, b + 1):
        for n in (1, 3):
            try:
                want = classnum.schoof_count(q, s, n)
            except CaseNotCovered:
                continue
            if s % ft.p:
                case = 4
            elif s * s == 4 * q:
                case = 2
            elif s * s == q:
                case = 3
            else:
                case = 1
            if case in (2, 3) and n != 1:
                continue
            got = cen.count(s, n * n)
            rows.append((q, s, n, case, got, want, got == want))
    return rows


def cmd_census(args, cfg):
    rows = census_checks(args.q)
    bad = sum(1 for r in rows if not r[-1])
    return ["q", "s", "n", "case", "census", "schoof", "ok"], rows, {"q": args.q, "mismatches": bad}, bad == 0


def identity_rows(nu_max: int, n_max: int):
    rows = []
    for nu in range(nu_max + 1):
        for k in range(nu + 1):
            a = combin.lemma_binomsum_lhs(nu, k)
            b = combin.lemma_binomsum_rhs(nu, k)
            c = combin.lemma_binomsum_hypergeometric(nu, k)
            rows.append(("binomial_sum", f"nu={nu},k={k}", a, b, a == b and c == b))
    h = Fraction(3, 2)
    for nu in range(nu_max + 1):
        a, b = combin.kappa(h, h, nu), combin.kappa_closed(nu)
        rows.append(("kappa", f"nu={nu}", a, b, a == b))
    for n in range(1, n_max + 1):
        a = combin.cohen_identity_sum(n)
        rows.append(("cohen", f"n={n}", a, 0, a == 0))
    for nu in range(min(nu_max, 20) + 1):
        for mu in range(nu + 1):
            a, b = combin.mertens_binomial_identity(nu, mu)
            rows.append(("mertens_binomial", f"nu={nu},mu={mu}", a, b, a == b))
    for k in range(1, 41):
        a, b = combin.legendre_duplication(Fraction(k, 2))
        rows.append(("duplication", f"z={Fraction(k, 2)}", a, b, a == b))
    return rows


def cmd_identities(args, cfg):
    rows = identity_rows(args.nu_max, args.n_max)
    bad = sum(1 for r in rows if not r[-1])
    return ["identity", "params", "lhs", "rhs", "ok"], rows, {"checked": len(rows), "failures": bad}, bad == 0


def cmd_sweep(args, cfg):
    try:
        ps = [int(x) for x in args.p_list.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"bad --p-list {args.p_list!r}") from None
    if not ps:
        raise UsageError("--p-list is empty")
    rows = []
    for p in ps:
        ft = make_field(p, args.r, cap=cfg.cap)
        for m in range(1, args.m_max + 1):
            rep = moments.moment_report(ft.q, m, method="direct")
            rows.append((ft.q, m, rep.kind, rep.scaled, rep.target, rep.abs_error))
    return ["q", "m", "kind", "scaled", "target", "abs_error"], rows, {"p_list": ps}, True


COMMANDS = {
    "bridge": cmd_bridge,
    "moments": cmd_moments,
    "distribution": cmd_distribution,
    "classnum": cmd_classnum,
    "census": cmd_census,
    "identities": cmd_identities,
    "sweep": cmd_sweep,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["csv", "json"])
    common.add_argument("--out")
    common.add_argument("--threads", type=int)

    parser = argparse.ArgumentParser(prog="hessian-hgf", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def field_args(sp):
        sp.add_argument("--p", type=int, required=True)
        sp.add_argument("--r", type=int, default=1)

    sp = sub.add_parser("bridge", parents=[common], help="check q*2F1(3/lam) = -a(lam)")
    field_args(sp)
    sp = sub.add_parser("moments", parents=[common], help="exact and scaled moments")
    field_args(sp)
    sp.add_argument("--m-max", type=int, default=6)
    sp.add_argument("--method", choices=["direct", "classnum", "both"], default="both")
    sp.add_argument("--asymptotic", action="store_true", help="also enforce the moment tolerances")
    sp = sub.add_parser("distribution", parents=[common], help="histogram against the semicircle law")
    field_args(sp)
    sp.add_argument("--bins", type=int, default=40)
    sp.add_argument("--traces", action="store_true", help="use a(lam)/sqrt(q) even when 3 | q-1")
    sp.add_argument("--asymptotic", action="store_true", help="fail if KS exceeds its tolerance")
    sp = sub.add_parser("classnum", parents=[common], help="Hurwitz class number table")
    sp.add_argument("--d-max", type=int, default=100)
    sp = sub.add_parser("census", parents=[common], help="Weierstrass census against Schoof's counts")
    sp.add_argument("--q", type=int, required=True)
    sp = sub.add_parser("identities", parents=[common], help="combinatorial identity suite")
    sp.add_argument("--nu-max", type=int, default=40)
    sp.add_argument("--n-max", type=int, default=50)
    sp = sub.add_parser("sweep", parents=[common], help="scaled moments over several primes")
    sp.add_argument("--p-list", required=True)
    sp.add_argument("--r", type=int, default=1)
    sp.add_argument("--m-max", type=int, default=6)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = load_config(format=args.format, out=args.out, threads=args.threads)
        columns, rows, summary, passed = COMMANDS[args.command](args, cfg)
    except (UsageError, ValueError) as exc:
        # HessianError value errors (bad field, no cubic character, ...) land here too
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ArithmeticError, HessianError) as exc:
        print(f"arithmetic error: {exc}", file=sys.stderr)
        return EXIT_ARITH
    emit(cfg, args.command, columns, rows, summary, passed)
    return EXIT_PASS if passed else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
