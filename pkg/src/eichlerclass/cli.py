"""Command-line front end.

Usage:
    eichlerclass field 5
    eichlerclass orders 13 --over A
    eichlerclass classnum 5 --disc 2,3 --json
    eichlerclass classnum 41 --disc 2:0,2:1 --level 3
    eichlerclass sweep --pmax 200 --verify --jobs 4

Ideals are given by the rational prime below them.  A bare ``ell`` stands
for every prime of F above ell; ``ell:r`` picks the split prime on which
sqrt(p) reduces to r (for ell = 2, r is the image of (1+sqrt(p))/2).

Exit codes: 0 success, 2 bad input, 3 non-integral class number (a bug
trap), 4 failed verification.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from .arith import InternalConsistencyError, is_prime
from .cmfield import Tag
from .context import field_context
from .quaternion import EichlerInput, InvalidEichlerInput, class_number_eichler
from .realquad import Kind, PrimeIdealF, RealQuadField

EXIT_USAGE = 2
EXIT_NONINTEGRAL = 3
EXIT_VERIFY = 4

SWEEP_HEADER = [
    "p", "d_F", "eps_a", "eps_b", "norm_eps", "varpi", "h_F", "zeta_m1",
    "h_K1", "h_K2", "h_K3", "h_O_unramified",
]
PMAX_LIMIT = 10**5


class UsageError(Exception):
    pass


def fraction_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def dump_json(obj) -> str:
    return json.dumps(obj, ensure_ascii=False, indent=2)


def _prime_arg(text: str) -> int:
    try:
        p = int(text)
    except ValueError:
        raise UsageError(f"not an integer: {text!r}") from None
    if not is_prime(p):
        raise UsageError(f"{p} is not prime")
    return p


def parse_ideals(F: RealQuadField, text: str | None) -> list[PrimeIdealF]:
    """Turn "2,3:1,7" into primes of F; see the module docstring."""
    if not text:
        return []
    out: list[PrimeIdealF] = []
    for item in text.split(","):
        item = item.strip()
        ell_text, _, root_text = item.partition(":")
        ell = _prime_arg(ell_text)
        above = field_context(F.p).primes_above(ell)
        if root_text:
            try:
                root = int(root_text)
            except ValueError:
                raise UsageError(f"bad root in {item!r}") from None
            chosen = [P for P in above if P.kind is Kind.SPLIT and P.root == root % ell]
            if not chosen:
                raise UsageError(f"{ell} has no split prime with root {root} in Q(√{F.p})")
            above = chosen
        for P in above:
            if P in out:
                raise UsageError(f"prime {P.label()} listed twice")
            out.append(P)
    return out


# field


def field_report(F: RealQuadField) -> dict:
    return {
        "p": F.p,
        "d_F": F.d_F,
        "eps": str(F.eps),
        "eps_coords": [F.eps.a, F.eps.b],
        "eps_basis": F.eps.basis.value,
        "norm_eps": F.norm_eps,
        "varpi": F.varpi,
        "h_F": F.h_F,
        "zeta_m1": fraction_str(F.zeta_m1),
    }


def cmd_field(args) -> int:
    F = field_context(_prime_arg(args.p)).F
    rep = field_report(F)
    if args.json:
        print(dump_json(rep))
        return 0
    print(f"F = Q(√{F.p}), d_F = {F.d_F}")
    print(f"ε = {F.eps}   N(ε) = {F.norm_eps:+d}")
    if F.varpi is not None:
        print(f"ϖ = [O_F^× : Z[√{F.p}]^×] = {F.varpi}")
    print(f"h(F) = {F.h_F}")
    print(f"ζ_F(-1) = {F.zeta_m1}")
    return 0


# orders


def order_rows(p: int, over: str) -> list[dict]:
    ctx = field_context(p)
    if over == "A":
        if ctx.a_orders is None:
            raise UsageError("proper Z[√p]-orders are only classified for p ≡ 1 mod 4")
        orders = ctx.a_orders
    else:
        orders = ctx.of_orders
    return [
        {
            "order": B.label,
            "field": B.field.name,
            "tag": B.field.tag.value,
            "index": B.index_in_OK,
            "w_B": B.w_B,
            "h_B": B.h_B,
            "conductor": [P.to_json() for P in B.conductor_support],
            "provisional": B.provisional,
        }
        for B in orders
    ]


def cmd_orders(args) -> int:
    rows = order_rows(_prime_arg(args.p), args.over)
    if args.json:
        print(dump_json(rows))
        return 0
    print(f"{'order':<13}{'field':<16}{'index':>6}{'w(B)':>6}{'h(B)':>7}  conductor")
    for r in rows:
        cond = ",".join(
            (f"{c['ell']}:{c['root']}" if c["kind"] == "split" else str(c["ell"])) for c in r["conductor"]
        ) or "-"
        if r["provisional"]:
            cond += " (provisional)"
        print(f"{r['order']:<13}{r['field']:<16}{r['index']:>6}{r['w_B']:>6}{r['h_B']:>7}  {cond}")
    return 0


# classnum


def cmd_classnum(args) -> int:
    F = field_context(_prime_arg(args.p)).F
    D = parse_ideals(F, args.disc)
    N = parse_ideals(F, args.level)
    try:
        inp = EichlerInput(F, tuple(D), tuple(N))
    except InvalidEichlerInput as exc:
        raise UsageError(str(exc)) from None
    report = class_number_eichler(inp)
    if args.json:
        print(dump_json(report.to_json()))
        return 0
    print(f"F = Q(√{F.p})  D = {{{', '.join(P.label() for P in inp.D)}}}  N = {{{', '.join(P.label() for P in inp.N)}}}")
    print(f"Mass = {report.mass}")
    for c in report.contributions:
        if c.E:
            print(f"  {c.label:<13}{c.order.field.name:<16} h={c.h_B:<5} w={c.w_B:<3} E={c.E:<3} term={c.term}")
    print(f"Ell  = {report.elliptic}")
    print(f"h(O) = {report.h_O}")
    return 0


# sweep


def sweep_row(p: int) -> list[str]:
    ctx = field_context(p)
    F = ctx.F
    h = {K.tag: K.h_K for K in ctx.cm_fields}
    h_O = class_number_eichler(EichlerInput(F)).h_O
    cell = lambda v: "" if v is None else str(v)  # noqa: E731
    return [
        str(p), str(F.d_F), str(F.eps.a), str(F.eps.b), str(F.norm_eps), cell(F.varpi), str(F.h_F),
        fraction_str(F.zeta_m1), cell(h.get(Tag.K1)), cell(h.get(Tag.K2)), cell(h.get(Tag.K3)), str(h_O),
    ]


def _sweep_job(task: tuple[int, bool]) -> tuple[list[str], list[str]]:
    p, verify = task
    failures: list[str] = []
    if verify:
        from .oracle import verify_prime

        failures = verify_prime(p)
    return sweep_row(p), failures


def cmd_sweep(args) -> int:
    if not 2 <= args.pmax <= PMAX_LIMIT:
        raise UsageError(f"--pmax must lie in [2, {PMAX_LIMIT}]")
    tasks = [(p, args.verify) for p in range(2, args.pmax + 1) if is_prime(p)]
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(SWEEP_HEADER)
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = pool.map(_sweep_job, tasks, chunksize=4)  # map keeps input order
            return _emit(writer, results)
    return _emit(writer, map(_sweep_job, tasks))


def _emit(writer, results) -> int:
    for row, failures in results:
        if failures:
            sys.stdout.flush()
            for msg in failures:
                print(f"verification failed: {msg}", file=sys.stderr)
            return EXIT_VERIFY
        writer.writerow(row)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="eichlerclass",
        description="CM orders over Q(√p) and class numbers of Eichler orders.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    f = sub.add_parser("field", help="invariants of F = Q(√p)")
    f.add_argument("p")
    f.add_argument("--json", action="store_true")
    f.set_defaults(func=cmd_field)

    o = sub.add_parser("orders", help="quadratic orders with w(B) > 1")
    o.add_argument("p")
    o.add_argument("--over", choices=["OF", "A"], default="OF")
    o.add_argument("--json", action="store_true")
    o.set_defaults(func=cmd_orders)

    c = sub.add_parser("classnum", help="class number of an Eichler order")
    c.add_argument("p")
    c.add_argument("--disc", help="finite ramified primes, e.g. 2,3 or 2:0,2:1")
    c.add_argument("--level", help="level primes, same syntax")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_classnum)

    s = sub.add_parser("sweep", help="CSV table over all primes p <= PMAX")
    s.add_argument("--pmax", type=int, required=True)
    s.add_argument("--verify", action="store_true", help="run every oracle cross-check")
    s.add_argument("--jobs", type=int, default=1)
    s.set_defaults(func=cmd_sweep)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InternalConsistencyError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_NONINTEGRAL


if __name__ == "__main__":
    sys.exit(main())
