"""Command-line front end: every subcommand emits a schema-versioned JSON report.

Exit codes: 0 success, 1 a well-posed mathematical check came out false,
2 usage, input or resource problems.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Optional

from . import __version__
from .asymptotics.certificate import (
    DEFAULT_BASE_CAP,
    DEFAULT_INITIAL_CAP,
    certify_rlogconvexity,
    verify_certificate,
)
from .asymptotics.expansion import (
    asymptotic_order,
    characteristic_roots,
    dominant_root,
    estimate_leading_constant,
    r2_expansion,
    ratio_expansion,
    ratio_residual,
    sequence_expansion,
)
from .combinat import (
    ENUMERATION_CAP,
    baxter_number,
    baxter_polynomial,
    baxter_table,
    enumerate_baxter_descents,
    hoggatt_polynomial,
    hoggatt_qt,
    hoggatt_sum,
)
from .errors import BaxterKitError, ResourceError
from .polycore import Poly
from .precursive import (
    PRecurrence,
    SequenceWindow,
    baxter_hankel_window,
    baxter_recurrence,
    catalan_recurrence,
    check_initial_rlogconvexity,
    extend_sequence,
    hankel_offset_scan,
    verify_recurrence,
)
from .realroots import check_family_sturm

REPORT_SCHEMA = "baxterkit.report/1"
DEFAULT_CONJ3_CAP = 5000

EXIT_OK, EXIT_FALSE, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class Outcome:
    ok: bool
    result: dict
    table: list = field(default_factory=list)
    exit_code: Optional[int] = None  # overrides the ok-derived code


# -- argument helpers ----------------------------------------------------------

def parse_range(text: str) -> tuple[int, int]:
    """'a..b' (inclusive) or a single integer."""
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            lo, hi = int(a), int(b)
        else:
            lo = hi = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a..b or an integer, got {text!r}")
    if lo > hi:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return lo, hi


def parse_int_list(text: str) -> list[int]:
    try:
        out = []
        for part in text.split(","):
            lo, hi = parse_range(part.strip())
            out.extend(range(lo, hi + 1))
        return out
    except (ValueError, argparse.ArgumentTypeError):
        raise argparse.ArgumentTypeError(f"expected a comma separated list of integers, got {text!r}")


BUILTIN_SEQUENCES: dict[str, Callable[[], PRecurrence]] = {
    "baxter": baxter_recurrence,
    "catalan": catalan_recurrence,
}


def load_sequence(name: str) -> PRecurrence:
    if name in BUILTIN_SEQUENCES:
        return BUILTIN_SEQUENCES[name]()
    path = Path(name)
    if not path.exists():
        raise UsageError(f"unknown sequence {name!r} (built-ins: {', '.join(BUILTIN_SEQUENCES)}, or a JSON file)")
    try:
        data = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read sequence spec {name}: {exc}")
    if not isinstance(data, dict):
        raise UsageError(f"sequence spec {name} must be a JSON object")
    return PRecurrence.from_json(data, name=path.stem)


FAMILIES = ("baxter", "hoggatt", "hoggatt-q", "binomial")


def family_member(family: str, n: int, m: Optional[int], q: Optional[int]) -> Poly:
    if family == "baxter":
        return baxter_polynomial(n)
    if family == "binomial":
        return Poly([1, 1]) ** (n - 1)
    if m is None:
        raise UsageError(f"family {family} needs --m")
    if family == "hoggatt":
        return hoggatt_polynomial(n, m)
    if family == "hoggatt-q":
        if q is None:
            raise UsageError("family hoggatt-q needs --q")
        return hoggatt_qt(n, m, q)
    raise UsageError(f"unknown family {family!r}")


def _poly_json(p: Poly) -> list[str]:
    return p.to_json()


# -- subcommands -----------------------------------------------------------------

def cmd_gen(args) -> Outcome:
    lo, hi = args.range
    rows = []
    table = []
    for n in range(lo, hi + 1):
        p = family_member(args.family, n, args.m, args.q)
        rows.append({"n": n, "coeffs": _poly_json(p)})
        table.append(f"{n:>4}  {p}")
    return Outcome(True, {"family": args.family, "polys": rows}, table)


def cmd_interlace(args) -> Outcome:
    lo, hi = args.range
    polys = [family_member(args.family, n, args.m, args.q) for n in range(lo, hi + 1)]
    fv = check_family_sturm(polys, args.mode)
    pairs = []
    for i, v in enumerate(fv.per_pair):
        entry = {"n": lo + i, "relation": v.relation.value}
        good = v.strict if args.mode == "strict" else v.holds
        if not good or args.verbose:
            entry.update(v.to_json())
        pairs.append(entry)
    first = None if fv.first_failure is None else lo + fv.first_failure
    result = {"family": args.family, "mode": args.mode, "verdict": fv.verdict,
              "first_failure_n": first, "pairs": pairs}
    table = [f"{p['n']:>4} -> {p['n'] + 1:<4} {p['relation']}" for p in pairs]
    table.append(f"verdict: {fv.verdict}" + ("" if first is None else f" (first failure at n = {first})"))
    return Outcome(fv.verdict, result, table)


def cmd_seq(args) -> Outcome:
    rec = load_sequence(args.seq)
    win = extend_sequence(rec, args.upto)
    lo = rec.start_index if args.start is None else args.start
    shown = win.sub(max(lo, win.start_index), win.stop_index)
    result = {"sequence": rec.name, "recurrence": rec.to_json(), "window": shown.to_json()}
    ok = True
    table = [f"{shown.start_index + i:>6}  {t}" for i, t in enumerate(shown.terms)]
    if args.verify:
        if rec.name != "baxter":
            raise UsageError("--verify compares against the closed-form sum and is available for baxter only")
        good, bad = verify_recurrence(rec, baxter_number, rec.start_index, args.upto - rec.order)
        result["verification"] = {"range": [rec.start_index, args.upto - rec.order], "ok": good, "first_failure": bad}
        ok = good
        table.append(f"recurrence vs closed form: {'ok' if good else f'fails at n = {bad}'}")
    if args.check_r:
        chk = check_initial_rlogconvexity(win, args.check_r)
        result["rlogconvexity"] = chk.to_json()
        ok = ok and chk.ok
        table.append(f"{args.check_r}-log-convex on the window: {chk.ok}")
    return Outcome(ok, result, table)


def cmd_asymp(args) -> Outcome:
    rec = load_sequence(args.seq)
    roots = characteristic_roots(rec)
    rho = dominant_root(rec)
    rx = ratio_expansion(rec, rho, args.eta)
    sx = sequence_expansion(rx)
    residual = ratio_residual(rec, rx)
    result = {
        "sequence": rec.name,
        "characteristic_roots": [str(r) for r in roots],
        "ratio": rx.to_json(),
        "residual_vanishes": all(c == 0 for c in residual),
        "sequence_expansion": sx.to_json(),
    }
    table = [f"roots: {', '.join(map(str, roots))}",
             f"d: {', '.join(map(str, rx.d))}",
             f"nu = {sx.nu}; l: {', '.join(map(str, sx.ell))}"]
    if args.eta >= 2:
        try:
            r2 = r2_expansion(rx)
            result["r2"] = r2.to_json()
            table.append(f"R^2 = 1 + ({r2.c})/n^{r2.alpha} + ...  (beta = {r2.beta})")
            try:
                order = asymptotic_order(r2)
                result["asymptotic_order"] = order
                table.append(f"asymptotically {order}-log-convex")
            except BaxterKitError as exc:
                result["asymptotic_order"] = None
                result["asymptotic_order_reason"] = str(exc)
        except BaxterKitError as exc:
            result["r2"] = None
            result["r2_reason"] = str(exc)
    if args.probe is not None:
        est = estimate_leading_constant(rec, sx, args.probe)
        result["leading_constant_estimate"] = {"n_probe": args.probe, "value": str(est)}
        table.append(f"C ~ {est} (n = {args.probe})")
    return Outcome(True, result, table)


def cmd_certify(args) -> Outcome:
    if args.verify:
        try:
            data = json.loads(Path(args.verify).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read certificate {args.verify}: {exc}")
        cert = data.get("result", data) if isinstance(data, dict) else data
        ok, problems = verify_certificate(cert, recheck_initial=not args.skip_initial)
        return Outcome(ok, {"verified": ok, "problems": problems},
                       ["certificate verified" if ok else "certificate rejected", *problems])
    rec = load_sequence(args.seq)
    cert = certify_rlogconvexity(rec, args.r, args.eta, margin=args.margin, base_cap=args.base_cap,
                                 initial_cap=args.initial_cap, run_initial=not args.skip_initial)
    result = cert.to_json(include_levels=args.include_levels)
    table = [f"verdict: {cert.verdict}",
             f"N0 = {cert.enclosure.n0}",
             f"N_j: {cert.level_bounds}",
             f"initial check through {cert.initial_upto}: "
             + ("not run" if cert.initial_check is None else str(cert.initial_check.ok))]
    if cert.reason:
        table.append(f"reason: {cert.reason}")
    if cert.verdict == "certified":
        return Outcome(True, result, table)
    if cert.verdict == "eventual_only":
        # the symbolic half holds; only a budget stood in the way
        return Outcome(False, result, table, exit_code=EXIT_OK if args.skip_initial else EXIT_USAGE)
    return Outcome(False, result, table)


def cmd_hankel(args) -> Outcome:
    if args.seq == "baxter":
        need = max(args.first or [0]) + 2 * args.order
        win = baxter_hankel_window(need)
        offsets = args.first if args.first else [0, 1]
        indexing = "entry (i, j) = B_{first+i+j}; default first = 0 with B_0 = 1"
    else:
        rec = load_sequence(args.seq)
        need = max(args.first or [rec.start_index]) + 2 * args.order
        win = extend_sequence(rec, need)
        offsets = args.first if args.first else [rec.start_index]
        indexing = "entry (i, j) = a_{first+i+j}"
    scan = hankel_offset_scan(win, args.order, offsets)
    result = {"sequence": args.seq, "indexing": indexing,
              "scan": [{**s, "minors": [str(m) for m in s["minors"]]} for s in scan]}
    table = []
    for s in scan:
        table.append(f"first = {s['first']}: " + ", ".join(map(str, s["minors"]))
                     + f"  (first negative order: {s['first_negative_order']})")
    return Outcome(True, result, table)


def cmd_enumerate(args) -> Outcome:
    if args.n > args.cap:
        raise ResourceError(f"n = {args.n} exceeds the enumeration cap {args.cap} (raise --cap)")
    brute = enumerate_baxter_descents(args.n, cap=args.cap, workers=args.workers)
    formula = baxter_table(args.n)
    ok = brute.coeffs == formula.coeffs
    result = {"n": args.n, "brute_force": [str(c) for c in brute.coeffs],
              "formula": [str(c) for c in formula.coeffs], "match": ok, "total": str(brute.total)}
    table = [f"brute force: {list(brute.coeffs)}", f"formula:     {list(formula.coeffs)}", f"match: {ok}"]
    return Outcome(ok, result, table)


def _conjecture_1(args) -> Outcome:
    qlo, qhi = args.q
    nlo, nhi = args.n
    rows, failures, table = [], [], []
    for q in range(qlo, qhi + 1):
        for m in args.m:
            polys = [hoggatt_qt(n, m, q) for n in range(nlo, nhi + 1)]
            fv = check_family_sturm(polys, "strict")
            row = {"q": q, "m": m, "verdict": fv.verdict}
            if not fv.verdict:
                i = fv.first_failure
                row["first_failure_n"] = nlo + i
                row["witness"] = fv.per_pair[i].to_json() if i < len(fv.per_pair) else None
                failures.append(row)
            rows.append(row)
            table.append(f"q = {q:>2}, m = {m}: {'strict Sturm' if fv.verdict else 'FAILS'}")
    result = {"conjecture": 1, "n_range": [nlo, nhi], "rows": rows, "failures": failures,
              "all_strict": not failures}
    return Outcome(not failures, result, table)


def _conjecture_2(args) -> Outcome:
    rec = baxter_recurrence()
    chk = check_initial_rlogconvexity(rec, args.r, args.upto)
    result = {"conjecture": 2, "sequence": "baxter", "check": chk.to_json()}
    table = [f"L^j(B)_n >= 0 for j <= {args.r} through B_{args.upto}: {chk.ok}"]
    if chk.first_failure:
        table.append(f"first failure (level, n): {chk.first_failure}")
    return Outcome(chk.ok, result, table)


def _conjecture_3(args) -> Outcome:
    rows, table = [], []
    ok = True
    for m in args.m:
        terms = tuple(hoggatt_sum(n, m) for n in range(1, args.cap + 1))
        chk = check_initial_rlogconvexity(SequenceWindow(1, terms), args.r)
        rows.append({"m": m, "terms": args.cap, "check": chk.to_json()})
        ok = ok and chk.ok
        table.append(f"m = {m}: {args.r}-log-convex on n = 1..{args.cap}: {chk.ok}")
    return Outcome(ok, {"conjecture": 3, "rows": rows}, table)


def cmd_conjecture(args) -> Outcome:
    handler = {1: _conjecture_1, 2: _conjecture_2, 3: _conjecture_3}[args.id]
    return handler(args)


# -- parser and driver ------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "table"), default="json")
    common.add_argument("--out", help="write the report here instead of stdout")

    p = argparse.ArgumentParser(prog="baxterkit", description="Exact tools for Baxter and Hoggatt families.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="subcommand", required=True)

    def family_args(sp, default_range="1..10"):
        sp.add_argument("--family", choices=FAMILIES, default="baxter")
        sp.add_argument("--range", type=parse_range, default=parse_range(default_range), help="n0..n1")
        sp.add_argument("--m", type=int)
        sp.add_argument("--q", type=int)

    sp = sub.add_parser("gen", parents=[common], help="generate family polynomials")
    family_args(sp)
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("interlace", parents=[common], help="Sturm-family verdicts over a range")
    family_args(sp, "1..20")
    sp.add_argument("--mode", choices=("strict", "generalized"), default="strict")
    sp.add_argument("--verbose", action="store_true", help="include witnesses for every pair")
    sp.set_defaults(func=cmd_interlace)

    sp = sub.add_parser("seq", parents=[common], help="extend a P-recursive sequence")
    sp.add_argument("--seq", default="baxter")
    sp.add_argument("--upto", type=int, default=20)
    sp.add_argument("--start", type=int)
    sp.add_argument("--verify", action="store_true")
    sp.add_argument("--check-r", type=int, dest="check_r")
    sp.set_defaults(func=cmd_seq)

    sp = sub.add_parser("asymp", parents=[common], help="asymptotic expansions")
    sp.add_argument("--seq", default="baxter")
    sp.add_argument("--eta", type=int, default=3)
    sp.add_argument("--probe", type=int, help="index for the leading-constant estimate")
    sp.set_defaults(func=cmd_asymp)

    sp = sub.add_parser("certify", parents=[common], help="r-log-convexity certificate")
    sp.add_argument("--seq", default="baxter")
    sp.add_argument("--r", type=int, default=1)
    sp.add_argument("--eta", type=int, default=4)
    sp.add_argument("--margin", default="1")
    sp.add_argument("--base-cap", type=int, default=DEFAULT_BASE_CAP, dest="base_cap")
    sp.add_argument("--initial-cap", type=int, default=DEFAULT_INITIAL_CAP, dest="initial_cap")
    sp.add_argument("--skip-initial", action="store_true", dest="skip_initial")
    sp.add_argument("--no-levels", action="store_false", dest="include_levels",
                    help="omit the level enclosures from the certificate")
    sp.add_argument("--verify", metavar="FILE", help="re-check a certificate JSON instead of building one")
    sp.set_defaults(func=cmd_certify)

    sp = sub.add_parser("hankel", parents=[common], help="Hankel leading principal minors")
    sp.add_argument("--seq", default="baxter")
    sp.add_argument("--order", type=int, default=7)
    sp.add_argument("--first", type=parse_int_list, help="top-left indices to scan")
    sp.set_defaults(func=cmd_hankel)

    sp = sub.add_parser("enumerate", parents=[common], help="brute-force Baxter descent table")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--cap", type=int, default=ENUMERATION_CAP)
    sp.add_argument("--workers", type=int, default=1)
    sp.set_defaults(func=cmd_enumerate)

    sp = sub.add_parser("conjecture", parents=[common], help="evidence scans for the open conjectures")
    sp.add_argument("--id", type=int, choices=(1, 2, 3), required=True)
    sp.add_argument("--q", type=parse_range, default=parse_range("1..10"))
    sp.add_argument("--n", type=parse_range, default=parse_range("1..12"))
    sp.add_argument("--m", type=parse_int_list)
    sp.add_argument("--r", type=int)
    sp.add_argument("--upto", type=int, default=2000)
    sp.add_argument("--cap", type=int, default=DEFAULT_CONJ3_CAP)
    sp.set_defaults(func=cmd_conjecture)
    return p


def _resolve_defaults(args) -> None:
    if args.subcommand == "conjecture":
        if args.m is None:
            args.m = [2, 3] if args.id == 1 else [4]
        if args.r is None:
            args.r = 4 if args.id == 2 else 1


def _params(args) -> dict:
    skip = {"func", "format", "out"}
    out = {}
    for k, v in sorted(vars(args).items()):
        if k in skip:
            continue
        out[k] = list(v) if isinstance(v, tuple) else v
    return out


def render_table(report: dict, lines: list) -> str:
    head = f"baxterkit {report['tool_version']} {report['command']['subcommand']}"
    status = "ok" if report["ok"] else "FALSE"
    return "\n".join([head, *map(str, lines), f"status: {status}  ({report['timing']['seconds']:.3f} s)"]) + "\n"


def run_command(argv: Optional[list] = None) -> tuple[int, Optional[dict]]:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return (EXIT_OK if exc.code == 0 else EXIT_USAGE), None
    _resolve_defaults(args)
    t0 = time.perf_counter()
    try:
        outcome = args.func(args)
    except (UsageError, BaxterKitError, ResourceError) as exc:
        print(f"baxterkit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE, None
    elapsed = time.perf_counter() - t0
    report = {
        "schema": REPORT_SCHEMA,
        "tool_version": __version__,
        "command": {"subcommand": args.subcommand, "params": _params(args)},
        "ok": outcome.ok,
        "result": outcome.result,
        "timing": {"seconds": round(elapsed, 6)},
    }
    if args.format == "json":
        text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    else:
        text = render_table(report, outcome.table)
    if args.out:
        try:
            Path(args.out).write_text(text)
        except OSError as exc:
            print(f"baxterkit: error: cannot write {args.out}: {exc}", file=sys.stderr)
            return EXIT_USAGE, report
    else:
        sys.stdout.write(text)
    code = outcome.exit_code if outcome.exit_code is not None else (EXIT_OK if outcome.ok else EXIT_FALSE)
    return code, report


def main(argv: Optional[list] = None) -> int:
    code, _ = run_command(argv)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
