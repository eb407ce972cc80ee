"""Command-line front end: compute, verify, classify, brieskorn, families.

All rationals are printed as exact "p/q" strings.  Reports are emitted as
JSON (default), CSV, or a plain table; exit codes are the only
success/failure channel:

  0  success
  1  a counterexample was found / an --expect check failed
  2  unparseable input (polynomial, interval, unknown verification name)
  3  invariant violation (family constraints, inadmissible data)
  4  no certified weight exists within the bound
"""

from __future__ import annotations

import argparse
import concurrent.futures
import hashlib
import json
import os
import sys
import tempfile
from fractions import Fraction

from . import __version__
from .blowup import (
    BlowupError,
    SingularityPresentation,
    index1_presentation,
    model,
    smooth_presentation,
)
from .classify import (
    ClassifyError,
    FAMILY_TAGS,
    IntervalSpec,
    check_assumption_scan,
    check_bezout,
    check_boundindex,
    check_ca_split,
    check_delta,
    check_discrepancy_identity,
    check_sm_lower,
    classify_interval,
    half_plus_unit,
    union_report,
)
from .poly import PolyError, parse_poly
from .threshold import NoCertifiedWeight, ThresholdError, brieskorn_ct, detect_brieskorn
from .weights import (
    CAParams,
    CAnParams,
    CD1Params,
    CD2Params,
    CD2q1Params,
    CD2q2Params,
    FamilyBounds,
    FamilyError,
    enumerate_family,
)

EXIT_OK = 0
EXIT_COUNTEREXAMPLE = 1
EXIT_PARSE = 2
EXIT_INVARIANT = 3
EXIT_NO_WEIGHT = 4


def _frac(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, sort_keys=True) + "\n"
    if fmt == "csv":
        lines = []
        for row in _csv_rows(report):
            lines.append(",".join(str(v) for v in row))
        return "\n".join(lines) + "\n"
    return _table(report) + "\n"


def _csv_rows(report: dict, prefix: str = ""):
    for key in sorted(report):
        value = report[key]
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            yield from _csv_rows(value, prefix=f"{name}.")
        elif isinstance(value, list):
            yield (name, json.dumps(value))
        else:
            yield (name, value)


def _table(report: dict) -> str:
    rows = list(_csv_rows(report))
    width = max((len(str(k)) for k, _ in rows), default=0)
    return "\n".join(f"{str(k).ljust(width)}  {v}" for k, v in rows)


def _parse_interval(text: str) -> IntervalSpec:
    if ":" in text:
        lo, hi = text.split(":", 1)
        return IntervalSpec(Fraction(lo), Fraction(hi))
    return IntervalSpec.reciprocal_window(int(text))


def _bounds(args) -> FamilyBounds:
    return FamilyBounds(args.a_max, d_max=args.d_max, n_max=args.n_max)


def _family_params(args):
    t = args.type
    if t == "cA":
        return CAParams(args.r1, args.r2, args.a, args.d)
    if t == "cAn":
        return CAnParams(args.n, args.b, args.r1, args.r2, args.a, args.d)
    if t == "cD1":
        return CD1Params(args.r, args.a, args.d)
    if t == "cD2":
        return CD2Params(args.r, args.a, args.d)
    if t == "cD2q1":
        return CD2q1Params(args.r, args.a, args.d)
    if t == "cD2q2":
        return CD2q2Params(args.r, args.a, args.d)
    raise FamilyError(f"unknown type {t!r}")


def cmd_brieskorn(args) -> tuple[int, dict]:
    value = brieskorn_ct(args.a, args.b, args.c)
    if value is None:
        return EXIT_OK, {"applicable": False, "value": None, "reason": "not-applicable"}
    return EXIT_OK, {"applicable": True, "value": _frac(value)}


def cmd_families(args) -> tuple[int, dict]:
    rows = []
    for p in enumerate_family(args.family, _bounds(args), min_discrepancy=args.min_disc):
        row = p.as_dict()
        row["weight"] = list(p.weight().k)
        row["index"] = p.index
        rows.append(row)
    return EXIT_OK, {"family": args.family, "count": len(rows), "params": rows}


def cmd_compute(args) -> tuple[int, dict]:
    from .threshold import ct_upper_bound

    if args.type == "sm":
        pres = smooth_presentation()
        f = parse_poly(args.f, 3)
    elif args.type == "index1":
        if not args.phi:
            raise PolyError("--type index1 requires --phi")
        pres = index1_presentation(parse_poly(args.phi, 4))
        f = parse_poly(args.f, 4)
    else:
        params = _family_params(args).validate()
        pres = model(params)
        f = parse_poly(args.f, pres.variable_count)

    cand = ct_upper_bound(pres, f, args.bound)
    exact = False
    formula = None
    if args.type == "sm":
        triple = detect_brieskorn(f)
        if triple is not None:
            value = brieskorn_ct(*triple)
            if value is not None:
                formula = _frac(value)
                exact = value == cand.value
    report = {
        "upper_bound": _frac(cand.value),
        "witness": {"weight": list(cand.weight.k), "index": cand.weight.n,
                    "discrepancy": cand.a, "multiplicity": cand.m},
        "certificate": cand.certificate,
        "clamped": cand.clamped,
        "exact": exact,
    }
    if formula is not None:
        report["formula"] = formula
    return EXIT_OK, report


_VERIFY_NAMES = ("sm-lower", "sm-not-ab1", "ca-split", "delta", "assumption-a",
                 "boundindex", "discrepancy-id", "bezout")


def cmd_verify(args) -> tuple[int, dict]:
    name = args.prop
    if name == "sm-lower":
        scan = check_sm_lower(args.max, kinds=("m<ab",))
    elif name == "sm-not-ab1":
        scan = check_sm_lower(args.max, kinds=("m=ab+1",))
    elif name == "bezout":
        scan = check_bezout(args.max)
    elif name == "ca-split":
        scan = check_ca_split(args.a_max)
    elif name == "delta":
        scan = check_delta(args.n_max, args.a_max)
    elif name == "assumption-a":
        scan = check_assumption_scan(args.pairs, _bounds(args))
    elif name == "boundindex":
        scan = check_boundindex(args.k, _bounds(args))
    elif name == "discrepancy-id":
        scan = check_discrepancy_identity(args.a_max, d_max=args.d_max, n_max=args.n_max)
    else:
        raise ClassifyError(f"unknown verification {name!r}")
    return (EXIT_OK if scan.ok else EXIT_COUNTEREXAMPLE), scan.to_dict()


def _classify_one(family: str, interval: IntervalSpec, bounds: FamilyBounds,
                  audit: bool) -> dict:
    report = classify_interval(family, interval, bounds)
    out = report.to_dict()
    if audit:
        base = {(repr(s.params), s.m) for s in report.survivors}
        orders = [list(reversed(range(len_pipeline(family))))]
        import random
        rng = random.Random(7)
        for _ in range(2):
            perm = list(range(len_pipeline(family)))
            rng.shuffle(perm)
            orders.append(perm)
        ok = True
        for order in orders:
            again = classify_interval(family, interval, bounds, rule_order=order)
            if {(repr(s.params), s.m) for s in again.survivors} != base:
                ok = False
        out["audit"] = {"rule_order_independent": ok, "orders_checked": len(orders)}
    return out


def len_pipeline(family: str) -> int:
    from .classify import PIPELINES
    return len(PIPELINES[family])


def cmd_classify(args) -> tuple[int, dict]:
    interval = _parse_interval(args.interval)
    bounds = _bounds(args)
    families = list(FAMILY_TAGS) if args.all else [args.family]
    if not args.all and args.family not in FAMILY_TAGS:
        raise ClassifyError(f"unknown family {args.family!r}")

    reports: dict[str, dict] = {}
    if args.jobs > 1 and len(families) > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=args.jobs) as pool:
            futures = {fam: pool.submit(_classify_one, fam, interval, bounds, args.audit)
                       for fam in families}
            for fam in families:
                reports[fam] = futures[fam].result()
    else:
        for fam in families:
            reports[fam] = _classify_one(fam, interval, bounds, args.audit)

    out: dict = {"interval": list(interval.as_pair())}
    if args.all:
        out["families"] = reports
        values = {fam: sorted({Fraction(s["ct"]) for s in rep["survivors"]}, reverse=True)
                  for fam, rep in reports.items()}
        union = union_report(interval, bounds, denom_max=args.denom_max,
                             family_values=values)
        out["union"] = [e.to_dict() for e in union]
    else:
        out.update(reports[args.family])

    code = EXIT_OK
    if args.expect == "half-plus":
        bad = []
        for fam, rep in reports.items():
            for s in rep["survivors"]:
                value = Fraction(s["ct"])
                if value != Fraction(4, 5) and half_plus_unit(value) is None:
                    bad.append({"family": fam, "ct": s["ct"]})
        out["expect"] = {"rule": "half-plus", "violations": bad}
        if bad:
            code = EXIT_COUNTEREXAMPLE
    return code, out


def _cache_lookup(cache_dir: str, key: str) -> dict | None:
    path = os.path.join(cache_dir, key + ".json")
    if not os.path.exists(path):
        return None
    try:
        with open(path, "r", encoding="utf-8") as fh:
            entry = json.load(fh)
    except (OSError, json.JSONDecodeError):
        return None
    if entry.get("version") != __version__:
        return None
    return entry


def _cache_store(cache_dir: str, key: str, code: int, text: str):
    os.makedirs(cache_dir, exist_ok=True)
    entry = {"version": __version__, "exit": code, "stdout": text}
    fd, tmp = tempfile.mkstemp(dir=cache_dir, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            json.dump(entry, fh)
        os.replace(tmp, os.path.join(cache_dir, key + ".json"))
    except OSError:
        if os.path.exists(tmp):
            os.unlink(tmp)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ct3",
        description="Certified upper bounds and interval classification for "
                    "threefold canonical thresholds.")
    parser.add_argument("--format", choices=("json", "csv", "table"), default="json")
    parser.add_argument("--cache-dir", default=os.environ.get("CT3_CACHE_DIR"))
    parser.add_argument("--jobs", type=int, default=1)
    parser.add_argument("--audit", action="store_true",
                        help="re-run classifications under permuted rule orders")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("brieskorn", help="closed-form threshold of x^a + y^b + z^c")
    p.add_argument("a", type=int)
    p.add_argument("b", type=int)
    p.add_argument("c", type=int)

    p = sub.add_parser("families", help="enumerate a classified weight family")
    p.add_argument("--family", required=True, choices=FAMILY_TAGS)
    p.add_argument("--a-max", type=int, default=10)
    p.add_argument("--d-max", type=int, default=4)
    p.add_argument("--n-max", type=int, default=6)
    p.add_argument("--min-disc", type=int, default=1)

    p = sub.add_parser("compute", help="certified upper bound for one pair")
    p.add_argument("--type", required=True,
                   choices=("sm", "index1", "cA", "cAn", "cD1", "cD2", "cD2q1", "cD2q2"))
    p.add_argument("--phi", help="defining equation (index1)")
    p.add_argument("--phi2", help="second defining equation (unused for minimal models)")
    p.add_argument("--f", required=True, help="divisor equation")
    p.add_argument("--bound", type=int, required=True, help="cap on the weight numerator sum")
    for flag in ("n", "b", "r1", "r2", "r", "a", "d"):
        p.add_argument(f"--{flag}", type=int)

    p = sub.add_parser("verify", help="exhaustive desk-scale identity checks")
    p.add_argument("prop", choices=_VERIFY_NAMES)
    p.add_argument("--max", type=int, default=25)
    p.add_argument("--a-max", type=int, default=40)
    p.add_argument("--d-max", type=int, default=6)
    p.add_argument("--n-max", type=int, default=6)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--pairs", type=int, default=100)

    p = sub.add_parser("classify", help="interval classification with pruning traces")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--family", choices=FAMILY_TAGS)
    group.add_argument("--all", action="store_true")
    p.add_argument("--interval", required=True,
                   help="an integer k for (1/k, 1/(k-1)), or 'lo:hi' with rational endpoints")
    p.add_argument("--a-max", type=int, default=25)
    p.add_argument("--d-max", type=int, default=8)
    p.add_argument("--n-max", type=int, default=12)
    p.add_argument("--denom-max", type=int, default=60)
    p.add_argument("--expect", choices=("half-plus",))
    return parser


_COMMANDS = {
    "brieskorn": cmd_brieskorn,
    "families": cmd_families,
    "compute": cmd_compute,
    "verify": cmd_verify,
    "classify": cmd_classify,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code not in (0, None) else 0

    request = {k: v for k, v in sorted(vars(args).items()) if k not in ("cache_dir", "jobs")}
    key = hashlib.sha256(json.dumps(request, sort_keys=True, default=str).encode()).hexdigest()
    if args.cache_dir:
        hit = _cache_lookup(args.cache_dir, key)
        if hit is not None:
            sys.stdout.write(hit["stdout"])
            return hit["exit"]

    try:
        code, report = _COMMANDS[args.command](args)
    except PolyError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_PARSE
    except (ClassifyError, ThresholdError) as exc:
        kind = EXIT_PARSE if isinstance(exc, ClassifyError) else EXIT_INVARIANT
        sys.stderr.write(f"error: {exc}\n")
        return kind
    except (FamilyError, BlowupError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INVARIANT
    except NoCertifiedWeight as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_NO_WEIGHT
    except ValueError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_PARSE

    text = _render(report, args.format)
    if args.cache_dir:
        _cache_store(args.cache_dir, key, code, text)
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
