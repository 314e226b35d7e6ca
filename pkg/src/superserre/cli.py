"""Command line front end.

Families on the command line: A, B, C, D (with --m/--n as the family needs),
F4, G3 and D21a (with an optional rational --alpha).  Numeric output is
exact everywhere: fractions and parameter expressions are rendered as
strings, so golden files are stable.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from .cartan_dynkin import build_diagram, cartan_matrix, serialize_diagram
from .rootdata import ParameterError, build_root_datum, enumerate_simple_systems
from .serre import presentation
from .verify import (
    compare_z_grading,
    default_height_cap,
    necessity_survey,
    verify_presentation,
)

ENV_MAX_HEIGHT = "SUPERSERRE_MAX_HEIGHT"


class UsageError(Exception):
    pass


def make_datum(args):
    family = args.family
    if family in ("A", "B", "D"):
        if args.m is None or args.n is None:
            raise UsageError(f"family {family} needs --m and --n")
        return build_root_datum(family, m=args.m, n=args.n)
    if family == "C":
        if args.n is None:
            raise UsageError("family C needs --n (with n > 2)")
        return build_root_datum("C", n=args.n)
    if family in ("F4", "G3"):
        return build_root_datum(family)
    if family == "D21a":
        alpha = None
        if args.alpha not in (None, "generic"):
            alpha = Fraction(args.alpha)
        return build_root_datum("D21a", alpha=alpha)
    raise UsageError(f"unknown family {family!r}; use A, B, C, D, F4, G3 or D21a")


def select_systems(datum, selector):
    systems = enumerate_simple_systems(datum)
    if selector in (None, "distinguished"):
        return [(0, systems[0])]
    if selector == "all":
        return list(enumerate(systems))
    try:
        k = int(selector)
    except ValueError:
        raise UsageError(f"--borel must be an index, 'all' or 'distinguished', got {selector!r}")
    if not 0 <= k < len(systems):
        raise UsageError(f"--borel index {k} out of range 0..{len(systems) - 1}")
    return [(k, systems[k])]


def _resolve_height(args, system):
    if args.max_height is not None:
        return args.max_height
    env = os.environ.get(ENV_MAX_HEIGHT)
    if env:
        return int(env)
    return default_height_cap(system)


def cmd_borels(args, out):
    datum = make_datum(args)
    systems = enumerate_simple_systems(datum)
    if args.format == "json":
        payload = []
        for k, system in enumerate(systems):
            cd = cartan_matrix(datum, system)
            diag = build_diagram(cd)
            payload.append(
                {
                    "index": k,
                    "simpleRoots": [b.to_json() for b in system.roots],
                    "theta": sorted(system.theta),
                    "diagram": serialize_diagram(diag, "ascii"),
                }
            )
        print(json.dumps({"datum": datum.name, "borels": payload}, sort_keys=True), file=out)
        return 0
    print(f"{datum.name}: {len(systems)} conjugacy classes of Borel subalgebras", file=out)
    for k, system in enumerate(systems):
        cd = cartan_matrix(datum, system)
        diag = build_diagram(cd)
        label = " (distinguished)" if k == 0 else ""
        print(f"[{k}]{label} theta={sorted(system.theta)}", file=out)
        print(f"    roots: {', '.join(repr(b) for b in system.roots)}", file=out)
        print(f"    diagram: {serialize_diagram(diag, 'ascii')}", file=out)
    return 0


def cmd_cartan(args, out):
    datum = make_datum(args)
    for k, system in select_systems(datum, args.borel):
        cd = cartan_matrix(datum, system)
        if args.format == "json":
            print(json.dumps({"borel": k, **cd.to_json()}, sort_keys=True), file=out)
        else:
            print(f"{datum.name} borel[{k}] theta={sorted(cd.theta)} "
                  f"kappa={cd.kappa} lm2={cd.lm2.render()}", file=out)
            for row in cd.a:
                print("  [" + ", ".join(x.render() for x in row) + "]", file=out)
    return 0


def cmd_diagram(args, out):
    datum = make_datum(args)
    for k, system in select_systems(datum, args.borel):
        diag = build_diagram(cartan_matrix(datum, system))
        print(serialize_diagram(diag, args.format), file=out)
    return 0


def cmd_relations(args, out):
    datum = make_datum(args)
    for k, system in select_systems(datum, args.borel):
        pres = presentation(datum, system)
        print(pres.render(args.format), file=out)
    return 0


def _verify_worker(payload):
    family, m, n, alpha, index, max_height = payload
    if max_height is None:
        env = os.environ.get(ENV_MAX_HEIGHT)
        max_height = int(env) if env else None
    datum = build_root_datum(family, m=m, n=n, alpha=alpha)
    system = enumerate_simple_systems(datum)[index]
    report = verify_presentation(datum, system, max_height=max_height)
    return index, report.passed, report.got_total, report.to_json()


def cmd_verify(args, out):
    datum = make_datum(args)
    selector = "all" if args.all else args.borel
    selected = select_systems(datum, selector)
    jobs = args.jobs or 1
    results = []
    if jobs > 1 and len(selected) > 1:
        payloads = [
            (datum.family, datum.m, datum.n, datum.alpha, k, args.max_height)
            for k, _ in selected
        ]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = sorted(pool.map(_verify_worker, payloads))
    else:
        for k, system in selected:
            report = verify_presentation(
                datum, system, max_height=_resolve_height(args, system)
            )
            results.append((k, report.passed, report.got_total, report.to_json()))
    all_pass = all(ok for _, ok, _, _ in results)
    if args.format == "json":
        print(
            json.dumps(
                {"datum": datum.name, "reports": [r for _, _, _, r in results]},
                sort_keys=True,
            ),
            file=out,
        )
    else:
        for k, ok, total, _ in results:
            status = "PASS" if ok else "FAIL"
            print(f"{status} total={total if total is not None else '?'} borel={k}", file=out)
        if not all_pass:
            print(
                json.dumps(
                    {"datum": datum.name, "reports": [r for _, _, _, r in results if not r["pass"]]},
                    sort_keys=True,
                ),
                file=out,
            )
    return 0 if all_pass else 1


def cmd_zgrading(args, out):
    datum = make_datum(args)
    if args.d is None:
        raise UsageError("zgrading needs --d (1-based node index)")
    for k, system in select_systems(datum, args.borel):
        table = compare_z_grading(
            datum, system, args.d, max_height=_resolve_height(args, system)
        )
        if args.format == "json":
            payload = {
                "borel": k,
                "d": args.d,
                "layers": {str(kk): {"g": g, "L": l, "equal": eq} for kk, (g, l, eq) in table.items()},
            }
            print(json.dumps(payload, sort_keys=True), file=out)
        else:
            print(f"{datum.name} borel[{k}] grading at d={args.d}", file=out)
            for kk in sorted(table):
                g, l, eq = table[kk]
                mark = "ok" if eq else "MISMATCH"
                print(f"  k={kk}: dim g_k={g} dim L_k={l} {mark}", file=out)
    return 0


def cmd_necessity(args, out):
    datum = make_datum(args)
    exit_code = 0
    for k, system in select_systems(datum, args.borel):
        survey = necessity_survey(
            datum, system, max_height=_resolve_height(args, system)
        )
        if args.format == "json":
            print(
                json.dumps(
                    {"borel": k, "elements": [res.to_json() for res in survey]},
                    sort_keys=True,
                ),
                file=out,
            )
        else:
            if not survey:
                print(f"{datum.name} borel[{k}]: no higher order elements", file=out)
            for res in survey:
                mark = "necessary" if res.necessary else "NOT shown necessary"
                at = f" first excess at {list(res.first_excess)}" if res.first_excess else ""
                print(f"{datum.name} borel[{k}] {res.provenance} nodes={list(res.nodes)}: {mark}{at}", file=out)
        if any(not res.necessary for res in survey):
            exit_code = 1
    return exit_code


def build_parser():
    parser = argparse.ArgumentParser(
        prog="superserre",
        description="Cartan matrices, Dynkin diagrams and verified Serre presentations "
        "of the simple contragredient Lie superalgebras.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, formats=("text", "json"), default_format="text"):
        p.add_argument("family", help="A, B, C, D, F4, G3 or D21a")
        p.add_argument("--m", type=int, default=None)
        p.add_argument("--n", type=int, default=None)
        p.add_argument("--alpha", default=None, help="rational value for D21a, e.g. 2 or -1/2")
        p.add_argument("--borel", default=None, help="class index, 'all' or 'distinguished'")
        p.add_argument("--format", choices=formats, default=default_format)
        p.add_argument("--max-height", type=int, default=None)

    p = sub.add_parser("borels", help="list the conjugacy classes of Borel subalgebras")
    common(p)
    p.set_defaults(fn=cmd_borels)

    p = sub.add_parser("cartan", help="emit Cartan data")
    common(p)
    p.set_defaults(fn=cmd_cartan)

    p = sub.add_parser("diagram", help="emit the decorated Dynkin diagram")
    common(p, formats=("ascii", "json", "latex"), default_format="ascii")
    p.set_defaults(fn=cmd_diagram)

    p = sub.add_parser("relations", help="emit the full presentation")
    common(p, formats=("text", "json", "latex"))
    p.set_defaults(fn=cmd_relations)

    p = sub.add_parser("verify", help="verify the presentation against the root system")
    common(p)
    p.add_argument("--all", action="store_true", help="verify every Borel class")
    p.add_argument("--jobs", type=int, default=None, help="parallel workers for --all")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("zgrading", help="Z-grading layer dimensions at a node")
    common(p)
    p.add_argument("--d", type=int, default=None, help="1-based node index")
    p.set_defaults(fn=cmd_zgrading)

    p = sub.add_parser("necessity", help="necessity of each higher order element")
    common(p)
    p.set_defaults(fn=cmd_necessity)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args, sys.stdout)
    except (UsageError, ParameterError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
