"""Command-line driver.

Exit codes: 0 all checks pass, 1 a check failed (or a branch was left
unresolved), 2 usage or parse error, 3 a resource limit was hit.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from typing import List, Optional

from . import coaction as co
from .classify import FAMILY_IDS, classify, compare, known_families
from .hopf import check_fundamental_unitary, check_hopf_axioms
from .invariants import (canonical_map_witnesses, equivalent_x0_forms, verify_appendix,
                         verify_coinvariance, verify_s4, verify_y_coinvariance, y_probe,
                         y_residuals_info)
from .ncpoly import DEFAULT_FUEL, FuelExhausted, critical_pairs, nonzero_pairs
from .presentations import misoriented_vs, parse_presentation, preset_bl, preset_suq2, preset_vs
from .report import INFO, Report, dump_json
from .scalars import ScalarSyntaxError, parse_gauss

SUITES = ("hopf", "presentations", "coaction", "appendix", "s4", "canonical", "confluence")

EXPECTED = {
    ("vs", 1, True): ["vs3-one", "vs3-two", "vs3-three"],
    ("bl", None, True): ["bl-a", "bl-b"],
}


class UsageError(Exception):
    pass


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


def _omega(text: str):
    try:
        w = parse_gauss(text)
    except (ScalarSyntaxError, ValueError) as exc:
        raise argparse.ArgumentTypeError(f"bad omega {text!r}: {exc}")
    if w.abs2() != 1:
        raise argparse.ArgumentTypeError(f"omega must have modulus 1, got {w}")
    return w


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--t", type=_fraction, help="value of sqrt(q)")
    common.add_argument("--u", type=_fraction, help="value of sqrt(p)")
    common.add_argument("--omega", type=_omega, help="unit parameter, e.g. 3/5+4/5i")
    common.add_argument("--symbolic", action="store_true", help="keep q, p and omega symbolic")
    common.add_argument("--json", metavar="PATH", help="write the JSON report here")
    common.add_argument("--nodes", type=int, default=10**6, help="search node cap")
    common.add_argument("--fuel", type=int, default=DEFAULT_FUEL, help="rewriting step cap")
    common.add_argument("--degree", type=int, default=5, help="critical-pair degree cap")

    p = argparse.ArgumentParser(prog="qcoact", description="Coaction verification and classification")
    sub = p.add_subparsers(dest="command", required=True)
    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("suite", choices=SUITES)
    v.add_argument("--family", choices=FAMILY_IDS, help="coaction family (default: all)")
    v.add_argument("--samples", type=int, default=20, help="random samples for property checks")
    c = sub.add_parser("classify", parents=[common], help="classify first-degree coactions")
    c.add_argument("--preset", choices=("vs", "bl"), required=True)
    c.add_argument("--m", type=int)
    c.add_argument("--ansatz", action="store_true", help="symmetric block ansatz (bl only)")
    c.add_argument("--no-lemmas", action="store_true", help="plain zero/nonzero branching")
    c.add_argument("--compare", action="store_true", help="compare with the known families")
    r = sub.add_parser("parse", parents=[common], help="parse and normalize a .qalg file")
    r.add_argument("file")
    return p


# ---------------------------------------------------------------------------
# suites
# ---------------------------------------------------------------------------

def presentations_suite(fuel: int = DEFAULT_FUEL) -> Report:
    rep = Report("presentations")
    pres_list = [preset_suq2()] + [preset_vs(m) for m in (1, 2, 3)] + [preset_bl()]
    for pres in pres_list:
        for rel in pres.all_relations():
            ok = pres.equal(rel.lhs, rel.rhs, fuel=fuel)
            rep.add(f"{pres.name}/{rel.id}", ok)
    return rep.finish()


def confluence_suite(degree: int = 5, fuel: int = DEFAULT_FUEL) -> Report:
    rep = Report("confluence")
    for pres in [preset_suq2()] + [preset_vs(m) for m in (1, 2, 3)] + [preset_bl()]:
        pairs = critical_pairs(pres, degree, fuel)
        bad = nonzero_pairs(pairs)
        rep.add(f"{pres.name}/critical-pairs", not bad, len(bad), detail=f"{len(pairs)} pairs")
    mis = misoriented_vs(3)
    bad = nonzero_pairs(critical_pairs(mis, degree, fuel))
    rep.add("misoriented-vs7/detects-nonconfluence", bool(bad), len(bad))
    return rep.finish()


def coaction_suite(family: Optional[str], omega, point, samples: int) -> Report:
    rep = Report("coaction")
    fams = [family] if family else list(FAMILY_IDS)
    for name in fams:
        spec = known_families(name, omega)
        sub = co.verify(spec, point=point, samples=min(samples, 10))
        rep.extend(sub, prefix=name + "/")
        # the closed-form table agrees with the full expansion
        same = all((a - b).is_zero() for (_, a), (_, b) in
                   zip(co.coassociativity_residuals(spec), co.table1_residuals(spec)))
        rep.add(f"{name}/table-agrees", same)
    return rep.finish()


def s4_suite(omega) -> Report:
    rep = Report("s4")
    rep.extend(verify_s4())
    rep.extend(equivalent_x0_forms())
    rep.extend(verify_coinvariance(known_families("bl-a", omega)), prefix="bl-a/")
    rep.extend(verify_y_coinvariance(known_families("bl-b", omega)), prefix="bl-b/")
    rep.extend(y_residuals_info(known_families("bl-a", omega)), prefix="bl-a/")
    probe = y_probe()
    rep.add("y-probe", INFO, len(probe["dependencies"]),
            detail=f"{probe['products']} products, rank {probe['rank']}")
    return rep.finish()


def canonical_suite(omega) -> Report:
    return canonical_map_witnesses(known_families("bl-a", omega))


def run_suite(args) -> Report:
    point = None
    if not args.symbolic and args.t is not None:
        point = (args.t, args.u if args.u is not None else args.t)
    omega = None if args.symbolic else args.omega
    if args.suite == "hopf":
        rep = check_hopf_axioms(samples=args.samples)
        rep.extend(check_fundamental_unitary())
        rep.suite = "hopf"
        rep.finish()
    elif args.suite == "presentations":
        rep = presentations_suite(args.fuel)
    elif args.suite == "confluence":
        rep = confluence_suite(args.degree, args.fuel)
    elif args.suite == "coaction":
        rep = coaction_suite(args.family, omega, point, args.samples)
    elif args.suite == "appendix":
        rep = verify_appendix()
    elif args.suite == "s4":
        rep = s4_suite(omega)
    else:
        rep = canonical_suite(omega)
    rep.params = {"t": None if point is None else str(point[0]),
                  "u": None if point is None else str(point[1]),
                  "omega": None if omega is None else str(omega)}
    return rep


def run_classify(args):
    if args.t is None or (args.preset == "vs" and args.u is None):
        raise UsageError("classify needs concrete --t and --u")
    if args.preset == "vs" and args.m is None:
        raise UsageError("classify --preset vs needs --m")
    if args.ansatz and args.preset != "bl":
        raise UsageError("--ansatz applies to --preset bl only")
    res = classify(args.preset, args.m, args.t, args.u, ansatz=args.ansatz,
                   nodes=args.nodes, lemmas=not args.no_lemmas)
    rep = Report("classify")
    rep.params = {"t": str(res.t), "u": str(res.u), "omega": None}
    rep.add("audit/complete", res.audit_complete, detail=f"{res.audit_covered}/{res.audit_total}")
    rep.add("unresolved", not res.unresolved, len(res.unresolved))
    if args.compare:
        key = (args.preset, args.m if args.preset == "vs" else None, res.t == res.u)
        expected = EXPECTED.get(key, [])
        if args.preset == "vs" and args.m and args.m >= 2:
            expected = []
        rep.extend(compare(res, expected), prefix="compare/")
    rep.limit_hit = res.limit_hit
    rep.finish()
    return res, rep


def _emit_json(path: str, obj) -> None:
    text = dump_json(obj)
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 2
    try:
        if args.command == "verify":
            rep = run_suite(args)
            if args.json != "-":
                print(rep.text())
            if args.json:
                _emit_json(args.json, rep.to_json())
            return rep.exit_code()
        if args.command == "classify":
            res, rep = run_classify(args)
            if args.json == "-":
                _emit_json("-", dict(res.to_json(), exit=rep.exit_code()))
                return rep.exit_code()
            print(f"preset {res.preset} m={res.m} t={res.t} u={res.u} ansatz={res.ansatz}")
            print(f"families: {len(res.families)}")
            for fam in res.families:
                assignment = ", ".join(f"{k}={v}" for k, v in fam.to_json()["assignment"].items())
                print(f"  {fam.id} [{fam.description}] {assignment}")
            print(f"unsat branches: {res.unsat_branches}  nodes: {res.nodes}  unresolved: {len(res.unresolved)}")
            print(rep.text())
            if args.json:
                out = res.to_json()
                out["exit"] = rep.exit_code()
                _emit_json(args.json, out)
            return rep.exit_code()
        if args.command == "parse":
            with open(args.file, encoding="utf-8") as fh:
                text = fh.read()
            pres = parse_presentation(text)
            print(f"algebra {pres.name}: {pres.ngens} generators, {len(pres.rules)} rules "
                  f"({len(pres.base_rules)} as written)")
            for line in pres.describe_rules():
                print("  " + line)
            return 0
    except UsageError as exc:
        print(f"qcoact: error: {exc}", file=sys.stderr)
        return 2
    except ScalarSyntaxError as exc:
        print(f"qcoact: parse error: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError) as exc:
        print(f"qcoact: error: {exc}", file=sys.stderr)
        return 2
    except FuelExhausted as exc:
        print(f"qcoact: resource limit: {exc}", file=sys.stderr)
        return 3
    return 2


if __name__ == "__main__":
    sys.exit(main())
