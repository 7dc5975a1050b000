"""Command-line interface.

    cpd check <file> --p P --d D [--method brute|theorem|both] [--json] [--cap N]
    cpd module <file> <decompose|end-dim|homogeneous|count-min> [--json]
    cpd catalog [<name>] [--emit FILE] [--json]
    cpd suite --corpus <small|semidirect|catalog|empty> [--seed S] [--jobs J] [--json]

Exit codes: 0 computed, 1 bad input, 2 hypothesis violation,
3 cap exceeded, 4 suite disagreement.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from typing import Any

from . import catalog as cat
from . import groupfile
from .classifier import brute_force_cpd, classify
from .corpus import CORPORA
from .errors import BadInput, CpdError, HypothesisViolated
from .group import LATTICE_CAP
from .modrep import (count_irreducible_submodules, decompose, endomorphism_algebra_dim,
                     is_homogeneous)
from .numtheory import is_prime, p_part
from .suite import report_json, run_suite, verdict_json

EXIT_OK, EXIT_BAD_INPUT, EXIT_HYPOTHESIS, EXIT_CAP, EXIT_DISAGREE = 0, 1, 2, 3, 4


def _emit(obj: dict[str, Any], as_json: bool, text_lines) -> None:
    if as_json:
        print(json.dumps(obj, sort_keys=True))
    else:
        for line in text_lines(obj):
            print(line)


def _ms(t0: float) -> float:
    return round((time.perf_counter() - t0) * 1000, 3)


def _load_group(path: str):
    spec = groupfile.load(path)
    g, module = groupfile.build(spec)
    return spec, g, module


def cmd_check(args) -> int:
    if not is_prime(args.p):
        raise BadInput(f"p = {args.p} is not prime")
    if args.d < 0:
        raise BadInput("d must be nonnegative")
    timings: dict[str, float] = {}
    t0 = time.perf_counter()
    spec, g, _ = _load_group(args.file)
    timings["build"] = _ms(t0)
    gp = p_part(g.order, args.p)
    out: dict[str, Any] = {"group": {"name": spec.name or g.name, "order": g.order},
                           "p": args.p, "d": args.d, "n": gp.d, "method": args.method,
                           "case": None, "e": None, "t": None, "witnesses": []}
    code = EXIT_OK
    brute = theorem = None
    if args.method in ("brute", "both"):
        t0 = time.perf_counter()
        brute = verdict_json(g, brute_force_cpd(g, args.p, args.d, args.cap))
        timings["brute"] = _ms(t0)
        out["brute"] = brute
        out["verdict"] = brute["verdict"]
        out["nontrivial"] = brute["nontrivial"]
        out["witnesses"] = brute["witnesses"]
    if args.method in ("theorem", "both"):
        t0 = time.perf_counter()
        try:
            theorem = report_json(g, classify(g, args.p, args.d, args.cap))
        except HypothesisViolated as exc:
            theorem = {"applicable": False, "error": "HypothesisViolated", "reason": str(exc)}
            code = EXIT_HYPOTHESIS
        timings["theorem"] = _ms(t0)
        out["theorem"] = theorem
        if theorem.get("applicable", False) or theorem.get("case"):
            for k in ("case", "e", "t"):
                out[k] = theorem.get(k)
            if theorem.get("n") is not None:
                out["n"] = theorem["n"]
        if brute is None:
            out["verdict"] = theorem.get("verdict", "hypothesis-violated")
            out["nontrivial"] = args.p ** args.d <= gp.value
            out["witnesses"] = theorem.get("witnesses", [])
    if brute is not None and theorem is not None:
        if "verdict" in theorem and theorem["verdict"] != "undetermined":
            out["agreement"] = (theorem["verdict"] == "member") == brute["is_cpd"]
        else:
            out["agreement"] = None
    out["timings_ms"] = timings

    def text(o):
        yield f"group {o['group']['name']} of order {o['group']['order']}, p={o['p']}, d={o['d']}"
        if "brute" in o:
            b = o["brute"]
            flag = "" if b["nontrivial"] else " (vacuous: p^d exceeds |G|_p)"
            yield f"  brute force: {b['verdict']}{flag}, {b['classes']} class(es) of order p^d"
            for w in b["witnesses"]:
                if w["role"] == "uncomplemented":
                    yield f"    uncomplemented subgroup of order {w['order']}: generators {w['generators']}"
        if "theorem" in o:
            t = o["theorem"]
            if "error" in t:
                yield f"  theorem: hypotheses not met ({t['reason']})"
            else:
                extra = f", e={t['e']}, t={t['t']}" if t.get("e") else ""
                why = f" [{t['reason']}]" if t.get("reason") else ""
                yield f"  {t['method']}: {t['verdict']} via {t['case']}{extra}{why}"
        if "agreement" in o:
            yield f"  agreement={str(o['agreement']).lower()}"

    _emit(out, args.json, text)
    return code


def cmd_module(args) -> int:
    spec = groupfile.load(args.file)
    m = groupfile.module_of(spec)
    if m is None:
        raise BadInput("module commands need a semidirect or module-backed catalog file")
    if math.gcd(m.h_order, m.p) != 1:
        raise HypothesisViolated(f"acting group of order {m.h_order} is not a {m.p}'-group")
    out: dict[str, Any] = {"subcommand": args.action, "p": m.p, "n": m.n, "h_order": m.h_order}
    t0 = time.perf_counter()
    hom = is_homogeneous(m)
    out["homogeneous"] = hom.homogeneous
    out["e"] = hom.e
    out["t"] = hom.t
    if args.action == "decompose":
        comps = decompose(m)
        out["components"] = [{"dim": c.dim, "basis": c.basis.tolist()} for c in comps]
    elif args.action == "end-dim":
        out["end_dim"] = endomorphism_algebra_dim(m)
        out["cyclic"] = m.is_cyclic
    elif args.action == "count-min":
        out["count"] = count_irreducible_submodules(m)
        if hom.homogeneous and hom.e and m.is_cyclic:
            out["formula"] = (m.p ** (hom.e * hom.t) - 1) // (m.p ** hom.e - 1)
    out["timings_ms"] = {"compute": _ms(t0)}

    def text(o):
        yield f"module over F_{o['p']} of dimension {o['n']}, acting group of order {o['h_order']}"
        yield f"  homogeneous={str(o['homogeneous']).lower()} e={o['e']} t={o['t']}"
        if "components" in o:
            yield f"  component dimensions: {[c['dim'] for c in o['components']]}"
        if "end_dim" in o:
            yield f"  End dimension: {o['end_dim']} (acting group cyclic: {str(o['cyclic']).lower()})"
        if "count" in o:
            yield f"  minimal submodules: {o['count']}"

    _emit(out, args.json, text)
    return EXIT_OK


def cmd_catalog(args) -> int:
    if args.name is None:
        out = {"names": cat.NAMES}
        _emit(out, args.json, lambda o: o["names"])
        return EXIT_OK
    entry = cat.catalog(args.name)
    out = {"name": entry.name, "order": entry.group.order,
           "members": [{"p": p, "d": d, "pd": p**d} for p, d in entry.members],
           "complete": entry.complete, "note": entry.note}
    if args.emit:
        spec = groupfile.spec_for_catalog(args.name)
        with open(args.emit, "w") as fh:
            fh.write(json.dumps(groupfile.serialize(spec), indent=1) + "\n")
        out["emitted"] = args.emit

    def text(o):
        yield f"{o['name']}: order {o['order']}"
        for mm in o["members"]:
            yield f"  member at p^d = {mm['p']}^{mm['d']} = {mm['pd']}"
        if o["note"]:
            yield f"  {o['note']}"
        if "emitted" in o:
            yield f"  wrote {o['emitted']}"

    _emit(out, args.json, text)
    return EXIT_OK


def cmd_suite(args) -> int:
    rep = run_suite(args.corpus, seed=args.seed, jobs=args.jobs, cap=args.cap,
                    properties=not args.no_properties)

    def text(o):
        yield (f"corpus {o['corpus']}: {o['items']} items, {o['instances']} instances, "
               f"{o['compared']} compared, {o['disagreements']} disagreements, "
               f"{o['property_violations']} property violations, "
               f"{o['spot_check_failures']} spot-check failures")
        for r in o["results"]:
            if not r["ok"]:
                yield f"  FAIL {r['item']}"
        yield "PASS" if o["passed"] else "FAIL"

    _emit(rep, args.json, text)
    return EXIT_OK if rep["passed"] else EXIT_DISAGREE


class _Parser(argparse.ArgumentParser):
    """Usage errors are bad input (exit 1), not argparse's default 2."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_BAD_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="cpd", description="Complemented p-subgroups of finite groups.")
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="decide membership for one group file")
    c.add_argument("file")
    c.add_argument("--p", type=int, required=True)
    c.add_argument("--d", type=int, required=True)
    c.add_argument("--method", choices=["brute", "theorem", "both"], default="brute")
    c.add_argument("--json", action="store_true")
    c.add_argument("--cap", type=int, default=LATTICE_CAP, help="subgroup-lattice cap")
    c.set_defaults(func=cmd_check)

    m = sub.add_parser("module", help="module computations on a semidirect file")
    m.add_argument("file")
    m.add_argument("action", choices=["decompose", "end-dim", "homogeneous", "count-min"])
    m.add_argument("--json", action="store_true")
    m.set_defaults(func=cmd_module)

    k = sub.add_parser("catalog", help="show or export a named group")
    k.add_argument("name", nargs="?")
    k.add_argument("--emit", metavar="FILE")
    k.add_argument("--json", action="store_true")
    k.set_defaults(func=cmd_catalog)

    s = sub.add_parser("suite", help="cross-validate a corpus")
    s.add_argument("--corpus", choices=sorted(CORPORA), required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--cap", type=int, default=LATTICE_CAP)
    s.add_argument("--no-properties", action="store_true")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_suite)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CpdError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
