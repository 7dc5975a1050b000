"""Cross-validation runs over a named corpus, optionally in parallel.

Every item is computed independently from its corpus index, so a pool of
worker processes produces the same records as a serial loop; records are
collected in index order and timing fields are the only run-dependent data.
"""

from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Any

from .classifier import (NOT_MEMBER, ClassificationReport, CpdVerdict, brute_force_cpd, classify,
                         corollary_c_necessary, theorem_b_classify)
from .corpus import CORPORA
from .errors import CapExceeded, HypothesisViolated
from .group import LATTICE_CAP, FiniteGroup, SubgroupHandle, key_of
from .lattice import is_complemented, make_class
from .properties import property_suite
from .pstructure import sylow_p


def subgroup_json(g: FiniteGroup, h: SubgroupHandle | None) -> dict[str, Any] | None:
    if h is None:
        return None
    return {"order": h.order, "generators": [g.describe(x) for x in h.generators]}


def verdict_json(g: FiniteGroup, v: CpdVerdict) -> dict[str, Any]:
    witnesses = []
    if v.uncomplemented_witness is not None:
        witnesses.append({"role": "uncomplemented", **subgroup_json(g, v.uncomplemented_witness)})
    for rep, comp in v.complement_table:
        if comp is not None:
            witnesses.append({"role": "complement", "of_order": rep.order, **subgroup_json(g, comp)})
    return {"method": v.method, "verdict": "member" if v.is_cpd else "non-member",
            "is_cpd": v.is_cpd, "nontrivial": v.nontrivial, "classes": len(v.complement_table),
            "witnesses": witnesses}


def report_json(g: FiniteGroup | None, r: ClassificationReport) -> dict[str, Any]:
    verdict = {True: "member", False: "non-member", None: "undetermined"}[r.member]
    out = {"method": r.method, "applicable": r.applicable, "verdict": verdict, "case": r.case,
           "e": r.e, "t": r.t, "n": r.n, "d": r.d, "s": r.s, "reason": r.reason}
    data = {}
    witnesses = []
    for k, v in r.data.items():
        if isinstance(v, SubgroupHandle):
            if g is not None:
                witnesses.append({"role": k, **subgroup_json(g, v)})
        else:
            data[k] = v
    out["data"] = data
    out["witnesses"] = witnesses
    return out


def _ms(t0: float) -> float:
    return round((time.perf_counter() - t0) * 1000, 3)


def _theorem(g: FiniteGroup, module, p: int, d: int, cap: int) -> dict[str, Any]:
    try:
        if module is not None:
            rep = theorem_b_classify(module, d)
        else:
            rep = classify(g, p, d, cap)
    except HypothesisViolated as exc:
        return {"applicable": False, "reason": str(exc)}
    return report_json(g, rep)


def _sylow_conjugate(g: FiniteGroup, p: int, rng: random.Random) -> bool:
    a = sylow_p(g, p)
    b = sylow_p(g, p, seed=rng.randrange(2**32))
    rows = make_class(g, a.array, a.generators).rows
    return key_of(b.array) in {key_of(r) for r in rows}


def _conjugation_invariant(g: FiniteGroup, v: CpdVerdict, rng: random.Random, cap: int) -> bool | None:
    if not v.complement_table:
        return None
    h = v.complement_table[0][0]
    x = rng.randrange(g.order)
    first = v.complement_table[0][1] is not None
    return is_complemented(g.conjugate(h, x), g, cap).complemented == first


def _corollary_sound(g: FiniteGroup, p: int, d: int, v: CpdVerdict, cap: int) -> dict[str, Any] | None:
    """A refutation by the Frattini-quotient condition must match a brute-force non-member."""
    try:
        rep = corollary_c_necessary(g, p, d, cap)
    except HypothesisViolated:
        return None
    refuted = rep.case == NOT_MEMBER
    return {"check": "corollary_sound", "p": p, "d": d, "case": rep.case, "s": rep.s,
            "passed": not (refuted and v.member)}


def run_item(corpus: str, index: int, seed: int = 0, cap: int = LATTICE_CAP,
             properties: bool = True) -> dict[str, Any]:
    item = CORPORA[corpus]()[index]
    timings: dict[str, float] = {}
    t0 = time.perf_counter()
    g = item.build()
    module = item.module() if item.module is not None else None
    timings["build"] = _ms(t0)
    rec: dict[str, Any] = {"index": index, "item": item.name, "order": g.order}
    rng = random.Random(f"{seed}:{item.name}")
    instances, spot = [], []
    brute_members = []
    try:
        t0 = time.perf_counter()
        for p, d in item.instances:
            v = brute_force_cpd(g, p, d, cap)
            th = _theorem(g, module, p, d, cap)
            agreement = None
            if th.get("applicable") and th["verdict"] != "undetermined":
                agreement = (th["verdict"] == "member") == v.is_cpd
            entry = {"p": p, "d": d, "brute": verdict_json(g, v), "theorem": th, "agreement": agreement}
            if item.expected:
                entry["expected"] = item.expected[(p, d)]
                entry["matches_expected"] = item.expected[(p, d)] == v.member
            instances.append(entry)
            brute_members.append((item.name, g, p, d, v.is_cpd))
            inv = _conjugation_invariant(g, v, rng, cap)
            if inv is not None:
                spot.append({"check": "conjugation_invariance", "p": p, "d": d, "passed": inv})
            cor = _corollary_sound(g, p, d, v, cap)
            if cor is not None:
                spot.append(cor)
        for p in sorted({p for p, _ in item.instances}):
            spot.append({"check": "sylow_conjugacy", "p": p, "passed": _sylow_conjugate(g, p, rng)})
        timings["instances"] = _ms(t0)
        if properties:
            t0 = time.perf_counter()
            rec["properties"] = property_suite(brute_members, cap)
            timings["properties"] = _ms(t0)
    except CapExceeded as exc:
        rec["skipped"] = str(exc)
    rec["instances"] = instances
    rec["spot_checks"] = spot
    rec["disagreements"] = sum(1 for e in instances
                               if e["agreement"] is False or e.get("matches_expected") is False)
    rec["ok"] = (rec["disagreements"] == 0 and all(s["passed"] for s in spot)
                 and rec.get("properties", {"passed": True})["passed"])
    rec["timings_ms"] = timings
    return rec


def _run_star(args):
    return run_item(*args)


def run_suite(corpus: str, seed: int = 0, jobs: int = 1, cap: int = LATTICE_CAP,
              properties: bool = True) -> dict[str, Any]:
    t0 = time.perf_counter()
    count = len(CORPORA[corpus]())
    tasks = [(corpus, i, seed, cap, properties) for i in range(count)]
    if jobs > 1 and count > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_star, tasks, chunksize=1))
    else:
        results = [_run_star(t) for t in tasks]
    n_inst = sum(len(r["instances"]) for r in results)
    disagreements = sum(r["disagreements"] for r in results)
    compared = sum(1 for r in results for e in r["instances"] if e["agreement"] is not None)
    violations = sum(r.get("properties", {}).get("violations", 0) for r in results)
    spot_fail = sum(1 for r in results for s in r["spot_checks"] if not s["passed"])
    return {
        "corpus": corpus, "seed": seed, "items": count, "instances": n_inst, "compared": compared,
        "disagreements": disagreements, "property_violations": violations,
        "spot_check_failures": spot_fail, "skipped": [r["item"] for r in results if "skipped" in r],
        "passed": all(r["ok"] for r in results),
        "results": results,
        "timings_ms": {"total": _ms(t0)},
    }


def strip_timings(obj):
    """Drop every ``timings_ms`` field, recursively."""
    if isinstance(obj, dict):
        return {k: strip_timings(v) for k, v in obj.items() if k != "timings_ms"}
    if isinstance(obj, list):
        return [strip_timings(v) for v in obj]
    return obj


__all__ = ["run_item", "run_suite", "strip_timings", "verdict_json", "report_json", "subgroup_json"]
