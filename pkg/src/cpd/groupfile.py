"""JSON group files.

Three shapes, all carrying ``"spec_version": 1``::

    {"type": "perm", "degree": N, "generators": [[image, ...], ...]}
    {"type": "semidirect", "p": p, "n": n, "h_generators": [[[row], ...], ...]}
    {"type": "catalog", "name": "PSL(2,7)"}

Permutations are 0-based image arrays; matrices are row-major lists of
residues mod p acting on row vectors. Unknown fields are rejected.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any

import numpy as np

from . import catalog as cat
from .errors import BadInput
from .group import ELEMENT_CAP, FiniteGroup
from .modrep import HModule, semidirect_group
from .numtheory import is_prime

SPEC_VERSION = 1

_FIELDS = {
    "perm": {"spec_version", "type", "degree", "generators", "name"},
    "semidirect": {"spec_version", "type", "p", "n", "h_generators", "name"},
    "catalog": {"spec_version", "type", "name"},
}
_REQUIRED = {
    "perm": {"degree", "generators"},
    "semidirect": {"p", "n", "h_generators"},
    "catalog": {"name"},
}


@dataclass(frozen=True)
class GroupSpec:
    kind: str
    name: str | None = None
    degree: int | None = None
    generators: tuple[tuple[int, ...], ...] | None = None
    p: int | None = None
    n: int | None = None
    h_generators: tuple[tuple[tuple[int, ...], ...], ...] | None = None


def _int(x: Any, what: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise BadInput(f"{what} must be an integer")
    return x


def parse(data: dict | str) -> GroupSpec:
    """Validate a decoded (or raw JSON) group file."""
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise BadInput(f"invalid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise BadInput("group file must be a JSON object")
    if data.get("spec_version") != SPEC_VERSION:
        raise BadInput(f"spec_version must be {SPEC_VERSION}")
    kind = data.get("type")
    if kind not in _FIELDS:
        raise BadInput(f"type must be one of {sorted(_FIELDS)}")
    unknown = set(data) - _FIELDS[kind]
    if unknown:
        raise BadInput(f"unknown fields for type {kind!r}: {sorted(unknown)}")
    missing = _REQUIRED[kind] - set(data)
    if missing:
        raise BadInput(f"missing fields for type {kind!r}: {sorted(missing)}")
    name = data.get("name")
    if name is not None and not isinstance(name, str):
        raise BadInput("name must be a string")

    if kind == "catalog":
        return GroupSpec("catalog", name=name)

    if kind == "perm":
        degree = _int(data["degree"], "degree")
        if degree < 1:
            raise BadInput("degree must be positive")
        gens = data["generators"]
        if not isinstance(gens, list):
            raise BadInput("generators must be a list")
        out = []
        for g in gens:
            if not isinstance(g, list) or len(g) != degree:
                raise BadInput(f"each generator must be a list of {degree} images")
            img = tuple(_int(x, "image") for x in g)
            if sorted(img) != list(range(degree)):
                raise BadInput(f"{list(img)} is not a permutation of 0..{degree - 1}")
            out.append(img)
        return GroupSpec("perm", name=name, degree=degree, generators=tuple(out))

    p = _int(data["p"], "p")
    n = _int(data["n"], "n")
    if not is_prime(p):
        raise BadInput(f"p = {p} is not prime")
    if n < 1:
        raise BadInput("n must be positive")
    mats = data["h_generators"]
    if not isinstance(mats, list):
        raise BadInput("h_generators must be a list")
    out_m = []
    for m in mats:
        if not isinstance(m, list) or len(m) != n or any(not isinstance(r, list) or len(r) != n for r in m):
            raise BadInput(f"each matrix must be {n}x{n}")
        rows = tuple(tuple(_int(x, "matrix entry") % p for x in r) for r in m)
        out_m.append(rows)
    return GroupSpec("semidirect", name=name, p=p, n=n, h_generators=tuple(out_m))


def serialize(spec: GroupSpec) -> dict[str, Any]:
    out: dict[str, Any] = {"spec_version": SPEC_VERSION, "type": spec.kind}
    if spec.kind == "catalog":
        out["name"] = spec.name
        return out
    if spec.name is not None:
        out["name"] = spec.name
    if spec.kind == "perm":
        out["degree"] = spec.degree
        out["generators"] = [list(g) for g in spec.generators]
    else:
        out["p"] = spec.p
        out["n"] = spec.n
        out["h_generators"] = [[list(r) for r in m] for m in spec.h_generators]
    return out


def dumps(spec: GroupSpec) -> str:
    return json.dumps(serialize(spec), indent=None, separators=(",", ":"))


def load(path: str | Path) -> GroupSpec:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise BadInput(f"cannot read {path}: {exc}") from exc
    return parse(text)


def module_of(spec: GroupSpec) -> HModule | None:
    """The acting module for semidirect and module-backed catalog specs."""
    if spec.kind == "semidirect":
        mats = [np.array(m, dtype=np.int64) for m in spec.h_generators]
        return HModule(spec.p, mats, name=spec.name, require_pprime=False, n=spec.n)
    if spec.kind == "catalog":
        return cat.module_entry(spec.name)
    return None


def build(spec: GroupSpec, cap: int = ELEMENT_CAP) -> tuple[FiniteGroup, HModule | None]:
    if spec.kind == "perm":
        return FiniteGroup.from_permutations(spec.degree, [list(g) for g in spec.generators],
                                             name=spec.name, cap=cap), None
    if spec.kind == "catalog":
        entry = cat.catalog(spec.name)
        return entry.group, entry.module
    m = module_of(spec)
    return semidirect_group(m), m


def spec_for_catalog(name: str) -> GroupSpec:
    """A self-contained file for a catalog entry (perm or semidirect)."""
    entry = cat.catalog(name)
    if entry.module is not None:
        m = entry.module
        return GroupSpec("semidirect", name=name, p=m.p, n=m.n,
                         h_generators=tuple(tuple(tuple(int(x) for x in r) for r in g) for g in m.generators))
    g = entry.group
    degree = len(g.labels[0])
    gens = tuple(tuple(int(x) for x in g.labels[i]) for i in g.generators)
    return GroupSpec("perm", name=name, degree=degree, generators=gens)
