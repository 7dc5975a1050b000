import contextlib
import itertools
import os
import time

import numpy as np
import pytest

from cpd.catalog import catalog
from cpd.group import FiniteGroup
from cpd.modrep import homogeneous_sum, semidirect_group, singer_module


def pytest_collection_modifyitems(config, items):
    if os.environ.get("CPD_SLOW") == "1":
        return
    skip = pytest.mark.skip(reason="set CPD_SLOW=1 to run")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


@pytest.fixture(scope="session")
def a4():
    return catalog("A4").group


@pytest.fixture(scope="session")
def psl27():
    return catalog("PSL(2,7)").group


@pytest.fixture(scope="session")
def a7():
    return catalog("A7").group


@pytest.fixture(scope="session")
def g48():
    return semidirect_group(homogeneous_sum(singer_module(2, 2, 3), 2))


@pytest.fixture(scope="session")
def g12():
    return semidirect_group(singer_module(2, 2, 3))


def cyclic(n: int) -> FiniteGroup:
    return FiniteGroup.from_permutations(n, [[(i + 1) % n for i in range(n)]], name=f"C{n}")


def elementary_abelian_2(k: int) -> FiniteGroup:
    gens = []
    for i in range(k):
        img = list(range(2 * k))
        img[2 * i], img[2 * i + 1] = 2 * i + 1, 2 * i
        gens.append(img)
    return FiniteGroup.from_permutations(2 * k, gens, name=f"C2^{k}")


# -- oracles written directly on the multiplication table ------------------


def table_closure(mul: np.ndarray, gens) -> frozenset:
    elems = {0}
    frontier = [0]
    gens = list(gens)
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = int(mul[x, s])
                if y not in elems:
                    elems.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(elems)


def all_subgroups_oracle(g: FiniteGroup) -> set:
    """Closures of every subset of size <= 2, then pairwise joins until stable."""
    mul = g.mul
    subs = {table_closure(mul, [])}
    for a in range(g.order):
        subs.add(table_closure(mul, [a]))
    for a, b in itertools.combinations(range(g.order), 2):
        subs.add(table_closure(mul, [a, b]))
    while True:
        new = set()
        lst = list(subs)
        for h, k in itertools.combinations(lst, 2):
            j = table_closure(mul, list(h | k))
            if j not in subs:
                new.add(j)
        if not new:
            return subs
        subs |= new


def invariant_subspaces_oracle(p: int, mats) -> set:
    """Every H-invariant subspace of F_p^n, as frozensets of vector tuples."""
    n = mats[0].shape[0]
    vecs = [np.array(v) for v in itertools.product(range(p), repeat=n)]

    def span(rows):
        out = set()
        for coeffs in itertools.product(range(p), repeat=len(rows)):
            v = sum((c * r for c, r in zip(coeffs, rows)), np.zeros(n, dtype=int)) % p
            out.add(tuple(int(x) for x in v))
        return frozenset(out)

    spaces = set()
    for k in range(n + 1):
        for rows in itertools.combinations(vecs, k):
            s = span(list(rows))
            if all(tuple(int(x) for x in (np.array(v) @ m) % p) in s for v in s for m in mats):
                spaces.add(s)
    return spaces


# -- acceptance reporting -----------------------------------------------------


def pytest_configure(config):
    config._cpd_criteria = []


@pytest.fixture
def criterion(request):
    """Context manager recording one PASS/FAIL line per acceptance criterion."""
    lines = request.config._cpd_criteria

    @contextlib.contextmanager
    def record(number: int, title: str, limit_s: float):
        t0 = time.perf_counter()
        try:
            yield
        except BaseException as exc:
            elapsed = time.perf_counter() - t0
            lines.append(f"criterion {number} FAIL  {title} ({elapsed:.2f} s): {exc}".splitlines()[0])
            raise
        elapsed = time.perf_counter() - t0
        ok = elapsed < limit_s
        lines.append(f"criterion {number} {'PASS' if ok else 'FAIL'}  {title} "
                     f"({elapsed:.2f} s, limit {limit_s:g} s)")
        assert ok, f"took {elapsed:.2f} s, limit {limit_s:g} s"

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "_cpd_criteria", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
