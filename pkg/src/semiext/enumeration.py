"""Enumeration of small semigroups up to isomorphism.

General classes are found by backtracking over Cayley tables with
associativity checked cell by cell, then deduplicated by canonical form.
Semilattices are grown one maximal element at a time; an independent poset
route (:func:`semilattices_from_posets`) exists to cross-check it.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from functools import lru_cache

from . import semigroup as sg
from .errors import CapExceededError, InputError
from .semigroup import CayleyTable

CLASSES = ("all", "commutative", "band", "linear", "semilattice", "lattice")

DEFAULT_CAPS = {
    "all": 3,
    "commutative": 4,
    "band": 5,
    "linear": 5,
    "semilattice": 7,
    "lattice": 5,
}

CAP_ENV = "SEMIEXT_MAX_ORDER"


def cap_for(cls: str) -> int:
    override = os.environ.get(CAP_ENV)
    if override:
        try:
            return int(override)
        except ValueError:
            raise InputError(f"{CAP_ENV} must be an integer, got {override!r}") from None
    return DEFAULT_CAPS[cls]


def _search(n, commutative=False, idempotent=False, linear=False):
    """Yield every labeled associative table satisfying the flags."""
    t = [[-1] * n for _ in range(n)]
    cells = [(x, y) for x in range(n) for y in range(n) if not commutative or x <= y]

    def domain(x, y):
        if x == y and (idempotent or linear):
            return (x,)
        if linear:
            return (x, y)
        return range(n)

    def consistent(x, y):
        v = t[x][y]
        for c in range(n):
            # (x y) c == x (y c)
            yc = t[y][c]
            if yc >= 0:
                lhs, rhs = t[v][c], t[x][yc]
                if lhs >= 0 and rhs >= 0 and lhs != rhs:
                    return False
        for a in range(n):
            # (a x) y == a (x y)
            ax = t[a][x]
            if ax >= 0:
                lhs, rhs = t[ax][y], t[a][v]
                if lhs >= 0 and rhs >= 0 and lhs != rhs:
                    return False
        for a in range(n):
            for b in range(n):
                if t[a][b] == x:
                    # (a b) y == a (b y), the left side is this cell
                    by = t[b][y]
                    if by >= 0 and t[a][by] >= 0 and t[a][by] != v:
                        return False
                if t[a][b] == y:
                    # (x a) b == x (a b), the right side is this cell
                    xa = t[x][a]
                    if xa >= 0 and t[xa][b] >= 0 and t[xa][b] != v:
                        return False
        return True

    def rec(k):
        if k == len(cells):
            yield tuple(map(tuple, t))
            return
        x, y = cells[k]
        for v in domain(x, y):
            t[x][y] = v
            if commutative:
                t[y][x] = v
            if consistent(x, y) and (not commutative or consistent(y, x)):
                yield from rec(k + 1)
        t[x][y] = -1
        if commutative:
            t[y][x] = -1

    yield from rec(0)


def _dedupe(tables) -> tuple[CayleyTable, ...]:
    seen = {sg.canonical_form(CayleyTable(tab)) for tab in tables}
    return tuple(sorted(seen, key=lambda c: c.table))


@lru_cache(maxsize=None)
def _by_search(n, cls):
    flags = {
        "all": {},
        "commutative": {"commutative": True},
        "band": {"idempotent": True},
        "linear": {"linear": True},
    }[cls]
    return _dedupe(_search(n, **flags))


def _downsets(poset: sg.Poset):
    n = poset.size
    down = [poset.down(x) for x in range(n)]
    for bits in range(1, 1 << n):
        elems = [x for x in range(n) if bits >> x & 1]
        if all(down[x] <= set(elems) for x in elems):
            yield frozenset(elems)


@lru_cache(maxsize=None)
def _semilattices(n):
    if n == 1:
        return (CayleyTable(((0,),)),)
    found = set()
    for base in _semilattices(n - 1):
        poset = sg.order_structure(base)
        m = n - 1
        for d in _downsets(poset):
            meets = []
            for y in range(m):
                lower = d & poset.down(y)
                tops = [z for z in lower if lower <= poset.down(z)]
                if not tops:
                    break
                meets.append(tops[0])
            else:
                table = [list(row) + [meets[x]] for x, row in enumerate(base.table)]
                table.append(meets + [m])
                found.add(sg.canonical_form(CayleyTable(tuple(map(tuple, table)))))
    return tuple(sorted(found, key=lambda c: c.table))


def semilattices_from_posets(n: int) -> tuple[CayleyTable, ...]:
    """Semilattices of order ``n`` found by filtering all posets.

    Every poset has a linear extension, so it suffices to take strict
    relations contained in ``i < j`` that are transitive; those where each
    pair has a greatest lower bound become meet tables.
    """
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    found = set()
    for bits in range(1 << len(pairs)):
        lt = [[False] * n for _ in range(n)]
        for k, (i, j) in enumerate(pairs):
            if bits >> k & 1:
                lt[i][j] = True
        if any(
            lt[i][j] and lt[j][k] and not lt[i][k]
            for i in range(n) for j in range(i + 1, n) for k in range(j + 1, n)
        ):
            continue
        try:
            table = sg.from_order(n, lambda a, b: a == b or lt[a][b])
        except InputError:
            continue
        found.add(sg.canonical_form(table))
    return tuple(sorted(found, key=lambda c: c.table))


def _has_top(t):
    return any(all(t.table[x][u] == x for x in range(t.order)) for u in range(t.order))


@dataclass(frozen=True)
class LatticePair:
    meet: CayleyTable
    join: CayleyTable

    @property
    def order(self):
        return self.meet.order


def enumerate_semigroups(n: int, cls: str = "all", cap: int | None = None) -> tuple[CayleyTable, ...]:
    """One canonical representative per isomorphism class, sorted by table.

    For ``cls="lattice"`` the meet tables of lattices are returned; use
    :func:`enumerate_lattices` for meet/join pairs.
    """
    if cls not in CLASSES:
        raise InputError(f"unknown class {cls!r}; expected one of {CLASSES}")
    limit = cap_for(cls) if cap is None else cap
    if n > limit:
        raise CapExceededError(f"{cls} semigroups", n, limit)
    if n < 1:
        raise InputError("order must be at least 1")
    if cls == "semilattice":
        return _semilattices(n)
    if cls == "lattice":
        return tuple(t for t in _semilattices(n) if _has_top(t))
    return _by_search(n, cls)


def enumerate_lattices(n: int, cap: int | None = None) -> tuple[LatticePair, ...]:
    from .extension import join_of

    return tuple(LatticePair(m, join_of(m)) for m in enumerate_semigroups(n, "lattice", cap))


def count_labeled_by_brute_force(n: int) -> int:
    """Number of associative tables on ``n`` labeled points (``n <= 3``)."""
    if n > 3:
        raise CapExceededError("brute-force table enumeration", n, 3)
    count = 0
    for flat in itertools.product(range(n), repeat=n * n):
        tab = tuple(tuple(flat[i * n:(i + 1) * n]) for i in range(n))
        if sg.is_semigroup(CayleyTable(tab)):
            count += 1
    return count


def classes_by_brute_force(n: int) -> tuple[CayleyTable, ...]:
    """Isomorphism classes of semigroups of order ``n <= 3`` from all ``n^(n^2)`` tables."""
    if n > 3:
        raise CapExceededError("brute-force table enumeration", n, 3)
    tables = []
    for flat in itertools.product(range(n), repeat=n * n):
        t = CayleyTable(tuple(tuple(flat[i * n:(i + 1) * n]) for i in range(n)))
        if sg.is_semigroup(t):
            tables.append(t.table)
    return _dedupe(tables)
