"""Finite semigroups given by Cayley tables.

Elements are the indices ``0..n-1`` and ``table[x][y]`` is the product ``x*y``.
Besides the structural predicates (band, linear, semilattice, ...) this module
holds the order-theoretic helpers that only make sense for semilattices:
the order ``x <= y iff xy = x``, maximal chains, trees and bushes.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import InputError, NotASemilatticeError, NotAssociativeError

MAX_ORDER = 8


@dataclass(frozen=True)
class CayleyTable:
    """An ``n x n`` multiplication table over ``0..n-1``."""

    table: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(v) for v in row) for row in self.table)
        n = len(rows)
        if n == 0:
            raise InputError("a Cayley table needs at least one element")
        if n > MAX_ORDER:
            raise InputError(f"carrier of size {n} exceeds the cap {MAX_ORDER}")
        for x, row in enumerate(rows):
            if len(row) != n:
                raise InputError(f"row {x} has {len(row)} entries, expected {n}")
            for y, v in enumerate(row):
                if not 0 <= v < n:
                    raise InputError(f"entry ({x},{y}) = {v} is outside 0..{n - 1}")
        object.__setattr__(self, "table", rows)

    @property
    def order(self) -> int:
        return len(self.table)

    def __call__(self, x: int, y: int) -> int:
        return self.table[x][y]

    def __repr__(self):
        return f"CayleyTable({[list(r) for r in self.table]})"

    def as_array(self) -> np.ndarray:
        return np.array(self.table, dtype=np.int64)

    def to_json(self) -> dict:
        return {"order": self.order, "table": [list(r) for r in self.table]}

    @classmethod
    def from_json(cls, data) -> "CayleyTable":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            n = data["order"]
            table = data["table"]
        except (KeyError, TypeError) as exc:
            raise InputError("Cayley JSON needs 'order' and 'table'") from exc
        if len(table) != n:
            raise InputError(f"'order' is {n} but the table has {len(table)} rows")
        return cls(tuple(tuple(row) for row in table))

    def transpose(self) -> "CayleyTable":
        """The opposite semigroup ``x . y = y * x``."""
        n = self.order
        return CayleyTable(tuple(tuple(self.table[y][x] for y in range(n)) for x in range(n)))


def from_function(n: int, op) -> CayleyTable:
    return CayleyTable(tuple(tuple(op(x, y) for y in range(n)) for x in range(n)))


# -- named carriers ---------------------------------------------------------


def chain(n: int) -> CayleyTable:
    """The linear semilattice ``0 < 1 < ... < n-1`` with ``xy = min(x, y)``."""
    return from_function(n, min)


def left_zero(n: int) -> CayleyTable:
    return from_function(n, lambda x, y: x)


def right_zero(n: int) -> CayleyTable:
    return from_function(n, lambda x, y: y)


def vee() -> CayleyTable:
    """Bottom 0 below two incomparable elements 1 and 2."""
    return from_function(3, lambda x, y: x if x == y else 0)


def bush(*branches: int) -> CayleyTable:
    """A root 0 with disjoint chains of the given lengths hanging above it.

    Branch elements are numbered consecutively from the root outward, so
    ``bush(2, 1)`` has branches ``0 < 1 < 2`` and ``0 < 3``.
    """
    if not branches or any(b < 1 for b in branches):
        raise InputError("bush needs at least one branch, each of length >= 1")
    branch_of = [None]
    for i, length in enumerate(branches):
        branch_of.extend([i] * length)
    n = len(branch_of)

    def meet(x, y):
        if x == 0 or y == 0 or branch_of[x] != branch_of[y]:
            return 0
        return min(x, y)

    return from_function(n, meet)


def from_order(n: int, leq) -> CayleyTable:
    """Meet table of a finite poset given as a ``leq(x, y)`` predicate.

    Raises :class:`InputError` if some pair has no greatest lower bound.
    """
    below = [[z for z in range(n) if leq(z, x)] for x in range(n)]
    table = [[0] * n for _ in range(n)]
    for x in range(n):
        for y in range(x, n):
            common = set(below[x]) & set(below[y])
            tops = [z for z in common if all(leq(w, z) for w in common)]
            if not tops:
                raise InputError(f"elements {x} and {y} have no greatest lower bound")
            table[x][y] = table[y][x] = tops[0]
    return CayleyTable(tuple(map(tuple, table)))


def from_covers(n: int, covers) -> CayleyTable:
    """Meet table of the poset generated by cover pairs ``(lower, upper)``."""
    leq = [[x == y for y in range(n)] for x in range(n)]
    for a, b in covers:
        leq[a][b] = True
    for k in range(n):
        for i in range(n):
            if leq[i][k]:
                for j in range(n):
                    if leq[k][j]:
                        leq[i][j] = True
    return from_order(n, lambda x, y: leq[x][y])


def diamond() -> CayleyTable:
    """The four-element Boolean lattice 0 < 1, 2 < 3 as a meet table."""
    return from_covers(4, [(0, 1), (0, 2), (1, 3), (2, 3)])


def parse_carrier(spec: str) -> CayleyTable:
    """Parse ``chain:4``, ``leftzero:3``, ``rightzero:3``, ``vee``, ``bush:2,1,1``.

    Anything starting with ``{`` is read as Cayley JSON.
    """
    spec = spec.strip()
    if spec.startswith("{"):
        return CayleyTable.from_json(spec)
    name, _, arg = spec.partition(":")
    name = name.lower()
    try:
        if name == "vee" and not arg:
            return vee()
        if name == "diamond" and not arg:
            return diamond()
        if name == "chain":
            return chain(int(arg))
        if name == "leftzero":
            return left_zero(int(arg))
        if name == "rightzero":
            return right_zero(int(arg))
        if name == "bush":
            return bush(*(int(b) for b in arg.split(",")))
    except ValueError as exc:
        raise InputError(f"bad carrier argument in {spec!r}") from exc
    raise InputError(f"unknown carrier {spec!r}")


CATALOG = ("chain:n", "leftzero:n", "rightzero:n", "vee", "diamond", "bush:b1,b2,...")


# -- validation and flags ---------------------------------------------------


def associativity_witness(t: CayleyTable):
    """First triple ``(x, y, z)`` with ``(xy)z != x(yz)``, or None."""
    m = t.table
    for x, y, z in itertools.product(range(t.order), repeat=3):
        if m[m[x][y]][z] != m[x][m[y][z]]:
            return (x, y, z)
    return None


def is_semigroup(t: CayleyTable) -> bool:
    return associativity_witness(t) is None


def validate_semigroup(t: CayleyTable) -> CayleyTable:
    witness = associativity_witness(t)
    if witness is not None:
        raise NotAssociativeError(witness, t)
    return t


def is_commutative(t):
    m = t.table
    return all(m[x][y] == m[y][x] for x in range(t.order) for y in range(x))


def is_band(t):
    return all(t.table[x][x] == x for x in range(t.order))


def is_linear(t):
    m = t.table
    return all(m[x][y] in (x, y) for x in range(t.order) for y in range(t.order))


def is_semilattice(t):
    return is_commutative(t) and is_band(t)


def is_left_zero(t):
    return all(t.table[x][y] == x for x in range(t.order) for y in range(t.order))


def is_right_zero(t):
    return all(t.table[x][y] == y for x in range(t.order) for y in range(t.order))


@dataclass(frozen=True)
class Flags:
    commutative: bool
    band: bool
    linear: bool
    semilattice: bool
    left_zero: bool
    right_zero: bool


def classify(t: CayleyTable) -> Flags:
    comm, band = is_commutative(t), is_band(t)
    return Flags(
        commutative=comm,
        band=band,
        linear=is_linear(t),
        semilattice=comm and band,
        left_zero=is_left_zero(t),
        right_zero=is_right_zero(t),
    )


def power(t: CayleyTable, x: int, k: int) -> int:
    p = x
    for _ in range(k - 1):
        p = t.table[p][x]
    return p


def regular_elements(t: CayleyTable) -> frozenset:
    """Elements ``a`` with ``a = a s a`` for some ``s``."""
    m = t.table
    return frozenset(
        a for a in range(t.order) if any(m[m[a][s]][a] == a for s in range(t.order))
    )


def nm_clifford_witness(t: CayleyTable, n: int = 1, m: int = 2):
    """First ``x`` with ``x^(n+1) = x^(m+1)`` but ``x^n != x^m``, or None."""
    if n < 1 or m < 1:
        raise InputError("Clifford exponents must be >= 1")
    for x in range(t.order):
        if power(t, x, n + 1) == power(t, x, m + 1) and power(t, x, n) != power(t, x, m):
            return x
    return None


def is_nm_clifford(t: CayleyTable, n: int = 1, m: int = 2) -> bool:
    return nm_clifford_witness(t, n, m) is None


def max_antichain(t: CayleyTable) -> tuple[int, ...]:
    """A largest set ``A`` with ``ab`` outside ``{a, b}`` for all distinct ``a, b`` in ``A``.

    Exhaustive; among the largest sets the lexicographically first is returned.
    """
    n, m = t.order, t.table
    for size in range(n, 0, -1):
        for subset in itertools.combinations(range(n), size):
            if all(
                m[a][b] not in (a, b) for a in subset for b in subset if a != b
            ):
                return subset
    return ()


# -- order structure of semilattices ----------------------------------------


def _require_semilattice(t):
    if not is_semilattice(t):
        raise NotASemilatticeError(t)


@dataclass(frozen=True)
class Poset:
    """The order ``x <= y iff xy = x`` of a semilattice."""

    leq: tuple[tuple[bool, ...], ...]
    minimum: int | None

    @property
    def size(self):
        return len(self.leq)

    def up(self, x: int) -> frozenset:
        return frozenset(y for y in range(self.size) if self.leq[x][y])

    def down(self, x: int) -> frozenset:
        return frozenset(y for y in range(self.size) if self.leq[y][x])

    def comparable(self, x, y):
        return self.leq[x][y] or self.leq[y][x]

    def covers(self) -> list[tuple[int, int]]:
        """Pairs ``(x, y)`` with ``x < y`` and nothing strictly between."""
        n, le = self.size, self.leq
        out = []
        for x in range(n):
            for y in range(n):
                if x != y and le[x][y] and not any(
                    z not in (x, y) and le[x][z] and le[z][y] for z in range(n)
                ):
                    out.append((x, y))
        return out


def order_structure(t: CayleyTable) -> Poset:
    _require_semilattice(t)
    n, m = t.order, t.table
    leq = tuple(tuple(m[x][y] == x for y in range(n)) for x in range(n))
    mins = [x for x in range(n) if all(leq[x])]
    return Poset(leq, mins[0] if mins else None)


def up_set(t, x):
    """``{y : xy = x}``."""
    return frozenset(y for y in range(t.order) if t.table[x][y] == x)


def down_set(t, x):
    """``{y : xy = y}``."""
    return frozenset(y for y in range(t.order) if t.table[x][y] == y)


def maximal_chains(t: CayleyTable) -> list[tuple[int, ...]]:
    """All maximal linearly ordered subsets, in lexicographic order."""
    _require_semilattice(t)
    n, m = t.order, t.table
    chains = []
    for bits in range(1, 1 << n):
        elems = [x for x in range(n) if bits >> x & 1]
        if all(m[a][b] in (a, b) for a in elems for b in elems):
            chains.append(bits)
    maximal = [c for c in chains if not any(c != d and c & d == c for d in chains)]
    return sorted(tuple(x for x in range(n) if c >> x & 1) for c in maximal)


def is_tree(t: CayleyTable) -> bool:
    _require_semilattice(t)
    m = t.table
    for z in range(t.order):
        down = down_set(t, z)
        if any(m[a][b] not in (a, b) for a in down for b in down):
            return False
    return True


def is_bush_by_chains(t: CayleyTable) -> bool:
    """Distinct maximal chains multiply to ``{min X}``."""
    poset = order_structure(t)
    if poset.minimum is None:
        return False
    m = t.table
    chains = maximal_chains(t)
    for a, b in itertools.combinations(chains, 2):
        if {m[x][y] for x in a for y in b} != {poset.minimum}:
            return False
    return True


def is_bush_pointwise(t: CayleyTable) -> bool:
    """``xy`` lies in ``{x, y, min}`` and every down-set is linear.

    The pointwise meet condition alone accepts the diamond lattice, whose two
    maximal chains share the top; the tree condition rules that out.
    """
    poset = order_structure(t)
    if poset.minimum is None:
        return False
    n, m, z = t.order, t.table, poset.minimum
    if any(m[x][y] not in (x, y, z) for x in range(n) for y in range(n)):
        return False
    for x, y, w in itertools.product(range(n), repeat=3):
        if m[x][w] == x and m[y][w] == y and m[x][y] not in (x, y):
            return False
    return True


def is_bush(t: CayleyTable) -> bool:
    return is_bush_by_chains(t)


# -- canonical forms --------------------------------------------------------


@lru_cache(maxsize=None)
def _permutations(n: int) -> tuple[np.ndarray, np.ndarray]:
    perms = np.array(list(itertools.permutations(range(n))), dtype=np.int64).reshape(-1, n)
    inverse = np.argsort(perms, axis=1)
    return perms, inverse


def canonical_form(t: CayleyTable) -> CayleyTable:
    """Lexicographically least table over all relabelings of the carrier.

    Relabeling by ``p`` sends the table to ``t'[p[x]][p[y]] = p[t[x][y]]``.
    All ``n!`` relabelings are tried.
    """
    n = t.order
    perms, inverse = _permutations(n)
    a = t.as_array()
    # t'[i][j] = p[t[q[i]][q[j]]] with q = p^-1
    relabeled = np.take_along_axis(
        perms, a[inverse[:, :, None], inverse[:, None, :]].reshape(len(perms), -1), axis=1
    )
    candidates = np.arange(len(perms))
    for col in range(n * n):
        column = relabeled[candidates, col]
        candidates = candidates[column == column.min()]
        if len(candidates) == 1:
            break
    best = relabeled[candidates[0]].reshape(n, n)
    return CayleyTable(tuple(map(tuple, best.tolist())))


def are_isomorphic(t1: CayleyTable, t2: CayleyTable) -> bool:
    if t1.order != t2.order:
        return False
    return canonical_form(t1) == canonical_form(t2)


def relabel(t: CayleyTable, perm) -> CayleyTable:
    """Image of ``t`` under the bijection ``x -> perm[x]``."""
    n = t.order
    inv = [0] * n
    for x, px in enumerate(perm):
        inv[px] = x
    return from_function(n, lambda i, j: perm[t.table[inv[i]][inv[j]]])
