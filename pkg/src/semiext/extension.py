"""The extension of a semigroup operation to upfamilies.

For upfamilies ``A`` and ``B`` over a semigroup ``X``::

    A * B = < union_{x in U} x*V_x  :  U in A, V_x in B for each x in U >

Three routes compute it:

* :func:`product_literal` quantifies over all members and all tuples;
  it is exponential and meant as an oracle on tiny carriers.
* :func:`product` only uses minimal members (enlarging ``U`` or any ``V_x``
  can only enlarge the union), pruning to minimal unions as it goes.
* :class:`ExtensionSemigroup` tabulates products over a whole space with
  numpy, using the dual description ``C in A * B`` iff
  ``{x : x^-1 C in B} in A`` where ``x^-1 C = {y : xy in C}``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import semigroup as sg
from .errors import CapExceededError, ClosureError, InputError
from .semigroup import CayleyTable
from .upfamily import (
    SpaceKind,
    UpFamily,
    elements,
    enumerate_space,
    from_members,
    minimalize,
    point,
    superset_bits,
    up_closure,
)

LITERAL_CAP = 3


@lru_cache(maxsize=256)
def left_images(t: CayleyTable) -> tuple[tuple[int, ...], ...]:
    """``left_images(t)[x][V]`` is the mask of ``x*V``."""
    n = t.order
    out = []
    for x in range(n):
        row = t.table[x]
        out.append(tuple(
            _image(row, v) for v in range(1 << n)
        ))
    return tuple(out)


def _image(row, v):
    m = 0
    y = 0
    while v:
        if v & 1:
            m |= 1 << row[y]
        v >>= 1
        y += 1
    return m


@lru_cache(maxsize=256)
def set_products(t: CayleyTable) -> tuple[tuple[int, ...], ...]:
    """``set_products(t)[A][B]`` is the mask of ``A*B``."""
    imgs = left_images(t)
    size = 1 << t.order
    out = []
    for a in range(size):
        xs = elements(a)
        out.append(tuple(_union(imgs[x][b] for x in xs) for b in range(size)))
    return tuple(out)


def _union(masks):
    m = 0
    for s in masks:
        m |= s
    return m


def _check(a: UpFamily, b: UpFamily, t: CayleyTable):
    if a.n != t.order or b.n != t.order:
        raise InputError(
            f"families over {a.n} and {b.n} points, semigroup of order {t.order}"
        )


def product(a: UpFamily, b: UpFamily, t: CayleyTable) -> UpFamily:
    """Extension product over minimal members only."""
    _check(a, b, t)
    imgs = left_images(t)
    bases = []
    for u in a.minimal:
        unions = (0,)
        for x in elements(u):
            images = {imgs[x][v] for v in b.minimal}
            unions = minimalize(s | i for s in unions for i in images)
        bases.extend(unions)
    return up_closure(bases, t.order)


def product_literal(a: UpFamily, b: UpFamily, t: CayleyTable, cap: int = LITERAL_CAP) -> UpFamily:
    """Extension product straight from the definition.

    Every member ``U`` of ``a`` and every tuple of members of ``b`` indexed by
    the points of ``U`` contributes one union.
    """
    _check(a, b, t)
    if t.order > cap:
        raise CapExceededError("literal product", t.order, cap)
    imgs = left_images(t)
    b_members = b.member_masks()
    bases = set()
    for u in a.member_masks():
        xs = elements(u)
        for tup in itertools.product(b_members, repeat=len(xs)):
            c = 0
            for x, v in zip(xs, tup):
                c |= imgs[x][v]
            bases.add(c)
    return up_closure(bases, t.order)


def tensor_product(a: UpFamily, b: UpFamily, t: CayleyTable) -> UpFamily:
    """``< A*B : A in a, B in b >`` with elementwise set products."""
    _check(a, b, t)
    sp = set_products(t)
    return up_closure([sp[u][v] for u in a.minimal for v in b.minimal], t.order)


def power(f: UpFamily, k: int, t: CayleyTable) -> UpFamily:
    p = f
    for _ in range(k - 1):
        p = product(p, f, t)
    return p


# -- tabulated extension semigroups ----------------------------------------


def _pack(bits: np.ndarray) -> np.ndarray:
    """Pack boolean rows of length ``2**n <= 64`` into uint64 membership keys."""
    width = bits.shape[-1]
    if width < 8:
        return (bits.astype(np.uint64) << np.arange(width, dtype=np.uint64)).sum(axis=-1)
    packed = np.ascontiguousarray(np.packbits(bits, axis=-1, bitorder="little"))
    return packed.view(_KEY_DTYPES[width // 8])[..., 0].astype(np.uint64)


_KEY_DTYPES = {1: "<u1", 2: "<u2", 4: "<u4", 8: "<u8"}


def _preimages(t: CayleyTable) -> np.ndarray:
    """``P[x, C]`` is the mask of ``{y : xy in C}``."""
    n = t.order
    size = 1 << n
    cs = np.arange(size, dtype=np.int64)
    out = np.zeros((n, size), dtype=np.int64)
    for x in range(n):
        for y in range(n):
            out[x] |= ((cs >> t.table[x][y]) & 1) << y
    return out


@dataclass
class ExtensionSemigroup:
    """A space of upfamilies over ``base`` with the extension product tabulated.

    ``carrier`` is the sorted enumeration of the space; products are returned
    as carrier indices.  Rows, columns and single cells are computed on
    demand and cached.
    """

    base: CayleyTable
    kind: SpaceKind
    carrier: tuple[UpFamily, ...]
    _cells: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        n = self.base.order
        if n > 6:
            raise CapExceededError("tabulated extension", n, 6)
        size = 1 << n
        self.keys = np.array([f.members for f in self.carrier], dtype=np.uint64)
        shifts = np.arange(size, dtype=np.uint64)
        self.mem = ((self.keys[:, None] >> shifts) & np.uint64(1)).astype(bool)
        self._sort = np.argsort(self.keys, kind="stable")
        self._sorted_keys = self.keys[self._sort]
        pre = _preimages(self.base)
        weights = (1 << np.arange(n, dtype=np.int64))[None, :, None]
        # T[b, C] = {x : x^-1 C in b}
        self.T = (self.mem[:, pre].astype(np.int64) * weights).sum(axis=1)
        self._index = {f: i for i, f in enumerate(self.carrier)}
        self._table = None

    def __len__(self):
        return len(self.carrier)

    def index(self, f: UpFamily) -> int:
        try:
            return self._index[f]
        except KeyError:
            raise InputError(f"{f!r} is not in {self.kind.value}") from None

    def lookup(self, keys: np.ndarray, context=None) -> np.ndarray:
        keys = np.asarray(keys, dtype=np.uint64)
        pos = np.searchsorted(self._sorted_keys, keys)
        pos = np.minimum(pos, len(self._sorted_keys) - 1)
        bad = self._sorted_keys[pos] != keys
        if bad.any():
            k = int(np.asarray(keys).reshape(-1)[np.flatnonzero(bad)[0]])
            try:
                what = repr(from_members(k, self.base.order))
            except InputError:
                what = f"with membership bits {k:#x}"
            raise ClosureError(
                f"product {what} left {self.kind.value}" + (f" ({context})" if context else "")
            )
        return self._sort[pos]

    def product_index(self, i: int, j: int) -> int:
        cell = self._cells.get((i, j))
        if cell is None:
            if self._table is not None:
                cell = int(self._table[i, j])
            else:
                key = _pack(self.mem[i][self.T[j]])
                cell = int(self.lookup(key, context=f"{i}*{j}"))
            self._cells[(i, j)] = cell
        return cell

    def product(self, a: UpFamily, b: UpFamily) -> UpFamily:
        return self.carrier[self.product_index(self.index(a), self.index(b))]

    def row(self, i: int) -> np.ndarray:
        """Indices of ``carrier[i] * g`` for every ``g``."""
        if self._table is not None:
            return self._table[i]
        return self.lookup(_pack(self.mem[i][self.T]), context=f"row {i}")

    def column(self, j: int) -> np.ndarray:
        """Indices of ``g * carrier[j]`` for every ``g``."""
        if self._table is not None:
            return self._table[:, j]
        return self.lookup(_pack(self.mem[:, self.T[j]]), context=f"column {j}")

    def squares(self) -> np.ndarray:
        return self.lookup(_pack(np.take_along_axis(self.mem, self.T, axis=1)))

    def table(self) -> np.ndarray:
        """The full ``K x K`` product table (computed once)."""
        if self._table is None:
            k = len(self.carrier)
            tab = np.empty((k, k), dtype=np.int32)
            for i in range(k):
                tab[i] = self.row(i)
            self._table = tab
        return self._table

    def power_index(self, i: int, k: int) -> int:
        p = i
        for _ in range(k - 1):
            p = self.product_index(p, i)
        return p

    def principal_indices(self) -> list[int]:
        return [self.index(point(x, self.base.order)) for x in range(self.base.order)]

    def to_cayley(self) -> dict:
        tab = self.table()
        return {"order": len(self.carrier), "table": tab.tolist()}

    # analyses; each returns a witness (None when the property holds)

    def band_witness(self):
        sq = self.squares()
        bad = np.flatnonzero(sq != np.arange(len(sq)))
        return int(bad[0]) if len(bad) else None

    def commutativity_witness(self):
        for i in range(len(self.carrier)):
            r, c = self.row(i), self.column(i)
            bad = np.flatnonzero(r[i + 1:] != c[i + 1:])
            if len(bad):
                return (i, int(bad[0]) + i + 1)
        return None

    def linearity_witness(self):
        k = len(self.carrier)
        js = np.arange(k)
        for i in range(k):
            r = self.row(i)
            bad = np.flatnonzero((r != i) & (r != js))
            if len(bad):
                return (i, int(bad[0]))
        return None

    def semilattice_witness(self):
        w = self.band_witness()
        if w is not None:
            return ("band", w)
        w = self.commutativity_witness()
        if w is not None:
            return ("commutative", w)
        return None

    def clifford_witness(self, n: int = 1, m: int = 2):
        if n < 1 or m < 1:
            raise InputError("Clifford exponents must be >= 1")
        for i in range(len(self.carrier)):
            if self.power_index(i, n + 1) == self.power_index(i, m + 1) and (
                self.power_index(i, n) != self.power_index(i, m)
            ):
                return i
        return None

    def associativity_witness(self):
        tab = self.table()
        left = tab[tab]  # left[i, j, k] = (ij)k
        k = len(tab)
        idx = np.arange(k)
        right = tab[idx[:, None, None], tab[None, :, :]]  # i(jk)
        bad = np.argwhere(left != right)
        return tuple(int(v) for v in bad[0]) if len(bad) else None

    def embedding_witness(self):
        """First ``(x, y)`` with ``<x> * <y> != <xy>``, or None."""
        idx = self.principal_indices()
        t = self.base.table
        for x in range(self.base.order):
            for y in range(self.base.order):
                if self.product_index(idx[x], idx[y]) != idx[t[x][y]]:
                    return (x, y)
        return None


@lru_cache(maxsize=64)
def build_extension(t: CayleyTable, kind, cap: int | None = None) -> ExtensionSemigroup:
    """Tabulate ``kind(t)``; closure is verified on the principal part eagerly
    and on everything else as products are requested."""
    kind = SpaceKind.parse(kind)
    carrier = enumerate_space(kind, t.order, cap)
    e = ExtensionSemigroup(t, kind, carrier)
    w = e.embedding_witness()
    if w is not None:
        raise ClosureError(f"principal embedding fails at {w}")
    return e


def check_closure(e: ExtensionSemigroup) -> None:
    """Compute every product; raises :class:`ClosureError` on escape."""
    e.table()


# -- reports ---------------------------------------------------------------


@dataclass
class ExtensionReport:
    band: bool
    commutative: bool
    linear: bool
    semilattice: bool
    idempotents: list[int]
    witnesses: dict

    def to_json(self, e: ExtensionSemigroup) -> dict:
        def fam(i):
            return e.carrier[i].to_json()

        wit = {}
        for name, w in self.witnesses.items():
            if isinstance(w, int):
                wit[name] = [fam(w)]
            elif w is not None:
                wit[name] = [fam(i) for i in w]
        return {
            "base": e.base.to_json(),
            "space": e.kind.value,
            "size": len(e.carrier),
            "band": self.band,
            "commutative": self.commutative,
            "linear": self.linear,
            "semilattice": self.semilattice,
            "idempotent_count": len(self.idempotents),
            "witnesses": wit,
        }


def analyze_extension(e: ExtensionSemigroup) -> ExtensionReport:
    sq = e.squares()
    idem = [int(i) for i in np.flatnonzero(sq == np.arange(len(sq)))]
    band_w = e.band_witness()
    comm_w = e.commutativity_witness()
    lin_w = e.linearity_witness()
    return ExtensionReport(
        band=band_w is None,
        commutative=comm_w is None,
        linear=lin_w is None,
        semilattice=band_w is None and comm_w is None,
        idempotents=idem,
        witnesses={"band": band_w, "commutative": comm_w, "linear": lin_w},
    )


def is_regular_in_upsilon(f: UpFamily, t: CayleyTable) -> bool:
    """Whether ``f * g * f = f`` for some upfamily ``g``."""
    return regular_witness(f, t) is not None


def regular_witness(f: UpFamily, t: CayleyTable):
    """An index ``g`` into upsilon with ``f g f = f``, or None."""
    e = build_extension(t, SpaceKind.UPSILON)
    i = e.index(f)
    fg = e.row(i)
    fgf = e.column(i)[fg]
    hits = np.flatnonzero(fgf == i)
    return int(hits[0]) if len(hits) else None


def non_regular_witness(e: ExtensionSemigroup):
    """First carrier element of ``e`` that is not regular in upsilon(base)."""
    u = build_extension(e.base, SpaceKind.UPSILON)
    for f in e.carrier:
        i = u.index(f)
        if not (u.column(i)[u.row(i)] == i).any():
            return e.index(f)
    return None


def extension_nm_clifford(e: ExtensionSemigroup, n: int = 1, m: int = 2):
    """``(holds, witness_index)`` for the (n, m)-Clifford property."""
    w = e.clifford_witness(n, m)
    return w is None, w


# -- lattices --------------------------------------------------------------


def lattice_base_check(meet: CayleyTable, join: CayleyTable) -> None:
    if meet.order != join.order:
        raise InputError("meet and join tables have different orders")
    for name, t in (("meet", meet), ("join", join)):
        if not sg.is_semilattice(t) or not sg.is_semigroup(t):
            raise InputError(f"{name} table is not a semilattice")
    n = meet.order
    for x in range(n):
        for y in range(n):
            if join(meet(x, y), y) != y or meet(join(x, y), y) != y:
                raise InputError(f"absorption fails at ({x}, {y})")


def join_of(meet: CayleyTable) -> CayleyTable:
    """Join table of a finite semilattice with a top element."""
    n = meet.order
    uppers = [[z for z in range(n) if meet(x, z) == x] for x in range(n)]
    table = [[0] * n for _ in range(n)]
    for x in range(n):
        for y in range(n):
            common = set(uppers[x]) & set(uppers[y])
            least = [z for z in common if all(meet(z, w) == z for w in common)]
            if not least:
                raise InputError(f"{x} and {y} have no least upper bound")
            table[x][y] = least[0]
    return CayleyTable(tuple(map(tuple, table)))


@dataclass
class LatticeReport:
    is_lattice: bool
    witness: tuple | None
    reason: str | None


def analyze_lattice_extension(meet: CayleyTable, join: CayleyTable, kind) -> LatticeReport:
    """Check both absorption laws (and that both products are semilattices)."""
    lattice_base_check(meet, join)
    kind = SpaceKind.parse(kind)
    em = build_extension(meet, kind)
    ej = build_extension(join, kind)
    k = len(em)
    js = np.arange(k)
    for i in range(k):
        # (i ∧ j) ∨ j = j and (i ∨ j) ∧ j = j for every j
        mrow = em.row(i)
        absorbed = ej.lookup(_pack(ej.mem[mrow[:, None], ej.T]))
        bad = np.flatnonzero(absorbed != js)
        if len(bad):
            return LatticeReport(False, (i, int(bad[0])), "(x∧y)∨y ≠ y")
        jrow = ej.row(i)
        absorbed = em.lookup(_pack(em.mem[jrow[:, None], em.T]))
        bad = np.flatnonzero(absorbed != js)
        if len(bad):
            return LatticeReport(False, (i, int(bad[0])), "(x∨y)∧y ≠ y")
    for e, name in ((em, "∧"), (ej, "∨")):
        w = e.semilattice_witness()
        if w is not None:
            return LatticeReport(False, w[1] if isinstance(w[1], tuple) else (w[1],),
                                 f"{name} is not {'idempotent' if w[0] == 'band' else 'commutative'}")
    return LatticeReport(True, None, None)


# -- Hasse diagrams --------------------------------------------------------


def hasse_covers(e: ExtensionSemigroup) -> list[tuple[int, int]]:
    """Cover pairs ``(i, j)`` of ``i <= j iff ij = i`` on a semilattice extension."""
    w = e.semilattice_witness()
    if w is not None:
        raise InputError(f"{e.kind.value} over this carrier is not a semilattice")
    tab = e.table()
    k = len(tab)
    leq = tab == np.arange(k)[:, None]
    lt = leq & ~np.eye(k, dtype=bool)
    # i < z < j for some z
    between = (lt.astype(np.int64) @ lt.astype(np.int64)) > 0
    cover = lt & ~between
    return [(int(i), int(j)) for i, j in np.argwhere(cover)]
