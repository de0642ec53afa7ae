"""Upfamilies over a finite carrier and the spaces they form.

A subset of the carrier ``{0, ..., n-1}`` is an int bit mask.  An upfamily
is stored canonically as the sorted antichain of its minimal members; its
full membership is available as a bitset indexed by masks (bit ``S`` set iff
``S`` is a member), which fits a machine word for ``n <= 6``.

Spaces:

=========  ==========================================
upsilon    all upfamilies of nonempty sets
phi        filters (one minimal member)
beta       ultrafilters (point families)
n2         linked upfamilies
lambda     maximal linked upfamilies (superextension)
=========  ==========================================
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from enum import Enum
from functools import cached_property, lru_cache

from .errors import CapExceededError, InputError, SemiextError


def mask(elements) -> int:
    m = 0
    for x in elements:
        m |= 1 << x
    return m


def elements(m: int) -> tuple[int, ...]:
    out = []
    x = 0
    while m:
        if m & 1:
            out.append(x)
        m >>= 1
        x += 1
    return tuple(out)


def full_mask(n: int) -> int:
    return (1 << n) - 1


@lru_cache(maxsize=None)
def superset_bits(n: int) -> tuple[int, ...]:
    """``superset_bits(n)[m]`` has bit ``S`` set for every ``S`` containing ``m``."""
    size = 1 << n
    return tuple(
        sum(1 << s for s in range(size) if s & m == m) for m in range(size)
    )


def minimalize(masks) -> tuple[int, ...]:
    """Minimal elements of a collection of masks, sorted ascending."""
    kept = []
    for m in sorted(set(masks), key=lambda s: (s.bit_count(), s)):
        if not any(k & m == k for k in kept):
            kept.append(m)
    return tuple(sorted(kept))


@dataclass(frozen=True, order=True)
class UpFamily:
    """An upfamily on ``n`` points, given by its minimal members.

    Instances are always canonical: ``minimal`` is a nonempty, sorted
    antichain of nonempty masks.  Construct with :func:`up_closure` unless
    the antichain is already known to be canonical.
    """

    n: int
    minimal: tuple[int, ...]

    def __post_init__(self):
        if self.n < 1:
            raise InputError("carrier must have at least one point")
        if not self.minimal:
            raise InputError("an upfamily needs at least one member")
        limit = 1 << self.n
        for m in self.minimal:
            if not 0 < m < limit:
                raise InputError(f"mask {m} is empty or wider than {self.n} points")
        if tuple(self.minimal) != minimalize(self.minimal):
            raise InputError("minimal members must be a sorted antichain")
        object.__setattr__(self, "minimal", tuple(self.minimal))

    @cached_property
    def members(self) -> int:
        sup = superset_bits(self.n)
        bits = 0
        for m in self.minimal:
            bits |= sup[m]
        return bits

    def __contains__(self, s) -> bool:
        if not isinstance(s, int):
            s = mask(s)
        return bool(self.members >> s & 1)

    def member_masks(self) -> tuple[int, ...]:
        return tuple(s for s in range(1, 1 << self.n) if self.members >> s & 1)

    def sets(self) -> list[list[int]]:
        return [list(elements(m)) for m in self.minimal]

    def to_json(self) -> list[list[int]]:
        return self.sets()

    @classmethod
    def from_json(cls, data, n: int) -> "UpFamily":
        if isinstance(data, str):
            data = json.loads(data)
        gens = []
        for s in data:
            if any(not 0 <= x < n for x in s):
                raise InputError(f"set {s} is not inside 0..{n - 1}")
            gens.append(mask(s))
        return up_closure(gens, n)

    def __repr__(self):
        inner = ", ".join("{" + ",".join(map(str, elements(m))) + "}" for m in self.minimal)
        return f"<{inner}>"


def up_closure(generators, n: int) -> UpFamily:
    """The upfamily generated by ``generators`` (masks or iterables of points)."""
    gens = [g if isinstance(g, int) else mask(g) for g in generators]
    if not gens:
        raise InputError("upper closure of an empty generator set")
    if any(g == 0 for g in gens):
        raise InputError("upfamilies consist of nonempty sets")
    if any(g >> n for g in gens):
        raise InputError(f"generator outside a carrier of {n} points")
    return UpFamily(n, minimalize(gens))


def from_members(bits: int, n: int) -> UpFamily:
    """Upfamily whose membership bitset is ``bits`` (must be upward closed)."""
    if bits & 1:
        raise InputError("the empty set cannot be a member")
    minimal = []
    for s in range(1, 1 << n):
        if bits >> s & 1 and not any(bits >> (s & ~(1 << x)) & 1 for x in elements(s)):
            minimal.append(s)
    return UpFamily(n, tuple(minimal))


def point(x: int, n: int) -> UpFamily:
    return UpFamily(n, (1 << x,))


def principal(s, n: int) -> UpFamily:
    return up_closure([s], n)


def member(f: UpFamily, s) -> bool:
    return s in f


def _check_same_width(a: UpFamily, b: UpFamily):
    if a.n != b.n:
        raise InputError(f"families over {a.n} and {b.n} points")


def is_subfamily(a: UpFamily, b: UpFamily) -> bool:
    """Every member of ``a`` is a member of ``b``."""
    _check_same_width(a, b)
    return a.members & ~b.members == 0


# -- classification ---------------------------------------------------------


def is_filter_by_intersection(f: UpFamily) -> bool:
    bits, ms = f.members, f.member_masks()
    return all(bits >> (a & b) & 1 for a in ms for b in ms)


def is_filter_by_minimal(f: UpFamily) -> bool:
    return len(f.minimal) == 1


def is_ultrafilter(f: UpFamily) -> bool:
    return len(f.minimal) == 1 and f.minimal[0].bit_count() == 1


def is_linked(f: UpFamily) -> bool:
    ms = f.minimal
    return all(a & b for i, a in enumerate(ms) for b in ms[i:])


def is_self_dual(f: UpFamily) -> bool:
    """Exactly one of ``S`` and its complement is a member, for proper nonempty ``S``."""
    full, bits = full_mask(f.n), f.members
    if not bits >> full & 1:
        return False
    return all(
        (bits >> s & 1) != (bits >> (full ^ s) & 1) for s in range(1, full)
    )


def is_maximal_linked_by_extension(f: UpFamily) -> bool:
    """Linked, and no non-member meets every member.

    A strictly larger upfamily contains some non-member ``S``; the family
    generated by ``f`` and ``S`` is linked exactly when ``S`` meets all of
    ``f``'s minimal members.
    """
    if not is_linked(f):
        return False
    bits = f.members
    for s in range(1, 1 << f.n):
        if not bits >> s & 1 and all(s & m for m in f.minimal):
            return False
    return True


@dataclass(frozen=True)
class FamilyFlags:
    filter: bool
    ultrafilter: bool
    linked: bool
    maximal_linked: bool


def classify_upfamily(f: UpFamily) -> FamilyFlags:
    filt = is_filter_by_minimal(f)
    if filt != is_filter_by_intersection(f):
        raise SemiextError(f"filter checks disagree on {f!r}")
    maxl = is_self_dual(f)
    if maxl != is_maximal_linked_by_extension(f):
        raise SemiextError(f"maximal-linked checks disagree on {f!r}")
    return FamilyFlags(
        filter=filt, ultrafilter=is_ultrafilter(f), linked=is_linked(f), maximal_linked=maxl
    )


# -- spaces -----------------------------------------------------------------


class SpaceKind(str, Enum):
    UPSILON = "upsilon"
    PHI = "phi"
    BETA = "beta"
    N2 = "n2"
    LAMBDA = "lambda"

    @classmethod
    def parse(cls, name) -> "SpaceKind":
        if isinstance(name, cls):
            return name
        try:
            return cls(str(name).lower())
        except ValueError:
            raise InputError(f"unknown space {name!r}") from None


SPACE_CAPS = {
    SpaceKind.UPSILON: 5,
    SpaceKind.N2: 5,
    SpaceKind.LAMBDA: 6,
    SpaceKind.PHI: 7,
    SpaceKind.BETA: 8,
}

_PREDICATES = {
    SpaceKind.UPSILON: lambda f: True,
    SpaceKind.PHI: is_filter_by_minimal,
    SpaceKind.BETA: is_ultrafilter,
    SpaceKind.N2: is_linked,
    SpaceKind.LAMBDA: is_self_dual,
}


def in_space(f: UpFamily, kind) -> bool:
    return _PREDICATES[SpaceKind.parse(kind)](f)


@lru_cache(maxsize=None)
def monotone_bitsets(n: int) -> tuple[int, ...]:
    """Membership bitsets of all monotone families on ``n`` points.

    Includes the empty family and the full powerset, so the count is the
    Dedekind number.  A family on ``n`` points splits into the sets avoiding
    the last point and the traces of the sets containing it; both halves are
    monotone families on ``n - 1`` points and the first is contained in the
    second.
    """
    if n == 0:
        return (0, 1)
    smaller = monotone_bitsets(n - 1)
    shift = 1 << (n - 1)
    return tuple(
        low | (high << shift)
        for low in smaller
        for high in smaller
        if low & ~high == 0
    )


def _check_cap(kind, n, cap=None):
    if n < 1:
        raise InputError("carrier must have at least one point")
    if cap is None:
        override = os.environ.get("SEMIEXT_MAX_ORDER")
        cap = int(override) if override else SPACE_CAPS[kind]
    limit = cap
    if n > limit:
        raise CapExceededError(f"space {kind.value}", n, limit)


@lru_cache(maxsize=None)
def _upsilon(n: int) -> tuple[UpFamily, ...]:
    bits = [b for b in monotone_bitsets(n) if b and not b & 1]
    return tuple(sorted(from_members(b, n) for b in bits))


@lru_cache(maxsize=None)
def _lambda(n: int) -> tuple[UpFamily, ...]:
    # A self-dual family on n points is fixed by its trace on the first n-1
    # points, which can be any linked family there (the empty one included):
    # S + {last} is a member iff the complement of S is not.
    if n == 1:
        return (point(0, 1),)
    low_n = n - 1
    low_full = full_mask(low_n)
    shift = 1 << low_n
    linked = [0] + [f.members for f in _upsilon(low_n) if is_linked(f)]
    out = []
    for g in linked:
        high = 0
        for s in range(shift):
            if not g >> (low_full ^ s) & 1:
                high |= 1 << s
        out.append(from_members(g | (high << shift), n))
    return tuple(sorted(out))


def enumerate_space(kind, n: int, cap: int | None = None) -> tuple[UpFamily, ...]:
    """All members of a space over ``n`` points, sorted by minimal members."""
    kind = SpaceKind.parse(kind)
    _check_cap(kind, n, cap)
    if kind is SpaceKind.UPSILON:
        return _upsilon(n)
    if kind is SpaceKind.PHI:
        return tuple(sorted(UpFamily(n, (s,)) for s in range(1, 1 << n)))
    if kind is SpaceKind.BETA:
        return tuple(point(x, n) for x in range(n))
    if kind is SpaceKind.N2:
        return tuple(f for f in _upsilon(n) if is_linked(f))
    return _lambda(n)


def named_lambda4_elements() -> dict[str, UpFamily]:
    """The twelve maximal linked families on 4 points, keyed by display name.

    ``<k>`` is the point family, ``Δk`` is generated by the pairs avoiding
    ``k``, and ``□k`` by the complement of ``{k}`` together with the pairs
    containing ``k``.
    """
    n = 4
    out = {}
    for k in range(n):
        out[f"⟨{k}⟩"] = point(k, n)
    for k in range(n):
        others = [x for x in range(n) if x != k]
        out[f"Δ{k}"] = up_closure(
            [mask((a, b)) for i, a in enumerate(others) for b in others[i + 1:]], n
        )
    for k in range(n):
        rest = full_mask(n) ^ (1 << k)
        out[f"□{k}"] = up_closure(
            [rest] + [mask((k, x)) for x in range(n) if x != k], n
        )
    return out


def delta3() -> UpFamily:
    """Sets of size at least 2 on three points."""
    return up_closure([0b011, 0b101, 0b110], 3)
