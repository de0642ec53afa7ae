"""Exhaustive verification of the characterization theorems.

Each :class:`TheoremSpec` names a family of instances (semigroup classes up
to an order) and a list of conditions that the theorem claims are
equivalent.  Verification evaluates every condition on every instance and
succeeds when each instance gets a constant truth vector.
"""

from __future__ import annotations

import dataclasses
import json
import time
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import semigroup as sg
from .enumeration import LatticePair, enumerate_lattices, enumerate_semigroups
from .errors import InputError
from .extension import (
    analyze_lattice_extension,
    build_extension,
    non_regular_witness,
    set_products,
)
from .upfamily import SpaceKind, superset_bits

U, PHI, BETA, N2, LAM = (
    SpaceKind.UPSILON,
    SpaceKind.PHI,
    SpaceKind.BETA,
    SpaceKind.N2,
    SpaceKind.LAMBDA,
)


# -- condition building blocks ----------------------------------------------


def _ext(t, kind):
    return build_extension(t, kind)


def band(kind):
    return lambda t: _ext(t, kind).band_witness() is None


def commutative(kind):
    return lambda t: _ext(t, kind).commutativity_witness() is None


def linear(kind):
    return lambda t: _ext(t, kind).linearity_witness() is None


def semilattice(kind):
    return lambda t: _ext(t, kind).semilattice_witness() is None


def clifford12(kind):
    return lambda t: _ext(t, kind).clifford_witness(1, 2) is None


def all_regular(kind):
    return lambda t: non_regular_witness(_ext(t, kind)) is None


def product_equals_tensor(t) -> bool:
    """Extension product and tensor product agree on every pair of upfamilies."""
    e = _ext(t, U)
    sp = set_products(t)
    sup = superset_bits(t.order)
    keys = e.keys
    for i, a in enumerate(e.carrier):
        row = e.row(i)
        for j, b in enumerate(e.carrier):
            tensor = 0
            for u in a.minimal:
                spu = sp[u]
                for v in b.minimal:
                    tensor |= sup[spu[v]]
            if tensor != int(keys[row[j]]):
                return False
    return True


def lattice(kind):
    return lambda p: analyze_lattice_extension(p.meet, p.join, kind).is_lattice


def finite_linear_semilattice(t):
    return sg.is_semilattice(t) and sg.is_linear(t)


def finite_antichains(t):
    # every antichain of a finite carrier is finite; record that the exact
    # search returns a genuine antichain no larger than the carrier
    a = sg.max_antichain(t)
    m = t.table
    return len(a) <= t.order and all(m[x][y] not in (x, y) for x in a for y in a if x != y)


def beta_isomorphic_to_base(t):
    e = _ext(t, BETA)
    return e.embedding_witness() is None and len(e) == t.order


# -- specs ------------------------------------------------------------------


@dataclass(frozen=True)
class Condition:
    name: str
    predicate: Callable


@dataclass(frozen=True)
class TheoremSpec:
    id: str
    title: str
    instances: tuple[tuple[str, int], ...]
    conditions: tuple[Condition, ...]
    note: str = ""

    def with_condition(self, name: str, predicate) -> "TheoremSpec":
        """Copy with one condition's predicate replaced (harness self-tests)."""
        conds = tuple(
            Condition(c.name, predicate) if c.name == name else c for c in self.conditions
        )
        if conds == self.conditions:
            raise InputError(f"theorem {self.id} has no condition {name!r}")
        return dataclasses.replace(self, conditions=conds)


C = Condition

SPECS: tuple[TheoremSpec, ...] = (
    TheoremSpec(
        "1.1",
        "X linear iff upsilon(X), phi(X), lambda(X) are bands",
        (("all", 3), ("band", 4)),
        (
            C("X linear", sg.is_linear),
            C("upsilon(X) band", band(U)),
            C("phi(X) band", band(PHI)),
            C("lambda(X) band", band(LAM)),
        ),
    ),
    TheoremSpec(
        "prop-reg",
        "for bands: X linear iff phi(X), lambda(X) consist of elements regular in upsilon(X)",
        (("band", 4),),
        (
            C("X linear", sg.is_linear),
            C("phi(X) regular in upsilon(X)", all_regular(PHI)),
            C("lambda(X) regular in upsilon(X)", all_regular(LAM)),
        ),
    ),
    TheoremSpec(
        "1.2-clifford",
        "for semilattices: X linear iff phi(X), lambda(X) are (1,2)-Clifford",
        (("semilattice", 5),),
        (
            C("X linear", sg.is_linear),
            C("phi(X) (1,2)-Clifford", clifford12(PHI)),
            C("lambda(X) (1,2)-Clifford", clifford12(LAM)),
        ),
    ),
    TheoremSpec(
        "beta-band-finite",
        "for finite bands beta(X) = X is a band and all antichains are finite",
        (("band", 4), ("semilattice", 5)),
        (
            C("X band", sg.is_band),
            C("beta(X) band", band(BETA)),
            C("beta(X) isomorphic to X", beta_isomorphic_to_base),
            C("antichains finite", finite_antichains),
        ),
        note="infinite carriers (injective sequences, Ramsey argument) are out of scope",
    ),
    TheoremSpec(
        "2.1",
        "on linear semigroups the extension product equals the tensor product",
        (("linear", 4),),
        (
            C("X linear", sg.is_linear),
            C("A*B = A⊗B on upsilon(X)", product_equals_tensor),
        ),
    ),
    TheoremSpec(
        "2.2",
        "for bands: X finite linear semilattice iff upsilon(X), N2(X) commutative "
        "iff lambda(X) commutative and (1,2)-Clifford",
        (("band", 4),),
        (
            C("X finite linear semilattice", finite_linear_semilattice),
            C("upsilon(X) commutative", commutative(U)),
            C("N2(X) commutative", commutative(N2)),
            C(
                "lambda(X) commutative and (1,2)-Clifford",
                lambda t: commutative(LAM)(t) and clifford12(LAM)(t),
            ),
        ),
    ),
    TheoremSpec(
        "2.6",
        "for semilattices: lambda(X) commutative iff X is a bush",
        (("semilattice", 6),),
        (
            C("lambda(X) commutative", commutative(LAM)),
            C("X bush", sg.is_bush),
        ),
        note="branches of a finite bush are finite",
    ),
    TheoremSpec(
        "3.1",
        "X finite linear semilattice iff upsilon(X), lambda(X), phi(X) are semilattices",
        (("all", 3), ("semilattice", 5)),
        (
            C("X finite linear semilattice", finite_linear_semilattice),
            C("upsilon(X) semilattice", semilattice(U)),
            C("lambda(X) semilattice", semilattice(LAM)),
            C("phi(X) semilattice", semilattice(PHI)),
        ),
    ),
    TheoremSpec(
        "4.1",
        "upsilon(X) linear iff X is a left-zero or right-zero semigroup",
        (("all", 3), ("band", 4)),
        (
            C("upsilon(X) linear", linear(U)),
            C("X left-zero or right-zero", lambda t: sg.is_left_zero(t) or sg.is_right_zero(t)),
        ),
    ),
    TheoremSpec(
        "4.2",
        "phi(X) linear iff N2(X) linear iff X left-zero, right-zero, or a semilattice of order <= 2",
        (("all", 3), ("band", 4)),
        (
            C("phi(X) linear", linear(PHI)),
            C("N2(X) linear", linear(N2)),
            C(
                "X left/right-zero or small semilattice",
                lambda t: sg.is_left_zero(t)
                or sg.is_right_zero(t)
                or (sg.is_semilattice(t) and t.order <= 2),
            ),
        ),
    ),
    TheoremSpec(
        "4.3",
        "for commutative X: lambda(X) linear iff X is a linear semilattice of order <= 3",
        (("commutative", 4),),
        (
            C("lambda(X) linear", linear(LAM)),
            C(
                "X linear semilattice of order <= 3",
                lambda t: finite_linear_semilattice(t) and t.order <= 3,
            ),
        ),
    ),
    TheoremSpec(
        "5-lattice",
        "for lattices: X linear of order <= 2 iff upsilon(X), lambda(X), phi(X) are lattices",
        (("lattice", 5),),
        (
            C("X linear of order <= 2", lambda p: sg.is_linear(p.meet) and p.order <= 2),
            C("upsilon(X) lattice", lattice(U)),
            C("lambda(X) lattice", lattice(LAM)),
            C("phi(X) lattice", lattice(PHI)),
        ),
    ),
)

SPEC_BY_ID = {s.id: s for s in SPECS}

OUT_OF_SCOPE = (
    {
        "id": "beta-band",
        "reason": "characterization via injective sequences needs infinite carriers; "
        "only the finite case is checked (beta-band-finite)",
    },
    {"id": "2.4", "reason": "commutativity of beta(X) via sequences; infinite carriers only"},
    {"id": "2.5", "reason": "Ramsey argument on infinite linear subsemilattices"},
)


# -- running ----------------------------------------------------------------


def _instance_json(inst):
    if isinstance(inst, LatticePair):
        return {"meet": inst.meet.to_json(), "join": inst.join.to_json()}
    return inst.to_json()


def _instance_key(inst):
    t = inst.meet if isinstance(inst, LatticePair) else inst
    return (t.order, t.table)


def instances_for(spec: TheoremSpec, max_order: int | None = None) -> tuple[list, dict]:
    """Deduplicated instances sorted by (order, canonical table), and per-class counts."""
    seen = {}
    counts = {}
    for cls, cap in spec.instances:
        top = cap if max_order is None else min(cap, max_order)
        total = 0
        for n in range(1, top + 1):
            if cls == "lattice":
                batch = enumerate_lattices(n)
            else:
                batch = enumerate_semigroups(n, cls)
            total += len(batch)
            for inst in batch:
                seen.setdefault(_instance_key(inst), inst)
        counts[f"{cls}<={top}"] = total
    return [seen[k] for k in sorted(seen)], counts


def truth_vector(spec: TheoremSpec, inst) -> tuple[bool, ...]:
    return tuple(bool(c.predicate(inst)) for c in spec.conditions)


@dataclass
class TheoremReport:
    id: str
    title: str
    verified: bool
    instances_checked: int
    instances_by_class: dict
    conditions: list[str]
    witness: dict | None = None
    true_instances: int = 0
    note: str = ""
    elapsed_s: float = field(default=0.0, compare=False)

    @property
    def result(self) -> str:
        return "verified" if self.verified else "counterexample"

    def to_json(self, timing: bool = True) -> dict:
        out = {
            "id": self.id,
            "title": self.title,
            "result": self.result,
            "instances_checked": self.instances_checked,
            "instances_by_class": self.instances_by_class,
            "instances_all_true": self.true_instances,
            "conditions": self.conditions,
            "witness": self.witness,
        }
        if self.note:
            out["note"] = self.note
        if timing:
            out["elapsed_s"] = round(self.elapsed_s, 3)
        return out


def verify(spec: TheoremSpec | str, max_order: int | None = None, instances=None) -> TheoremReport:
    """Evaluate every condition of ``spec`` on every instance.

    The first instance (in sorted order) whose truth vector is not constant
    becomes the counterexample witness; checking stops there.
    """
    if isinstance(spec, str):
        try:
            spec = SPEC_BY_ID[spec]
        except KeyError:
            raise InputError(f"unknown theorem id {spec!r}") from None
    start = time.perf_counter()
    if instances is None:
        instances, counts = instances_for(spec, max_order)
    else:
        instances = sorted(instances, key=_instance_key)
        counts = {"given": len(instances)}
    witness = None
    all_true = 0
    checked = 0
    for inst in instances:
        vec = truth_vector(spec, inst)
        checked += 1
        if len(set(vec)) > 1:
            witness = {
                "instance": _instance_json(inst),
                "truth": dict(zip((c.name for c in spec.conditions), vec)),
            }
            break
        all_true += vec[0]
    return TheoremReport(
        id=spec.id,
        title=spec.title,
        verified=witness is None,
        instances_checked=checked,
        instances_by_class=counts,
        conditions=[c.name for c in spec.conditions],
        witness=witness,
        true_instances=all_true,
        note=spec.note,
        elapsed_s=time.perf_counter() - start,
    )


def verify_all(max_order: int | None = None, specs=SPECS, instance_hook=None, progress=None):
    """Run every spec.  ``instance_hook(spec, instances)`` may rewrite the
    instance list (used to inject deliberately wrong instances in tests)."""
    reports = []
    for spec in specs:
        insts = None
        if instance_hook is not None:
            insts = instance_hook(spec, instances_for(spec, max_order)[0])
        report = verify(spec, max_order, instances=insts)
        reports.append(report)
        if progress is not None:
            progress(report)
    return reports


def summary(reports, timing: bool = True) -> dict:
    return {
        "verified": all(r.verified for r in reports),
        "theorems": [r.to_json(timing) for r in reports],
        "out_of_scope": list(OUT_OF_SCOPE),
    }


def dumps(reports, timing: bool = True) -> str:
    return json.dumps(summary(reports, timing), indent=2, ensure_ascii=False)


def rebuild_instance(data) -> object:
    """Inverse of the instance JSON stored in witnesses."""
    if "meet" in data:
        return LatticePair(sg.CayleyTable.from_json(data["meet"]), sg.CayleyTable.from_json(data["join"]))
    return sg.CayleyTable.from_json(data)


def recheck_witness(spec: TheoremSpec, witness: dict) -> dict:
    inst = rebuild_instance(witness["instance"])
    return dict(zip((c.name for c in spec.conditions), truth_vector(spec, inst)))


__all__ = [
    "SPECS",
    "SPEC_BY_ID",
    "OUT_OF_SCOPE",
    "TheoremSpec",
    "TheoremReport",
    "Condition",
    "verify",
    "verify_all",
    "summary",
    "instances_for",
    "recheck_witness",
    "np",
]
