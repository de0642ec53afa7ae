"""Command-line interface: ``semiext <command> ...``.

Exit codes: 0 success / property holds / all verified, 1 property fails or
counterexample found, 2 bad input, cap exceeded or internal failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import harness
from . import semigroup as sg
from .errors import CapExceededError, ClosureError, InputError
from .extension import (
    analyze_lattice_extension,
    build_extension,
    hasse_covers,
    join_of,
    product,
    tensor_product,
)
from .upfamily import SpaceKind, UpFamily, enumerate_space, named_lambda4_elements

PROPERTIES = ("band", "commutative", "linear", "semilattice", "lattice", "clifford:n,m")


def _emit(obj, out=None):
    text = obj if isinstance(obj, str) else json.dumps(obj, ensure_ascii=False)
    if out:
        Path(out).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)


def _read_family(arg: str, n: int) -> UpFamily:
    text = arg
    if not arg.lstrip().startswith("["):
        text = Path(arg).read_text(encoding="utf-8")
    try:
        return UpFamily.from_json(text, n)
    except json.JSONDecodeError as exc:
        raise InputError(f"cannot parse family {arg!r}: {exc}") from None


def labels_for(carrier: sg.CayleyTable, kind: SpaceKind, families) -> list[str]:
    if kind is SpaceKind.LAMBDA and carrier == sg.chain(4):
        names = {f: name for name, f in named_lambda4_elements().items()}
        return [names[f] for f in families]
    if kind is SpaceKind.LAMBDA and carrier == sg.chain(3):
        return ["Δ" if len(f.minimal) == 3 else f"⟨{f.minimal[0].bit_length() - 1}⟩" for f in families]
    return [repr(f) for f in families]


def hasse_dot(labels, covers) -> str:
    lines = ["digraph hasse {", "  rankdir=BT;"]
    for i, label in enumerate(labels):
        escaped = label.replace("\\", "\\\\").replace('"', '\\"')
        lines.append(f'  n{i} [label="{escaped}"];')
    for i, j in covers:
        lines.append(f"  n{i} -> n{j};")
    lines.append("}")
    return "\n".join(lines)


def cmd_enumerate(args):
    carrier = sg.parse_carrier(args.carrier)
    fams = enumerate_space(args.space, carrier.order)
    if args.count_only:
        _emit(str(len(fams)), args.out)
    else:
        _emit("\n".join(json.dumps(f.to_json()) for f in fams), args.out)
    return 0


def _parse_property(prop: str):
    name, _, arg = prop.partition(":")
    if name == "clifford":
        try:
            n, m = (int(v) for v in (arg or "1,2").split(","))
        except ValueError:
            raise InputError(f"bad clifford exponents in {prop!r}") from None
        return name, (n, m)
    if name in ("band", "commutative", "linear", "semilattice", "lattice") and not arg:
        return name, ()
    raise InputError(f"unknown property {prop!r}; expected one of {PROPERTIES}")


def cmd_check(args):
    carrier = sg.validate_semigroup(sg.parse_carrier(args.carrier))
    kind = SpaceKind.parse(args.space)
    name, extra = _parse_property(args.property)
    if name == "lattice":
        report = analyze_lattice_extension(carrier, join_of(carrier), kind)
        e = build_extension(carrier, kind)
        witness = None
        if report.witness is not None:
            witness = [e.carrier[i].to_json() for i in report.witness]
        _emit({"property": "lattice", "holds": report.is_lattice, "witness": witness,
               "reason": report.reason})
        return 0 if report.is_lattice else 1
    e = build_extension(carrier, kind)
    if name == "clifford":
        w = e.clifford_witness(*extra)
    elif name == "semilattice":
        w = e.semilattice_witness()
        w = None if w is None else w[1]
    else:
        w = {
            "band": e.band_witness,
            "commutative": e.commutativity_witness,
            "linear": e.linearity_witness,
        }[name]()
    witness = None
    if w is not None:
        idx = w if isinstance(w, tuple) else (w,)
        witness = [e.carrier[i].to_json() for i in idx]
    _emit({"property": args.property, "space": kind.value, "holds": w is None, "witness": witness})
    return 0 if w is None else 1


def cmd_product(args):
    carrier = sg.validate_semigroup(sg.parse_carrier(args.carrier))
    a = _read_family(args.a, carrier.order)
    b = _read_family(args.b, carrier.order)
    op = tensor_product if args.tensor else product
    _emit(op(a, b, carrier).to_json())
    return 0


def cmd_hasse(args):
    carrier = sg.validate_semigroup(sg.parse_carrier(args.carrier))
    kind = SpaceKind.parse(args.space)
    e = build_extension(carrier, kind)
    w = e.semilattice_witness()
    if w is not None:
        print(f"{kind.value} over {args.carrier} is not a semilattice "
              f"(fails {w[0]} at {w[1]})", file=sys.stderr)
        return 1
    covers = hasse_covers(e)
    labels = labels_for(carrier, kind, e.carrier)
    if args.format == "dot":
        _emit(hasse_dot(labels, covers), args.out)
    else:
        _emit({
            "nodes": [{"id": i, "label": lab, "family": f.to_json()}
                      for i, (lab, f) in enumerate(zip(labels, e.carrier))],
            "covers": [list(c) for c in covers],
        }, args.out)
    return 0


def cmd_verify(args):
    if args.theorem == "all":
        specs = harness.SPECS
    else:
        if args.theorem not in harness.SPEC_BY_ID:
            raise InputError(f"unknown theorem {args.theorem!r}; known: {', '.join(harness.SPEC_BY_ID)}")
        specs = (harness.SPEC_BY_ID[args.theorem],)

    def progress(r):
        print(f"{r.id:>16}  {r.result:<14} {r.instances_checked:>4} instances  "
              f"{r.elapsed_s:7.2f}s", file=sys.stderr)

    reports = harness.verify_all(args.max_order, specs, progress=progress)
    text = harness.dumps(reports)
    if args.report:
        Path(args.report).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)
    return 0 if all(r.verified for r in reports) else 1


def cmd_catalog(args):
    _emit({
        "carriers": list(sg.CATALOG),
        "lambda4": {name: f.to_json() for name, f in named_lambda4_elements().items()},
        "spaces": [k.value for k in SpaceKind],
        "theorems": list(harness.SPEC_BY_ID),
    })
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="semiext", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    spaces = [k.value for k in SpaceKind]

    p = sub.add_parser("enumerate", help="list the upfamilies of a space")
    p.add_argument("--carrier", required=True)
    p.add_argument("--space", required=True, choices=spaces)
    p.add_argument("--count-only", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("check", help="test an algebraic property of an extension")
    p.add_argument("--carrier", required=True)
    p.add_argument("--space", required=True, choices=spaces)
    p.add_argument("--property", required=True)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("product", help="multiply two upfamilies")
    p.add_argument("--carrier", required=True)
    p.add_argument("--a", required=True, help="UpFamily JSON or a file containing it")
    p.add_argument("--b", required=True)
    p.add_argument("--tensor", action="store_true", help="tensor product instead")
    p.set_defaults(func=cmd_product)

    p = sub.add_parser("hasse", help="Hasse diagram of a semilattice extension")
    p.add_argument("--carrier", required=True)
    p.add_argument("--space", required=True, choices=spaces)
    p.add_argument("--format", choices=("dot", "json"), default="dot")
    p.add_argument("--out")
    p.set_defaults(func=cmd_hasse)

    p = sub.add_parser("verify", help="verify theorems exhaustively")
    p.add_argument("--theorem", default="all")
    p.add_argument("--max-order", type=int)
    p.add_argument("--report")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("catalog", help="named carriers and lambda(4) elements")
    p.set_defaults(func=cmd_catalog)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.func(args)
    except (InputError, CapExceededError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ClosureError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
