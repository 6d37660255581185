"""Command-line front end: derivative tables, classification reports, a
small-field atlas, and the integer arithmetic derivative.

    qderiv table --field p=2,k=4,poly=x^4+x+1 --q q=x --q q=x^3 --q q=x^7
    qderiv report --field p=2,k=4,poly=x^4+x+1 --q q=x^7 [--json]
    qderiv atlas --max 16 --out atlas.jsonl
    qderiv intderiv 6        (or a range: 2..10)

Table rows are ordered by element value read as a base-p digit string.
Atlas output is newline-delimited JSON, one AtlasEntry per line, with a
"schema" version field.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from typing import Optional, Sequence, TextIO

from .deform import Deformation, parse_deformation_spec
from .errors import NotFrobenius, OutOfRange, ParseError, QDerivError
from .field import NEG_INFINITY, Field, parse_field_spec
from .intderiv import arith_derivative

SCHEMA_VERSION = 1


def _exp_json(n) -> object:
    return "-inf" if n is NEG_INFINITY else n


def _exp_parse(v) -> object:
    return NEG_INFINITY if v == "-inf" else int(v)


@dataclass(frozen=True)
class DerivTableRow:
    """One table row: exponent, rendered element, derivative per column."""

    n: object
    element: str
    derivs: dict[str, str]

    def to_json_dict(self) -> dict:
        return {"n": _exp_json(self.n), "element": self.element, "derivs": dict(self.derivs)}


@dataclass(frozen=True)
class AtlasEntry:
    """Classification summary of one (field, deformation) pair."""

    field: str
    deformation: str
    constants: tuple  # exponents, -inf first then ascending
    exp: tuple[int, ...]
    trig_periods: dict[int, int]
    nilpotent_chain: tuple[int, ...]  # chain order b0, b1, ...
    kernel_dim: int
    image_size: int

    def to_json_dict(self) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "field": self.field,
            "deformation": self.deformation,
            "constants": [_exp_json(n) for n in self.constants],
            "exp": list(self.exp),
            "trig_periods": {str(k): v for k, v in self.trig_periods.items()},
            "nilpotent_chain": list(self.nilpotent_chain),
            "kernel_dim": self.kernel_dim,
            "image_size": self.image_size,
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "AtlasEntry":
        if d.get("schema") != SCHEMA_VERSION:
            raise ParseError(f"unsupported atlas schema {d.get('schema')!r}")
        return cls(
            field=d["field"],
            deformation=d["deformation"],
            constants=tuple(_exp_parse(v) for v in d["constants"]),
            exp=tuple(d["exp"]),
            trig_periods={int(k): v for k, v in d["trig_periods"].items()},
            nilpotent_chain=tuple(d["nilpotent_chain"]),
            kernel_dim=d["kernel_dim"],
            image_size=d["image_size"],
        )


def build_atlas_entry(d: Deformation) -> AtlasEntry:
    ctx = d.ctx
    constants = sorted(ctx.dlog(c) for c in d.constants())
    op = d.operator_matrix()
    return AtlasEntry(
        field=ctx.spec_string(),
        deformation=d.spec_string(),
        constants=tuple(constants),
        exp=tuple(sorted(d.find_exp())),
        trig_periods={ctx.dlog(f): m for f, m in sorted(
            d.classify_trig().items(), key=lambda kv: kv[0].dlog)},
        nilpotent_chain=tuple(ctx.dlog(b) for b in d.nilpotent_basis()),
        kernel_dim=len(op.kernel_basis),
        image_size=ctx.p ** len(op.image_basis),
    )


# -- table ------------------------------------------------------------------

def table_rows(field: Field, deformations: Sequence[Deformation]) -> list[DerivTableRow]:
    rows = []
    for el in field.elements():
        rows.append(DerivTableRow(
            n=field.dlog(el),
            element=str(el),
            derivs={d.label(): str(d.derivative(el)) for d in deformations},
        ))
    return rows


def render_table(field: Field, deformations: Sequence[Deformation]) -> str:
    rows = table_rows(field, deformations)
    labels = [d.label() for d in deformations]
    header = ["n", "theta^n", *labels]
    cells = [[str(r.n), r.element, *(r.derivs[l] for l in labels)] for r in rows]
    widths = [max(len(line[i]) for line in [header, *cells]) for i in range(len(header))]
    out = []
    for line in [header, *cells]:
        first = line[0].rjust(widths[0])
        rest = [c.ljust(w) for c, w in zip(line[1:], widths[1:])]
        out.append(" | ".join([first, *rest]).rstrip())
    return "\n".join(out)


def cmd_table(field: Field, deformations: Sequence[Deformation],
              as_json: bool = False) -> str:
    if as_json:
        return json.dumps([r.to_json_dict() for r in table_rows(field, deformations)],
                          indent=2)
    return render_table(field, deformations)


# -- report -----------------------------------------------------------------

def render_report(entry: AtlasEntry) -> str:
    periods = ", ".join(f"{n}:{m}" for n, m in sorted(entry.trig_periods.items()))
    lines = [
        f"field: {entry.field}",
        f"deformation: {entry.deformation}",
        "constants (exponents): " + ", ".join(str(n) for n in entry.constants),
        "exp solutions: " + (", ".join(str(e) for e in entry.exp) if entry.exp else "none"),
        "trig periods: " + (periods if periods else "none"),
        "nilpotent chain (exponents): " + ", ".join(str(n) for n in entry.nilpotent_chain),
        f"kernel dimension: {entry.kernel_dim}",
        f"antiderivatives exist for {entry.image_size} elements (image size)",
    ]
    return "\n".join(lines)


def cmd_report(field: Field, deformation: Deformation, as_json: bool = False) -> str:
    if not deformation.frobenius:
        raise NotFrobenius(
            f"report needs a Frobenius deformation (s = p^j); s = {deformation.s} "
            "is not one here -- use the table command for general s")
    entry = build_atlas_entry(deformation)
    if as_json:
        return json.dumps(entry.to_json_dict(), indent=2)
    return render_report(entry)


# -- atlas ------------------------------------------------------------------

def iter_atlas(max_order: int):
    """All (field, frobenius deformation) pairs with p^k <= max_order and
    k >= 2, in deterministic (p asc, k asc, j asc) order."""
    from .field import _is_prime
    for p in range(2, max_order + 1):
        if not _is_prime(p):
            continue
        k = 2
        while p ** k <= max_order:
            field = Field(p, k)
            for j in range(1, k):
                yield Deformation(field, s=p ** j)
            k += 1


def cmd_atlas(max_order: int, out_path: str, max_allowed: Optional[int] = None) -> int:
    """Write one AtlasEntry JSON line per (field, deformation); returns count.
    Partial output is removed on failure."""
    from .field import _max_order
    limit = _max_order(max_allowed)
    if max_order > limit:
        raise OutOfRange(f"atlas bound {max_order} exceeds the field-order limit {limit}")
    count = 0
    try:
        with open(out_path, "w", encoding="utf-8") as fh:
            for d in iter_atlas(max_order):
                fh.write(json.dumps(build_atlas_entry(d).to_json_dict()) + "\n")
                count += 1
    except BaseException:
        if os.path.exists(out_path):
            os.unlink(out_path)
        raise
    return count


# -- integer derivative -------------------------------------------------------

def cmd_intderiv(spec: str, out: TextIO) -> None:
    if ".." in spec:
        lo_s, _, hi_s = spec.partition("..")
        try:
            lo, hi = int(lo_s), int(hi_s)
        except ValueError:
            raise ParseError(f"bad range {spec!r}; expected a..b") from None
        if hi < lo:
            raise ParseError(f"empty range {spec!r}")
        for n in range(lo, hi + 1):
            print(n, arith_derivative(n), file=out)
        return
    try:
        n = int(spec)
    except ValueError:
        raise ParseError(f"expected an integer or a..b range, got {spec!r}") from None
    print(n, arith_derivative(n), file=out)


# -- argparse glue ------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qderiv",
        description="Deformed derivatives on finite fields and the integer "
                    "arithmetic derivative.")
    sub = parser.add_subparsers(dest="command", required=True)

    t = sub.add_parser("table", help="derivative table for one field")
    t.add_argument("--field", required=True, help="field spec, e.g. p=2,k=4,poly=x^4+x+1")
    t.add_argument("--q", action="append", required=True, metavar="SPEC",
                   help="deformation spec (q=x^7 or s=8); repeatable")
    t.add_argument("--json", action="store_true")

    r = sub.add_parser("report", help="classification report for one deformation")
    r.add_argument("--field", required=True)
    r.add_argument("--q", required=True, metavar="SPEC")
    r.add_argument("--json", action="store_true")

    a = sub.add_parser("atlas", help="scan all small fields to JSON lines")
    a.add_argument("--max", type=int, required=True, help="largest field order to include")
    a.add_argument("--out", required=True, help="output path (.jsonl)")

    i = sub.add_parser("intderiv", help="arithmetic derivative of n or a..b")
    i.add_argument("spec", help="an integer or an inclusive range a..b")

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "table":
            field = parse_field_spec(args.field)
            defs = [parse_deformation_spec(field, spec) for spec in args.q]
            print(cmd_table(field, defs, args.json))
        elif args.command == "report":
            field = parse_field_spec(args.field)
            d = parse_deformation_spec(field, args.q)
            print(cmd_report(field, d, args.json))
        elif args.command == "atlas":
            count = cmd_atlas(args.max, args.out)
            print(f"wrote {count} entries to {args.out}")
        elif args.command == "intderiv":
            cmd_intderiv(args.spec, sys.stdout)
    except QDerivError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
