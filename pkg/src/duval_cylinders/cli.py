"""Command-line front end; every subcommand writes JSON.

Exit codes: 0 on success, 1 when a requested check fails, 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional

from duval_cylinders.catalog import find_entry, load_catalog, regenerate_table
from duval_cylinders.cylinder import CylinderCertificate, construct_cylinder, construction_basis, fibration_for
from duval_cylinders.errors import DuValError
from duval_cylinders.fibration import decompose_fibers
from duval_cylinders.lattice import DivisorClass
from duval_cylinders.sampling import ample_stream
from duval_cylinders.surface import ClassOnS, SurfaceModel, mumford_pullback
from duval_cylinders.verify import verify_certificate


class UsageError(Exception):
    pass


def _parse_surface_label(label: str, catalog: Optional[Path]) -> SurfaceModel:
    parts = label.split("/", 2)
    if len(parts) < 2:
        raise UsageError(f"surface label {label!r} is not d/DYNKIN[/variant]")
    try:
        degree = int(parts[0])
    except ValueError as exc:
        raise UsageError(f"bad degree in {label!r}") from exc
    variant = parts[2] if len(parts) == 3 else None
    try:
        return find_entry(degree, parts[1], variant, catalog).surface()
    except (KeyError, ValueError) as exc:
        raise UsageError(str(exc.args[0])) from exc


def _surface_from_json(data: dict) -> SurfaceModel:
    return SurfaceModel.from_json(data)


def _load_surface(args, fallback: Optional[dict] = None) -> SurfaceModel:
    if getattr(args, "surface", None):
        return _parse_surface_label(args.surface, args.catalog)
    if getattr(args, "input", None):
        return _surface_from_json(json.loads(Path(args.input).read_text()))
    if fallback is not None:
        return _surface_from_json(fallback)
    raise UsageError("give --surface d/DYNKIN[/variant] or --input FILE")


def _parse_H(text: str, surface: SurfaceModel) -> ClassOnS:
    """A list like ``[1, 1, -1/2]``: ``k+1`` entries are an e-basis class, ``rho`` entries are
    coordinates in the construction basis."""
    tokens = [t.strip().strip('"') for t in text.strip().strip("[]").split(",")]
    try:
        values = [Fraction(t) for t in tokens if t]
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"--H must be a list of rationals, got {text!r}") from exc
    if len(values) == surface.k + 1:
        return mumford_pullback(surface, DivisorClass(values))
    basis = construction_basis(surface)
    if len(values) == len(basis):
        total = DivisorClass.zero(surface.k)
        for x, cls in zip(values, basis):
            total = total + cls * x
        return mumford_pullback(surface, total)
    raise UsageError(f"--H needs {surface.k + 1} e-basis or {len(basis)} basis coordinates, got {len(values)}")


def _emit(payload, args) -> None:
    text = json.dumps(payload, indent=2)
    if getattr(args, "out", None):
        Path(args.out).write_text(text + "\n")
    else:
        print(text)


def cmd_classify(args) -> int:
    _emit(_load_surface(args).to_json(), args)
    return 0


def cmd_curves(args) -> int:
    surface = _load_surface(args)
    _emit(
        {
            "minus_one": [c.to_json() for c in surface.minus_one],
            "minus_two": [c.to_json() for c in surface.roots],
        },
        args,
    )
    return 0


def cmd_fibration(args) -> int:
    surface = _load_surface(args)
    _emit(fibration_for(surface).to_json(), args)
    return 0


def cmd_table(args) -> int:
    checks = regenerate_table()
    rows = [
        {
            "surface": c.entry.label,
            "expected": c.entry.to_json()["expected"],
            "computed": c.computed.to_json() if c.computed is not None else None,
            "match": c.match,
        }
        for c in checks
    ]
    _emit({"rows": rows, "all_match": all(c.match for c in checks)}, args)
    return 0 if all(c.match for c in checks) else 1


def cmd_catalog(args) -> int:
    _emit([e.to_json() for e in load_catalog(args.catalog)], args)
    return 0


def cmd_cylinder(args) -> int:
    surface = _load_surface(args)
    if not args.H:
        raise UsageError("--H is required")
    H = _parse_H(args.H, surface)
    cert = construct_cylinder(surface, H)
    payload = cert.to_json()
    payload["surface"] = surface.to_json()
    payload["H"] = H.rep.to_json()
    _emit(payload, args)
    return 0


def _verify(surface: SurfaceModel, H: ClassOnS, cert: CylinderCertificate):
    fib = decompose_fibers(surface, cert.fiber_class, cert.section, strict=False)
    if isinstance(fib, str):
        raise UsageError(f"certificate fibration is not usable: {fib}")
    return verify_certificate(surface, fib, H, cert)


def cmd_verify(args) -> int:
    if not args.certificate:
        raise UsageError("--certificate FILE is required")
    data = json.loads(Path(args.certificate).read_text())
    surface = _load_surface(args, fallback=data.get("surface"))
    if args.H:
        H = _parse_H(args.H, surface)
    elif "H" in data:
        H = mumford_pullback(surface, DivisorClass.from_json(data["H"]))
    else:
        raise UsageError("no H: pass --H or use a certificate written by the cylinder command")
    report = _verify(surface, H, CylinderCertificate.from_json(data))
    _emit(report.to_json(), args)
    return 0 if report.accepted else 1


def _batch_one(entry_label: str, surface: SurfaceModel, count: int, seed: int) -> list[dict]:
    out = []
    stream = ample_stream(surface, seed)
    for index in range(count):
        H = next(stream)
        item = {"surface": entry_label, "index": index, "H": H.rep.to_json()}
        try:
            cert = construct_cylinder(surface, H)
            report = _verify(surface, H, cert)
            item.update({"lemma": cert.lemma, "accepted": report.accepted, "failures": report.failures})
        except DuValError as exc:
            item.update({"lemma": None, "accepted": False, "failures": [f"{type(exc).__name__}: {exc}"]})
        out.append(item)
    return out


def cmd_batch(args) -> int:
    count = args.count
    if args.surface or args.input:
        targets = [(args.surface or args.input, _load_surface(args))]
    else:
        targets = [(e.label, e.surface()) for e in load_catalog(args.catalog)]
    items = []
    for label, surface in targets:
        items += _batch_one(label, surface, count, args.seed)
    failed = sum(not item["accepted"] for item in items)
    _emit({"seed": args.seed, "count": len(items), "failed": failed, "items": items}, args)
    return 0 if failed == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="duval-cylinders", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, surface=True):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        p.add_argument("--out", help="write JSON here instead of standard output")
        p.add_argument("--catalog", type=Path, help="catalog JSON file to look surfaces up in")
        if surface:
            p.add_argument("--surface", help="catalog label d/DYNKIN[/variant], e.g. 4/2A1/8")
            p.add_argument("--input", help="surface JSON with 'degree' and 'roots'")
        return p

    add("classify", cmd_classify, "degree, roots, (-1)-curves and Dynkin type")
    add("curves", cmd_curves, "the (-1)- and (-2)-curves")
    add("fibration", cmd_fibration, "the chosen P^1-fibration and its singular fibres")
    add("table", cmd_table, "recompute the fibration table over the catalog", surface=False)
    add("catalog", cmd_catalog, "dump the catalog", surface=False)
    p = add("cylinder", cmd_cylinder, "construct a cylinder certificate for an ample H")
    p.add_argument("--H", help="list of rationals: e-basis class or construction coordinates")
    p = add("verify", cmd_verify, "check a certificate")
    p.add_argument("--certificate", help="certificate JSON written by the cylinder command")
    p.add_argument("--H", help="override the class stored in the certificate")
    p = add("batch", cmd_batch, "construct and verify for seeded random ample classes")
    p.add_argument("--count", "--n", type=int, default=10, help="classes per surface")
    p.add_argument("--seed", type=int, default=0)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, DuValError, KeyError, json.JSONDecodeError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
