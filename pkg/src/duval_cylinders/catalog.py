"""Built-in Du Val del Pezzo surfaces of degree 3..7 with Picard rank > 1.

Each entry stores a blow-up presentation (the root classes) and the expected
fibration parameters.  The expectations are generated from ``TABLE_ROWS``,
one parametric row per type family, expanded over the degrees where the row
applies; ``data/catalog.json`` stores the expansion and the presentations.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Callable, Optional

from duval_cylinders.errors import DuValError
from duval_cylinders.lattice import DivisorClass

CATALOG_PATH = Path(__file__).parent / "data" / "catalog.json"

Signature = tuple  # (n, (r, s, t), alpha, ((beta, beta'), ...), gamma)


def _sig(n, rst, alpha=(), betas=(), gamma=()) -> Signature:
    return (n, tuple(rst), tuple(sorted(alpha)), tuple(sorted(betas)), tuple(sorted(gamma)))


@dataclass(frozen=True)
class TableRow:
    dynkin: str
    degrees: tuple[int, ...]
    variant: Optional[str]
    row: Callable[[int], Signature]


# Every row also satisfies d = 8 - (alpha + beta + beta' + gamma), which fixes the degrees.
TABLE_ROWS: tuple[TableRow, ...] = (
    TableRow("A1", (6,), "3 lines", lambda d: _sig(1, (0, 1, 0), betas=[(1, 1)])),
    TableRow("A1", (3, 4, 5, 6, 7), None, lambda d: _sig(2, (8 - d, 0, 0), [1] * (8 - d))),
    TableRow("2A1", (4,), "8 lines", lambda d: _sig(1, (1, 1, 0), [2], [(1, 1)])),
    TableRow("2A1", (3, 4, 5, 6), None, lambda d: _sig(2, (7 - d, 0, 0), [1] * (6 - d) + [2])),
    TableRow("A2", (3, 4, 5, 6), None, lambda d: _sig(2, (6 - d, 1, 0), [1] * (6 - d), [(1, 1)])),
    TableRow("3A1", (3, 4), None, lambda d: _sig(2, (6 - d, 0, 0), [1] * (4 - d) + [2, 2])),
    TableRow("A2+A1", (3, 4, 5), None, lambda d: _sig(2, (6 - d, 0, 0), [1] * (5 - d) + [3])),
    TableRow("A3", (4,), "4 lines", lambda d: _sig(2, (0, 2, 0), betas=[(1, 1), (1, 1)])),
    TableRow("A3", (3, 4, 5), None, lambda d: _sig(2, (5 - d, 1, 0), [1] * (5 - d), [(2, 1)])),
    TableRow("4A1", (4,), None, lambda d: _sig(1, (0, 0, 2), gamma=[2, 2])),
    TableRow("A2+2A1", (3, 4), None, lambda d: _sig(2, (5 - d, 0, 1), [1] * (4 - d) + [2], gamma=[2])),
    TableRow("2A2", (3,), None, lambda d: _sig(2, (1, 1, 0), [3], [(1, 1)])),
    TableRow("A3+A1", (3, 4), None, lambda d: _sig(2, (5 - d, 0, 0), [1] * (4 - d) + [4])),
    TableRow("A4", (3, 4), None, lambda d: _sig(2, (4 - d, 1, 0), [1] * (4 - d), [(3, 1)])),
    TableRow("D4", (3, 4), None, lambda d: _sig(2, (4 - d, 1, 0), [1] * (4 - d), [(2, 2)])),
    TableRow("2A2+A1", (3,), None, lambda d: _sig(2, (1, 0, 1), [3], gamma=[2])),
    TableRow("A3+2A1", (3,), None, lambda d: _sig(2, (1, 0, 2), [1], gamma=[2, 2])),
    TableRow("A4+A1", (3,), None, lambda d: _sig(2, (1, 0, 1), [2], gamma=[3])),
    TableRow("A5", (3,), None, lambda d: _sig(2, (0, 1, 0), betas=[(4, 1)])),
    TableRow("D5", (3,), None, lambda d: _sig(2, (4 - d, 0, 1), [1] * (4 - d), gamma=[4])),
)

# Generic rows at degrees where a special variant exists, labelled by line count.
GENERIC_VARIANT = {(6, "A1"): "4 lines", (4, "2A1"): "9 lines", (4, "A3"): "5 lines"}
# Surfaces outside the table that the cylinder construction treats separately.
EXCEPTIONAL = ((3, "4A1"),)

# Presentations written out explicitly rather than found by search.
PRESCRIBED: dict[tuple, list[list[int]]] = {
    (3, "A2+2A1", None): [[1, -1, -1, -1, 0, 0, 0], [0, 1, -1, 0, 0, 0, 0], [0, 0, 1, -1, 0, 0, 0], [0, 0, 0, 0, 1, -1, 0]],
    (3, "4A1", None): [[1, 0, 0, 0, -1, -1, -1], [1, -1, 0, -1, -1, 0, 0], [1, 0, -1, -1, 0, -1, 0], [1, -1, -1, 0, 0, 0, -1]],
    (4, "2A1", "8 lines"): [[1, -1, -1, -1, 0, 0], [0, 0, 0, 0, 1, -1]],
    (6, "A1", "3 lines"): [[1, -1, -1, -1]],
    (6, "A1", "4 lines"): [[0, 1, -1, 0]],
}

VARIANT_LINES = {"3 lines": 3, "4 lines": 4, "5 lines": 5, "8 lines": 8, "9 lines": 9}


def catalog_keys() -> list[tuple[int, str, Optional[str], Optional[int]]]:
    """``(degree, dynkin, variant, stated line count)`` for every entry, in catalog order."""
    keys = []
    for row in TABLE_ROWS:
        for d in row.degrees:
            variant = row.variant or GENERIC_VARIANT.get((d, row.dynkin))
            keys.append((d, row.dynkin, variant, VARIANT_LINES.get(variant)))
    for d, dynkin in EXCEPTIONAL:
        keys.append((d, dynkin, None, None))
    keys.sort(key=lambda key: (key[0], key[1], key[2] or ""))
    return keys


def expected_for(degree: int, dynkin: str, variant: Optional[str]) -> Optional[Signature]:
    for row in TABLE_ROWS:
        if row.dynkin != dynkin or degree not in row.degrees:
            continue
        row_variant = row.variant or GENERIC_VARIANT.get((degree, dynkin))
        if row_variant == variant:
            return row.row(degree)
    return None


def _sig_to_json(sig: Optional[Signature]) -> Optional[dict]:
    if sig is None:
        return None
    n, rst, alpha, betas, gamma = sig
    return {
        "n": n,
        "rst": list(rst),
        "alpha": list(alpha),
        "beta": [b for b, _ in betas],
        "beta_prime": [bp for _, bp in betas],
        "gamma": list(gamma),
    }


def _sig_from_json(data: Optional[dict]) -> Optional[Signature]:
    if data is None:
        return None
    return _sig(data["n"], data["rst"], data["alpha"], list(zip(data["beta"], data["beta_prime"])), data["gamma"])


def entry_to_json(degree, dynkin, variant, lines, roots) -> dict:
    from duval_cylinders.surface import build_surface

    classes = [DivisorClass(r) for r in roots]
    surface = build_surface(degree, classes)
    return {
        "degree": degree,
        "dynkin": dynkin,
        "variant": variant,
        "roots": [c.to_json() for c in classes],
        "lines": len(surface.minus_one),
        "stated_lines": lines,
        "expected": _sig_to_json(expected_for(degree, dynkin, variant)),
    }


@dataclass(frozen=True)
class CatalogEntry:
    degree: int
    dynkin: str
    variant: Optional[str]
    roots: tuple[DivisorClass, ...]
    lines: int
    expected_line_count: Optional[int]
    expected: Optional[Signature]

    @property
    def label(self) -> str:
        base = f"{self.degree}/{self.dynkin}"
        return f"{base}/{self.variant}" if self.variant else base

    @property
    def exceptional(self) -> bool:
        return (self.degree, self.dynkin) in EXCEPTIONAL

    def surface(self):
        return _surface_for(self)

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "dynkin": self.dynkin,
            "variant": self.variant,
            "roots": [c.to_json() for c in self.roots],
            "lines": self.lines,
            "stated_lines": self.expected_line_count,
            "expected": _sig_to_json(self.expected),
        }

    @classmethod
    def from_json(cls, data: dict) -> "CatalogEntry":
        return cls(
            degree=data["degree"],
            dynkin=data["dynkin"],
            variant=data["variant"],
            roots=tuple(DivisorClass.from_json(r) for r in data["roots"]),
            lines=data["lines"],
            expected_line_count=data["stated_lines"],
            expected=_sig_from_json(data["expected"]),
        )


@lru_cache(maxsize=None)
def _load(path: str) -> tuple[CatalogEntry, ...]:
    data = json.loads(Path(path).read_text())
    return tuple(CatalogEntry.from_json(item) for item in data)


def load_catalog(path: Optional[Path] = None) -> tuple[CatalogEntry, ...]:
    return _load(str(path or CATALOG_PATH))


@lru_cache(maxsize=None)
def _surface_for(entry: CatalogEntry):
    from duval_cylinders.surface import build_surface

    surface = build_surface(entry.degree, entry.roots)
    if surface.dynkin != entry.dynkin:
        raise DuValError(f"catalog roots for {entry.label} give {surface.dynkin}")
    return surface


def _normalise_variant(variant: Optional[str]) -> Optional[str]:
    if variant is None:
        return None
    text = variant.strip().lower().replace("lines", "").replace("line", "").strip()
    if not text or text == "default":
        return None
    return f"{int(text)} lines"


def find_entry(
    degree: int, dynkin: str, variant: Optional[str] = None, path: Optional[Path] = None
) -> CatalogEntry:
    """Catalog lookup; without a variant, the generic row of the type is returned."""
    wanted = _normalise_variant(variant)
    matches = [e for e in load_catalog(path) if e.degree == degree and e.dynkin == dynkin]
    if not matches:
        raise KeyError(f"no catalog surface of degree {degree} and type {dynkin}")
    if wanted is None:
        generic = GENERIC_VARIANT.get((degree, dynkin))
        if len(matches) == 1:
            return matches[0]
        return next(e for e in matches if e.variant == generic)
    for e in matches:
        if e.variant == wanted:
            return e
    raise KeyError(f"no variant {variant!r} for degree {degree} {dynkin}")


def catalog_surface(degree: int, dynkin: str, variant: Optional[str] = None):
    return find_entry(degree, dynkin, variant).surface()


def entry_for_surface(surface) -> Optional[CatalogEntry]:
    """The catalog entry with the same degree, type and number of (-1)-curves."""
    for e in load_catalog():
        if e.degree == surface.degree and e.dynkin == surface.dynkin and e.lines == len(surface.minus_one):
            return e
    return None


def expected_signature(surface) -> Optional[Signature]:
    entry = entry_for_surface(surface)
    return entry.expected if entry else None


def is_two_a1_eight_lines(surface) -> bool:
    return surface.degree == 4 and surface.dynkin == "2A1" and len(surface.minus_one) == 8


def is_four_a1_cubic(surface) -> bool:
    return surface.degree == 3 and surface.dynkin == "4A1"


@dataclass(frozen=True)
class TableCheck:
    entry: CatalogEntry
    computed: Optional[object]
    match: bool


def regenerate_table() -> list[TableCheck]:
    """Recompute the fibration of every tabulated surface and compare parameters."""
    from duval_cylinders.fibration import select_fibration

    out = []
    for entry in load_catalog():
        if entry.expected is None:
            continue
        try:
            fib = select_fibration(entry.surface())
        except DuValError:
            out.append(TableCheck(entry, None, False))
            continue
        out.append(TableCheck(entry, fib, fib.signature() == entry.expected))
    return out
