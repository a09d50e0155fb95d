"""Search blow-up presentations for every catalog surface and write data/catalog.json.

Candidate root sets are drawn from the positive roots ``e_i - e_j``,
``e_0 - e_i - e_j - e_k`` and ``2e_0 - (six e_i)``.  A set is kept when its
pairwise intersections lie in {0, 1}, it is linearly independent, its Dynkin
type and line count match the requested entry, and ``select_fibration``
reproduces the tabulated fibration.  Candidates are tried simplest first
(infinitely-near conditions before collinearity before conics) and the first
survivor is stored.

Run from the repository root:  python scripts/discover_catalog.py
"""

from __future__ import annotations

import itertools
import json
import sys
from pathlib import Path

from duval_cylinders.catalog import CATALOG_PATH, PRESCRIBED, catalog_keys, entry_to_json, expected_for
from duval_cylinders.errors import DuValError
from duval_cylinders.fibration import select_fibration
from duval_cylinders.lattice import DivisorClass
from duval_cylinders.surface import build_surface, dynkin_type

# Line counts of weak del Pezzo surfaces by (degree, type), from the classical tables;
# used only to reject unrealizable root configurations during the search.
KNOWN_LINES = {
    (3, "A1"): 21, (3, "2A1"): 16, (3, "A2"): 15, (3, "3A1"): 12, (3, "A2+A1"): 11,
    (3, "A3"): 10, (3, "4A1"): 9, (3, "A2+2A1"): 8, (3, "A3+A1"): 7, (3, "2A2"): 7,
    (3, "A4"): 6, (3, "D4"): 6, (3, "2A2+A1"): 5, (3, "A3+2A1"): 5, (3, "A4+A1"): 4,
    (3, "A5"): 3, (3, "D5"): 3,
    (4, "A1"): 12, (4, "A2"): 8, (4, "3A1"): 6, (4, "A2+A1"): 6, (4, "4A1"): 4,
    (4, "A2+2A1"): 4, (4, "A3+A1"): 3, (4, "A4"): 3, (4, "D4"): 2,
    (5, "A1"): 7, (5, "2A1"): 5, (5, "A2"): 4, (5, "A2+A1"): 3, (5, "A3"): 2,
    (6, "2A1"): 2, (6, "A2"): 2, (7, "A1"): 2,
}


def positive_roots(k: int) -> list[tuple[int, ...]]:
    out = []
    for i, j in itertools.combinations(range(1, k + 1), 2):
        v = [0] * (k + 1)
        v[i], v[j] = 1, -1
        out.append(tuple(v))
    for trip in itertools.combinations(range(1, k + 1), 3):
        v = [1] + [0] * k
        for i in trip:
            v[i] = -1
        out.append(tuple(v))
    if k >= 6:
        for six in itertools.combinations(range(1, k + 1), 6):
            v = [2] + [0] * k
            for i in six:
                v[i] = -1
            out.append(tuple(v))
    return out


def ipair(a, b) -> int:
    return a[0] * b[0] - sum(x * y for x, y in zip(a[1:], b[1:]))


def root_sets(roots, size):
    def rec(start, chosen):
        if len(chosen) == size:
            yield list(chosen)
            return
        for idx in range(start, len(roots)):
            r = roots[idx]
            if all(ipair(r, c) in (0, 1) for c in chosen):
                chosen.append(r)
                yield from rec(idx + 1, chosen)
                chosen.pop()

    yield from rec(0, [])


def rank_of(label: str) -> int:
    total = 0
    for part in label.split("+"):
        mult = 1
        digits = ""
        while part[0].isdigit():
            digits += part[0]
            part = part[1:]
        if digits:
            mult = int(digits)
        total += mult * int(part[1:])
    return total


def search(degree: int, dynkin: str, lines: int | None, expected) -> list[list[int]]:
    k = 9 - degree
    roots = sorted(positive_roots(k), key=lambda v: (sum(1 for x in v if x), [-x for x in v]))
    for combo in root_sets(roots, rank_of(dynkin)):
        classes = [DivisorClass(c) for c in combo]
        try:
            if dynkin_type(classes) != dynkin:
                continue
            surface = build_surface(degree, classes)
        except DuValError:
            continue
        want = lines if lines is not None else KNOWN_LINES.get((degree, dynkin))
        if want is not None and len(surface.minus_one) != want:
            continue
        try:
            fib = select_fibration(surface, expected=expected, use_catalog=False)
        except DuValError:
            continue
        if fib.signature() != expected:
            continue
        return [list(c) for c in sorted(combo, reverse=True)]
    raise SystemExit(f"no presentation found for degree {degree} {dynkin} ({lines} lines)")


def main() -> None:
    entries = []
    for degree, dynkin, variant, lines in catalog_keys():
        expected = expected_for(degree, dynkin, variant)
        if (degree, dynkin, variant) in PRESCRIBED:
            roots = PRESCRIBED[(degree, dynkin, variant)]
        else:
            roots = search(degree, dynkin, lines, expected)
        entries.append(entry_to_json(degree, dynkin, variant, lines, roots))
        print(degree, dynkin, variant, roots, file=sys.stderr)
    Path(CATALOG_PATH).write_text(json.dumps(entries, indent=1) + "\n")


if __name__ == "__main__":
    main()
