"""Weak del Pezzo surfaces given by their (-2)-curves, and the Du Val surface they resolve.

A surface is recorded as its degree ``d = 9 - k`` and the classes of its
(-2)-curves in ``Pic`` of the blow-up of P^2 at ``k`` points.  Everything else
(the (-1)-curves, the Dynkin type, the class group of the contracted surface)
is derived from that data.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from duval_cylinders.errors import InvalidRootsError, OutOfScopeError, RankMismatchError
from duval_cylinders.exact import SingularMatrixError, determinant, solve
from duval_cylinders.lattice import DivisorClass, canonical_class, enumerate_classes, gram_matrix, pair

MIN_DEGREE = 3
MAX_DEGREE = 8


@dataclass(frozen=True)
class ClassOnS:
    """A Q-divisor class on the singular surface, stored as its root-orthogonal lift."""

    rep: DivisorClass

    def __add__(self, other: "ClassOnS") -> "ClassOnS":
        return ClassOnS(self.rep + other.rep)

    def __sub__(self, other: "ClassOnS") -> "ClassOnS":
        return ClassOnS(self.rep - other.rep)

    def __mul__(self, scalar) -> "ClassOnS":
        return ClassOnS(self.rep * scalar)

    __rmul__ = __mul__

    def __neg__(self) -> "ClassOnS":
        return ClassOnS(-self.rep)


def _components(n: int, adjacent) -> list[list[int]]:
    seen: set[int] = set()
    comps = []
    for start in range(n):
        if start in seen:
            continue
        stack, comp = [start], []
        seen.add(start)
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in range(n):
                if w not in seen and adjacent(v, w):
                    seen.add(w)
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def _classify_tree(size: int, edges: list[tuple[int, int]]) -> str:
    """Dynkin letter+rank of a connected simple graph, or raise if not of type A or D."""
    if len(edges) != size - 1:
        raise InvalidRootsError("root graph contains a cycle")
    degree = Counter()
    for a, b in edges:
        degree[a] += 1
        degree[b] += 1
    if all(degree[v] <= 2 for v in range(size)):
        return f"A{size}"
    branch = [v for v in range(size) if degree[v] >= 3]
    if len(branch) != 1 or degree[branch[0]] != 3:
        raise InvalidRootsError("root graph is not a Dynkin diagram of type A or D")
    centre = branch[0]
    nbrs = {v: set() for v in range(size)}
    for a, b in edges:
        nbrs[a].add(b)
        nbrs[b].add(a)
    arms = []
    for start in nbrs[centre]:
        length, prev, cur = 1, centre, start
        while len(nbrs[cur]) == 2:
            nxt = next(iter(nbrs[cur] - {prev}))
            prev, cur = cur, nxt
            length += 1
        arms.append(length)
    arms.sort()
    if arms[0] == 1 and arms[1] == 1:
        return f"D{size}"
    raise InvalidRootsError(f"root graph of type E (arms {arms}) is not supported")


def dynkin_type(roots: Sequence[DivisorClass]) -> str:
    """Label such as ``"A2+2A1"``: components by decreasing rank, D before A at equal rank."""
    if not roots:
        return "A0"
    n = len(roots)
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if pair(roots[i], roots[j]) == 1]
    labels = []
    for comp in _components(n, lambda a, b: pair(roots[a], roots[b]) == 1 and a != b):
        index = {v: i for i, v in enumerate(comp)}
        local = [(index[a], index[b]) for a, b in edges if a in index and b in index]
        labels.append(_classify_tree(len(comp), local))
    counts = Counter(labels)
    order = sorted(counts, key=lambda lab: (-int(lab[1:]), lab[0] != "D"))
    return "+".join(lab if counts[lab] == 1 else f"{counts[lab]}{lab}" for lab in order)


@dataclass(frozen=True)
class SurfaceModel:
    """A weak del Pezzo surface of degree ``degree`` with the given (-2)-curves."""

    degree: int
    roots: tuple[DivisorClass, ...]
    minus_one: tuple[DivisorClass, ...]
    dynkin: str
    _root_gram: tuple = field(default=(), repr=False, compare=False)

    @property
    def k(self) -> int:
        return 9 - self.degree

    @property
    def canonical(self) -> DivisorClass:
        return canonical_class(self.k)

    @property
    def rho(self) -> int:
        """Picard rank of the Du Val surface: ``k + 1`` minus the number of roots."""
        return self.k + 1 - len(self.roots)

    @property
    def negative_curves(self) -> tuple[DivisorClass, ...]:
        return self.roots + self.minus_one

    @cached_property
    def conic_classes(self) -> tuple[DivisorClass, ...]:
        """Nef classes with ``f^2 = 0`` and ``f.K = -2`` (fibre classes of conic bundles)."""
        out = []
        for f in enumerate_classes(self.k, 0, -2):
            if all(pair(f, c) >= 0 for c in self.negative_curves):
                out.append(f)
        return tuple(out)

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "dynkin": self.dynkin,
            "roots": [r.to_json() for r in self.roots],
        }

    @classmethod
    def from_json(cls, data: dict) -> "SurfaceModel":
        roots = [DivisorClass.from_json(r) for r in data["roots"]]
        surface = build_surface(data["degree"], roots)
        if "dynkin" in data and data["dynkin"] != surface.dynkin:
            raise InvalidRootsError(f"stated Dynkin type {data['dynkin']} but roots give {surface.dynkin}")
        return surface


def validate_roots(k: int, roots: Sequence[DivisorClass]) -> None:
    K = canonical_class(k)
    for r in roots:
        if r.k != k:
            raise RankMismatchError(f"root {r} has k={r.k}, expected {k}")
        if not r.is_integral():
            raise InvalidRootsError(f"root {r} is not integral")
        if pair(r, r) != -2 or pair(r, K) != 0:
            raise InvalidRootsError(f"{r} is not a (-2)-class")
    for i, a in enumerate(roots):
        for b in roots[i + 1:]:
            if a == b:
                raise InvalidRootsError(f"root {a} listed twice")
            if pair(a, b) not in (0, 1):
                raise InvalidRootsError(f"roots {a} and {b} meet with multiplicity {pair(a, b)}")
    if roots and determinant(gram_matrix(roots)) == 0:
        raise InvalidRootsError("root classes are linearly dependent")


def build_surface(degree: int, roots: Iterable[DivisorClass]) -> SurfaceModel:
    """Validate the root data and derive the (-1)-curves and the Dynkin type."""
    roots = tuple(roots)
    if not MIN_DEGREE <= degree <= MAX_DEGREE:
        raise OutOfScopeError(f"degree {degree} outside {MIN_DEGREE}..{MAX_DEGREE}")
    k = 9 - degree
    validate_roots(k, roots)
    if k + 1 - len(roots) <= 1:
        raise OutOfScopeError("the contracted surface has Picard rank one")
    label = dynkin_type(roots)
    minus_one = tuple(
        e for e in enumerate_classes(k, -1, -1) if all(pair(e, r) >= 0 for r in roots)
    )
    gram = tuple(tuple(row) for row in gram_matrix(roots))
    return SurfaceModel(degree, roots, minus_one, label, gram)


def mumford_pullback(surface: SurfaceModel, c: DivisorClass) -> ClassOnS:
    """The unique ``c + sum t_j R_j`` orthogonal to every root."""
    if c.k != surface.k:
        raise RankMismatchError(f"class has k={c.k}, surface has k={surface.k}")
    roots = surface.roots
    if not roots:
        return ClassOnS(c)
    rhs = [-pair(c, r) for r in roots]
    try:
        t = solve(surface._root_gram or gram_matrix(roots), rhs)
    except SingularMatrixError as exc:  # excluded by validate_roots
        raise AssertionError("root Gram matrix is singular") from exc
    out = c
    for coeff, r in zip(t, roots):
        if coeff:
            out = out + r * coeff
    assert all(pair(out, r) == 0 for r in roots)
    return ClassOnS(out)


def is_root_orthogonal(surface: SurfaceModel, c: DivisorClass) -> bool:
    return all(pair(c, r) == 0 for r in surface.roots)


def is_ample(surface: SurfaceModel, H: ClassOnS) -> bool:
    """Kleiman test against the negative curves generating the effective cone.

    In degree <= 7 the cone of curves of the resolution is spanned by (-1)- and
    (-2)-curves; roots pair to zero with ``H``, so only (-1)-curves matter.  In
    degree 8 the ruling class must be added.
    """
    if not is_root_orthogonal(surface, H.rep):
        raise ValueError("H is not orthogonal to the roots")
    if any(pair(H.rep, e) <= 0 for e in surface.minus_one):
        return False
    if surface.degree == 8:
        return all(pair(H.rep, f) > 0 for f in surface.conic_classes)
    return True


def anticanonical(surface: SurfaceModel) -> ClassOnS:
    return ClassOnS(-surface.canonical)


def pairing_on_s(a: ClassOnS, b: ClassOnS) -> Fraction:
    return pair(a.rep, b.rep)
