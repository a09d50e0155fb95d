"""The odd unimodular lattice Z^{1,k} carrying Pic of a blow-up of P^2 at k points."""

from __future__ import annotations

import math
from functools import lru_cache
from itertools import permutations
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from duval_cylinders.errors import RankMismatchError

MAX_RANK = 8
SUPPORTED_INVARIANTS = {(-1, -1), (-2, 0), (0, -2)}


def _frac(x) -> Fraction:
    if isinstance(x, str):
        return Fraction(x.strip())
    return Fraction(x)


@dataclass(frozen=True)
class DivisorClass:
    """A Q-divisor class ``c_0 e_0 + c_1 e_1 + ... + c_k e_k``.

    Immutable; supports ``+``, ``-``, negation and multiplication by rationals.
    """

    coeffs: tuple[Fraction, ...]

    def __init__(self, coeffs: Iterable):
        values = tuple(_frac(c) for c in coeffs)
        if not values:
            raise ValueError("a divisor class needs at least the e_0 coefficient")
        if len(values) - 1 > MAX_RANK:
            raise ValueError(f"rank k={len(values) - 1} exceeds {MAX_RANK}")
        object.__setattr__(self, "coeffs", values)

    @property
    def k(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def zero(cls, k: int) -> "DivisorClass":
        return cls([0] * (k + 1))

    @classmethod
    def basis(cls, k: int, i: int) -> "DivisorClass":
        """The class ``e_i`` in rank ``k``."""
        if not 0 <= i <= k:
            raise IndexError(f"e_{i} does not exist for k={k}")
        return cls([1 if j == i else 0 for j in range(k + 1)])

    @classmethod
    def from_json(cls, data: dict) -> "DivisorClass":
        coeffs = data["coeffs"]
        if len(coeffs) != data["k"] + 1:
            raise RankMismatchError(f"k={data['k']} but {len(coeffs)} coefficients")
        return cls(coeffs)

    def to_json(self) -> dict:
        return {"k": self.k, "coeffs": [str(c) for c in self.coeffs]}

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def _check(self, other: "DivisorClass") -> None:
        if not isinstance(other, DivisorClass):
            raise TypeError(f"expected DivisorClass, got {type(other).__name__}")
        if other.k != self.k:
            raise RankMismatchError(f"rank mismatch: k={self.k} vs k={other.k}")

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        self._check(other)
        return DivisorClass(a + b for a, b in zip(self.coeffs, other.coeffs))

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        self._check(other)
        return DivisorClass(a - b for a, b in zip(self.coeffs, other.coeffs))

    def __neg__(self) -> "DivisorClass":
        return DivisorClass(-a for a in self.coeffs)

    def __mul__(self, scalar) -> "DivisorClass":
        s = _frac(scalar)
        return DivisorClass(s * a for a in self.coeffs)

    __rmul__ = __mul__

    def __lt__(self, other: "DivisorClass") -> bool:
        return self.coeffs < other.coeffs

    def __str__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mag = abs(c)
            lead = "" if mag == 1 else f"{mag}"
            sign = "-" if c < 0 else "+"
            terms.append((sign, f"{lead}e{i}"))
        if not terms:
            return "0"
        out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"DivisorClass({self})"


def pair(a: DivisorClass, b: DivisorClass) -> Fraction:
    """Intersection number ``a_0 b_0 - sum a_i b_i``."""
    a._check(b)
    ca, cb = a.coeffs, b.coeffs
    return ca[0] * cb[0] - sum((x * y for x, y in zip(ca[1:], cb[1:])), Fraction(0))


def canonical_class(k: int) -> DivisorClass:
    if not 0 <= k <= MAX_RANK:
        raise ValueError(f"k must be in 0..{MAX_RANK}, got {k}")
    return DivisorClass([-3] + [1] * k)


def sum_classes(classes: Iterable[DivisorClass], k: int) -> DivisorClass:
    total = DivisorClass.zero(k)
    for c in classes:
        total = total + c
    return total


def linear_combination(terms: Iterable[tuple], k: int) -> DivisorClass:
    """``sum coeff * cls`` over ``(coeff, cls)`` pairs."""
    total = DivisorClass.zero(k)
    for coeff, cls in terms:
        if coeff:
            total = total + cls * coeff
    return total


def _degree_bounds(k: int, self_int: int, k_pairing: int) -> tuple[int, int]:
    # With D = (d; m), sum m_i = -k_pairing - 3d and sum m_i^2 = d^2 - self_int.
    # Cauchy-Schwarz, (sum m)^2 <= k sum m^2, is the definiteness of K-perp in
    # coordinates: (9-k) d^2 + 6 k_pairing d + k_pairing^2 + k self_int <= 0.
    if k == 0:
        # Only d^2 = self_int and -3d = k_pairing remain.
        if k_pairing % 3:
            return (1, 0)
        d = -k_pairing // 3
        return (d, d)
    a = 9 - k
    b = 6 * k_pairing
    c = k_pairing * k_pairing + k * self_int
    disc = b * b - 4 * a * c
    if disc < 0:
        return (1, 0)
    root = math.isqrt(disc)
    lo = math.floor((-b - root - 1) / (2 * a)) - 1
    hi = math.ceil((-b + root + 1) / (2 * a)) + 1
    return (lo, hi)


def _compositions(count: int, total: int, square_total: int, bound: int) -> Iterable[tuple[int, ...]]:
    """Non-increasing integer tuples of length ``count`` with given sum and sum of squares."""

    def rec(remaining: int, s: int, sq: int, upper: int, prefix: tuple[int, ...]):
        if remaining == 0:
            if s == 0 and sq == 0:
                yield prefix
            return
        if sq < 0:
            return
        # Cauchy-Schwarz on what is left.
        if s * s > remaining * sq:
            return
        top = min(upper, math.isqrt(sq))
        low = -math.isqrt(sq)
        for m in range(top, low - 1, -1):
            # every later entry is <= m, so the rest sums to at most (remaining-1)*m
            if s - m > (remaining - 1) * m:
                break
            yield from rec(remaining - 1, s - m, sq - m * m, m, prefix + (m,))

    yield from rec(count, total, square_total, bound, ())


def _distinct_permutations(values: tuple[int, ...]) -> Iterable[tuple[int, ...]]:
    return set(permutations(values))


def enumerate_classes(k: int, self_int: int, k_pairing: int) -> list[DivisorClass]:
    """All integral classes with ``D^2 = self_int`` and ``D.K = k_pairing``.

    The solution set is finite because K-perp is negative definite for k <= 8;
    the result is sorted lexicographically by coefficient vector.
    """
    return list(_enumerate_cached(k, self_int, k_pairing))


@lru_cache(maxsize=None)
def _enumerate_cached(k: int, self_int: int, k_pairing: int) -> tuple[DivisorClass, ...]:
    if (self_int, k_pairing) not in SUPPORTED_INVARIANTS:
        raise ValueError(f"unsupported invariant pair {(self_int, k_pairing)}")
    if not 0 <= k <= MAX_RANK:
        raise ValueError(f"k must be in 0..{MAX_RANK}, got {k}")
    lo, hi = _degree_bounds(k, self_int, k_pairing)
    found: set[tuple[int, ...]] = set()
    for d in range(lo, hi + 1):
        total = -k_pairing - 3 * d
        squares = d * d - self_int
        if squares < 0:
            continue
        if k == 0:
            if total == 0 and squares == 0:
                found.add((d,))
            continue
        for shape in _compositions(k, total, squares, math.isqrt(squares)):
            for perm in _distinct_permutations(shape):
                found.add((d,) + perm)
    return tuple(DivisorClass(v) for v in sorted(found))


def gram_matrix(classes: Sequence[DivisorClass]) -> list[list[Fraction]]:
    return [[pair(a, b) for b in classes] for a in classes]
