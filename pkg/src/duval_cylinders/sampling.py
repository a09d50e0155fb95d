"""Seeded rejection sampling of ample classes."""

from __future__ import annotations

import random
from typing import Iterator

from duval_cylinders.lattice import DivisorClass
from duval_cylinders.surface import ClassOnS, SurfaceModel, anticanonical, is_ample, mumford_pullback

DEFAULT_BOX = 4
MAX_TRIES = 10_000


def random_ample(surface: SurfaceModel, rng: random.Random, box: int = DEFAULT_BOX) -> ClassOnS:
    """``t (-K) + v`` with ``t`` in ``1..box`` and ``v`` an integer vector in ``[-box, box]``,
    projected orthogonally to the roots and kept only if ample.

    The ``-K`` shift keeps the acceptance rate usable in low degree, where the
    ample cone is a thin slice of the box.
    """
    minus_k = anticanonical(surface).rep
    for _ in range(MAX_TRIES):
        t = rng.randint(1, box)
        v = DivisorClass([rng.randint(-box, box) for _ in range(surface.k + 1)])
        H = mumford_pullback(surface, minus_k * t + v)
        if is_ample(surface, H):
            return H
    raise RuntimeError(f"no ample class found in {MAX_TRIES} draws")


def ample_stream(surface: SurfaceModel, seed: int, box: int = DEFAULT_BOX) -> Iterator[ClassOnS]:
    rng = random.Random(seed)
    while True:
        yield random_ample(surface, rng, box)
