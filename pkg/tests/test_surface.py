from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import cls, e
from duval_cylinders.catalog import catalog_surface
from duval_cylinders.errors import InvalidRootsError, OutOfScopeError, RankMismatchError
from duval_cylinders.lattice import DivisorClass, pair
from duval_cylinders.sampling import random_ample
from duval_cylinders.surface import (
    ClassOnS,
    SurfaceModel,
    anticanonical,
    build_surface,
    dynkin_type,
    is_ample,
    mumford_pullback,
)

EXAMPLE_ROOTS = [cls(1, -1, -1, -1, 0, 0, 0), cls(0, 1, -1, 0, 0, 0, 0), cls(0, 0, 1, -1, 0, 0, 0), cls(0, 0, 0, 0, 1, -1, 0)]
FOUR_A1_ROOTS = [cls(1, 0, 0, 0, -1, -1, -1), cls(1, -1, 0, -1, -1, 0, 0), cls(1, 0, -1, -1, 0, -1, 0), cls(1, -1, -1, 0, 0, 0, -1)]


def test_dynkin_of_cubic_examples():
    assert build_surface(3, EXAMPLE_ROOTS).dynkin == "A2+2A1"
    assert build_surface(3, FOUR_A1_ROOTS).dynkin == "4A1"


@pytest.mark.parametrize(
    "roots,label",
    [([cls(0, 1, -1, 0)], "A1"), ([cls(0, 1, -1, 0), cls(0, 0, 1, -1)], "A2")],
)
def test_small_dynkin(roots, label):
    assert dynkin_type(roots) == label


def test_e6_shape_rejected():
    chain = [cls(*([0] * i + [1, -1] + [0] * (5 - i))) for i in range(1, 6)]
    with pytest.raises(InvalidRootsError, match="type E"):
        dynkin_type(chain + [cls(1, -1, -1, -1, 0, 0, 0)])


def test_picard_rank_one_rejected():
    # degree 6 with A2+A1 has class group of rank one
    with pytest.raises(OutOfScopeError):
        build_surface(6, [cls(0, 1, -1, 0), cls(0, 0, 1, -1), cls(1, -1, -1, -1)])
    # the degree 8 root e1 - e2 does not even live on the one-point blow-up
    with pytest.raises(ValueError):
        build_surface(8, [cls(0, 1, -1)])


@pytest.mark.parametrize("degree", [2, 9])
def test_degree_range(degree):
    with pytest.raises(OutOfScopeError):
        build_surface(degree, [])


def test_bad_roots_rejected():
    with pytest.raises(InvalidRootsError):
        build_surface(4, [cls(0, 1, 0, 0, 0, 0)])
    with pytest.raises(InvalidRootsError):
        build_surface(4, [cls(0, 1, -1, 0, 0, 0), cls(0, 1, -1, 0, 0, 0)])
    with pytest.raises(RankMismatchError):
        build_surface(5, [cls(0, 1, -1)])


def test_pullback_of_e2_over_one_root():
    surface = build_surface(6, [cls(0, 1, -1, 0)])
    assert mumford_pullback(surface, e(3, 2)).rep == DivisorClass([0, Fraction(1, 2), Fraction(1, 2), 0])


def test_pullback_fixes_orthogonal_classes():
    surface = build_surface(6, [cls(0, 1, -1, 0)])
    c = cls(1, 0, 0, -1)
    assert mumford_pullback(surface, c).rep == c


def test_pullback_on_example_is_orthogonal():
    surface = build_surface(3, EXAMPLE_ROOTS)
    out = mumford_pullback(surface, e(6, 6)).rep
    assert all(pair(out, r) == 0 for r in EXAMPLE_ROOTS)


def test_ampleness_examples(surfaces):
    for _, surface in surfaces:
        assert is_ample(surface, anticanonical(surface))
        assert not is_ample(surface, ClassOnS(DivisorClass.zero(surface.k)))


def test_pulled_back_line_is_not_ample():
    smooth = build_surface(3, [])
    assert not is_ample(smooth, ClassOnS(e(6, 6)))
    # e6 is itself a line on the A2+2A1 cubic, so its pullback pairs negatively with it
    surface = build_surface(3, EXAMPLE_ROOTS)
    H = mumford_pullback(surface, e(6, 6))
    assert min(pair(H.rep, line) for line in surface.minus_one) <= 0
    assert not is_ample(surface, H)


def test_pulled_back_line_can_be_ample_in_rank_two():
    # on the A5 cubic every line is a multiple of -K in the class group
    surface = catalog_surface(3, "A5")
    H = mumford_pullback(surface, surface.minus_one[0])
    assert H.rep * 3 == anticanonical(surface).rep
    assert is_ample(surface, H)


@pytest.mark.parametrize(
    "degree,dynkin,variant,lines",
    [(6, "A1", "3 lines", 3), (6, "A1", "4 lines", 4), (4, "2A1", "8 lines", 8),
     (4, "2A1", "9 lines", 9), (4, "A3", "4 lines", 4), (4, "A3", "5 lines", 5)],
)
def test_line_counts(degree, dynkin, variant, lines):
    assert len(catalog_surface(degree, dynkin, variant).minus_one) == lines


def test_smooth_cubic_has_27_lines():
    assert len(build_surface(3, []).minus_one) == 27


def test_json_round_trip():
    surface = build_surface(3, EXAMPLE_ROOTS)
    assert SurfaceModel.from_json(surface.to_json()) == surface
    bad = surface.to_json() | {"dynkin": "A3"}
    with pytest.raises(InvalidRootsError):
        SurfaceModel.from_json(bad)


@given(st.integers(0, 10_000), st.sampled_from(["3/A2+2A1", "4/A3/4", "5/A1", "3/D5", "6/A2"]))
def test_ample_cone_is_convex(seed, label):
    import random

    degree, dynkin, *variant = label.split("/")
    surface = catalog_surface(int(degree), dynkin, variant[0] if variant else None)
    rng = random.Random(seed)
    H1, H2 = random_ample(surface, rng), random_ample(surface, rng)
    assert is_ample(surface, H1 + H2)
