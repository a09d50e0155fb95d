import pytest

from conftest import cls, e
from duval_cylinders.catalog import catalog_surface
from duval_cylinders.errors import FibrationError
from duval_cylinders.fibration import I1, I2, II, FibrationData, decompose_fibers, find_fibrations, select_fibration, valid_fibrations
from duval_cylinders.lattice import canonical_class, pair
from duval_cylinders.surface import build_surface

F_EXAMPLE = cls(1, -1, 0, 0, 0, 0, 0)
S_EXAMPLE = cls(0, 1, -1, 0, 0, 0, 0)


@pytest.fixture(scope="module")
def example():
    return catalog_surface(3, "A2+2A1")


def test_example_candidate_listed(example):
    assert (F_EXAMPLE, S_EXAMPLE) in find_fibrations(example)


def test_ruling_of_one_point_blowup():
    smooth = build_surface(8, [])
    assert (cls(1, -1), e(1, 1)) in find_fibrations(smooth)
    fib = decompose_fibers(smooth, cls(1, -1), e(1, 1))
    assert fib.fibers == () and fib.rst == (0, 0, 0) and fib.n == 1


def test_example_decomposition(example):
    fib = decompose_fibers(example, F_EXAMPLE, S_EXAMPLE)
    assert isinstance(fib, FibrationData)
    assert fib.n == 2 and fib.rst == (2, 0, 1)
    assert sorted(fib.alpha) == [1, 2] and fib.gamma == (2,)
    double = fib.fibers[2]
    assert double.kind == II
    got = [(c.cls, c.multiplicity) for c in double.components]
    assert got == [(cls(0, 0, 1, -1, 0, 0, 0), 1), (cls(1, -1, -1, -1, 0, 0, 0), 1), (e(6, 3), 2)]


def test_four_a1_sections_and_stray_root():
    surface = catalog_surface(3, "4A1")
    f = cls(1, 0, 0, -1, 0, 0, 0)
    near, far = cls(1, 0, 0, 0, -1, -1, -1), cls(1, -1, -1, 0, 0, 0, -1)
    pairs = find_fibrations(surface)
    assert (f, near) in pairs and (f, far) in pairs
    failure = decompose_fibers(surface, f, near)
    assert isinstance(failure, str) and "stray" in failure
    relaxed = decompose_fibers(surface, f, near, strict=False)
    assert relaxed.stray == (far,)
    with pytest.raises(FibrationError):
        select_fibration(surface)


def test_two_a1_eight_lines_row():
    fib = select_fibration(catalog_surface(4, "2A1", "8 lines"))
    assert fib.n == 1 and fib.rst == (1, 1, 0)
    assert fib.alpha == (2,) and (fib.beta, fib.beta_prime) == ((1,), (1,))


def test_a5_row():
    fib = select_fibration(catalog_surface(3, "A5"))
    assert fib.rst == (0, 1, 0) and (fib.beta, fib.beta_prime) == ((4,), (1,))


def test_invariants_on_every_valid_fibration(surfaces):
    seen = 0
    for _, surface in surfaces:
        K = canonical_class(surface.k)
        for fib in valid_fibrations(surface):
            seen += 1
            assert pair(fib.fiber_class, fib.section) == 1
            assert pair(K, K) == 8 - sum(fib.alpha) - sum(fib.beta) - sum(fib.beta_prime) - sum(fib.gamma)
            kinds = [f.kind for f in fib.fibers]
            assert kinds == sorted(kinds, key=[I1, I2, II].index)
            for fibre in fib.fibers:
                assert fibre.class_sum(surface.k) == fib.fiber_class
                assert all(c.self_int in (-1, -2) for c in fibre.components)
                assert all(c.multiplicity == 1 for c in fibre.components if pair(c.cls, fib.section) > 0)
                assert len(fibre.components) == sum(fibre.params) + 1
                if fibre.kind == I1:
                    ends = fibre.components[0], fibre.components[-1]
                    assert all(c.self_int == -1 for c in ends)
                    assert all(c.self_int == -2 and c.multiplicity == 1 for c in fibre.components[1:-1])
                if fibre.kind == I2:
                    assert fibre.params[0] >= fibre.params[1]
                if fibre.kind == II:
                    assert fibre.terminal.multiplicity == 2
            every_root = set(fib.component_classes()) | {fib.section}
            assert all(r in every_root for r in surface.roots)
    assert seen > 40
