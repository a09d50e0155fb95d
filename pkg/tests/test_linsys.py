from fractions import Fraction

import pytest

from duval_cylinders.catalog import catalog_surface, load_catalog
from duval_cylinders.errors import HypothesisError
from duval_cylinders.fibration import select_fibration, valid_fibrations
from duval_cylinders.lattice import canonical_class, pair
from duval_cylinders.linsys import applicable_deltas, delta_class, gamma_class, riemann_roch_value


def integer_rr(cls):
    """(1/2) D.(D - K) with plain integer arithmetic on the coefficient vector."""
    v = [int(x) for x in cls.coeffs]
    square = v[0] * v[0] - sum(x * x for x in v[1:])
    with_k = -3 * v[0] - sum(v[1:])
    return Fraction(square - with_k, 2)


@pytest.fixture(scope="module")
def a2_quintic():
    return select_fibration(catalog_surface(5, "A2"))


def test_index_one_bound(a2_quintic):
    fib = a2_quintic
    assert (fib.n, sum(fib.alpha), sum(fib.beta), sum(fib.gamma)) == (2, 1, 1, 0)
    assert delta_class(fib, 1).bound == 2
    assert delta_class(fib, 1, half=True).bound == 1


def test_half_class_needs_t_zero():
    fib = select_fibration(catalog_surface(3, "A2+2A1"))
    with pytest.raises(HypothesisError):
        delta_class(fib, 1, half=True)


def test_index_seven_without_correction():
    # alpha' = n + 1 exactly: nothing is added back and the bound is 0
    for entry in load_catalog():
        if entry.exceptional:
            continue
        fib = select_fibration(entry.surface())
        if (7, False) not in applicable_deltas(fib):
            continue
        running = 0
        for a in fib.alpha:
            running += a
            if running >= fib.n + 1:
                break
        delta = delta_class(fib, 7)
        assert delta.bound == 0 and delta.riemann_roch >= 0
        if running == fib.n + 1:
            assert delta.offset == 0
            return
    pytest.fail("no fibration with alpha' = n + 1 in the catalog")


def test_riemann_roch_is_independent_of_pairing(all_fibrations):
    for _, _, fib in all_fibrations:
        for index, half in applicable_deltas(fib):
            delta = delta_class(fib, index, half)
            if delta.cls.is_integral():
                assert delta.riemann_roch == integer_rr(delta.cls) == riemann_roch_value(delta.cls)


def test_offsets_outside_index_four_vanish(all_fibrations):
    for _, _, fib in all_fibrations:
        for index, half in applicable_deltas(fib):
            if index != 4:
                assert delta_class(fib, index, half).offset == 0, (index, half, fib.signature())


def test_index_four_offsets(all_fibrations):
    # beta = 2 is the only value where the closed form is the Riemann-Roch value
    seen = set()
    for _, _, fib in all_fibrations:
        if (4, False) in applicable_deltas(fib):
            beta, alpha = fib.beta[0], sum(fib.alpha)
            expected = {1: 1, 2: 0, 3: alpha, 4: 3 * alpha + 4}[beta]
            assert delta_class(fib, 4).offset == expected
            seen.add(beta)
    assert seen == {1, 2, 3, 4}


def test_beta_one_class_is_not_effective(all_fibrations):
    # E - E' with E.E' = 0: an effective member would contain E and leave -E'
    fib = next(f for _, _, f in all_fibrations if (4, False) in applicable_deltas(f) and f.beta == (1,))
    fibre = fib.fibers[fib.r]
    delta = delta_class(fib, 4)
    assert delta.cls == fibre.terminal.cls - fibre.terminal_prime.cls
    assert pair(fibre.terminal.cls, fibre.terminal_prime.cls) == 0
    assert pair(delta.cls, fibre.terminal.cls) == -1
    assert delta.riemann_roch == -1 and delta.bound == 0


def test_index_four_still_non_empty_where_used(all_fibrations):
    # the construction only needs dim >= 0, with n + 2 = alpha + beta and beta >= 2
    hits = 0
    for _, _, fib in all_fibrations:
        if (4, False) in applicable_deltas(fib) and fib.beta[0] >= 2 and fib.n + 2 == sum(fib.alpha) + fib.beta[0]:
            assert delta_class(fib, 4).riemann_roch >= 0
            hits += 1
    assert hits


def test_gamma_case_one_on_a3_four_lines():
    surface = catalog_surface(4, "A3", "4 lines")
    fib = next(f for f in valid_fibrations(surface) if f.rst == (0, 1, 0))
    gamma = gamma_class(fib, 1)
    assert pair(gamma, gamma) == -1 and pair(gamma, fib.fiber_class) == 1
    # Gamma crosses the I2 fibre once, on D_{r+1, beta-1}, and misses its end E_{r+1}
    fibre = fib.fibers[fib.r]
    beta = fibre.params[0]
    meets = [lam for lam, c in enumerate(fibre.components) if pair(gamma, c.cls) != 0]
    assert meets == [beta - 1] and pair(gamma, fibre.components[beta - 1].cls) == 1
    assert pair(gamma, fibre.terminal.cls) == 0
    with pytest.raises(HypothesisError):
        gamma_class(select_fibration(surface), 1)


def test_gamma_case_two_with_gamma_two():
    fib = select_fibration(catalog_surface(3, "A2+2A1"))
    expected = fib.section + fib.fiber_class * fib.n
    for fibre in fib.fibers[: fib.r]:
        for lam in range(1, fibre.alpha + 1):
            expected = expected - fibre.components[lam].cls * lam
    assert gamma_class(fib, 2) == expected


def test_gamma_case_three_zero_curve(all_fibrations):
    hits = 0
    for _, _, fib in all_fibrations:
        K = canonical_class(fib.k)
        if fib.rst[1:] == (0, 0) and pair(K, K) == 6 - fib.n:
            gamma = gamma_class(fib, 3)
            assert pair(gamma, gamma) == 0
            hits += 1
    assert hits
