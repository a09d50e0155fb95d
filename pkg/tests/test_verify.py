from dataclasses import replace
from functools import lru_cache

import pytest

from duval_cylinders.catalog import catalog_surface
from duval_cylinders.cylinder import construct_cylinder, fibration_for
from duval_cylinders.sampling import ample_stream
from duval_cylinders.surface import anticanonical
from duval_cylinders.verify import verify_certificate
from mutations import flip_sign, mutants


@pytest.fixture(scope="module")
def star_case():
    surface = catalog_surface(3, "A2+2A1")
    fib = fibration_for(surface)
    for H in ample_stream(surface, 0):
        cert = construct_cylinder(surface, H)
        if cert.pattern == "star":
            return surface, fib, H, cert


def test_good_certificate_passes(star_case):
    surface, fib, H, cert = star_case
    report = verify_certificate(surface, fib, H, cert)
    assert report.accepted, report.failures
    assert report.pattern_detail["matched_variant"] == cert.param


def test_negated_coefficient_is_not_effective(star_case):
    surface, fib, H, cert = star_case
    report = verify_certificate(surface, fib, H, flip_sign(cert, 0))
    assert not report.effective_ok and not report.accepted


def test_section_kept_when_it_is_a_root():
    surface = catalog_surface(3, "A2+2A1")
    fib = fibration_for(surface)
    assert fib.section in surface.roots
    H = anticanonical(surface)
    cert = construct_cylinder(surface, H)
    bad = replace(cert, removed=tuple(item for item in cert.removed if item[1] != fib.section))
    report = verify_certificate(surface, fib, H, bad)
    assert not report.roots_covered_ok and not report.accepted


def test_wrong_star_variant(star_case):
    surface, fib, H, cert = star_case
    other = 3 if cert.param == 2 else 2
    report = verify_certificate(surface, fib, H, replace(cert, param=other))
    assert not report.pattern_ok


def test_wrong_fibration_flagged(star_case):
    surface, fib, H, cert = star_case
    bad = replace(cert, section=cert.fiber_class)
    report = verify_certificate(surface, fib, H, bad)
    assert not report.pattern_ok and "different fibration" in " ".join(report.failures)


def test_different_class_rejected(star_case):
    surface, fib, H, cert = star_case
    report = verify_certificate(surface, fib, H * 2, cert)
    assert not report.equivalence_ok


def test_report_json(star_case):
    surface, fib, H, cert = star_case
    data = verify_certificate(surface, fib, H, cert).to_json()
    assert data["accepted"] is True and data["failures"] == []


@lru_cache(maxsize=None)
def _mutants():
    return mutants(12, seed=100)


@pytest.mark.parametrize("index", range(12))
def test_mutants_rejected(index):
    kind, label, surface, fib, H, bad = _mutants()[index]
    report = verify_certificate(surface, fib, H, bad)
    assert not report.accepted, (kind, label)
