from __future__ import annotations

import math

import pytest

from conftest import count_family_bruteforce
from hhl import (
    FamilyParams,
    family_size_asymptotic,
    family_size_exact,
    info_lower_bound,
    rate_point,
)


def test_family_size_small_cases_against_enumeration():
    # the brute-force enumerator is the ground truth for the closed form
    assert count_family_bruteforce(4, 1, 2) == 11
    assert family_size_exact(FamilyParams(4, 1, 2)) == 11
    assert count_family_bruteforce(5, 2, 1) == 16
    assert family_size_exact(FamilyParams(5, 2, 1)) == 16


def test_family_size_singleton_closed_form():
    for t in (2, 5, 17, 100):
        assert family_size_exact(FamilyParams(t, 1, 1)) == t + 1


def test_family_size_full_grid_against_enumeration():
    for t in range(1, 7):
        for s in range(1, 4):
            for l in range(1, 4):
                expected = count_family_bruteforce(t, s, l)
                assert family_size_exact(FamilyParams(t, s, l)) == expected


def test_family_size_monotone():
    base = family_size_exact(FamilyParams(6, 2, 2))
    assert family_size_exact(FamilyParams(7, 2, 2)) >= base
    assert family_size_exact(FamilyParams(6, 3, 2)) >= base
    assert family_size_exact(FamilyParams(6, 2, 3)) >= base


def test_family_size_asymptotic_values():
    for t in (3, 10, 1000):
        assert family_size_asymptotic(FamilyParams(t, 1, 1)) == pytest.approx(t)
    assert family_size_asymptotic(FamilyParams(100, 2, 2)) == pytest.approx(1.25e7)


def test_family_size_ratio_approaches_one():
    p = FamilyParams(1000, 2, 2)
    ratio = family_size_exact(p) / family_size_asymptotic(p)
    assert abs(ratio - 1) < 0.10


def test_family_size_asymptotic_huge_params_no_overflow():
    value = family_size_asymptotic(FamilyParams(10**6, 20, 20))
    assert value == math.inf


def test_info_lower_bound():
    assert info_lower_bound(FamilyParams(4, 1, 2)) == 4
    for t in (2, 7, 31, 64):
        assert info_lower_bound(FamilyParams(t, 1, 1)) == math.ceil(math.log2(t + 1))


def test_info_lower_bound_bracketing():
    for t in range(2, 9):
        for s in range(1, 4):
            for l in range(1, 4):
                p = FamilyParams(t, s, l)
                size = family_size_exact(p)
                lb = info_lower_bound(p)
                assert 2**lb >= size
                assert size > 2 ** (lb - 1)


def test_rate_point():
    assert rate_point(1024, 100).rate == pytest.approx(0.1)
    assert rate_point(2, 1).rate == pytest.approx(1.0)
    with pytest.raises(ValueError):
        rate_point(1024, 0)
    with pytest.raises(ValueError):
        rate_point(1, 5)
