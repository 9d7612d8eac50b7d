#!/usr/bin/env python3
"""
Tests for the nuclei, centrum and center scans.
"""

import pytest

from src.loop_theory.core_tables import is_associative
from src.loop_theory.nuclei_centers import (
    center,
    centrum,
    left_nucleus,
    middle_nucleus,
    nuclei_report,
    nucleus,
    right_nucleus,
)
from src.utils.builtin_loops import BUILTIN, builtin_loop


def _by_definition(L):
    m = L.mul
    els = list(L.elements)
    n_lambda = {a for a in els if all(m(a, m(y, z)) == m(m(a, y), z) for y in els for z in els)}
    n_rho = {a for a in els if all(m(m(z, y), a) == m(z, m(y, a)) for y in els for z in els)}
    n_mu = {a for a in els if all(m(m(z, a), y) == m(z, m(a, y)) for y in els for z in els)}
    comm = {a for a in els if all(m(a, y) == m(y, a) for y in els)}
    return n_lambda, n_rho, n_mu, comm


@pytest.mark.parametrize("name", sorted(BUILTIN))
def test_groups_have_full_nuclei(name):
    L = builtin_loop(name)
    report = nuclei_report(L)
    assert report.n_lambda.is_full
    assert report.n_rho.is_full
    assert report.n_mu.is_full
    assert report.nucleus.is_full


def test_center_of_symmetric_group_is_trivial(s3):
    assert list(center(s3)) == [s3.e]
    assert list(centrum(s3)) == [s3.e]
    assert nucleus(s3).is_full


def test_abelian_group_is_its_own_center(z4):
    assert center(z4).is_full


def test_quaternion_center_has_two_elements():
    q8 = builtin_loop("Q8")
    assert len(center(q8)) == 2


def test_scans_match_definitions_on_order_five(order5_loops):
    for L in order5_loops:
        n_lambda, n_rho, n_mu, comm = _by_definition(L)
        assert set(left_nucleus(L)) == n_lambda
        assert set(right_nucleus(L)) == n_rho
        assert set(middle_nucleus(L)) == n_mu
        assert set(centrum(L)) == comm
        assert set(center(L)) == n_lambda & n_rho & n_mu & comm


def test_nonassociative_loop_has_proper_nucleus(nonassociative5):
    core = nucleus(nonassociative5)
    assert nonassociative5.e in core
    assert not core.is_full


def test_report_uses_one_based_field_names(z4):
    as_dict = nuclei_report(z4).as_dict()
    assert list(as_dict) == ["nLambda", "nRho", "nMu", "nucleus", "centrum", "center"]
    assert as_dict["center"] == [1, 2, 3, 4]


def test_nucleus_is_everything_exactly_when_associative(order5_loops):
    corpus = [builtin_loop(name) for name in sorted(BUILTIN)] + list(order5_loops)
    for L in corpus:
        assert nucleus(L).is_full == is_associative(L).holds, L.label
    assert any(not nucleus(L).is_full for L in order5_loops)
