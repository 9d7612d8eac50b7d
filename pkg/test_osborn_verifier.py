#!/usr/bin/env python3
"""
Tests for the Osborn identity checks, the holomorph theorems and the
report-level consistency rules.

Known outcomes on groups:
- every group is Osborn and every holomorph of a group is a group;
- A = P ∩ Λ ∩ Φ ∩ Ψ fails whenever the centre or A is non-trivial;
- R_x⁻¹R_{xφ⁻¹} = R_{xα·x^ρ} fails for Z3 with its full automorphism group;
- xα·x^ρ is central fails for S3 with its inner automorphisms.
"""

import pytest

from src.loop_theory.autotopy import PermGroup, automorphism_group
from src.loop_theory.errors import BudgetExceeded, LoopIntegrityError, UnknownName
from src.utils.builtin_loops import BUILTIN, builtin_loop
from src.verification.checks import ELEMENT_COORDINATES, FAILS, HOLDS, SKIPPED, bundle, failed
from src.verification.osborn_verifier import (
    CHECK_ORDER,
    CLAIMS,
    EQUIVALENT_CHECKS,
    VerifierContext,
    full_report,
    holomorph_osborn_direct,
    nuclear_conditions,
    offset_autotopism_check,
    osborn_check,
    replay_witness,
    select_checks,
    twisted_autotopism_check,
    twisted_osborn_check,
)

GROUP_NAMES = sorted(BUILTIN)


def failing_leaves(report):
    return {leaf.name for r in report.results for leaf in r.leaves() if leaf.status == FAILS}


# --- Osborn forms ---

@pytest.mark.parametrize("name", GROUP_NAMES)
def test_groups_satisfy_every_osborn_form(name):
    result = osborn_check(builtin_loop(name), "all")
    assert result.holds
    assert result.notes["variants_agree"]
    assert [p.name for p in result.parts] == ["osborn.division", "osborn.left_inverse", "osborn.right_inverse"]


def test_osborn_forms_agree_on_order_five(order5_loops):
    for L in order5_loops:
        assert osborn_check(L, "all").notes["variants_agree"], L.label


def test_non_osborn_witness_replays(non_osborn5):
    result = osborn_check(non_osborn5, "division")
    assert result.status == FAILS
    x, y, z = result.witness
    L = non_osborn5
    m = L.mul
    assert m(x, m(m(y, z), x)) != m(L.ldiv(L.left_inverse(x), y), m(z, x))
    assert replay_witness(L, None, result)


def test_unknown_osborn_variant(z3):
    with pytest.raises(UnknownName):
        osborn_check(z3, "moufang")


# --- Holomorph criteria ---

@pytest.mark.parametrize("name", ["Z3", "Z4", "V4", "S3", "D4"])
def test_group_holomorphs_pass_every_criterion(name):
    L = builtin_loop(name)
    A = automorphism_group(L)
    assert holomorph_osborn_direct(L, A).holds
    assert twisted_osborn_check(L, A).holds
    assert twisted_autotopism_check(L, A).holds
    assert nuclear_conditions(L, A).holds
    assert offset_autotopism_check(L, A).holds


def test_trivial_group_reduces_to_loop_osborn(non_osborn5):
    A = PermGroup.trivial(5)
    assert not holomorph_osborn_direct(non_osborn5, A).holds
    twisted = twisted_osborn_check(non_osborn5, A)
    assert twisted.status == FAILS
    i, j, x, y, z = twisted.witness
    assert (i, j) == (0, 0)
    assert not nuclear_conditions(non_osborn5, A).holds


def test_twisted_autotopism_witness_replays(non_osborn5):
    A = automorphism_group(non_osborn5)
    result = twisted_autotopism_check(non_osborn5, A)
    assert result.status == FAILS
    assert replay_witness(non_osborn5, A, result)


@pytest.mark.parametrize("group", ["trivial", "full"])
def test_criteria_agree_on_order_five(order5_loops, group):
    for L in order5_loops:
        A = PermGroup.trivial(L.n) if group == "trivial" else automorphism_group(L)
        report = full_report(L, A, checks=list(EQUIVALENT_CHECKS))
        assert all(report.equivalences.values()), (L.label, report.equivalences)
        assert not report.contradictions


# --- Consequences and known failures ---

def test_z3_with_full_group():
    L = builtin_loop("Z3")
    A = automorphism_group(L)
    report = full_report(L, A)
    assert [r.name for r in report.results] == list(CHECK_ORDER)
    assert report.result("holomorph_osborn").holds
    assert failing_leaves(report) == {
        "regular_intersection.equality",
        "regular_intersection.translation_form",
        "isomorphism_images.cross_quotient_translation",
    }
    assert report.exit_code == 1
    assert all(report.equivalences.values())
    assert any("regular_intersection" in line for line in report.contradictions)
    ctx = VerifierContext(L, A)
    for result in report.results:
        if result.status == FAILS:
            assert replay_witness(L, A, result, ctx)


def test_intersection_fails_for_z3_even_with_trivial_group():
    L = builtin_loop("Z3")
    report = full_report(L, PermGroup.trivial(3), checks=["regular_intersection"])
    equality = report.result("regular_intersection").part("equality")
    assert equality.status == FAILS
    assert equality.witness[0] == 1
    assert equality.notes["intersection_order"] == 3


def test_s3_with_trivial_group_passes_everything(s3):
    report = full_report(s3, PermGroup.trivial(6))
    assert report.all_hold
    assert report.exit_code == 0
    assert not report.skipped
    assert not report.contradictions


def test_s3_with_inner_automorphisms_breaks_centrality(s3):
    A = automorphism_group(s3)
    report = full_report(s3, A)
    failing = failing_leaves(report)
    assert "diagram_suite.left_offset_central" in failing
    assert "isomorphism_images.cross_quotient_translation" in failing
    assert "regular_intersection.equality" in failing
    assert "offset_identities" not in {name.split(".")[0] for name in failing}
    assert "regular_autotopisms" not in {name.split(".")[0] for name in failing}


def test_order_one_loop_passes_everything():
    report = full_report(builtin_loop("Z1"))
    assert report.exit_code == 0
    assert all(status == HOLDS for status in (r.status for r in report.results))


def test_diagram_suite_counts_mistyped_sides(s3):
    report = full_report(s3, PermGroup.trivial(6), checks=["diagram_suite"])
    suite = report.result("diagram_suite")
    part = suite.part("mu_to_rho_then_adjoint")
    assert part.status == HOLDS
    assert part.notes["domain_mismatches"] == 6
    assert "diagram_suite.mu_to_rho_then_adjoint" in suite.notes["domain_mismatches"]


def test_hypothesis_gated_checks_are_skipped(non_osborn5):
    report = full_report(non_osborn5, PermGroup.trivial(5))
    assert report.result("osborn").status == FAILS
    assert report.result("holomorph_osborn").status == FAILS
    gated = ["offset_autotopisms", "offset_identities", "regular_autotopisms", "regular_memberships",
             "regular_intersection", "isomorphism_images", "diagram_suite"]
    for name in gated:
        result = report.result(name)
        assert result.status == SKIPPED
        assert result.reason.startswith("HypothesisNotMet")
    assert report.skipped == gated
    assert report.exit_code == 1
    assert not report.contradictions


# --- Selection, budget, registry ---

def test_check_selection():
    assert select_checks(None) == CHECK_ORDER
    assert select_checks(["all"]) == CHECK_ORDER
    assert select_checks(["diagram-suite", "osborn"]) == ("osborn", "diagram_suite")
    with pytest.raises(UnknownName):
        select_checks(["theorem_99"])


def test_budget_applies_to_the_holomorph():
    L = builtin_loop("Z5")
    with pytest.raises(BudgetExceeded):
        full_report(L, automorphism_group(L), budget=10)


def test_every_failing_leaf_has_a_registered_claim():
    L = builtin_loop("S3")
    report = full_report(L, automorphism_group(L))
    for name in failing_leaves(report):
        assert name in CLAIMS


# --- Witness layouts ---

def _failing_results(report):
    for result in report.results:
        stack = [result]
        while stack:
            current = stack.pop()
            if current.status == FAILS:
                yield current
            stack.extend(current.parts)


@pytest.mark.parametrize("name, group", [("Z3", "full"), ("S3", "full"), ("Z2", "trivial")])
def test_every_failure_carries_a_fitting_layout(name, group):
    L = builtin_loop(name)
    A = PermGroup.trivial(L.n) if group == "trivial" else automorphism_group(L)
    results = list(_failing_results(full_report(L, A)))
    assert results
    for result in results:
        assert len(result.layout) == len(result.witness), result.name
        shown = result.display_witness()
        for kind, raw, value in zip(result.layout, result.witness, shown):
            assert value == (raw + 1 if kind in ELEMENT_COORDINATES else raw)


def test_non_osborn_layouts(non_osborn5):
    report = full_report(non_osborn5, PermGroup.trivial(5))
    assert report.result("osborn").layout == "xyz"
    assert report.result("twisted_osborn").layout == "apxyz"
    assert report.result("twisted_autotopism").layout == "apxuv"
    i, j = report.result("twisted_osborn").witness[:2]
    assert report.result("twisted_osborn").display_witness()[:2] == (i, j)


def test_intersection_layout_marks_the_side_flag():
    result = full_report(builtin_loop("Z3"), PermGroup.trivial(3), checks=["regular_intersection"]).results[0]
    equality = result.part("equality")
    assert equality.witness[0] == 1
    assert equality.layout == "k" + "i" * 3
    assert equality.display_witness() == (1,) + tuple(v + 1 for v in equality.witness[1:])
    assert result.layout == equality.layout


def test_layout_must_fit_the_witness():
    with pytest.raises(LoopIntegrityError):
        failed("demo", "x = x", (0, 1), 1, "x")
    assert failed("demo", "x = x", (2, 0), 1, "ax").display_witness() == (2, 1)
    assert bundle("demo", [failed("demo.part", "", (0, 4), 1, "kx")]).layout == "kx"
