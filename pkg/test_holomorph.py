#!/usr/bin/env python3
"""
Tests for holomorph construction, subgroup closure and subgroup lattices.
"""

from hypothesis import given, settings as hypothesis_settings, strategies as st
import pytest

from src.enumeration.enumerator import EnumSpec, enumerate_loops
from src.loop_theory.autotopy import PermGroup, automorphism_group
from src.loop_theory.core_tables import Perm, is_associative, is_commutative, loops_isomorphic, validate_loop
from src.loop_theory.errors import BudgetExceeded, NotAnAutomorphism
from src.loop_theory.holomorph import all_subgroups, build_holomorph, subgroup_closure
from src.utils.builtin_loops import builtin_loop, cyclic
from src.utils.loop_io import parse_perm_literal

Z3_HOLOMORPH = build_holomorph(cyclic(3), automorphism_group(cyclic(3)))


def test_full_holomorph_of_z3_is_s3(s3):
    H = Z3_HOLOMORPH
    assert H.order == 6
    assert H.h_table.e == 0
    assert not is_commutative(H.h_table).holds
    assert loops_isomorphic(H.h_table, s3) is not None


def test_trivial_group_gives_the_loop_back(nonassociative5):
    H = build_holomorph(nonassociative5, PermGroup.trivial(5))
    assert H.order == 5
    assert H.h_table.rows() == nonassociative5.rows()


def test_generated_subgroup_of_z5():
    L = cyclic(5)
    doubling = parse_perm_literal("1,3,5,2,4", 5)
    A = subgroup_closure(L, [doubling])
    assert A.order == 4
    assert build_holomorph(L, A).order == 20


@given(st.integers(0, 5), st.integers(0, 5))
def test_embedding_and_projection_are_homomorphisms(h1, h2):
    H = Z3_HOLOMORPH
    T = H.h_table
    assert H.project(T.mul(h1, h2)) == H.project(h1) * H.project(h2)
    x, y = h1 % 3, h2 % 3
    assert T.mul(H.embed(x), H.embed(y)) == H.embed(H.base.mul(x, y))


def test_product_rule(z3):
    H = Z3_HOLOMORPH
    for h1 in range(H.order):
        for h2 in range(H.order):
            g1, x = H.pair_of(h1)
            g2, y = H.pair_of(h2)
            beta = H.group[g2]
            expected = H.index_of(H.group.index(H.group[g1] * beta), z3.mul(beta(x), y))
            assert H.h_table.mul(h1, h2) == expected


def test_holomorph_of_group_is_group():
    d4 = builtin_loop("D4")
    H = build_holomorph(d4, automorphism_group(d4))
    assert H.order == 64
    assert is_associative(H.h_table).holds


def test_holomorph_of_nonassociative_loop_stays_nonassociative(nonassociative5):
    H = build_holomorph(nonassociative5, automorphism_group(nonassociative5))
    assert not is_associative(H.h_table).holds


def test_non_automorphism_generator_rejected(z4):
    with pytest.raises(NotAnAutomorphism) as info:
        subgroup_closure(z4, [Perm((0, 1, 2, 3)), Perm((0, 2, 1, 3))])
    assert info.value.index == 1
    assert info.value.exit_code == 2


def test_budget(z3):
    with pytest.raises(BudgetExceeded) as info:
        build_holomorph(z3, automorphism_group(z3), budget=5)
    assert info.value.size == 6
    assert info.value.exit_code == 3


@pytest.mark.parametrize("name, expected", [("Z1", 1), ("Z3", 2), ("V4", 6), ("S3", 6), ("Z8", 5), ("Q8", 30)])
def test_subgroup_counts(name, expected):
    subgroups = all_subgroups(automorphism_group(builtin_loop(name)))
    assert len(subgroups) == expected
    assert subgroups[0].is_trivial
    assert [g.order for g in subgroups] == sorted(g.order for g in subgroups)


@pytest.mark.parametrize("name", ["Z1", "Z3", "V4", "S3", "Q8"])
def test_trivial_group_holomorph_is_isomorphic_to_the_loop(name):
    L = builtin_loop(name)
    H = build_holomorph(L, PermGroup.trivial(L.n))
    assert loops_isomorphic(H.h_table, L) is not None


def test_trivial_group_holomorph_of_nonassociative_loop(nonassociative5):
    H = build_holomorph(nonassociative5, PermGroup.trivial(5))
    assert loops_isomorphic(H.h_table, nonassociative5) is not None


def _small_holomorphs():
    bases = [builtin_loop(name) for name in ("Z3", "Z4", "Z5", "V4", "S3")]
    bases.append(next(L for L in enumerate_loops(EnumSpec(order=5)) if not is_associative(L).holds))
    return [build_holomorph(L, A) for L in bases for A in all_subgroups(automorphism_group(L))]


SMALL_HOLOMORPHS = _small_holomorphs()


@given(st.sampled_from(SMALL_HOLOMORPHS), st.data())
@hypothesis_settings(max_examples=200)
def test_holomorph_arithmetic_follows_the_defining_product(H, data):
    L, A, T = H.base, H.group, H.h_table
    h1, h2, h3 = (data.draw(st.integers(0, H.order - 1)) for _ in range(3))
    (g1, x), (g2, y), (g3, z) = H.pair_of(h1), H.pair_of(h2), H.pair_of(h3)
    alpha, beta, gamma = A[g1], A[g2], A[g3]

    # (α, x)∘(β, y) = (αβ, xβ·y)
    assert T.mul(h1, h2) == H.index_of(A.index(alpha * beta), L.mul(beta(x), y))

    # (α, x)\(γ, z) = (α⁻¹γ, (xα⁻¹γ)\z)
    quotient = alpha.inverse() * gamma
    assert T.ldiv(h1, h3) == H.index_of(A.index(quotient), L.ldiv(quotient(x), z))

    # (γ, z)/(β, y) = (γβ⁻¹, (z/y)β⁻¹)
    assert T.rdiv(h3, h2) == H.index_of(A.index(gamma * beta.inverse()), beta.inverse()(L.rdiv(z, y)))

    # inverses of (α, x) live in the α⁻¹ block
    inverse = alpha.inverse()
    assert T.right_inverse(h1) == H.index_of(A.index(inverse), L.ldiv(inverse(x), L.e))
    assert T.left_inverse(h1) == H.index_of(A.index(inverse), inverse(L.rdiv(L.e, x)))


def test_identity_sits_at_flat_index_e():
    L = validate_loop([[(x + y + 1) % 3 for y in range(3)] for x in range(3)])
    assert L.e == 2
    H = build_holomorph(L, automorphism_group(L))
    assert H.h_table.e == H.index_of(0, L.e) == 2
    for K in SMALL_HOLOMORPHS:
        assert K.base.e == 0 and K.h_table.e == 0
