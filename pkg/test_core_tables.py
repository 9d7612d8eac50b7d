#!/usr/bin/env python3
"""
Tests for Cayley-table validation, divisions, inverses and permutations.
"""

from hypothesis import given, strategies as st
import pytest

from src.loop_theory.core_tables import (
    COMPOSITION,
    Perm,
    closure,
    compose,
    identity_perm,
    invert,
    is_associative,
    is_commutative,
    isomorphisms,
    left_divide,
    loops_isomorphic,
    multiply,
    right_divide,
    validate_loop,
)
from src.loop_theory.errors import (
    ClosureBoundExceeded,
    EntryOutOfRange,
    InvalidPermutation,
    NoIdentity,
    NotLatinSquare,
    PointCountMismatch,
    RaggedInput,
)
from src.utils.builtin_loops import BUILTIN, builtin_loop, cyclic, direct_product

LOOP_NAMES = sorted(BUILTIN)


def perms(n):
    return st.permutations(list(range(n))).map(lambda image: Perm(tuple(image)))


# --- Validation ---

def test_cyclic_table_is_a_loop(z4):
    assert z4.n == 4
    assert z4.e == 0
    assert multiply(z4, 2, 3) == 1
    assert z4.label == "Z4"


def test_identity_need_not_be_first_element():
    # x·y = x + y + 1 mod 3 has identity 2
    L = validate_loop([[(x + y + 1) % 3 for y in range(3)] for x in range(3)])
    assert L.e == 2


def test_swapped_entries_break_latin_property(z4):
    rows = z4.rows()
    rows[2][0], rows[2][1] = rows[2][1], rows[2][0]
    with pytest.raises(NotLatinSquare) as info:
        validate_loop(rows)
    assert info.value.axis == "column"
    assert info.value.exit_code == 2


def test_ragged_rows_rejected():
    with pytest.raises(RaggedInput):
        validate_loop([[0, 1], [1]])


def test_out_of_range_entry_rejected():
    with pytest.raises(EntryOutOfRange):
        validate_loop([[0, 1], [1, 2]])


def test_latin_square_without_identity_rejected():
    # x·y = -x - y mod 3
    with pytest.raises(NoIdentity):
        validate_loop([[0, 2, 1], [2, 1, 0], [1, 0, 2]])


def test_order_one_loop():
    L = validate_loop([[0]])
    assert L.n == 1 and L.e == 0
    assert is_associative(L).holds


# --- Divisions and inverses ---

@given(st.sampled_from(LOOP_NAMES), st.data())
def test_divisions_undo_the_product(name, data):
    L = builtin_loop(name)
    x = data.draw(st.integers(0, L.n - 1))
    y = data.draw(st.integers(0, L.n - 1))
    assert multiply(L, x, left_divide(L, x, y)) == y
    assert multiply(L, right_divide(L, y, x), x) == y
    assert left_divide(L, x, multiply(L, x, y)) == y
    assert right_divide(L, multiply(L, x, y), y) == x


@given(st.sampled_from(LOOP_NAMES), st.data())
def test_translations_are_rows_and_columns(name, data):
    L = builtin_loop(name)
    x = data.draw(st.integers(0, L.n - 1))
    y = data.draw(st.integers(0, L.n - 1))
    assert L.left_translation(x)(y) == L.mul(x, y)
    assert L.right_translation(x)(y) == L.mul(y, x)


def test_inverses_in_nonassociative_loop(nonassociative5):
    L = nonassociative5
    for x in L.elements:
        assert L.mul(L.left_inverse(x), x) == L.e
        assert L.mul(x, L.right_inverse(x)) == L.e


# --- Properties ---

def test_groups_are_associative():
    for name in LOOP_NAMES:
        assert is_associative(builtin_loop(name)).holds, name


def test_associativity_witness_is_a_real_violation(nonassociative5):
    L = nonassociative5
    result = is_associative(L)
    assert not result.holds
    x, y, z = result.witness
    assert L.mul(L.mul(x, y), z) != L.mul(x, L.mul(y, z))


def test_commutativity(s3, z4):
    assert is_commutative(z4).holds
    result = is_commutative(s3)
    assert not result.holds
    x, y = result.witness
    assert s3.mul(x, y) != s3.mul(y, x)


def test_isomorphism_search():
    v4 = builtin_loop("V4")
    assert loops_isomorphic(cyclic(4), v4) is None
    f = loops_isomorphic(v4, direct_product(cyclic(2), cyclic(2)))
    assert f is not None
    for x in v4.elements:
        for y in v4.elements:
            assert f(v4.mul(x, y)) == v4.mul(f(x), f(y))


def test_cyclic_automorphisms_counted_by_isomorphisms(z4):
    # Aut(Z4) = {x, 3x}
    assert len(list(isomorphisms(z4, z4))) == 2


# --- Permutations ---

def test_composition_is_postfix():
    assert COMPOSITION == "postfix"
    p = Perm((1, 0, 2))
    q = Perm((0, 2, 1))
    assert (p * q)(0) == q(p(0)) == 2
    assert compose(p, q) == p * q


def test_cycle_notation():
    assert identity_perm(3).cycle_string() == "()"
    assert Perm((1, 2, 0)).cycle_string() == "(1 2 3)"
    assert Perm((1, 0, 3, 2)).cycle_string() == "(1 2)(3 4)"
    assert Perm((1, 2, 0)).one_line() == "2,3,1"


def test_invalid_permutations():
    with pytest.raises(InvalidPermutation):
        Perm((0, 0, 1))
    with pytest.raises(PointCountMismatch):
        Perm((0, 1)) * Perm((0, 1, 2))


@given(perms(5), perms(5), perms(5))
def test_composition_is_associative(p, q, r):
    assert (p * q) * r == p * (q * r)


@given(perms(6))
def test_inverse_cancels(p):
    assert (p * invert(p)).is_identity
    assert (invert(p) * p).is_identity


def test_closure_generates_symmetric_group():
    group = closure([Perm((1, 0, 2, 3)), Perm((1, 2, 3, 0))], identity_perm(4))
    assert len(group) == 24
    with pytest.raises(ClosureBoundExceeded):
        closure([Perm((1, 0, 2, 3)), Perm((1, 2, 3, 0))], identity_perm(4), bound=10)
