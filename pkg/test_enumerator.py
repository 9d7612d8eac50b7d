#!/usr/bin/env python3
"""
Tests for the reduced Latin square enumerator and the loop filters.
"""

from itertools import permutations

import pytest

from src.config.settings import get_settings
from src.enumeration.enumerator import (
    CONJUNCTION,
    FILTERS,
    EnumSpec,
    canonical_filter,
    enumerate_loops,
    filter_count,
    loop_matches,
    reduced_squares,
)
from src.loop_theory.autotopy import automorphism_group
from src.loop_theory.core_tables import is_associative, is_commutative, loops_isomorphic
from src.loop_theory.errors import BoundExceeded, LoopInputError, UnknownName
from src.utils.builtin_loops import cyclic
from src.verification.osborn_verifier import holomorph_osborn_direct


def naive_reduced_squares(n):
    """Row-by-row search over permutations; row r starts with r."""
    rows = [tuple(range(n))]

    def extend(r):
        if r == n:
            yield tuple(rows)
            return
        for rest in permutations([v for v in range(n) if v != r]):
            row = (r,) + rest
            if all(row[c] != prev[c] for prev in rows for c in range(n)):
                rows.append(row)
                yield from extend(r + 1)
                rows.pop()

    if n == 1:
        yield ((0,),)
        return
    yield from extend(1)


@pytest.mark.parametrize("order, expected", [(1, 1), (2, 1), (3, 1), (4, 4), (5, 56)])
def test_reduced_square_counts(order, expected):
    assert sum(1 for _ in enumerate_loops(EnumSpec(order=order))) == expected


@pytest.mark.slow
def test_order_six_count():
    assert sum(1 for _ in reduced_squares(6)) == 9408


@pytest.mark.parametrize("order", [3, 4, 5])
def test_matches_naive_search_in_order(order):
    ours = list(reduced_squares(order))
    assert ours == sorted(naive_reduced_squares(order))


def test_parallel_generation_keeps_order():
    assert list(reduced_squares(5, jobs=2)) == list(reduced_squares(5, jobs=1))


def test_enumerated_tables_are_normalized(order5_loops):
    for L in order5_loops:
        assert L.e == 0
        assert L.rows()[0] == list(range(5))
        assert [row[0] for row in L.rows()] == list(range(5))
    assert len(set(order5_loops)) == 56


def test_order_four_loops_are_the_two_groups():
    loops = list(enumerate_loops(EnumSpec(order=4)))
    assert all(is_associative(L).holds for L in loops)
    assert sum(1 for L in loops if loops_isomorphic(L, cyclic(4)) is not None) == 3


def test_filters_and_limit():
    loops = list(enumerate_loops(EnumSpec(order=5, filters=("nonassociative",), limit=3)))
    assert len(loops) == 3
    assert all(not is_associative(L).holds for L in loops)
    assert list(enumerate_loops(EnumSpec(order=4, filters=("nonassociative",)))) == []


def test_filter_names_are_normalized():
    assert canonical_filter("Nontrivial_AUM") == "nontrivial-aum"
    with pytest.raises(UnknownName):
        canonical_filter("moufang")
    with pytest.raises(UnknownName):
        EnumSpec(order=4, filters=("moufang",))


def test_commutative_filter_agrees_with_property(order5_loops):
    for L in order5_loops:
        assert loop_matches(L, "commutative") == is_commutative(L).holds


def test_group_passes_holomorph_filters():
    L = cyclic(5)
    assert loop_matches(L, "osborn")
    assert loop_matches(L, "holomorph-osborn-all-subgroups")
    assert loop_matches(L, "holomorph-osborn-some-subgroup")
    assert loop_matches(L, "nontrivial-aum")
    assert not loop_matches(L, "nonassociative")


def test_filter_count_without_filters_counts_everything():
    counts = filter_count(EnumSpec(order=5))
    assert counts.scanned == 56
    assert counts.complete
    assert counts.conjunction.name == CONJUNCTION
    assert counts.conjunction.count == 56
    assert counts.conjunction.first_position == 0


def test_filter_count_tallies(order5_loops):
    counts = filter_count(EnumSpec(order=5, filters=("nonassociative", "commutative")))
    nonassoc = [i for i, L in enumerate(order5_loops) if not is_associative(L).holds]
    comm = [i for i, L in enumerate(order5_loops) if is_commutative(L).holds]
    both = sorted(set(nonassoc) & set(comm))
    assert counts.tally("nonassociative").count == len(nonassoc)
    assert counts.tally("nonassociative").first_position == nonassoc[0]
    assert counts.tally("commutative").count == len(comm)
    assert counts.conjunction.count == len(both)
    if both:
        assert counts.conjunction.first_table == order5_loops[both[0]]


def test_filter_count_limit_stops_early():
    seen = []
    counts = filter_count(EnumSpec(order=5, filters=("nonassociative",), limit=2),
                          on_match=lambda position, L: seen.append(position))
    assert counts.conjunction.count == 2
    assert not counts.complete
    assert len(seen) == 2
    assert counts.scanned == seen[-1] + 1


def test_bounds(monkeypatch):
    with pytest.raises(BoundExceeded) as info:
        enumerate_loops(EnumSpec(order=7))
    assert info.value.exit_code == 3
    with pytest.raises(BoundExceeded):
        filter_count(EnumSpec(order=9, limit=1))
    monkeypatch.setenv("LOOPS_ENUM_FULL_BOUND", "4")
    get_settings.cache_clear()
    with pytest.raises(BoundExceeded):
        enumerate_loops(EnumSpec(order=5))


def test_invalid_specs():
    with pytest.raises(LoopInputError):
        EnumSpec(order=0)
    with pytest.raises(LoopInputError):
        EnumSpec(order=4, limit=0)
    with pytest.raises(LoopInputError):
        EnumSpec(order=4, normalized=False)


def test_every_filter_is_registered():
    assert set(FILTERS) == {
        "osborn", "nonassociative", "commutative", "nontrivial-aum",
        "holomorph-osborn-all-subgroups", "holomorph-osborn-some-subgroup",
    }


def test_holomorph_filter_agrees_with_direct_holomorph_scan(order5_loops):
    corpus = list(enumerate_loops(EnumSpec(order=4))) + list(order5_loops)
    for L in corpus:
        direct = holomorph_osborn_direct(L, automorphism_group(L)).holds
        assert loop_matches(L, "holomorph-osborn-all-subgroups") == direct, L.label
