#!/usr/bin/env python3
"""
Tests for loop files, streams, permutation literals and JSON payloads.
"""

import json

import pytest

from src.loop_theory.autotopy import automorphism_group
from src.loop_theory.core_tables import Perm
from src.loop_theory.errors import (
    InvalidPermutation,
    LoopFileError,
    NotLatinSquare,
    PointCountMismatch,
    UnknownName,
)
from src.loop_theory.nuclei_centers import nuclei_report
from src.utils.loop_io import (
    NucleiPayload,
    PermGroupPayload,
    PropertiesPayload,
    format_loop,
    format_loop_stream,
    load_loop,
    parse_loop_text,
    parse_perm_list,
    parse_perm_literal,
    read_loop_file,
    read_loop_stream,
    to_json,
    write_loop_file,
)

Z3_TEXT = """# cyclic group of order 3
3
1 2 3
2 3 1
3 1 2
"""


def test_parse_with_comments():
    L = parse_loop_text(Z3_TEXT, name="z3")
    assert L.n == 3
    assert L.rows() == [[0, 1, 2], [1, 2, 0], [2, 0, 1]]
    assert L.label == "z3"


def test_format_writes_one_based_rows(z3):
    text = format_loop(z3, header=["Z3"])
    assert text.splitlines() == ["# Z3", "3", "1 2 3", "2 3 1", "3 1 2"]
    assert parse_loop_text(text) == z3


def test_wide_orders_are_right_justified():
    L = load_loop("builtin:Q8")
    rows = format_loop(L).splitlines()[1:]
    assert all(len(row.split()) == 8 for row in rows)


def test_file_round_trip_uses_stem_as_name(tmp_path, s3):
    path = write_loop_file(tmp_path / "nested" / "s3.loop", s3, header=["symmetric group"])
    L = read_loop_file(path)
    assert L == s3
    assert L.label == "s3"


def test_bad_order_line():
    with pytest.raises(LoopFileError) as info:
        parse_loop_text("three\n1 2 3\n", path="bad.loop")
    assert info.value.line == 1
    assert "bad.loop:1" in str(info.value)


def test_wrong_row_count():
    with pytest.raises(LoopFileError):
        parse_loop_text("3\n1 2 3\n2 3 1\n")


def test_non_integer_entry_reports_line():
    with pytest.raises(LoopFileError) as info:
        parse_loop_text("# header\n2\n1 2\n2 x\n")
    assert info.value.line == 4
    assert info.value.exit_code == 2


def test_empty_file():
    with pytest.raises(LoopFileError):
        parse_loop_text("# only a comment\n")


def test_validation_errors_pass_through():
    with pytest.raises(NotLatinSquare):
        parse_loop_text("2\n1 2\n1 2\n")


def test_missing_file(tmp_path):
    with pytest.raises(LoopFileError):
        read_loop_file(tmp_path / "absent.loop")


def test_stream_of_tables(z3, s3):
    text = format_loop_stream([z3, s3], headers=[["first"], ["second"]])
    assert "---\n" in text
    assert read_loop_stream(text) == [z3, s3]


def test_builtin_loader():
    assert load_loop("builtin:v4").label == "V4"
    with pytest.raises(UnknownName):
        load_loop("builtin:M12")


def test_permutation_literals():
    assert parse_perm_literal("1,3,2") == Perm((0, 2, 1))
    assert parse_perm_literal(" 2, 3, 1 ", 3) == Perm((1, 2, 0))
    assert parse_perm_list(["1,3,2;2,1,3", "1,2,3"], 3) == [
        Perm((0, 2, 1)), Perm((1, 0, 2)), Perm((0, 1, 2)),
    ]


def test_bad_permutation_literals():
    with pytest.raises(InvalidPermutation):
        parse_perm_literal("1,1,2")
    with pytest.raises(InvalidPermutation):
        parse_perm_literal("1,a,2")
    with pytest.raises(PointCountMismatch):
        parse_perm_literal("1,2", 3)


def test_properties_payload(s3):
    payload = json.loads(to_json(PropertiesPayload.from_loop(s3)))
    assert payload["order"] == 6
    assert payload["identity"] == 1
    assert payload["associative"] is True
    assert payload["commutative"] is False
    assert len(payload["commutativity_witness"]) == 2


def test_nuclei_payload_field_order(z4):
    payload = json.loads(to_json(NucleiPayload.from_report(z4, nuclei_report(z4))))
    assert list(payload) == ["loop", "nLambda", "nRho", "nMu", "nucleus", "centrum", "center"]


def test_group_payload_is_one_based(z3):
    payload = PermGroupPayload.from_group("aum", automorphism_group(z3))
    assert payload.order == 2
    assert payload.elements == [[1, 2, 3], [1, 3, 2]]
    assert to_json(payload) == to_json(PermGroupPayload.from_group("aum", automorphism_group(z3)))
