"""Shared fixtures: named groups and the order-5 loop corpus."""

import os
import sys

import pytest

project_root = os.path.abspath(os.path.dirname(__file__))
sys.path.insert(0, project_root)

from src.config.settings import get_settings
from src.enumeration.enumerator import EnumSpec, enumerate_loops
from src.loop_theory.core_tables import is_associative
from src.utils.builtin_loops import builtin_loop
from src.verification.osborn_verifier import osborn_check


@pytest.fixture(autouse=True)
def fresh_settings():
    """Settings are cached; tests that touch LOOPS_* variables need a clean read."""
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def z3():
    return builtin_loop("Z3")


@pytest.fixture
def z4():
    return builtin_loop("Z4")


@pytest.fixture
def s3():
    return builtin_loop("S3")


@pytest.fixture(scope="session")
def order5_loops():
    return list(enumerate_loops(EnumSpec(order=5), jobs=1))


@pytest.fixture(scope="session")
def nonassociative5(order5_loops):
    return next(L for L in order5_loops if not is_associative(L).holds)


@pytest.fixture(scope="session")
def non_osborn5(order5_loops):
    return next(L for L in order5_loops if not osborn_check(L, "division").holds)
