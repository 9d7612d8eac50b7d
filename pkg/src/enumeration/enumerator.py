"""
Exhaustive enumeration of normalized loops with named filters.

A normalized loop of order n has identity 0 and first row and column in
natural order, i.e. it is a reduced Latin square. Cells (r, c) with
r, c ≥ 1 are filled row-major, trying values in ascending order, so tables
come out in lexicographic order of their row-major flattening.
"""

import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

from src.config.settings import get_settings
from src.loop_theory.autotopy import PermGroup, automorphism_group
from src.loop_theory.core_tables import LoopTable, closure, is_associative, is_commutative, validate_loop
from src.loop_theory.errors import BoundExceeded, LoopInputError, LoopIntegrityError, UnknownName
from src.utils.workers import parallel_map
from src.verification.osborn_verifier import osborn_check, twisted_osborn_check

logger = logging.getLogger(__name__)

Grid = Tuple[Tuple[int, ...], ...]


# --- Filters ---

class LoopFacts:
    """Per-loop data shared between filters."""

    def __init__(self, L: LoopTable):
        self.L = L

    @cached_property
    def aum(self) -> PermGroup:
        return automorphism_group(self.L)


def _holomorph_osborn_for_aum(facts: LoopFacts) -> bool:
    """
    Whether the AUM-holomorph is Osborn, decided by the twisted Osborn identity.

    The twisted identity holds exactly when the holomorph built and scanned
    directly is Osborn; test_criteria_agree_on_order_five in
    test_osborn_verifier.py checks the two agree, so either can decide.
    """
    return bool(twisted_osborn_check(facts.L, facts.aum).holds)


def _some_cyclic_subgroup(facts: LoopFacts) -> bool:
    """
    Whether some non-trivial A gives an Osborn holomorph, via the twisted identity.

    Same interchangeable criterion as _holomorph_osborn_for_aum. The identity
    quantifies over A, so it is enough to try each cyclic <g> with g ≠ I.
    """
    for g in facts.aum:
        if g.is_identity:
            continue
        cyclic = PermGroup.from_perms(closure([g], facts.aum.identity), "cyclic subgroup")
        if twisted_osborn_check(facts.L, cyclic).holds:
            return True
    return False


FILTERS: Dict[str, Callable[[LoopFacts], bool]] = {
    "osborn": lambda facts: bool(osborn_check(facts.L, "division").holds),
    "nonassociative": lambda facts: not is_associative(facts.L).holds,
    "commutative": lambda facts: is_commutative(facts.L).holds,
    "nontrivial-aum": lambda facts: not facts.aum.is_trivial,
    "holomorph-osborn-all-subgroups": _holomorph_osborn_for_aum,
    "holomorph-osborn-some-subgroup": _some_cyclic_subgroup,
}


def canonical_filter(name: str) -> str:
    key = name.strip().lower().replace("_", "-")
    if key not in FILTERS:
        raise UnknownName("filter", name, FILTERS)
    return key


def loop_matches(L: LoopTable, name: str) -> bool:
    return FILTERS[canonical_filter(name)](LoopFacts(L))


@dataclass(frozen=True)
class EnumSpec:
    order: int
    normalized: bool = True
    filters: Tuple[str, ...] = ()
    limit: Optional[int] = None

    def __post_init__(self):
        if self.order < 1:
            raise LoopInputError(f"order must be positive, got {self.order}")
        if not self.normalized:
            raise LoopInputError("only normalized enumeration is supported")
        if self.limit is not None and self.limit < 1:
            raise LoopInputError(f"limit must be positive, got {self.limit}")
        object.__setattr__(self, "filters", tuple(canonical_filter(f) for f in self.filters))


def check_bound(spec: EnumSpec) -> None:
    settings = get_settings()
    limited = spec.limit is not None
    bound = settings.enum_limited_bound if limited else settings.enum_full_bound
    if spec.order > bound:
        raise BoundExceeded(spec.order, bound, limited=limited)


# --- Backtracking ---

def _fill(n: int, grid: List[List[int]], first_row: int, last_row: int) -> Iterator[Grid]:
    """
    Complete rows first_row..last_row-1 of a partially filled reduced square.

    Rows before first_row are complete; rows from last_row on only hold
    their first-column entry. Yields snapshots of the whole grid.
    """
    full = (1 << n) - 1
    row_used = [0] * n
    col_used = [0] * n
    for r in range(n):
        for c in range(n):
            v = grid[r][c]
            if v >= 0:
                row_used[r] |= 1 << v
                col_used[c] |= 1 << v
    cells = [(r, c) for r in range(first_row, last_row) for c in range(1, n)]

    def step(k: int) -> Iterator[Grid]:
        if k == len(cells):
            yield tuple(tuple(row) for row in grid)
            return
        r, c = cells[k]
        free = full & ~(row_used[r] | col_used[c])
        while free:
            bit = free & -free
            free ^= bit
            v = bit.bit_length() - 1
            grid[r][c] = v
            row_used[r] |= bit
            col_used[c] |= bit
            yield from step(k + 1)
            row_used[r] ^= bit
            col_used[c] ^= bit
            grid[r][c] = -1

    yield from step(0)


def _blank(n: int) -> List[List[int]]:
    grid = [[-1] * n for _ in range(n)]
    for i in range(n):
        grid[0][i] = i
        grid[i][0] = i
    return grid


def _complete_prefix(args: Tuple[int, Tuple[int, ...]]) -> List[Grid]:
    n, second_row = args
    grid = _blank(n)
    grid[1] = list(second_row)
    return list(_fill(n, grid, 2, n))


def reduced_squares(n: int, jobs: int = 1) -> Iterator[Grid]:
    """
    Every reduced Latin square of order n in lexicographic order.

    With jobs > 1 the work is split on completed second rows and the parts
    are concatenated in prefix order, which is the sequential order.
    """
    if jobs <= 1 or n < 3:
        yield from _fill(n, _blank(n), 1, n)
        return
    prefixes = [g[1] for g in _fill(n, _blank(n), 1, 2)]
    logger.debug("Splitting order-%d enumeration over %d second rows", n, len(prefixes))
    for part in parallel_map(_complete_prefix, [(n, p) for p in prefixes], jobs):
        yield from part


# --- Public API ---

def _matches(facts: LoopFacts, filters: Sequence[str]) -> bool:
    return all(FILTERS[name](facts) for name in filters)


def enumerate_loops(spec: EnumSpec, jobs: Optional[int] = None) -> Iterator[LoopTable]:
    """
    Stream normalized loops of ``spec.order`` passing every filter.

    Args:
        spec: Order, filters and optional cap on emitted loops
        jobs: Worker processes for the square generation

    Returns:
        Iterator of validated LoopTables in lexicographic order

    Raises:
        BoundExceeded: order above the configured enumeration bound
    """
    check_bound(spec)
    jobs = get_settings().jobs if jobs is None else jobs
    return _stream(spec, jobs)


def _stream(spec: EnumSpec, jobs: int) -> Iterator[LoopTable]:
    emitted = 0
    for position, grid in enumerate(reduced_squares(spec.order, jobs)):
        L = validate_loop(grid, name=f"order-{spec.order} loop #{position + 1}")
        if spec.filters and not _matches(LoopFacts(L), spec.filters):
            continue
        yield L
        emitted += 1
        if spec.limit is not None and emitted >= spec.limit:
            return


@dataclass
class FilterTally:
    """Count for one filter (or the conjunction) and its first witness."""

    name: str
    count: int = 0
    first_position: Optional[int] = None
    first_table: Optional[LoopTable] = None

    def record(self, position: int, L: LoopTable) -> None:
        self.count += 1
        if self.first_table is None:
            self.first_position = position
            self.first_table = L


@dataclass
class FilterCounts:
    order: int
    filters: Tuple[str, ...]
    scanned: int = 0
    complete: bool = True
    tallies: List[FilterTally] = field(default_factory=list)

    def tally(self, name: str) -> FilterTally:
        for t in self.tallies:
            if t.name == name:
                return t
        raise KeyError(name)

    @property
    def conjunction(self) -> FilterTally:
        return self.tallies[-1]


CONJUNCTION = "all"


def _reverify(tally: FilterTally, filters: Sequence[str]) -> None:
    if tally.first_table is None:
        return
    again = validate_loop(tally.first_table.rows(), name=tally.first_table.name)
    if again != tally.first_table or not _matches(LoopFacts(again), filters):
        raise LoopIntegrityError(f"witness for {tally.name} does not survive re-verification")


def filter_count(
    spec: EnumSpec,
    jobs: Optional[int] = None,
    on_match: Optional[Callable[[int, LoopTable], None]] = None,
) -> FilterCounts:
    """
    Count loops per filter and for the conjunction of all filters.

    Each tally keeps the 0-based position and table of its first witness;
    witnesses are re-validated and re-filtered before returning. With a
    limit the scan stops once that many loops pass the conjunction, and the
    counts cover only the scanned prefix (``complete`` is then False).

    Args:
        spec: Enumeration spec; no filters counts every loop
        jobs: Worker processes for the square generation
        on_match: Called with (position, table) for every conjunction match

    Returns:
        FilterCounts with one tally per filter, then the conjunction
    """
    check_bound(spec)
    jobs = get_settings().jobs if jobs is None else jobs
    singles = [FilterTally(name) for name in spec.filters]
    both = FilterTally(CONJUNCTION)
    result = FilterCounts(order=spec.order, filters=spec.filters, tallies=singles + [both])

    for position, grid in enumerate(reduced_squares(spec.order, jobs)):
        result.scanned += 1
        L = validate_loop(grid, name=f"order-{spec.order} loop #{position + 1}")
        facts = LoopFacts(L)
        verdicts = [FILTERS[name](facts) for name in spec.filters]
        for tally, ok in zip(singles, verdicts):
            if ok:
                tally.record(position, L)
        if all(verdicts):
            both.record(position, L)
            if on_match is not None:
                on_match(position, L)
            if spec.limit is not None and both.count >= spec.limit:
                result.complete = False
                break

    for tally in singles:
        _reverify(tally, [tally.name])
    _reverify(both, spec.filters)
    logger.info(
        "✅ Order %d: scanned %d loops, %d match %s",
        spec.order, result.scanned, both.count, " ∧ ".join(spec.filters) or "no filter",
    )
    return result
