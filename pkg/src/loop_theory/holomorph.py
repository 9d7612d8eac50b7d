"""
A-holomorphs: the loop on A × L with (α, x)∘(β, y) = (αβ, xβ·y).

Group elements are kept in canonical order with the identity first, and
the pair (g, x) lives at flat index g·n + x, so (I, e) is index e. The
holomorph identity is flat index 0 exactly when the base table is
normalized (e = 0), as every enumerated and built-in table is; a table
loaded with another identity keeps e as the holomorph identity.
"""

import logging
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

import numpy as np

from src.config.settings import get_settings
from src.loop_theory.autotopy import AutotopismTriple, PermGroup, autotopism_violation
from src.loop_theory.core_tables import LoopTable, Perm, check_points, closure, identity_perm, validate_loop
from src.loop_theory.errors import BudgetExceeded, LoopIntegrityError, NotAnAutomorphism

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class HolomorphLoop:
    base: LoopTable
    group: PermGroup
    h_table: LoopTable

    @property
    def order(self) -> int:
        return self.h_table.n

    def index_of(self, g: int, x: int) -> int:
        return g * self.base.n + x

    def pair_of(self, h: int) -> Tuple[int, int]:
        g, x = divmod(h, self.base.n)
        return g, x

    def embed(self, x: int) -> int:
        """x ↦ (I, x)."""
        return self.index_of(0, x)

    def project(self, h: int) -> Perm:
        return self.group[self.pair_of(h)[0]]


def _automorphism_failure(L: LoopTable, perm: Perm) -> Optional[Tuple[int, int]]:
    check_points(L, perm)
    return autotopism_violation(L, AutotopismTriple(perm, perm, perm))


def subgroup_closure(L: LoopTable, gens: Sequence[Perm], bound: Optional[int] = None) -> PermGroup:
    """
    Group generated by automorphisms of L.

    Args:
        L: Loop the generators act on
        gens: Candidate automorphisms
        bound: Cap on the group order (defaults to LOOPS_CLOSURE_BOUND)

    Raises:
        NotAnAutomorphism: naming the first offending generator
        ClosureBoundExceeded: when the group grows past the cap
    """
    for index, perm in enumerate(gens):
        failure = _automorphism_failure(L, perm)
        if failure is not None:
            raise NotAnAutomorphism(index, failure)
    limit = get_settings().closure_bound if bound is None else bound
    elements = closure(list(gens), identity_perm(L.n), bound=limit)
    return PermGroup(tuple(elements), tuple(gens))


def build_holomorph(
    L: LoopTable,
    A: PermGroup,
    budget: Optional[int] = None,
    name: Optional[str] = None,
) -> HolomorphLoop:
    """
    Materialize the A-holomorph of L as a LoopTable of order |A|·n.

    Args:
        L: Base loop
        A: Group of automorphisms of L
        budget: Optional cap on |A|·n
        name: Label for the resulting table

    Returns:
        HolomorphLoop with index bookkeeping
    """
    for index, alpha in enumerate(A):
        failure = _automorphism_failure(L, alpha)
        if failure is not None:
            raise NotAnAutomorphism(index, failure)
    if not A.identity.is_identity:
        raise LoopIntegrityError("automorphism group does not list the identity first")

    n, m = L.n, A.order
    size = n * m
    if budget is not None and size > budget:
        raise BudgetExceeded(size, budget)

    position: Dict[Perm, int] = {alpha: g for g, alpha in enumerate(A)}
    T = L.table
    table = np.empty((size, size), dtype=np.intp)
    for g, alpha in enumerate(A):
        for h, beta in enumerate(A):
            block = T[beta.array] + position[alpha * beta] * n
            table[g * n:(g + 1) * n, h * n:(h + 1) * n] = block

    label = name or f"holomorph of {L.label} by a group of order {m}"
    h_table = validate_loop(table, name=label)
    if h_table.e != L.e:
        raise LoopIntegrityError(f"holomorph identity is {h_table.e}, expected (I, e) = {L.e}")
    logger.debug("Built %s (order %d)", label, size)
    return HolomorphLoop(base=L, group=A, h_table=h_table)


def all_subgroups(G: PermGroup) -> List[PermGroup]:
    """
    Every subgroup of G, by joining cyclic subgroups until nothing new appears.

    Returns:
        Subgroups sorted by order, then by element list
    """
    identity = G.identity
    cyclic: Dict[FrozenSet[Perm], Tuple[Perm, ...]] = {}
    for g in G:
        members = frozenset(closure([g], identity))
        cyclic.setdefault(members, () if g.is_identity else (g,))

    found: Dict[FrozenSet[Perm], Tuple[Perm, ...]] = dict(cyclic)
    frontier = list(found)
    while frontier:
        fresh = []
        for H in frontier:
            for C, c_gens in cyclic.items():
                if C <= H:
                    continue
                gens = found[H] + c_gens
                joined = frozenset(closure(list(gens), identity))
                if joined not in found:
                    found[joined] = gens
                    fresh.append(joined)
        frontier = fresh

    groups = [PermGroup(tuple(members), gens) for members, gens in found.items()]
    groups.sort(key=lambda grp: (grp.order, grp.elements))
    logger.debug("Group of order %d has %d subgroups", G.order, len(groups))
    return groups
