"""
Cayley-table loops, permutations, translations, divisions and inverses.

Elements are dense indices 0..n-1. Permutations act on the right, so
``p * q`` applies p first and then q: x(pq) = (xp)q. Every triple builder
and theorem check in the package relies on this single convention.
Divisions bind tighter than the product when reading identities:
x\\y·z means (x\\y)·z.
"""

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Hashable, Iterator, List, NamedTuple, Optional, Sequence, Set, Tuple

import numpy as np

from src.loop_theory.errors import (
    ClosureBoundExceeded,
    EntryOutOfRange,
    InvalidPermutation,
    LoopFileError,
    NoIdentity,
    NotLatinSquare,
    PointCountMismatch,
    RaggedInput,
)

logger = logging.getLogger(__name__)

COMPOSITION = "postfix"


@dataclass(frozen=True, order=True)
class Perm:
    """A bijection on n points; point i maps to image[i]."""

    image: Tuple[int, ...]

    def __post_init__(self):
        image = tuple(int(v) for v in self.image)
        if sorted(image) != list(range(len(image))):
            raise InvalidPermutation(f"{list(image)} is not a permutation of 0..{len(image) - 1}")
        object.__setattr__(self, "image", image)

    @classmethod
    def trusted(cls, image: Tuple[int, ...]) -> "Perm":
        """Wrap an image tuple already known to be a permutation."""
        perm = object.__new__(cls)
        object.__setattr__(perm, "image", image)
        return perm

    @property
    def n(self) -> int:
        return len(self.image)

    def __call__(self, x: int) -> int:
        return self.image[x]

    def __mul__(self, other: "Perm") -> "Perm":
        if other.n != self.n:
            raise PointCountMismatch(self.n, other.n)
        second = other.image
        return Perm.trusted(tuple(second[v] for v in self.image))

    def inverse(self) -> "Perm":
        inv = [0] * self.n
        for point, value in enumerate(self.image):
            inv[value] = point
        return Perm.trusted(tuple(inv))

    @property
    def is_identity(self) -> bool:
        return all(point == value for point, value in enumerate(self.image))

    @cached_property
    def array(self) -> np.ndarray:
        arr = np.array(self.image, dtype=np.intp)
        arr.setflags(write=False)
        return arr

    def cycles(self) -> List[Tuple[int, ...]]:
        """Non-trivial cycles, each starting at its smallest point."""
        seen = [False] * self.n
        result = []
        for start in range(self.n):
            if seen[start]:
                continue
            cycle = [start]
            seen[start] = True
            nxt = self.image[start]
            while nxt != start:
                cycle.append(nxt)
                seen[nxt] = True
                nxt = self.image[nxt]
            if len(cycle) > 1:
                result.append(tuple(cycle))
        return result

    def cycle_string(self, base: int = 1) -> str:
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + " ".join(str(p + base) for p in c) + ")" for c in cycles)

    def one_line(self, base: int = 1) -> str:
        return ",".join(str(v + base) for v in self.image)

    def __str__(self) -> str:
        return self.cycle_string()


def identity_perm(n: int) -> Perm:
    return Perm.trusted(tuple(range(n)))


def compose(p: Perm, q: Perm) -> Perm:
    """Apply p, then q."""
    return p * q


def invert(p: Perm) -> Perm:
    return p.inverse()


def closure(generators: Sequence, identity: Hashable, bound: Optional[int] = None) -> Set:
    """
    Breadth-first closure of ``generators`` under right multiplication.

    Works for any finite group elements supporting ``*``. Finiteness makes
    the result closed under inverses as well.

    Args:
        generators: Group elements
        identity: Identity element of the ambient group
        bound: Optional cap on the closure size

    Returns:
        Set of generated elements
    """
    seen = {identity}
    frontier = [identity]
    while frontier:
        next_frontier = []
        for element in frontier:
            for gen in generators:
                product = element * gen
                if product not in seen:
                    seen.add(product)
                    next_frontier.append(product)
                    if bound is not None and len(seen) > bound:
                        raise ClosureBoundExceeded(bound)
        frontier = next_frontier
    return seen


@dataclass(frozen=True)
class ElementSet:
    """Sorted, duplicate-free set of element indices of an order-n loop."""

    n: int
    members: Tuple[int, ...]

    def __post_init__(self):
        members = tuple(sorted(set(int(m) for m in self.members)))
        if members and (members[0] < 0 or members[-1] >= self.n):
            raise ValueError(f"members {members} outside 0..{self.n - 1}")
        object.__setattr__(self, "members", members)

    def __contains__(self, x: int) -> bool:
        return x in self._lookup

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __and__(self, other: "ElementSet") -> "ElementSet":
        return ElementSet(self.n, tuple(m for m in self.members if m in other))

    @cached_property
    def _lookup(self) -> frozenset:
        return frozenset(self.members)

    @property
    def is_full(self) -> bool:
        return len(self.members) == self.n

    def one_based(self) -> List[int]:
        return [m + 1 for m in self.members]


class ScanResult(NamedTuple):
    holds: bool
    witness: Optional[Tuple[int, ...]]


class LoopTable:
    """
    Validated, immutable Cayley table of a finite loop.

    Build instances through ``validate_loop``; the constructor trusts its
    input. Division tables come from row and column inversion.
    """

    def __init__(self, table, e: int, name: Optional[str] = None):
        table = np.array(table, dtype=np.intp)
        table.setflags(write=False)
        n = table.shape[0]
        idx = np.arange(n)

        ldiv = np.empty_like(table)
        ldiv[idx[:, None], table] = idx[None, :]
        rdiv = np.empty_like(table)
        rdiv[table, idx[None, :]] = idx[:, None]
        ldiv.setflags(write=False)
        rdiv.setflags(write=False)

        self.n = n
        self.e = int(e)
        self.name = name
        self._table = table
        self._ldiv = ldiv
        self._rdiv = rdiv
        self._rows = tuple(tuple(int(v) for v in row) for row in table)
        self._cols = tuple(tuple(int(v) for v in col) for col in table.T)
        self._ldiv_rows = tuple(tuple(int(v) for v in row) for row in ldiv)
        self._rdiv_rows = tuple(tuple(int(v) for v in row) for row in rdiv)
        self._linv = tuple(int(rdiv[self.e, x]) for x in range(n))
        self._rinv = tuple(int(ldiv[x, self.e]) for x in range(n))

    # --- Arithmetic ---

    def mul(self, x: int, y: int) -> int:
        return self._rows[x][y]

    def ldiv(self, x: int, y: int) -> int:
        """x\\y: the unique z with x·z = y."""
        return self._ldiv_rows[x][y]

    def rdiv(self, x: int, y: int) -> int:
        """x/y: the unique z with z·y = x."""
        return self._rdiv_rows[x][y]

    def left_inverse(self, x: int) -> int:
        return self._linv[x]

    def right_inverse(self, x: int) -> int:
        return self._rinv[x]

    def left_translation(self, x: int) -> Perm:
        return self._left_translations[x]

    def right_translation(self, x: int) -> Perm:
        return self._right_translations[x]

    @cached_property
    def _left_translations(self) -> Tuple[Perm, ...]:
        return tuple(Perm.trusted(row) for row in self._rows)

    @cached_property
    def _right_translations(self) -> Tuple[Perm, ...]:
        return tuple(Perm.trusted(col) for col in self._cols)

    # --- Views ---

    @property
    def product_rows(self) -> Tuple[Tuple[int, ...], ...]:
        """The table as nested tuples, for scalar inner loops."""
        return self._rows

    @property
    def table(self) -> np.ndarray:
        return self._table

    @property
    def ldiv_table(self) -> np.ndarray:
        return self._ldiv

    @property
    def rdiv_table(self) -> np.ndarray:
        return self._rdiv

    @property
    def elements(self) -> range:
        return range(self.n)

    @property
    def label(self) -> str:
        return self.name or f"loop of order {self.n}"

    def rows(self) -> List[List[int]]:
        return [list(row) for row in self._rows]

    def __eq__(self, other) -> bool:
        if not isinstance(other, LoopTable):
            return NotImplemented
        return self.e == other.e and self._rows == other._rows

    def __hash__(self) -> int:
        return hash((self.e, self._rows))

    def __repr__(self) -> str:
        return f"LoopTable(n={self.n}, e={self.e}, name={self.name!r})"


def validate_loop(raw: Sequence[Sequence[int]], name: Optional[str] = None) -> LoopTable:
    """
    Check a 0-based grid and return it as a LoopTable.

    Args:
        raw: n×n grid of element indices
        name: Optional label carried into reports

    Returns:
        LoopTable with its detected identity

    Raises:
        RaggedInput, EntryOutOfRange, NotLatinSquare, NoIdentity
    """
    rows = [list(row) for row in raw]
    n = len(rows)
    if n == 0:
        raise LoopFileError("table is empty")
    for r, row in enumerate(rows):
        if len(row) != n:
            raise RaggedInput(r, len(row), n)
        for c, value in enumerate(row):
            if not 0 <= int(value) < n:
                raise EntryOutOfRange(r, c, int(value), n)

    for r in range(n):
        first_seen = {}
        for c in range(n):
            value = int(rows[r][c])
            if value in first_seen:
                raise NotLatinSquare("row", r, value, (first_seen[value], c))
            first_seen[value] = c
    for c in range(n):
        first_seen = {}
        for r in range(n):
            value = int(rows[r][c])
            if value in first_seen:
                raise NotLatinSquare("column", c, value, (first_seen[value], r))
            first_seen[value] = r

    table = np.array(rows, dtype=np.intp)
    natural = np.arange(n)
    for e in range(n):
        if np.array_equal(table[e], natural) and np.array_equal(table[:, e], natural):
            return LoopTable(table, e, name=name)
    raise NoIdentity()


def _check(L: LoopTable, *xs: int) -> None:
    for x in xs:
        if not 0 <= x < L.n:
            raise IndexError(f"element {x} outside 0..{L.n - 1}")


def multiply(L: LoopTable, x: int, y: int) -> int:
    _check(L, x, y)
    return L.mul(x, y)


def left_divide(L: LoopTable, x: int, y: int) -> int:
    _check(L, x, y)
    return L.ldiv(x, y)


def right_divide(L: LoopTable, x: int, y: int) -> int:
    _check(L, x, y)
    return L.rdiv(x, y)


def left_translation(L: LoopTable, x: int) -> Perm:
    _check(L, x)
    return L.left_translation(x)


def right_translation(L: LoopTable, x: int) -> Perm:
    _check(L, x)
    return L.right_translation(x)


def left_inverse(L: LoopTable, x: int) -> int:
    _check(L, x)
    return L.left_inverse(x)


def right_inverse(L: LoopTable, x: int) -> int:
    _check(L, x)
    return L.right_inverse(x)


def is_associative(L: LoopTable) -> ScanResult:
    """
    Scan (xy)z = x(yz) over all triples, one x-slice at a time.

    Returns:
        ScanResult with the lexicographically first violating (x, y, z)
    """
    T = L.table
    for x in range(L.n):
        left = T[T[x]]
        right = T[x][T]
        bad = np.argwhere(left != right)
        if bad.size:
            y, z = bad[0]
            return ScanResult(False, (x, int(y), int(z)))
    return ScanResult(True, None)


def is_commutative(L: LoopTable) -> ScanResult:
    bad = np.argwhere(L.table != L.table.T)
    if bad.size:
        x, y = bad[0]
        return ScanResult(False, (int(x), int(y)))
    return ScanResult(True, None)


# --- Isomorphism search ---

def _element_invariants(L: LoopTable) -> List[tuple]:
    """Per-element data preserved by every isomorphism."""
    invariants = []
    for x in range(L.n):
        right_powers = [x]
        p = L.mul(x, x)
        while p not in right_powers:
            right_powers.append(p)
            p = L.mul(p, x)
        left_powers = [x]
        q = L.mul(x, x)
        while q not in left_powers:
            left_powers.append(q)
            q = L.mul(x, q)
        invariants.append((
            L.mul(x, x) == L.e,
            L.left_inverse(x) == L.right_inverse(x),
            len(right_powers),
            right_powers.index(p),
            len(left_powers),
        ))
    return invariants


def isomorphisms(L1: LoopTable, L2: LoopTable) -> Iterator[Perm]:
    """
    Yield every Perm f with f(x·y) = f(x)·f(y), mapping L1 onto L2.

    Points are assigned identity first, then in index order; each new
    assignment is checked against all products of already-assigned points,
    including injectivity of products whose preimage is still open.
    """
    n = L1.n
    if n != L2.n:
        return
    inv1 = _element_invariants(L1)
    inv2 = _element_invariants(L2)
    if sorted(inv1) != sorted(inv2):
        return

    order = [L1.e] + [x for x in range(n) if x != L1.e]
    f = [-1] * n
    used = [False] * n

    def consistent(k: int) -> bool:
        x = order[k]
        for i in range(k + 1):
            a = order[i]
            for p, q in ((a, x), (x, a)):
                image = L2.mul(f[p], f[q])
                assigned = f[L1.mul(p, q)]
                if assigned != -1:
                    if assigned != image:
                        return False
                elif used[image]:
                    return False
        return True

    def extend(k: int) -> Iterator[Perm]:
        if k == n:
            yield Perm.trusted(tuple(f))
            return
        x = order[k]
        for v in range(n):
            if used[v] or inv2[v] != inv1[x]:
                continue
            f[x] = v
            used[v] = True
            if consistent(k):
                yield from extend(k + 1)
            f[x] = -1
            used[v] = False

    if inv1[L1.e] != inv2[L2.e]:
        return
    f[L1.e] = L2.e
    used[L2.e] = True
    if consistent(0):
        yield from extend(1)


def loops_isomorphic(L1: LoopTable, L2: LoopTable) -> Optional[Perm]:
    """First isomorphism L1 → L2 found by the pruned search, or None."""
    return next(isomorphisms(L1, L2), None)


def check_points(L: LoopTable, *perms: Perm) -> None:
    for p in perms:
        if p.n != L.n:
            raise PointCountMismatch(L.n, p.n)
