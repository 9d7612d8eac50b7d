"""Named loops (all groups) for tests, sweeps and ``builtin:NAME`` inputs."""

import logging
from typing import Callable, Dict, Optional, Sequence, Tuple

import numpy as np

from src.loop_theory.core_tables import LoopTable, Perm, closure, identity_perm, validate_loop
from src.loop_theory.errors import LoopIntegrityError, UnknownName

logger = logging.getLogger(__name__)


def _from_elements(elements: Sequence, product: Callable, name: str) -> LoopTable:
    """Cayley table of a finite set closed under ``product``; identity must come first."""
    index = {x: i for i, x in enumerate(elements)}
    table = [[index[product(x, y)] for y in elements] for x in elements]
    L = validate_loop(table, name=name)
    if L.e != 0:
        raise LoopIntegrityError(f"{name}: identity is not the first element")
    return L


def cyclic(n: int) -> LoopTable:
    idx = np.arange(n)
    return validate_loop((idx[:, None] + idx[None, :]) % n, name=f"Z{n}")


def direct_product(L1: LoopTable, L2: LoopTable, name: Optional[str] = None) -> LoopTable:
    """Pairs (a, b) at index a·n2 + b with componentwise product."""
    n1, n2 = L1.n, L2.n
    T = L1.table[:, None, :, None] * n2 + L2.table[None, :, None, :]
    label = name or f"{L1.label} x {L2.label}"
    return validate_loop(T.reshape(n1 * n2, n1 * n2), name=label)


def klein_four() -> LoopTable:
    return direct_product(cyclic(2), cyclic(2), name="V4")


def _perm_group_table(generators: Sequence[Perm], name: str) -> LoopTable:
    n = generators[0].n
    elements = sorted(closure(list(generators), identity_perm(n)))
    return _from_elements(elements, lambda p, q: p * q, name)


def symmetric3() -> LoopTable:
    return _perm_group_table([Perm((1, 0, 2)), Perm((1, 2, 0))], "S3")


def dihedral4() -> LoopTable:
    """Symmetries of a square acting on its corners."""
    rotation = Perm((1, 2, 3, 0))
    reflection = Perm((0, 3, 2, 1))
    return _perm_group_table([rotation, reflection], "D4")


# Quaternion units as (sign, unit) with unit in "1ijk".
_UNIT_PRODUCTS: Dict[Tuple[str, str], Tuple[int, str]] = {
    ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
    ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
    ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1"),
}


def _quaternion_product(x: Tuple[int, str], y: Tuple[int, str]) -> Tuple[int, str]:
    (s, u), (t, v) = x, y
    if u == "1":
        return s * t, v
    if v == "1":
        return s * t, u
    sign, unit = _UNIT_PRODUCTS[(u, v)]
    return s * t * sign, unit


def quaternion8() -> LoopTable:
    elements = [(sign, unit) for unit in "1ijk" for sign in (1, -1)]
    return _from_elements(elements, _quaternion_product, "Q8")


BUILTIN: Dict[str, Callable[[], LoopTable]] = {
    **{f"Z{n}": (lambda n=n: cyclic(n)) for n in range(1, 9)},
    "V4": klein_four,
    "S3": symmetric3,
    "D4": dihedral4,
    "Q8": quaternion8,
}


def builtin_loop(name: str) -> LoopTable:
    key = name.strip().upper()
    if key not in BUILTIN:
        raise UnknownName("builtin loop", name, BUILTIN)
    return BUILTIN[key]()
