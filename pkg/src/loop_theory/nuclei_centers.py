"""Nuclei, centrum and center of a finite loop, computed by definition scans."""

import logging
from dataclasses import dataclass
from typing import Dict, List

import numpy as np

from src.loop_theory.core_tables import ElementSet, LoopTable
from src.loop_theory.errors import LoopIntegrityError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class NucleiReport:
    n_lambda: ElementSet
    n_rho: ElementSet
    n_mu: ElementSet
    nucleus: ElementSet
    centrum: ElementSet
    center: ElementSet

    def as_dict(self) -> Dict[str, List[int]]:
        """1-based members under the report field names."""
        return {
            "nLambda": self.n_lambda.one_based(),
            "nRho": self.n_rho.one_based(),
            "nMu": self.n_mu.one_based(),
            "nucleus": self.nucleus.one_based(),
            "centrum": self.centrum.one_based(),
            "center": self.center.one_based(),
        }


def _assert_subloop(L: LoopTable, members: ElementSet, label: str) -> None:
    if L.e not in members:
        raise LoopIntegrityError(f"{label} does not contain the identity")
    for a in members:
        for b in members:
            if L.mul(a, b) not in members:
                raise LoopIntegrityError(
                    f"{label} not closed: {a + 1}·{b + 1} = {L.mul(a, b) + 1}"
                )


def left_nucleus(L: LoopTable) -> ElementSet:
    """Elements a with a·yz = ay·z for all y, z."""
    T = L.table
    members = [a for a in range(L.n) if np.array_equal(T[a][T], T[T[a]])]
    result = ElementSet(L.n, tuple(members))
    _assert_subloop(L, result, "left nucleus")
    return result


def right_nucleus(L: LoopTable) -> ElementSet:
    """Elements a with zy·a = z·ya for all y, z."""
    T = L.table
    members = []
    for a in range(L.n):
        # [z, y] -> (zy)a  versus  z(ya)
        if np.array_equal(T[:, a][T], T[:, T[:, a]]):
            members.append(a)
    result = ElementSet(L.n, tuple(members))
    _assert_subloop(L, result, "right nucleus")
    return result


def middle_nucleus(L: LoopTable) -> ElementSet:
    """Elements a with za·y = z·ay for all y, z."""
    T = L.table
    members = []
    for a in range(L.n):
        # [z, y] -> (za)y  versus  z(ay)
        if np.array_equal(T[T[:, a]], T[:, T[a]]):
            members.append(a)
    result = ElementSet(L.n, tuple(members))
    _assert_subloop(L, result, "middle nucleus")
    return result


def nucleus(L: LoopTable) -> ElementSet:
    return left_nucleus(L) & right_nucleus(L) & middle_nucleus(L)


def centrum(L: LoopTable) -> ElementSet:
    """Elements commuting with everything."""
    T = L.table
    members = [a for a in range(L.n) if np.array_equal(T[a], T[:, a])]
    return ElementSet(L.n, tuple(members))


def center(L: LoopTable) -> ElementSet:
    return nucleus(L) & centrum(L)


def nuclei_report(L: LoopTable) -> NucleiReport:
    n_lambda = left_nucleus(L)
    n_rho = right_nucleus(L)
    n_mu = middle_nucleus(L)
    core = n_lambda & n_rho & n_mu
    comm = centrum(L)
    report = NucleiReport(
        n_lambda=n_lambda,
        n_rho=n_rho,
        n_mu=n_mu,
        nucleus=core,
        centrum=comm,
        center=core & comm,
    )
    logger.debug(
        "Nuclei of %s: |Nλ|=%d |Nρ|=%d |Nμ|=%d |Z|=%d",
        L.label, len(n_lambda), len(n_rho), len(n_mu), len(report.center),
    )
    return report
