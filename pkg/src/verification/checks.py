"""Check results, bundles and theorem reports."""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

from src.loop_theory.errors import LoopIntegrityError

logger = logging.getLogger(__name__)

HOLDS = "holds"
FAILS = "fails"
SKIPPED = "skipped"

# Witness layout letters naming loop elements; every other letter is an
# index (a/p into A, k a side or kind flag) and is shown as stored.
ELEMENT_COORDINATES = frozenset("xyzuvi")


@dataclass(frozen=True)
class CheckResult:
    """
    Outcome of one check or of a bundle of sub-checks.

    Witnesses are 0-based instance tuples. ``layout`` has one letter per
    coordinate: x, y, z, u, v, i for loop elements, a and p for indices
    into A, k for a side or kind flag.
    """

    name: str
    status: str
    statement: str = ""
    witness: Optional[Tuple[Any, ...]] = None
    scanned: int = 0
    parts: Tuple["CheckResult", ...] = ()
    notes: Dict[str, Any] = field(default_factory=dict)
    reason: Optional[str] = None
    layout: str = ""

    @property
    def holds(self) -> Optional[bool]:
        if self.status == SKIPPED:
            return None
        return self.status == HOLDS

    @property
    def failed(self) -> bool:
        return self.status == FAILS

    def leaves(self) -> List["CheckResult"]:
        if not self.parts:
            return [self]
        return [leaf for part in self.parts for leaf in part.leaves()]

    def display_witness(self) -> Optional[Tuple[int, ...]]:
        """Witness with loop elements shifted to 1-based; indices and flags unchanged."""
        if self.witness is None:
            return None
        return tuple(
            int(v) + 1 if kind in ELEMENT_COORDINATES else int(v)
            for kind, v in zip(self.layout, self.witness)
        )

    def part(self, name: str) -> "CheckResult":
        for p in self.parts:
            if p.name == name or p.name.endswith("." + name):
                return p
        raise KeyError(name)


def passed(name: str, statement: str, scanned: int, **notes) -> CheckResult:
    return CheckResult(name=name, status=HOLDS, statement=statement, scanned=scanned, notes=dict(notes))


def failed(name: str, statement: str, witness: Tuple, scanned: int, layout: str, **notes) -> CheckResult:
    witness = tuple(witness)
    if len(layout) != len(witness):
        raise LoopIntegrityError(f"{name}: layout {layout!r} does not fit witness {witness}")
    return CheckResult(
        name=name, status=FAILS, statement=statement, witness=witness,
        scanned=scanned, notes=dict(notes), layout=layout,
    )


def skipped(name: str, reason: str) -> CheckResult:
    logger.warning("⚠️ %s skipped: %s", name, reason)
    return CheckResult(name=name, status=SKIPPED, reason=reason)


def bundle(name: str, parts: Sequence[CheckResult], statement: str = "", **notes) -> CheckResult:
    """Combine sub-checks; the first failing part supplies the witness."""
    parts = tuple(parts)
    failing = [p for p in parts if p.status == FAILS]
    if failing:
        status = FAILS
    elif parts and all(p.status == SKIPPED for p in parts):
        status = SKIPPED
    else:
        status = HOLDS
    witness = failing[0].witness if failing else None
    layout = failing[0].layout if failing else ""
    if failing:
        notes.setdefault("failed_parts", [p.name for p in failing])
    return CheckResult(
        name=name,
        status=status,
        statement=statement,
        witness=witness,
        layout=layout,
        scanned=sum(p.scanned for p in parts),
        parts=parts,
        notes=notes,
    )


@dataclass
class TheoremReport:
    loop_id: str
    group_id: str
    loop_order: int
    group_order: int
    results: List[CheckResult]
    equivalences: Dict[str, bool] = field(default_factory=dict)
    contradictions: List[str] = field(default_factory=list)

    @property
    def verdicts(self) -> Dict[str, Optional[bool]]:
        """Every check and sub-check, in report order."""
        verdicts: Dict[str, Optional[bool]] = {}

        def visit(result: CheckResult) -> None:
            verdicts[result.name] = result.holds
            for part in result.parts:
                visit(part)

        for result in self.results:
            visit(result)
        return verdicts

    @property
    def skipped(self) -> List[str]:
        return [r.name for r in self.results if r.status == SKIPPED]

    @property
    def all_hold(self) -> bool:
        return all(r.status != FAILS for r in self.results)

    @property
    def exit_code(self) -> int:
        return 0 if self.all_hold else 1

    def result(self, name: str) -> CheckResult:
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)
