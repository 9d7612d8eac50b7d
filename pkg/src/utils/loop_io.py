"""
Loop files, permutation literals and JSON payloads.

File format: optional ``#`` comment lines, then the order n, then n rows of
n whitespace-separated entries in 1..n. Streams separate tables with lines
holding only ``---``. Everything shown to people is 1-based; everything
returned to the library is 0-based.
"""

import logging
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence

from pydantic import BaseModel

from src.enumeration.enumerator import FilterCounts, FilterTally
from src.loop_theory.autotopy import AutotopismTriple, PermGroup, RegularSets
from src.loop_theory.core_tables import (
    LoopTable,
    Perm,
    is_associative,
    is_commutative,
    validate_loop,
)
from src.loop_theory.errors import InvalidPermutation, LoopFileError, PointCountMismatch
from src.loop_theory.nuclei_centers import NucleiReport
from src.utils.builtin_loops import builtin_loop
from src.verification.checks import CheckResult, TheoremReport

logger = logging.getLogger(__name__)

STREAM_SEPARATOR = "---"
BUILTIN_PREFIX = "builtin:"


# --- Loop files ---

def parse_loop_text(text: str, path: Optional[str] = None, name: Optional[str] = None) -> LoopTable:
    """
    Parse one loop in the text format.

    Args:
        text: File contents
        path: Source path used in diagnostics
        name: Label for the loop

    Raises:
        LoopFileError: malformed order line, non-integer entry, wrong row count
        RaggedInput, EntryOutOfRange, NotLatinSquare, NoIdentity: from validation
    """
    lines = [
        (number, line.strip())
        for number, line in enumerate(text.splitlines(), start=1)
        if line.strip() and not line.strip().startswith("#")
    ]
    if not lines:
        raise LoopFileError("no table found", path)

    number, first = lines[0]
    try:
        n = int(first)
    except ValueError:
        raise LoopFileError(f"expected the order, found '{first}'", path, number)
    if n < 1:
        raise LoopFileError(f"order must be positive, found {n}", path, number)

    body = lines[1:]
    if len(body) != n:
        where = body[n][0] if len(body) > n else None
        raise LoopFileError(f"expected {n} rows, found {len(body)}", path, where)

    grid: List[List[int]] = []
    for number, line in body:
        try:
            grid.append([int(token) - 1 for token in line.split()])
        except ValueError:
            raise LoopFileError(f"non-integer entry in '{line}'", path, number)
    return validate_loop(grid, name=name)


def read_loop_file(path) -> LoopTable:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as e:
        raise LoopFileError(f"cannot read file: {e.strerror}", str(path))
    return parse_loop_text(text, path=str(path), name=path.stem)


def load_loop(source: str) -> LoopTable:
    """A loop from a file path or a ``builtin:NAME`` reference."""
    if source.startswith(BUILTIN_PREFIX):
        return builtin_loop(source[len(BUILTIN_PREFIX):])
    return read_loop_file(source)


def format_loop(L: LoopTable, header: Sequence[str] = ()) -> str:
    width = len(str(L.n))
    lines = [f"# {line}" for line in header]
    lines.append(str(L.n))
    for row in L.rows():
        lines.append(" ".join(str(v + 1).rjust(width) for v in row))
    return "\n".join(lines) + "\n"


def write_loop_file(path, L: LoopTable, header: Sequence[str] = ()) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(format_loop(L, header))
    logger.debug("Wrote %s", path)
    return path


def read_loop_stream(text: str, path: Optional[str] = None) -> List[LoopTable]:
    chunks: List[List[str]] = [[]]
    for line in text.splitlines():
        if line.strip() == STREAM_SEPARATOR:
            chunks.append([])
        else:
            chunks[-1].append(line)
    loops = []
    for chunk in chunks:
        body = "\n".join(chunk)
        if any(line.strip() and not line.strip().startswith("#") for line in chunk):
            loops.append(parse_loop_text(body, path=path, name=f"stream loop {len(loops) + 1}"))
    return loops


def format_loop_stream(loops: Iterable[LoopTable], headers: Optional[Sequence[Sequence[str]]] = None) -> str:
    parts = []
    for k, L in enumerate(loops):
        header = headers[k] if headers else ()
        parts.append(format_loop(L, header))
    return f"{STREAM_SEPARATOR}\n".join(parts)


# --- Permutation literals ---

def parse_perm_literal(text: str, n: Optional[int] = None) -> Perm:
    """
    Parse "1,3,2" (1-based images of 1, 2, 3) into a 0-based Perm.

    Raises:
        InvalidPermutation: non-integer token or not a bijection
        PointCountMismatch: when ``n`` is given and differs
    """
    tokens = [t for t in text.replace(" ", "").split(",") if t]
    try:
        image = tuple(int(t) - 1 for t in tokens)
    except ValueError:
        raise InvalidPermutation(f"'{text}' is not a comma-separated list of integers")
    perm = Perm(image)
    if n is not None and perm.n != n:
        raise PointCountMismatch(n, perm.n)
    return perm


def parse_perm_list(values: Sequence[str], n: Optional[int] = None) -> List[Perm]:
    """Literals from repeated flags, each possibly holding several ``;``-separated perms."""
    return [
        parse_perm_literal(literal, n)
        for value in values
        for literal in value.split(";")
        if literal.strip()
    ]


# --- JSON payloads ---

def _one_based(values) -> List[int]:
    return [int(v) + 1 for v in values]


class PropertiesPayload(BaseModel):
    loop: str
    order: int
    identity: int
    associative: bool
    associativity_witness: Optional[List[int]] = None
    commutative: bool
    commutativity_witness: Optional[List[int]] = None
    left_inverses: List[int]
    right_inverses: List[int]

    @classmethod
    def from_loop(cls, L: LoopTable) -> "PropertiesPayload":
        assoc = is_associative(L)
        comm = is_commutative(L)
        return cls(
            loop=L.label,
            order=L.n,
            identity=L.e + 1,
            associative=assoc.holds,
            associativity_witness=_one_based(assoc.witness) if assoc.witness else None,
            commutative=comm.holds,
            commutativity_witness=_one_based(comm.witness) if comm.witness else None,
            left_inverses=_one_based(L.left_inverse(x) for x in L.elements),
            right_inverses=_one_based(L.right_inverse(x) for x in L.elements),
        )


class NucleiPayload(BaseModel):
    loop: str
    nLambda: List[int]
    nRho: List[int]
    nMu: List[int]
    nucleus: List[int]
    centrum: List[int]
    center: List[int]

    @classmethod
    def from_report(cls, L: LoopTable, report: NucleiReport) -> "NucleiPayload":
        return cls(loop=L.label, **report.as_dict())


class PermGroupPayload(BaseModel):
    label: str
    order: int
    generators: List[str]
    elements: List[List[int]]

    @classmethod
    def from_group(cls, label: str, group: PermGroup) -> "PermGroupPayload":
        return cls(
            label=label,
            order=group.order,
            generators=[g.cycle_string() for g in group.generators],
            elements=[_one_based(p.image) for p in group],
        )


class TriplesPayload(BaseModel):
    count: int
    triples: List[List[List[int]]]

    @classmethod
    def from_triples(cls, triples: Sequence[AutotopismTriple]) -> "TriplesPayload":
        return cls(
            count=len(triples),
            triples=[[_one_based(t.a.image), _one_based(t.b.image), _one_based(t.c.image)] for t in triples],
        )


class RegularSetsPayload(BaseModel):
    p_set: PermGroupPayload
    lambda_set: PermGroupPayload
    phi_set: PermGroupPayload
    psi_set: PermGroupPayload
    adjoint_pairs: List[List[List[int]]]

    @classmethod
    def from_sets(cls, sets: RegularSets) -> "RegularSetsPayload":
        return cls(
            p_set=PermGroupPayload.from_group("rho-regular", sets.p_set),
            lambda_set=PermGroupPayload.from_group("lambda-regular", sets.lambda_set),
            phi_set=PermGroupPayload.from_group("mu-regular", sets.phi_set),
            psi_set=PermGroupPayload.from_group("adjoints", sets.psi_set),
            adjoint_pairs=[[_one_based(u.image), _one_based(v.image)] for u, v in sets.adjoint_pairs],
        )


class CheckResultPayload(BaseModel):
    name: str
    status: str
    holds: Optional[bool] = None
    statement: str = ""
    witness: Optional[List[int]] = None
    witness_layout: str = ""
    scanned: int = 0
    reason: Optional[str] = None
    notes: Dict[str, Any] = {}
    parts: List["CheckResultPayload"] = []

    @classmethod
    def from_result(cls, result: CheckResult) -> "CheckResultPayload":
        return cls(
            name=result.name,
            status=result.status,
            holds=result.holds,
            statement=result.statement,
            witness=list(result.display_witness()) if result.witness is not None else None,
            witness_layout=result.layout,
            scanned=result.scanned,
            reason=result.reason,
            notes=dict(sorted(result.notes.items())),
            parts=[cls.from_result(p) for p in result.parts],
        )


CheckResultPayload.model_rebuild()


class TheoremReportPayload(BaseModel):
    loop: str
    group: str
    loop_order: int
    group_order: int
    all_hold: bool
    exit_code: int
    results: List[CheckResultPayload]
    equivalences: Dict[str, bool]
    contradictions: List[str]

    @classmethod
    def from_report(cls, report: TheoremReport) -> "TheoremReportPayload":
        return cls(
            loop=report.loop_id,
            group=report.group_id,
            loop_order=report.loop_order,
            group_order=report.group_order,
            all_hold=report.all_hold,
            exit_code=report.exit_code,
            results=[CheckResultPayload.from_result(r) for r in report.results],
            equivalences=report.equivalences,
            contradictions=report.contradictions,
        )


class FilterTallyPayload(BaseModel):
    name: str
    count: int
    first_position: Optional[int] = None
    first_table: Optional[List[List[int]]] = None

    @classmethod
    def from_tally(cls, tally: FilterTally) -> "FilterTallyPayload":
        table = None
        if tally.first_table is not None:
            table = [_one_based(row) for row in tally.first_table.rows()]
        return cls(name=tally.name, count=tally.count, first_position=tally.first_position, first_table=table)


class EnumerationPayload(BaseModel):
    order: int
    filters: List[str]
    scanned: int
    complete: bool
    emitted: int
    tallies: List[FilterTallyPayload]

    @classmethod
    def from_counts(cls, counts: FilterCounts, emitted: int) -> "EnumerationPayload":
        return cls(
            order=counts.order,
            filters=list(counts.filters),
            scanned=counts.scanned,
            complete=counts.complete,
            emitted=emitted,
            tallies=[FilterTallyPayload.from_tally(t) for t in counts.tallies],
        )


class ValidationPayload(BaseModel):
    loop: str
    valid: bool
    order: int
    identity: int


class HolomorphPayload(BaseModel):
    loop: str
    order: int
    group_order: int
    generators: List[str]
    table: List[List[int]]


def to_json(payload: BaseModel) -> str:
    return payload.model_dump_json(indent=2)


