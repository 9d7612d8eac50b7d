"""Exception hierarchy shared by every layer; exit codes are read by the CLI."""

from typing import Optional, Tuple


class LoopError(Exception):
    """Base class for all engine errors."""

    exit_code = 1


# --- Input errors (exit code 2) ---

class LoopInputError(LoopError):
    exit_code = 2


class RaggedInput(LoopInputError):
    def __init__(self, row: int, length: int, expected: int):
        self.row = row
        self.length = length
        self.expected = expected
        super().__init__(f"row {row + 1} has {length} entries, expected {expected}")


class EntryOutOfRange(LoopInputError):
    def __init__(self, row: int, col: int, value: int, n: int):
        self.row = row
        self.col = col
        self.value = value
        super().__init__(
            f"entry at row {row + 1}, column {col + 1} is {value + 1}; expected 1..{n}"
        )


class NotLatinSquare(LoopInputError):
    """A row or column repeats a value."""

    def __init__(self, axis: str, index: int, value: int, positions: Tuple[int, int]):
        self.axis = axis
        self.index = index
        self.value = value
        self.positions = positions
        other = "column" if axis == "row" else "row"
        super().__init__(
            f"{axis} {index + 1} repeats value {value + 1} "
            f"(at {other}s {positions[0] + 1} and {positions[1] + 1})"
        )


class NoIdentity(LoopInputError):
    def __init__(self):
        super().__init__("table has no two-sided identity element")


class PointCountMismatch(LoopInputError):
    def __init__(self, expected: int, got: int):
        self.expected = expected
        self.got = got
        super().__init__(f"permutation acts on {got} points, loop has order {expected}")


class InvalidPermutation(LoopInputError):
    pass


class NotAnAutomorphism(LoopInputError):
    """Generator at ``index`` does not respect the loop product."""

    def __init__(self, index: int, pair: Optional[Tuple[int, int]] = None):
        self.index = index
        self.pair = pair
        detail = ""
        if pair is not None:
            detail = f" (fails at x={pair[0] + 1}, y={pair[1] + 1})"
        super().__init__(f"generator {index + 1} is not an automorphism{detail}")


class LoopFileError(LoopInputError):
    def __init__(self, message: str, path: Optional[str] = None, line: Optional[int] = None):
        self.path = path
        self.line = line
        where = path or "<input>"
        if line is not None:
            where = f"{where}:{line}"
        super().__init__(f"{where}: {message}")


class UnknownName(LoopInputError):
    """Unknown check, filter, map or builtin name."""

    def __init__(self, kind: str, name: str, known):
        self.kind = kind
        self.name = name
        super().__init__(f"unknown {kind} '{name}'; expected one of: {', '.join(known)}")


# --- Bound errors (exit code 3) ---

class LoopBoundError(LoopError):
    exit_code = 3


class SearchBoundExceeded(LoopBoundError):
    def __init__(self, n: int, bound: int):
        self.n = n
        self.bound = bound
        super().__init__(f"order {n} exceeds the search bound {bound}")


class ClosureBoundExceeded(LoopBoundError):
    def __init__(self, bound: int):
        self.bound = bound
        super().__init__(f"generated group exceeds {bound} elements")


class BudgetExceeded(LoopBoundError):
    def __init__(self, size: int, budget: int):
        self.size = size
        self.budget = budget
        super().__init__(f"holomorph order {size} exceeds the scan budget {budget}")


class BoundExceeded(LoopBoundError):
    def __init__(self, order: int, bound: int, limited: bool = False):
        self.order = order
        self.bound = bound
        suffix = " with a limit" if limited else " without --limit"
        super().__init__(f"enumeration order {order} exceeds the bound {bound}{suffix}")


# --- Internal consistency ---

class LoopIntegrityError(LoopError):
    """A structural assertion failed; indicates a table or implementation bug."""


class IsoViolation(LoopError):
    def __init__(self, map_name: str, witness, reason: str):
        self.map_name = map_name
        self.witness = witness
        super().__init__(f"{map_name}: {reason} (witness {witness})")
