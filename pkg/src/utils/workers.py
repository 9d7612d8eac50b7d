"""Process-pool fan-out with results returned in input order."""

import logging
import multiprocessing
from typing import Callable, List, Sequence, TypeVar

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def parallel_map(func: Callable[[T], R], items: Sequence[T], jobs: int = 1) -> List[R]:
    """
    Apply ``func`` to every item, optionally across worker processes.

    ``func`` must be a module-level function so it pickles. The returned
    list follows the order of ``items`` whatever the worker count.

    Args:
        func: Work function
        items: Independent work units
        jobs: Worker processes; 1 runs in-process

    Returns:
        Results in input order
    """
    items = list(items)
    if jobs <= 1 or len(items) < 2:
        return [func(item) for item in items]

    processes = min(jobs, multiprocessing.cpu_count(), len(items))
    logger.debug("Fanning %d work units over %d processes", len(items), processes)
    with multiprocessing.Pool(processes=processes) as pool:
        return pool.map(func, items)
