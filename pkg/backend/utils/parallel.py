"""
Order-preserving thread fan-out used by enumeration and verification.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, Optional, TypeVar

from config import FS_THREADS

logger = logging.getLogger(__name__)

T = TypeVar('T')
R = TypeVar('R')


def resolve_threads(threads: Optional[int] = None) -> int:
    """Explicit thread count, else FS_THREADS; never below 1."""
    if threads is None:
        threads = FS_THREADS
    return max(1, int(threads))


def ordered_map(fn: Callable[[T], R], items: Iterable[T], threads: Optional[int] = None) -> List[R]:
    """
    Apply fn to every item, results in input order regardless of thread count.
    """
    work = list(items)
    workers = min(resolve_threads(threads), len(work))
    if workers <= 1:
        return [fn(item) for item in work]

    logger.debug(f"Fanning out {len(work)} tasks over {workers} threads")
    with ThreadPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(fn, work))
