"""Trial farming with a worker cap and ordered reduction."""

from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterator, TypeVar

T = TypeVar("T")


def trial_chunks(trials: int, chunk_size: int) -> Iterator[range]:
    """Consecutive trial index ranges of at most ``chunk_size`` trials."""
    if trials < 0:
        raise ValueError(f"trials must be non-negative, got {trials}")
    for start in range(0, trials, chunk_size):
        yield range(start, min(start + chunk_size, trials))


def map_chunks(func: Callable[[range], T], trials: int, chunk_size: int, threads: int = 1) -> list[T]:
    """Apply ``func`` to every chunk, results listed in trial order.

    The chunk boundaries depend on ``chunk_size`` only, so the results do not depend on
    ``threads``.
    """
    chunks = list(trial_chunks(trials, chunk_size))
    if threads <= 1 or len(chunks) <= 1:
        return [func(chunk) for chunk in chunks]

    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(func, chunks))


# doubles held per chunk in one (trials, nodes, width) work array
_CHUNK_BUDGET = 2**23


def bounded_chunk_size(chunk_size: int, nodes: int, width: int) -> int:
    """``chunk_size`` reduced so one ``(chunk, nodes, width)`` array stays within the memory cap.

    Depends only on its arguments, never on the number of workers.
    """
    return max(1, min(int(chunk_size), _CHUNK_BUDGET // max(1, nodes * width)))
