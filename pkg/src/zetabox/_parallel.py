"""Order-preserving parallel map with a worker cap from ``ZETABOX_THREADS``."""
import os
from concurrent.futures import ThreadPoolExecutor

from .errors import DomainError


def worker_count():
    raw = os.environ.get("ZETABOX_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise DomainError(f"ZETABOX_THREADS must be an integer, got {raw!r}") from None
    if n < 1:
        raise DomainError("ZETABOX_THREADS must be >= 1")
    return n


def ordered_map(func, items):
    """``[func(x) for x in items]``, evaluated on up to ``worker_count()`` threads.

    Results come back in input order, so downstream output does not depend
    on the number of workers.
    """
    items = list(items)
    n = min(worker_count(), max(len(items), 1))
    if n == 1:
        return [func(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(func, items))
