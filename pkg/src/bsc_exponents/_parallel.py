import os
from concurrent.futures import ProcessPoolExecutor

ENV_WORKERS = "BSC_EXPONENTS_THREADS"


def worker_count() -> int:
    raw = os.environ.get(ENV_WORKERS, "")
    try:
        n = int(raw)
    except ValueError:
        return 1
    return max(1, min(n, os.cpu_count() or 1))


def ordered_map(fn, items):
    """``list(map(fn, items))``, fanned out to processes when the env var allows it.

    Results always come back in input order.
    """
    items = list(items)
    n = worker_count()
    if n <= 1 or len(items) < 2 * n:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items, chunksize=max(1, len(items) // (4 * n))))
