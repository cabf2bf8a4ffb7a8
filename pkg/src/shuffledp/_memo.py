"""Thread-safe memoization helpers."""

import threading
from functools import wraps


def once_per_key(fn):
    """Memoize ``fn`` on positional args, computing each key at most once.

    Unlike ``functools.lru_cache``, concurrent callers asking for the
    same missing key serialize on a lock, so the underlying computation
    runs exactly once per key even under races.  Cached reads stay
    lock-free.  Keys must be hashable and the function must be pure.
    """
    cache: dict = {}
    lock = threading.Lock()

    @wraps(fn)
    def wrapper(*args):
        try:
            return cache[args]
        except KeyError:
            pass
        with lock:
            if args not in cache:
                cache[args] = fn(*args)
            return cache[args]

    wrapper.cache_clear = cache.clear
    wrapper.cache_size = lambda: len(cache)
    return wrapper
