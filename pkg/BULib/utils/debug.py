import time
import functools
import logging
from collections import defaultdict

from astropy.table import Table

logger = logging.getLogger(__name__)

# Module-level flag to enable/disable timing
ENABLE_TIMER = True

# qualified name -> [calls, total process seconds]
TIMINGS = defaultdict(lambda: [0, 0.0])


def timer(func):
    """Time ``func`` in process seconds, log each call at DEBUG and accumulate into :data:`TIMINGS`."""

    @functools.wraps(func)
    def wrapper(*args, **kwargs):

        if not ENABLE_TIMER:
            return func(*args, **kwargs)

        start_time = time.process_time()
        result = func(*args, **kwargs)
        elapsed = time.process_time() - start_time

        entry = TIMINGS[func.__qualname__]
        entry[0] += 1
        entry[1] += elapsed
        logger.debug("%s(%s) took %.3f s.", func.__qualname__, args[0] if args else "", elapsed)
        return result

    return wrapper


def timingTable() -> Table:
    """Accumulated timings, slowest first."""
    rows = sorted(((name, calls, seconds) for name, (calls, seconds) in TIMINGS.items()), key=lambda row: -row[2])
    return Table(rows=rows or None, names=("function", "calls", "seconds"), dtype=(str, int, float))


def resetTimings():
    TIMINGS.clear()
