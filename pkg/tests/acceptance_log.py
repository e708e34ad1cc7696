"""Collects one verdict line per acceptance criterion for the terminal summary."""

import contextlib
import time

LINES = {}


@contextlib.contextmanager
def criterion(key, title):
    t0 = time.perf_counter()
    try:
        yield
    except BaseException as exc:
        msg = str(exc).splitlines()[0] if str(exc) else type(exc).__name__
        LINES[key] = f"FAIL  {key}: {title} ({msg[:120]})"
        print(LINES[key])
        raise
    LINES[key] = f"PASS  {key}: {title} [{time.perf_counter() - t0:.1f}s]"
    print(LINES[key])
