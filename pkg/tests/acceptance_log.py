"""Verdicts of the acceptance criteria, filled in as the tests run."""

import contextlib

RESULTS = {}


@contextlib.contextmanager
def criterion(number, title):
    """Record PASS or FAIL for ``number`` and print the line immediately."""
    try:
        yield
    except BaseException:
        RESULTS[number] = (title, "FAIL")
        print(f"criterion {number}: FAIL  {title}")
        raise
    RESULTS[number] = (title, "PASS")
    print(f"criterion {number}: PASS  {title}")
