"""Global cap on brute-force enumerations.

Every enumeration first computes the size of its naive candidate space and
refuses to start when that exceeds the cap; nothing is silently truncated.
"""

from contextlib import contextmanager

from .errors import EnumerationBudgetExceeded

DEFAULT_MAX_ENUM = 10**6

_max_enum = DEFAULT_MAX_ENUM


def get_max_enum():
    return _max_enum


def set_max_enum(n):
    global _max_enum
    if n <= 0:
        raise ValueError("budget must be positive")
    _max_enum = int(n)


@contextmanager
def enumeration_budget(n):
    old = _max_enum
    set_max_enum(n)
    try:
        yield
    finally:
        set_max_enum(old)


def check_budget(needed, what="enumeration", budget=None):
    limit = _max_enum if budget is None else budget
    if needed > limit:
        raise EnumerationBudgetExceeded(needed, limit, what)
