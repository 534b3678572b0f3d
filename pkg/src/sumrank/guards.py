"""Enumeration guards.

Brute-force paths refuse to run above fixed size limits instead of silently
truncating.  Every guarded function documents its limit; violations raise
:class:`GuardError`.
"""


class GuardError(RuntimeError):
    """An enumeration was requested above its hard size limit."""


def require_within(value, limit, what):
    if value > limit:
        raise GuardError(f"{what} = {value} exceeds the enumeration limit {limit}")
    return value
