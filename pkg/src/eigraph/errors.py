"""Exception taxonomy shared by the whole package.

The CLI maps these onto exit codes: InputError -> 1,
InconsistencyError -> 2, OSError -> 3.
"""


class InputError(ValueError):
    """Invalid input: out-of-range n, prime n, cap exceeded, bad witness."""


class InconsistencyError(RuntimeError):
    """An internal invariant failed (e.g. a constructed resolving set does
    not resolve, or a graph that must be connected is not)."""
