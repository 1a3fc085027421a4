"""Shared exception hierarchy.

InternalError marks conditions that are impossible for valid catalog
input; hitting one means an upstream computation is corrupt, and the
CLI maps it to exit code 1 (as opposed to usage errors, exit code 2).
"""


class InternalError(RuntimeError):
    """An internal invariant failed; upstream data is corrupt."""


class InvariantError(InternalError):
    """A verified mathematical invariant does not hold."""
