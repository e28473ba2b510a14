"""Exceptions shared across modules (kept import-light for the kernels)."""

__all__ = ["ResourceLimitError"]


class ResourceLimitError(RuntimeError):
    """A computation exceeded its crossing ceiling, node budget or deadline."""
