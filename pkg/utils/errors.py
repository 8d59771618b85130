"""
Exception hierarchy shared by every package.

The CLI maps ``exit_code`` straight onto the process exit status.
"""

from __future__ import annotations


class PolyaError(Exception):
    """Base class for all contract violations raised by the toolkit."""

    exit_code = 1


class DomainError(PolyaError, ValueError):
    """Input outside an operation's domain (bad walk text, n = 0, ...)."""

    exit_code = 2


class ResourceLimitError(PolyaError):
    """A configured cap (enumeration size, exact threshold) was exceeded."""

    exit_code = 3
