"""Shared exception types.

Contract violations (bad arguments, unsupported formats) raise ValueError.
Failures of the numerical machinery itself (quadrature that cannot reach
its tolerance, root finders that lose their bracket) raise NumericalError,
which carries the name of the failing component so front ends can report
it and exit distinctly from argument errors.
"""

from __future__ import annotations

__all__ = ["NumericalError"]


class NumericalError(RuntimeError):
    """A numerical routine failed to meet its accuracy contract."""

    def __init__(self, component: str, message: str):
        self.component = component
        super().__init__(f"{component}: {message}")
