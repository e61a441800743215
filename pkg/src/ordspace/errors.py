"""Exception types shared across the package."""

from __future__ import annotations

import os

DEFAULT_BUDGET = 10**6


class OrdspaceError(Exception):
    pass


class FamilyMismatch(OrdspaceError, TypeError):
    """Two elements (or an element and a cone) belong to different groups."""


class BudgetExceeded(OrdspaceError, RuntimeError):
    """An enumeration or rewriting ran past its configured resource cap."""


class DescriptorError(OrdspaceError, ValueError):
    """Malformed cone descriptor, element text or certificate."""

    def __init__(self, message: str, position: int | None = None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


def element_budget() -> int:
    """Global element budget; ``ORDSPACE_BUDGET`` overrides the default."""
    raw = os.environ.get("ORDSPACE_BUDGET")
    if raw:
        try:
            return int(raw)
        except ValueError:
            pass
    return DEFAULT_BUDGET
