"""Exception types and size guards shared by every module."""

from __future__ import annotations

import os


class PactError(Exception):
    """Base class for all errors raised by pact."""


class ValidationError(PactError, ValueError):
    """Input does not describe a valid space, group, map or action."""


class GuardError(PactError):
    """A size guard was exceeded; the computation was not attempted."""


def guard_scale() -> float:
    """Multiplier applied to every size guard (``PACT_GUARD_SCALE``, default 1)."""
    raw = os.environ.get("PACT_GUARD_SCALE", "1")
    try:
        scale = float(raw)
    except ValueError:
        raise ValidationError(f"PACT_GUARD_SCALE must be a number, got {raw!r}") from None
    if scale <= 0:
        raise ValidationError("PACT_GUARD_SCALE must be positive")
    return scale


def check_guard(what: str, value: int | float, limit: int | float) -> None:
    bound = limit * guard_scale()
    if value > bound:
        raise GuardError(f"{what}: {value} exceeds guard {bound:g}")
