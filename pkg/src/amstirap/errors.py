"""Exception types shared across the package."""

from __future__ import annotations


class AmstirapError(Exception):
    """Base class for all package-specific errors."""


class ConfigError(AmstirapError):
    """A run configuration is missing, malformed, or self-contradictory."""


class DomainError(AmstirapError, ValueError):
    """An argument lies outside the physical domain of an operation."""


class IntegrationError(AmstirapError):
    """Adaptive time stepping failed.

    Carries the time at which the failure occurred so callers can report
    where the integration broke down.
    """

    def __init__(self, message: str, t_fail: float):
        super().__init__(f"{message} (at t = {t_fail:.6g})")
        self.t_fail = t_fail
