"""
Exception hierarchy for the oracle discrimination toolkit.
"""


class OracleDiscError(Exception):
    """Base class for all toolkit errors."""


class ValidationError(OracleDiscError, ValueError):
    """Input failed a structural or numerical validation check."""


class NotAStateError(ValidationError):
    """A construction does not produce a valid density operator."""


class CapacityError(OracleDiscError):
    """Requested size is above a configured enumeration or storage cap."""


class DomainError(OracleDiscError):
    """Oracle function lies outside the constant/balanced promise."""
