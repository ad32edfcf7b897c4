"""Shared exception types, so the CLI can map failures to diagnostics."""


class ThetaforgeError(Exception):
    """Base class for errors raised by this package."""


class ParseError(ThetaforgeError, ValueError):
    """Malformed textual input (permutation strings, code files, ...)."""


class DomainError(ThetaforgeError, ValueError):
    """Structurally valid input outside the supported domain."""
