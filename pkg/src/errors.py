# src/errors.py
"""
Exception hierarchy for the qps toolkit.

Every error is also a ValueError so callers that only care about bad input can
catch the builtin. Failed identity checks are never raised; they are reported as
CheckResult records (see src/report.py).
"""


class QPSError(ValueError):
    """Base class for all toolkit errors."""


class DimensionMismatch(QPSError):
    """Regions, elements or matrices with incompatible ambient dimension or shape."""


class DomainError(QPSError):
    """A parameter lies outside its documented range."""


class NotAProjection(QPSError):
    pass


class NotIdempotent(QPSError):
    pass


class NotInvertible(QPSError):
    pass


class CertificationError(QPSError):
    """A constructed gadget failed its own unitary / partial-isometry certificate."""


class ParseError(QPSError):
    pass


class ConfigError(QPSError):
    pass
