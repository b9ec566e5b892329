"""
Exceptions (:mod:`acm_atlas.errors`)
====================================

Every error raised by the package derives from :class:`AcmAtlasError`, which is
a :class:`ValueError`.  Domain errors (a precondition of the mathematics is
violated) map to command line exit code ``3``, usage errors (bad variety
specification, unreadable catalog) to exit code ``2``.
"""

from __future__ import annotations


class AcmAtlasError(ValueError):
    """Base class for all package errors."""


# * Usage ---------------------------------------------------------------------
class UsageError(AcmAtlasError):
    """Malformed input that is not a mathematical failure."""


class SpecParseError(UsageError):
    """Variety specification could not be parsed."""


class CatalogError(UsageError):
    """Catalog file is missing, malformed, or has invalid entries."""


class SchemaVersionError(UsageError):
    """Document was written with an incompatible schema version."""


# * Domain --------------------------------------------------------------------
class DomainError(AcmAtlasError):
    """A mathematical precondition is violated."""


class InvalidGenusError(DomainError):
    """No prime Fano threefold of this genus."""


class NotCalabiYauError(DomainError):
    """Multidegrees violate ``sum(r_i) == k + 4``."""


class DegenerateFactorError(DomainError):
    """A complete intersection factor has degree ``<= 1``."""


class UnknownTypeError(DomainError):
    """Calabi-Yau multidegree outside the five complete intersection types."""


class NonPositiveDegreeError(DomainError):
    """Polarization degree must be positive."""


class MissingNormalizationLevelError(DomainError):
    """Operation needs the normalization level ``b``."""


class NotNormalizedError(DomainError):
    """Operation needs a normalized class (``b == 0``)."""


class NonIntegralChiError(DomainError):
    """An Euler characteristic came out non-integral."""


class OutOfBoundsError(DomainError):
    """First Chern class outside the splitting window."""


class DegenerateConstraintError(DomainError):
    """A linear constraint carries no information on ``c2``."""


class UnsupportedFamilyError(DomainError):
    """Operation is not defined for this family of threefolds."""


class NonIntegralGenusError(DomainError):
    """``(c1 - index) * c2`` is odd, so no curve genus exists."""


class NegativeGenusError(DomainError):
    """Computed arithmetic genus is negative."""


class EmptyZeroLocusError(DomainError):
    """Second Chern class is not positive, so the zero locus is empty."""


class InconsistentSubcanonicalError(DomainError):
    """Curve invariants violate ``2p - 2 == a * d``."""


class OutOfRangeError(DomainError):
    """Value outside the range where an operation is defined."""


# * Consistency -----------------------------------------------------------------
class ConsistencyError(AcmAtlasError):
    """A derived value disagrees with a published table."""
