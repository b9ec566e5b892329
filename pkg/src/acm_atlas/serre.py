"""
Numerical Serre correspondence (:mod:`acm_atlas.serre`)
=======================================================

A section of a normalized rank-two bundle ``E`` vanishes on a curve ``C`` with

.. code-block:: text

    0 -> O_V -> E -> I_C(c1) -> 0,   deg C = c2,   omega_C = O_C(c1 - index)

so ``2p - 2 = (c1 - index) c2``.  Conversely an ``a``-subcanonical curve gives a
bundle with ``c1 = a + index`` and ``c2 = deg C``.

>>> from acm_atlas.chern import BundleClass
>>> from acm_atlas.variety import make_prime_fano
>>> bundle_to_curve(make_prime_fano(4), BundleClass(2, 10, b=0))
CurveClass(degree=10, genus=6, subcanonical_level=1)
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import TYPE_CHECKING, Any

from .chern import BundleClass
from .errors import (
    EmptyZeroLocusError,
    InconsistentSubcanonicalError,
    NegativeGenusError,
    NonIntegralGenusError,
    NotNormalizedError,
    OutOfRangeError,
    UnsupportedFamilyError,
)
from .variety import Family

if TYPE_CHECKING:
    from .variety import PolarizedThreefold


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CurveClass:
    """Degree, arithmetic genus and subcanonical level ``a`` of a curve."""

    degree: int
    genus: int
    subcanonical_level: int

    @property
    def is_subcanonical(self) -> bool:
        """``2p - 2 == a d``."""
        return 2 * self.genus - 2 == self.subcanonical_level * self.degree

    def to_dict(self) -> dict[str, Any]:
        """Plain dictionary for reports."""
        return {
            "degree": self.degree,
            "genus": self.genus,
            "subcanonical_level": self.subcanonical_level,
        }


def bundle_to_curve(variety: PolarizedThreefold, bundle: BundleClass) -> CurveClass:
    """
    Invariants of the zero locus of a general section.

    ``bundle.b`` must be 0 or unset (unset is read as normalized).

    Raises
    ------
    NotNormalizedError
        If ``b`` is set and nonzero.
    EmptyZeroLocusError
        If ``c2 <= 0``.
    NonIntegralGenusError
        If ``(c1 - index) c2`` is odd.
    NegativeGenusError
        If the genus would be negative.
    """
    if bundle.b not in {None, 0}:
        msg = f"Bundle {bundle} is not normalized (b = {bundle.b})"
        raise NotNormalizedError(msg)
    if bundle.c2 <= 0:
        msg = f"c2 = {bundle.c2} <= 0: zero locus of a section is empty"
        raise EmptyZeroLocusError(msg)

    level = bundle.c1 - variety.index
    twice_genus_minus_two = level * bundle.c2
    if twice_genus_minus_two % 2:
        msg = (
            f"(c1 - index) * c2 = ({bundle.c1} - {variety.index}) * {bundle.c2} "
            f"= {twice_genus_minus_two} is odd; no curve genus exists"
        )
        raise NonIntegralGenusError(msg)

    genus = twice_genus_minus_two // 2 + 1
    if genus < 0:
        msg = f"Genus {genus} < 0 for {bundle} on {variety.name}"
        raise NegativeGenusError(msg)

    return CurveClass(degree=bundle.c2, genus=genus, subcanonical_level=level)


def curve_to_bundle(variety: PolarizedThreefold, curve: CurveClass) -> BundleClass:
    """
    Bundle class produced by the Serre construction from a subcanonical curve.

    ``b`` is left unset, since the construction does not determine it.

    >>> from acm_atlas.variety import make_prime_fano
    >>> curve_to_bundle(make_prime_fano(4), CurveClass(4, 1, 0))
    BundleClass(c1=1, c2=4, b=None)
    """
    if not curve.is_subcanonical:
        msg = (
            f"Curve {curve} is not subcanonical: 2p - 2 = {2 * curve.genus - 2} "
            f"!= a * d = {curve.subcanonical_level * curve.degree}"
        )
        raise InconsistentSubcanonicalError(msg)
    if curve.degree < 1:
        msg = f"Curve degree must be positive, got {curve.degree}"
        raise EmptyZeroLocusError(msg)
    return BundleClass(c1=curve.subcanonical_level + variety.index, c2=curve.degree)


def span_defect(variety: PolarizedThreefold, curve: CurveClass) -> int:
    """
    Number ``h^0(I_C(1)) = g + 2 - deg C`` of hyperplanes containing an elliptic
    curve on a prime Fano threefold of genus ``g``.

    Raises
    ------
    UnsupportedFamilyError
        If ``variety`` is not a prime Fano threefold.
    OutOfRangeError
        If the curve is not elliptic with ``3 <= deg C <= g + 2``.
    """
    if variety.family is not Family.FANO or variety.genus is None:
        msg = f"Span defect is defined on prime Fano threefolds, not {variety.name}"
        raise UnsupportedFamilyError(msg)
    if curve.subcanonical_level != 0 or curve.genus != 1:
        msg = f"Span defect needs an elliptic curve (a = 0, p = 1), got {curve}"
        raise OutOfRangeError(msg)

    top = variety.genus + 2
    if not 3 <= curve.degree <= top:  # ruff:ignore[magic-value-comparison]
        msg = f"Elliptic curve degree {curve.degree} outside [3, {top}] on {variety.name}"
        raise OutOfRangeError(msg)
    return top - curve.degree
