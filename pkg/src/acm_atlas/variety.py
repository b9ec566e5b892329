"""
Polarized threefolds (:mod:`acm_atlas.variety`)
===============================================

Descriptors of smooth threefolds with Picard group generated by an ample class
``H``.  Only the numbers entering Hirzebruch-Riemann-Roch are kept: the degree
``H^3``, the index ``r`` with ``-K = r H`` and the pairing ``c2(TX) . H``.

>>> v = make_prime_fano(3)
>>> (v.name, v.degree, v.index, v.c2txh)
('V4', 4, 1, 24)
>>> make_cicy([4, 2]).c2txh
56
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import prod
from typing import TYPE_CHECKING, Any

import sympy as sp

from .errors import (
    DegenerateFactorError,
    InvalidGenusError,
    NonPositiveDegreeError,
    NotCalabiYauError,
    OutOfRangeError,
    UnknownTypeError,
)

if TYPE_CHECKING:
    from collections.abc import Iterable


logger = logging.getLogger(__name__)


PRIME_FANO_GENERA: tuple[int, ...] = (2, 3, 4, 5, 6, 7, 8, 9, 10, 12)
CICY_TYPES: tuple[tuple[int, ...], ...] = (
    (5,),
    (3, 3),
    (2, 4),
    (2, 2, 3),
    (2, 2, 2, 2),
)
# forced by chi(O_V) = 1 at index 1
FANO_C2TXH = 24


class Family(str, Enum):
    """Family tag of a threefold."""

    FANO = "fano"
    CICY = "cicy"
    CUSTOM = "custom"


@dataclass(frozen=True)
class PolarizedThreefold:
    """
    Numerical descriptor of a threefold with ``Pic = Z H``.

    Parameters
    ----------
    family : Family
        Family tag.
    degree : int
        ``H^3``.
    index : int
        ``r`` with ``-K = r H``.
    c2txh : int
        ``c2(TX) . H``.
    name : str
        Short label used in reports and catalogs.
    genus : int, optional
        Genus of a prime Fano threefold.
    multidegrees : tuple of int
        Sorted degrees of the hypersurfaces cutting out a complete intersection.
    ambient_dim : int, optional
        Dimension of the projective space of the anticanonical (Fano) or given
        (complete intersection) embedding.
    standard : bool
        False for a complete intersection accepted only in permissive mode.
    """

    family: Family
    degree: int
    index: int
    c2txh: int
    name: str
    genus: int | None = None
    multidegrees: tuple[int, ...] = ()
    ambient_dim: int | None = None
    standard: bool = True

    @property
    def structure_chi(self) -> Fraction:
        """``chi(O_V) = c1(TX) c2(TX) / 24 = index * c2txh / 24``."""
        return Fraction(self.index * self.c2txh, 24)

    @property
    def codimension(self) -> int:
        """Number of hypersurfaces ``k`` for a complete intersection, else 0."""
        return len(self.multidegrees)

    def to_dict(self) -> dict[str, Any]:
        """Plain dictionary for reports."""
        return {
            "name": self.name,
            "family": self.family.value,
            "degree": self.degree,
            "index": self.index,
            "c2txh": self.c2txh,
            "genus": self.genus,
            "multidegrees": list(self.multidegrees),
            "ambient_dim": self.ambient_dim,
            "standard": self.standard,
        }


# * Chern classes of complete intersections -----------------------------------
def tangent_chern_coefficients(multidegrees: Iterable[int]) -> tuple[int, int]:
    """
    Coefficients of ``h`` and ``h**2`` in the total Chern class of a complete
    intersection threefold of the given multidegrees.

    The tangent bundle of ``X = X_{r_1..r_k}`` in ``P^{k+3}`` has
    ``c(TX) = (1 + h)**(k + 4) / prod(1 + r_i h)``.

    >>> tangent_chern_coefficients([5])
    (0, 10)
    >>> tangent_chern_coefficients([3])
    (2, 4)
    """
    degrees = list(multidegrees)
    h = sp.Symbol("h")
    total = (1 + h) ** (len(degrees) + 4) / sp.Mul(*(1 + r * h for r in degrees))
    expansion = sp.expand(sp.series(total, h, 0, 3).removeO())
    return int(expansion.coeff(h, 1)), int(expansion.coeff(h, 2))


def is_calabi_yau_multidegree(multidegrees: Iterable[int]) -> bool:
    """Whether ``sum(r_i) == k + 4`` with every ``r_i >= 2``."""
    degrees = list(multidegrees)
    return all(r >= 2 for r in degrees) and sum(degrees) == len(degrees) + 4


# * Constructors ----------------------------------------------------------------
def make_prime_fano(genus: int) -> PolarizedThreefold:
    """
    Prime Fano threefold ``V_{2g-2}`` of genus ``g``.

    Raises
    ------
    InvalidGenusError
        If ``g`` is not in ``{2, ..., 10, 12}``.
    """
    if genus not in PRIME_FANO_GENERA:
        msg = f"No prime Fano threefold of genus {genus}: need 2 <= g <= 12, g != 11"
        raise InvalidGenusError(msg)

    degree = 2 * genus - 2
    variety = PolarizedThreefold(
        family=Family.FANO,
        degree=degree,
        index=1,
        c2txh=FANO_C2TXH,
        name=f"V{degree}",
        genus=genus,
        ambient_dim=genus + 1,
    )
    if variety.structure_chi != 1:  # pragma: no cover
        msg = f"chi(O) = {variety.structure_chi} for {variety.name}, expected 1"
        raise AssertionError(msg)
    logger.debug("Constructed prime Fano %s", variety)
    return variety


def make_cicy(multidegrees: Iterable[int], strict: bool = True) -> PolarizedThreefold:
    """
    Complete intersection Calabi-Yau threefold.

    Parameters
    ----------
    multidegrees : iterable of int
        Degrees ``r_1, ..., r_k`` of the hypersurfaces.  Order is irrelevant.
    strict : bool
        If True, accept only the five known types.  Otherwise any multidegree
        passing the Calabi-Yau condition is accepted with ``standard=False``.

    Raises
    ------
    DegenerateFactorError
        If some ``r_i <= 1``.
    NotCalabiYauError
        If ``c1(TX) != 0``.
    UnknownTypeError
        In strict mode, for a multidegree outside the five types.
    """
    degrees = tuple(sorted(multidegrees))
    if not degrees:
        msg = "Complete intersection needs at least one hypersurface"
        raise NotCalabiYauError(msg)
    if any(r <= 1 for r in degrees):
        msg = f"Multidegrees {list(degrees)} contain a factor of degree <= 1"
        raise DegenerateFactorError(msg)

    c1_coeff, c2_coeff = tangent_chern_coefficients(degrees)
    if c1_coeff != 0:
        msg = (
            f"Multidegrees {list(degrees)} are not Calabi-Yau: "
            f"sum = {sum(degrees)} but k + 4 = {len(degrees) + 4}"
        )
        raise NotCalabiYauError(msg)

    standard = degrees in CICY_TYPES
    if not standard:
        if strict:
            msg = f"Multidegrees {list(degrees)} are not one of the five ciCY types"
            raise UnknownTypeError(msg)
        logger.warning(
            "Accepting non-standard complete intersection %s (permissive mode)",
            list(degrees),
        )

    degree = prod(degrees)
    variety = PolarizedThreefold(
        family=Family.CICY,
        degree=degree,
        index=0,
        c2txh=c2_coeff * degree,
        name=f"X{degree}" if standard else "X(" + ",".join(map(str, degrees)) + ")",
        multidegrees=degrees,
        ambient_dim=len(degrees) + 3,
        standard=standard,
    )
    logger.debug("Constructed ciCY %s", variety)
    return variety


def make_custom(
    degree: int,
    index: int,
    c2txh: int,
    name: str | None = None,
) -> PolarizedThreefold:
    """
    Descriptor from explicit invariants.

    Consistency of the data is checked by integrality of Euler characteristics
    (see :func:`acm_atlas.rr.validate_integrality`), not here.

    >>> make_custom(4, 1, 24).name
    'custom(d=4,r=1,c2=24)'
    """
    if degree < 1:
        msg = f"Degree must be positive, got {degree}"
        raise NonPositiveDegreeError(msg)
    if index < 0:
        msg = f"Index must be non-negative, got {index}"
        raise OutOfRangeError(msg)

    return PolarizedThreefold(
        family=Family.CUSTOM,
        degree=degree,
        index=index,
        c2txh=c2txh,
        name=name or f"custom(d={degree},r={index},c2={c2txh})",
    )
