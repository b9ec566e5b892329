"""
Rank-two numerical classes (:mod:`acm_atlas.chern`)
===================================================

``c1`` is counted in units of ``H`` and ``c2`` in units of the line class
``l`` (``H . l = 1``, ``H^2 = deg(V) l``), so both stay integers.

>>> from acm_atlas.variety import make_prime_fano
>>> twist(make_prime_fano(4), BundleClass(0, 2), 1)
BundleClass(c1=2, c2=8, b=None)
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, replace
from typing import TYPE_CHECKING, Any

from .errors import MissingNormalizationLevelError

if TYPE_CHECKING:
    from .variety import PolarizedThreefold


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BundleClass:
    """
    Numerical class ``(c1, c2)`` of a rank-two bundle.

    ``b`` is the normalization level ``max{n : h^0(E(-n)) != 0}`` when known.
    """

    c1: int
    c2: int
    b: int | None = None

    def to_dict(self) -> dict[str, Any]:
        """Plain dictionary for reports."""
        return {"c1": self.c1, "c2": self.c2, "b": self.b}


def twist(variety: PolarizedThreefold, bundle: BundleClass, n: int) -> BundleClass:
    """
    Class of ``E(n)``.

    ``c1 -> c1 + 2n`` and ``c2 -> c2 + deg(V) n c1 + deg(V) n^2``.
    """
    if n == 0:
        return bundle
    return BundleClass(
        c1=bundle.c1 + 2 * n,
        c2=bundle.c2 + variety.degree * n * bundle.c1 + variety.degree * n * n,
        b=None if bundle.b is None else bundle.b + n,
    )


def dual(bundle: BundleClass) -> BundleClass:
    """
    Class of ``E^v = E(-c1)``.

    >>> dual(BundleClass(1, 4, b=0))
    BundleClass(c1=-1, c2=4, b=-1)
    """
    return BundleClass(
        c1=-bundle.c1,
        c2=bundle.c2,
        b=None if bundle.b is None else bundle.b - bundle.c1,
    )


def _require_b(bundle: BundleClass) -> int:
    if bundle.b is None:
        msg = f"Normalization level b is required for {bundle}"
        raise MissingNormalizationLevelError(msg)
    return bundle.b


def stability_number(bundle: BundleClass) -> int:
    """Twist invariant ``2b - c1``."""
    return 2 * _require_b(bundle) - bundle.c1


def is_stable(bundle: BundleClass) -> bool:
    """
    Stability on a Picard rank one threefold: ``2b - c1 < 0``.

    >>> is_stable(BundleClass(1, 4, b=0)), is_stable(BundleClass(0, 2, b=0))
    (True, False)
    """
    return stability_number(bundle) < 0


def normalize(
    variety: PolarizedThreefold, bundle: BundleClass
) -> tuple[BundleClass, int]:
    """
    Normalize by the twist ``E(-b)``.

    Returns
    -------
    bundle : BundleClass
        Normalized class, with ``b == 0``.
    shift : int
        The twist applied, ``-b``.
    """
    shift = -_require_b(bundle)
    normalized = twist(variety, bundle, shift)
    logger.debug("Normalized %s by twist %d -> %s", bundle, shift, normalized)
    return replace(normalized, b=0), shift
