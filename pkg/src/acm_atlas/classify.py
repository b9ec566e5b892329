"""
Candidate tables (:mod:`acm_atlas.classify`)
============================================

A normalized indecomposable rank-two bundle without intermediate cohomology
restricts to a split bundle on the curve ``L = D1 . D2`` cut by two general
members of ``|H|``.  Comparing degrees on ``L`` bounds ``c1`` to the window
:func:`c1_bounds`.  On a prime Fano threefold each admissible ``c1`` is then
pinned down by one linear equation in ``c2`` (:func:`solve_c2`).  On complete
intersection Calabi-Yau threefolds the rows are tabulated data, checked for
consistency with :mod:`acm_atlas.serre`.

>>> from acm_atlas.variety import make_prime_fano
>>> [(row.c1, row.c2) for row in classify(make_prime_fano(3))]
[(-1, 1), (0, 2), (1, IntRange(low=3, high=5)), (2, 8), (3, 14)]
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import ceil, floor
from typing import TYPE_CHECKING, Any

from .chern import BundleClass
from .errors import (
    ConsistencyError,
    DegenerateConstraintError,
    NonIntegralChiError,
    OutOfBoundsError,
    UnsupportedFamilyError,
)
from .rr import chi_rank2_exact, format_rational
from .serre import CurveClass, bundle_to_curve
from .variety import Family

if TYPE_CHECKING:
    from collections.abc import Callable, Iterator

    from .variety import PolarizedThreefold


logger = logging.getLogger(__name__)


# * Types ------------------------------------------------------------------------
@dataclass(frozen=True)
class IntRange:
    """
    Inclusive integer interval.  Empty when ``low > high``.

    >>> list(IntRange(-1, 3))
    [-1, 0, 1, 2, 3]
    >>> IntRange(2, 1).is_empty
    True
    """

    low: int
    high: int

    @property
    def is_empty(self) -> bool:
        return self.low > self.high

    @property
    def endpoints(self) -> tuple[int, ...]:
        """Distinct endpoints, in increasing order."""
        if self.is_empty:
            return ()
        return (self.low,) if self.low == self.high else (self.low, self.high)

    def __iter__(self) -> Iterator[int]:
        return iter(range(self.low, self.high + 1))

    def __contains__(self, value: object) -> bool:
        return isinstance(value, int) and self.low <= value <= self.high

    def __len__(self) -> int:
        return max(0, self.high - self.low + 1)

    def to_dict(self) -> dict[str, int]:
        """``{"min": low, "max": high}``."""
        return {"min": self.low, "max": self.high}


C2Value = int | IntRange | None


def _value_to_json(value: C2Value) -> int | dict[str, int] | None:
    return value.to_dict() if isinstance(value, IntRange) else value


class Tag(str, Enum):
    """Geometric type of the zero locus, by subcanonical level."""

    LINE = "Line"
    CONIC = "Conic"
    ELLIPTIC = "Elliptic"
    HALF_CANONICAL = "HalfCanonical"
    TWO_CANONICAL = "TwoCanonical"
    OTHER = "Other"

    @classmethod
    def from_level(cls, level: int) -> Tag:
        """Tag of an ``a``-subcanonical curve, ``a = c1 - index``."""
        return _TAG_BY_LEVEL.get(level, cls.OTHER)


_TAG_BY_LEVEL = {
    -2: Tag.LINE,
    -1: Tag.CONIC,
    0: Tag.ELLIPTIC,
    1: Tag.HALF_CANONICAL,
    2: Tag.TWO_CANONICAL,
}


class Existence(str, Enum):
    """Whether some bundle in the row is known to exist."""

    KNOWN = "Known"
    CONJECTURAL = "Conjectural"


@dataclass(frozen=True)
class SplittingBoundData:
    """
    Intersection numbers on ``L = D1 . D2``, ``D1, D2`` in ``|H|``.

    ``L . D = deg V`` and, by adjunction, ``L . K_L = (2 - index) deg V``.
    """

    l_dot_d: int
    l_dot_kl: int

    @classmethod
    def from_variety(cls, variety: PolarizedThreefold) -> SplittingBoundData:
        return cls(
            l_dot_d=variety.degree,
            l_dot_kl=(2 - variety.index) * variety.degree,
        )

    def window(self) -> IntRange:
        """
        Integers ``c1`` with ``-2 L.D - L.K_L <= -L.D c1 <= L.K_L``.
        """
        low = Fraction(-self.l_dot_kl, self.l_dot_d)
        high = Fraction(2 * self.l_dot_d + self.l_dot_kl, self.l_dot_d)
        return IntRange(ceil(low), floor(high))


@dataclass(frozen=True)
class ConstraintSolution:
    """
    Solution of ``chi(E(twist)) = target`` for ``c2``, with ``c1`` fixed.

    ``chi(E(twist)) = slope * c2 + intercept`` as a function of the ``c2`` of the
    normalized class.
    """

    c1: int
    twist: int
    target: int
    slope: Fraction
    intercept: Fraction
    c2: int

    def describe(self) -> str:
        """One-line provenance trace."""
        lhs = "chi(E)" if self.twist == 0 else f"chi(E({self.twist}))"
        return (
            f"{lhs} = {format_rational(self.slope)}*c2 "
            f"+ {format_rational(self.intercept)} = {self.target} "
            f"=> c2 = {self.c2}"
        )


@dataclass(frozen=True)
class CandidateRow:
    """
    One line of a candidate table.

    Parameters
    ----------
    c1 : int
        First Chern class of the normalized bundle.
    c2 : int or IntRange or None
        Second Chern class, a range where the table gives one, ``None`` when
        unresolved (generic tables).
    subcanonical_level : int
        ``a = c1 - index``.
    curves : tuple of CurveClass
        Zero locus invariants at each ``c2`` endpoint.
    tag : Tag
    existence : Existence
    witnesses : tuple of int
        ``c2`` values for which a construction is documented.
    span_defect : IntRange, optional
        Range of ``h^0(I_C(1))`` (elliptic row on a prime Fano).
    open_lower_bound : bool
        The lower ``c2`` endpoint is a placeholder, not a derived bound.
    golden : bool
        False for rows that have no published counterpart.
    trace : str
        Which equation produced the row.
    """

    c1: int
    c2: C2Value
    subcanonical_level: int
    curves: tuple[CurveClass, ...]
    tag: Tag
    existence: Existence
    witnesses: tuple[int, ...] = ()
    span_defect: IntRange | None = None
    open_lower_bound: bool = False
    golden: bool = True
    trace: str = field(default="", compare=False)

    @property
    def curve(self) -> CurveClass | None:
        """Zero locus at the lowest ``c2``."""
        return self.curves[0] if self.curves else None

    @property
    def c2_endpoints(self) -> tuple[int, ...]:
        if self.c2 is None:
            return ()
        if isinstance(self.c2, IntRange):
            return self.c2.endpoints
        return (self.c2,)

    @property
    def genus(self) -> C2Value:
        """Genus of the zero locus, a range when it varies along the row."""
        genera = sorted({curve.genus for curve in self.curves})
        if not genera:
            return None
        return genera[0] if len(genera) == 1 else IntRange(genera[0], genera[-1])

    @property
    def degenerate(self) -> bool:
        """Whether the row contains curves lying in a hyperplane."""
        return self.span_defect is not None and self.span_defect.high > 0

    def golden_dict(self) -> dict[str, Any]:
        """Fields compared against shipped golden tables."""
        return {
            "c1": self.c1,
            "c2": _value_to_json(self.c2),
            "genus": _value_to_json(self.genus),
            "subcanonical_level": self.subcanonical_level,
            "tag": self.tag.value,
            "existence": self.existence.value,
            "witnesses": list(self.witnesses),
        }

    def to_dict(self) -> dict[str, Any]:
        """Full row for reports."""
        return {
            **self.golden_dict(),
            "curves": [curve.to_dict() for curve in self.curves],
            "span_defect": None
            if self.span_defect is None
            else self.span_defect.to_dict(),
            "degenerate": self.degenerate,
            "open_lower_bound": self.open_lower_bound,
            "golden": self.golden,
            "trace": self.trace,
        }


# * Bounds and constraints ---------------------------------------------------------
def splitting_bound_data(variety: PolarizedThreefold) -> SplittingBoundData:
    return SplittingBoundData.from_variety(variety)


def c1_bounds(variety: PolarizedThreefold) -> IntRange:
    """
    Window ``[index - 2, 4 - index]`` of ``c1`` for non-split candidates.

    >>> from acm_atlas.variety import make_cicy, make_custom
    >>> c1_bounds(make_cicy([5])), c1_bounds(make_custom(1, 4, 6)).is_empty
    (IntRange(low=-2, high=4), True)
    """
    window = splitting_bound_data(variety).window()
    logger.debug("c1 window on %s: %s", variety.name, window)
    return window


def _linear_chi(
    variety: PolarizedThreefold, c1: int, twist: int
) -> tuple[Fraction, Fraction]:
    """``(slope, intercept)`` of ``c2 -> chi(E(twist))`` for normalized ``c1``."""
    shift = variety.degree * twist * c1 + variety.degree * twist * twist
    twisted_c1 = c1 + 2 * twist
    intercept = chi_rank2_exact(variety, twisted_c1, shift)
    slope = chi_rank2_exact(variety, twisted_c1, shift + 1) - intercept
    return slope, intercept


def solve_chi_constraint(
    variety: PolarizedThreefold,
    c1: int,
    twist: int,
    target: int,
) -> ConstraintSolution:
    """
    Solve ``chi(E(twist)) = target`` for the ``c2`` of a normalized class.

    >>> from acm_atlas.variety import make_prime_fano
    >>> solve_chi_constraint(make_prime_fano(4), 2, -1, 0).describe()
    'chi(E(-1)) = -1/2*c2 + 5 = 0 => c2 = 10'

    Raises
    ------
    DegenerateConstraintError
        If ``chi(E(twist))`` does not depend on ``c2``.
    NonIntegralChiError
        If the solution is not an integer.
    """
    slope, intercept = _linear_chi(variety, c1, twist)
    if slope == 0:
        msg = (
            f"chi(E({twist})) with c1 = {c1} on {variety.name} does not depend on c2 "
            f"(twisted c1 + index = 0)"
        )
        raise DegenerateConstraintError(msg)

    c2 = (target - intercept) / slope
    if c2.denominator != 1:
        msg = (
            f"chi(E({twist})) = {target} with c1 = {c1} on {variety.name} "
            f"needs c2 = {format_rational(c2)}, which is not an integer"
        )
        raise NonIntegralChiError(msg)

    solution = ConstraintSolution(
        c1=c1,
        twist=twist,
        target=target,
        slope=slope,
        intercept=intercept,
        c2=c2.numerator,
    )
    logger.debug("%s: %s", variety.name, solution.describe())
    return solution


# (twist, target as a function of g) per c1; the c1 = 1 target is the top of the
# range, reached by curves spanning the whole anticanonical space.
_FANO_CONSTRAINTS: dict[int, tuple[int, Callable[[int], int]]] = {
    -1: (-1, lambda g: -(g + 2)),
    0: (0, lambda _g: 1),
    1: (0, lambda _g: 1),
    2: (-1, lambda _g: 0),
    3: (-1, lambda _g: 0),
}

_FANO_PUBLISHED_C2: dict[int, Callable[[int], int]] = {
    -1: lambda _g: 1,
    0: lambda _g: 2,
    1: lambda g: g + 2,
    2: lambda g: 2 * g + 2,
    3: lambda g: 5 * g - 1,
}

# "In any case c2 >= 3" for the elliptic row
_ELLIPTIC_MIN_DEGREE = 3


def _require_fano(variety: PolarizedThreefold) -> int:
    if variety.family is not Family.FANO or variety.genus is None:
        msg = f"Operation is defined on prime Fano threefolds, not {variety.name}"
        raise UnsupportedFamilyError(msg)
    return variety.genus


def _require_in_window(variety: PolarizedThreefold, c1: int) -> None:
    window = c1_bounds(variety)
    if c1 not in window:
        msg = (
            f"c1 = {c1} is outside the splitting window [{window.low}, {window.high}] "
            f"on {variety.name}"
        )
        raise OutOfBoundsError(msg)


def fano_constraint(variety: PolarizedThreefold, c1: int) -> ConstraintSolution:
    """Solved defining constraint of the ``c1`` row on a prime Fano threefold."""
    genus = _require_fano(variety)
    _require_in_window(variety, c1)
    twist, target = _FANO_CONSTRAINTS[c1]
    solution = solve_chi_constraint(variety, c1, twist, target(genus))

    published = _FANO_PUBLISHED_C2[c1](genus)
    if solution.c2 != published:  # pragma: no cover
        msg = (
            f"Solved c2 = {solution.c2} for c1 = {c1} on {variety.name} disagrees "
            f"with the published value {published}"
        )
        raise ConsistencyError(msg)
    return solution


def solve_c2(variety: PolarizedThreefold, c1: int) -> int | IntRange:
    """
    ``c2`` of a normalized candidate with first Chern class ``c1`` on a prime
    Fano threefold.

    >>> from acm_atlas.variety import make_prime_fano
    >>> solve_c2(make_prime_fano(3), 3), solve_c2(make_prime_fano(6), 1)
    (14, IntRange(low=3, high=8))

    Raises
    ------
    UnsupportedFamilyError
        If ``variety`` is not a prime Fano threefold.
    OutOfBoundsError
        If ``c1`` is outside :func:`c1_bounds`.
    """
    solution = fano_constraint(variety, c1)
    if c1 == 1:
        return IntRange(_ELLIPTIC_MIN_DEGREE, solution.c2)
    return solution.c2


# * Existence ------------------------------------------------------------------------
# (genus, c1) -> c2 values of documented constructions on prime Fano threefolds
FANO_WITNESSES: dict[tuple[int, int], tuple[int, ...]] = {
    (4, 1): (4,),
    (5, 1): (4,),
    (6, 1): (4,),
    (8, 1): (5,),
    (4, 2): (10,),
}
# rows of the quintic whose bundles are all constructed
QUINTIC_KNOWN_C1: frozenset[int] = frozenset({-2, -1, 0, 1, 4})


def _point_values(c2: C2Value) -> tuple[int, ...]:
    if isinstance(c2, IntRange):
        return tuple(c2)
    return () if c2 is None else (c2,)


def _existence(tag: Tag, witnesses: tuple[int, ...]) -> Existence:
    if tag in {Tag.LINE, Tag.CONIC} or witnesses:
        return Existence.KNOWN
    return Existence.CONJECTURAL


# * Rows -------------------------------------------------------------------------
def _curves(variety: PolarizedThreefold, c1: int, c2: C2Value) -> tuple[CurveClass, ...]:
    if c2 is None:
        return ()
    endpoints = c2.endpoints if isinstance(c2, IntRange) else (c2,)
    return tuple(bundle_to_curve(variety, BundleClass(c1, e, b=0)) for e in endpoints)


def _fano_rows(variety: PolarizedThreefold) -> list[CandidateRow]:
    genus = _require_fano(variety)
    rows: list[CandidateRow] = []
    for c1 in c1_bounds(variety):
        solution = fano_constraint(variety, c1)
        c2 = solve_c2(variety, c1)
        level = c1 - variety.index
        tag = Tag.from_level(level)

        if tag in {Tag.LINE, Tag.CONIC}:
            witnesses = _point_values(c2)
        else:
            witnesses = FANO_WITNESSES.get((genus, c1), ())

        span = None
        trace = solution.describe()
        if isinstance(c2, IntRange):
            span = IntRange(0, c2.high - c2.low)
            trace += f"; c2 = {c2.high} - h0(I_C(1)) >= {c2.low}"

        rows.append(
            CandidateRow(
                c1=c1,
                c2=c2,
                subcanonical_level=level,
                curves=_curves(variety, c1, c2),
                tag=tag,
                existence=_existence(tag, witnesses),
                witnesses=witnesses,
                span_defect=span,
                trace=trace,
            )
        )
    return rows


@dataclass(frozen=True)
class _CicyRow:
    c1: int
    c2: Callable[[int], C2Value]
    genus: Callable[[int], int]
    open_lower_bound: bool = False


# Published rows in terms of the degree r.  The genus of the c1 = 2 row is
# c2 + 1 and is checked at both endpoints.
_CICY_ROWS: tuple[_CicyRow, ...] = (
    _CicyRow(-2, lambda _r: 1, lambda _c2: 0),
    _CicyRow(-1, lambda _r: 2, lambda _c2: 0),
    _CicyRow(0, lambda r: IntRange(3, r), lambda _c2: 1),
    _CicyRow(1, lambda r: 2 * r - 2, lambda c2: c2 // 2 + 1),
    _CicyRow(2, lambda r: IntRange(1, 3 * r - 1), lambda c2: c2 + 1, True),
    _CicyRow(3, lambda r: 4 * r, lambda c2: 3 * c2 // 2 + 1),
    _CicyRow(4, lambda r: 6 * r, lambda c2: 2 * c2 + 1),
)


def _cicy_rows(variety: PolarizedThreefold) -> list[CandidateRow]:
    r = variety.degree
    quintic = variety.multidegrees == (5,)
    rows: list[CandidateRow] = []
    for spec in _CICY_ROWS:
        c2 = spec.c2(r)
        curves = _curves(variety, spec.c1, c2)
        for curve in curves:
            if curve.genus != spec.genus(curve.degree):
                msg = (
                    f"Row c1 = {spec.c1} on {variety.name}: Serre genus {curve.genus} "
                    f"!= tabulated {spec.genus(curve.degree)} at c2 = {curve.degree}"
                )
                raise ConsistencyError(msg)

        level = spec.c1 - variety.index
        tag = Tag.from_level(level)
        if tag in {Tag.LINE, Tag.CONIC} or (quintic and spec.c1 in QUINTIC_KNOWN_C1):
            witnesses = _point_values(c2)
        else:
            witnesses = ()

        rows.append(
            CandidateRow(
                c1=spec.c1,
                c2=c2,
                subcanonical_level=level,
                curves=curves,
                tag=tag,
                existence=_existence(tag, witnesses),
                witnesses=witnesses,
                open_lower_bound=spec.open_lower_bound,
                golden=variety.standard,
                trace="tabulated; genus from 2p - 2 = (c1 - index) * c2",
            )
        )
    return rows


def _generic_rows(variety: PolarizedThreefold) -> list[CandidateRow]:
    logger.warning(
        "Classifying %s generically: c2 is left unresolved", variety.name
    )
    rows: list[CandidateRow] = []
    for c1 in c1_bounds(variety):
        slope, intercept = _linear_chi(variety, c1, 0)
        rows.append(
            CandidateRow(
                c1=c1,
                c2=None,
                subcanonical_level=c1 - variety.index,
                curves=(),
                tag=Tag.OTHER,
                existence=Existence.CONJECTURAL,
                golden=False,
                trace=(
                    f"chi(E) = {format_rational(slope)}*c2 "
                    f"+ {format_rational(intercept)}"
                ),
            )
        )
    return rows


def classify(variety: PolarizedThreefold, strict: bool = True) -> list[CandidateRow]:
    """
    Candidate table of normalized non-split bundles without intermediate
    cohomology, ordered by ``c1``.

    Parameters
    ----------
    variety : PolarizedThreefold
    strict : bool
        If False, custom varieties get a generic table with unresolved ``c2``.

    Raises
    ------
    UnsupportedFamilyError
        For a custom variety in strict mode.
    ConsistencyError
        If a tabulated row contradicts the Serre correspondence.
    """
    if variety.family is Family.FANO:
        rows = _fano_rows(variety)
    elif variety.family is Family.CICY:
        rows = _cicy_rows(variety)
    elif strict:
        msg = (
            f"No candidate table for custom variety {variety.name} in strict mode "
            "(use permissive mode for a generic table)"
        )
        raise UnsupportedFamilyError(msg)
    else:
        rows = _generic_rows(variety)

    logger.debug("Classified %s: %d rows", variety.name, len(rows))
    return rows
