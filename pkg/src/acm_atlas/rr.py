"""
Euler characteristics (:mod:`acm_atlas.rr`)
===========================================

The master formula is Hirzebruch-Riemann-Roch on a threefold with
``c1(TX) = index * H``:

.. code-block:: text

    chi(E) = ch3 + ch2 td1 + ch1 td2 + rank td3

with ``td1 = index H / 2``, ``td2 = (index^2 H^2 + c2(TX)) / 12`` and
``td3 = index c2(TX) H / 24 = chi(O_V)``.  All arithmetic is exact.

The closed forms ``reference_*`` are the published specializations to prime
Fano and complete intersection Calabi-Yau threefolds.  They are kept as
independent fixtures, and :func:`audit_formulas` compares them with the master
formula.

>>> from acm_atlas.variety import make_prime_fano, make_cicy
>>> chi_line(make_prime_fano(3), 1)
5
>>> chi_line(make_cicy([2, 4]), 1), reference_cicy_line_chi(8, 1)
(6, Fraction(8, 1))
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import TYPE_CHECKING, Any

import sympy as sp

from .errors import NonIntegralChiError, UnsupportedFamilyError
from .variety import Family

if TYPE_CHECKING:
    from .chern import BundleClass
    from .variety import PolarizedThreefold


logger = logging.getLogger(__name__)


def format_rational(value: Fraction | int) -> int | str:
    """
    Integer if integral, else ``"p/q"``.

    >>> format_rational(Fraction(4, 2)), format_rational(Fraction(-1, 6))
    (2, '-1/6')
    """
    value = Fraction(value)
    if value.denominator == 1:
        return value.numerator
    return f"{value.numerator}/{value.denominator}"


# * Master formula ---------------------------------------------------------------
# Arguments are sympy expressions.
def _master_line(variety: PolarizedThreefold, n: Any, chi_o: Any) -> Any:
    d, r = variety.degree, variety.index
    return (
        d * n**3 / 6
        + r * d * n**2 / 4
        + n * (r * r * d + variety.c2txh) / 12
        + chi_o
    )


def _master_rank2(variety: PolarizedThreefold, c1: Any, c2: Any, chi_o: Any) -> Any:
    d, r = variety.degree, variety.index
    return (
        (d * c1**3 - 3 * c1 * c2) / 6
        + r * (d * c1**2 - 2 * c2) / 4
        + c1 * (r * r * d + variety.c2txh) / 12
        + 2 * chi_o
    )


def _require_integral(value: Fraction, what: str, variety: PolarizedThreefold) -> int:
    if value.denominator != 1:
        msg = f"{what} = {format_rational(value)} on {variety.name} is not an integer"
        raise NonIntegralChiError(msg)
    return value.numerator


# Point values use the master formulas scaled by 24, so only one Fraction is built.
@lru_cache(maxsize=1 << 16)
def chi_line_exact(variety: PolarizedThreefold, n: int) -> Fraction:
    """Exact value of ``chi(O_V(n))``."""
    d, r, c2txh = variety.degree, variety.index, variety.c2txh
    return Fraction(
        4 * d * n**3 + 6 * r * d * n**2 + 2 * n * (r * r * d + c2txh) + r * c2txh,
        24,
    )


@lru_cache(maxsize=1 << 16)
def chi_rank2_exact(variety: PolarizedThreefold, c1: int, c2: int) -> Fraction:
    """Exact value of ``chi(E)`` for a rank-two class ``(c1, c2)``."""
    d, r, c2txh = variety.degree, variety.index, variety.c2txh
    return Fraction(
        4 * (d * c1**3 - 3 * c1 * c2)
        + 6 * r * (d * c1**2 - 2 * c2)
        + 2 * c1 * (r * r * d + c2txh)
        + 2 * r * c2txh,
        24,
    )


def chi_line(variety: PolarizedThreefold, n: int) -> int:
    """
    ``chi(O_V(n))``.

    Raises
    ------
    NonIntegralChiError
        If the descriptor data is inconsistent.
    """
    return _require_integral(chi_line_exact(variety, n), f"chi(O({n}))", variety)


def chi_rank2(variety: PolarizedThreefold, bundle: BundleClass) -> int:
    """
    ``chi(E)`` for a rank-two bundle class.

    The value is integral exactly when ``(c1 - index) * c2`` is even, which is
    the parity every actual rank-two bundle satisfies.

    Raises
    ------
    NonIntegralChiError
        If the class is not the class of any rank-two bundle on ``variety``.
    """
    return _require_integral(
        chi_rank2_exact(variety, bundle.c1, bundle.c2),
        f"chi(E) for (c1, c2) = ({bundle.c1}, {bundle.c2})",
        variety,
    )


# * Polynomials ----------------------------------------------------------------
@dataclass(frozen=True)
class ChiPolynomial:
    """``chi(n) = a3 n^3 + a2 n^2 + a1 n + a0`` with exact coefficients."""

    a3: Fraction
    a2: Fraction
    a1: Fraction
    a0: Fraction

    @classmethod
    def from_expression(cls, expr: Any, symbol: sp.Symbol) -> ChiPolynomial:
        """Build from a sympy expression of degree at most three in ``symbol``."""
        poly = sp.Poly(sp.expand(expr), symbol)
        if poly.degree() > 3:  # ruff:ignore[magic-value-comparison]
            msg = f"Expected a cubic in {symbol}, got degree {poly.degree()}"
            raise ValueError(msg)
        coeffs = [sp.Rational(poly.coeff_monomial(symbol**k)) for k in (3, 2, 1, 0)]
        return cls(*(Fraction(int(c.p), int(c.q)) for c in coeffs))

    @property
    def coefficients(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        """``(a3, a2, a1, a0)``."""
        return (self.a3, self.a2, self.a1, self.a0)

    def __call__(self, n: int) -> Fraction:
        return ((self.a3 * n + self.a2) * n + self.a1) * n + self.a0

    def is_integer_valued(self) -> bool:
        """
        Whether the polynomial takes integer values at every integer.

        A cubic is integer valued iff it is integral at four consecutive
        integers.
        """
        return all(self(n).denominator == 1 for n in range(4))

    def to_dict(self) -> dict[str, int | str]:
        """Coefficients as integers or ``"p/q"`` strings."""
        return {
            name: format_rational(value)
            for name, value in zip(("a3", "a2", "a1", "a0"), self.coefficients, strict=True)
        }


def _rational(value: Fraction) -> sp.Rational:
    return sp.Rational(value.numerator, value.denominator)


def hilbert_polynomial(variety: PolarizedThreefold) -> ChiPolynomial:
    """Closed form of ``n -> chi(O_V(n))``."""
    n = sp.Symbol("n")
    return ChiPolynomial.from_expression(
        _master_line(variety, n, _rational(variety.structure_chi)), n
    )


def chi_polynomial(variety: PolarizedThreefold, bundle: BundleClass) -> ChiPolynomial:
    """
    Closed form of ``n -> chi(E(n))``.

    >>> from acm_atlas.chern import BundleClass
    >>> from acm_atlas.variety import make_prime_fano
    >>> chi_polynomial(make_prime_fano(3), BundleClass(0, 0)).a3
    Fraction(4, 3)
    """
    n = sp.Symbol("n")
    d = variety.degree
    c1 = sp.Integer(bundle.c1) + 2 * n
    c2 = sp.Integer(bundle.c2) + d * n * bundle.c1 + d * n**2
    return ChiPolynomial.from_expression(
        _master_rank2(variety, c1, c2, _rational(variety.structure_chi)), n
    )


def validate_integrality(variety: PolarizedThreefold) -> None:
    """
    Check that ``chi(O(n))`` is integer valued.

    Raises
    ------
    NonIntegralChiError
        For descriptor data no smooth threefold can have.
    """
    if not hilbert_polynomial(variety).is_integer_valued():
        msg = f"chi(O(n)) is not integer valued on {variety.name}: {variety}"
        raise NonIntegralChiError(msg)
    logger.debug("Integrality verified for %s", variety.name)


# * Published closed forms --------------------------------------------------------
def reference_fano_line_chi(g: int, m: int) -> Fraction:
    """``(g-1)(m+1)(2m+1)m / 6 + 2m + 1`` on a prime Fano of genus ``g``."""
    return Fraction((g - 1) * (m + 1) * (2 * m + 1) * m, 6) + 2 * m + 1


def reference_fano_rank2_chi(g: int, c1: int, c2: int) -> Fraction:
    """``(2g-2) c1^2 (c1/6 + 1/4) - c2 (c1+1)/2 + c1 (g+11)/6 + 2``."""
    return (
        (2 * g - 2) * c1**2 * (Fraction(c1, 6) + Fraction(1, 4))
        - Fraction(c2, 2) * (c1 + 1)
        + Fraction(c1, 6) * (g + 11)
        + 2
    )


def reference_cicy_rank2_chi(r: int, k: int, c1: int, c2: int) -> Fraction:
    """``r c1^3 / 6 - c1 c2 / 2 + c1 (12(k+4) - 2r) / 12``."""
    return (
        Fraction(r, 6) * c1**3
        - Fraction(c1 * c2, 2)
        + Fraction(c1, 12) * (12 * (k + 4) - 2 * r)
    )


def reference_cicy_line_chi(r: int, n: int) -> Fraction:
    """
    ``r (n^3 + 5n) / 6`` as published.

    Agrees with :func:`chi_line` only on the quintic, where ``k + 4 == r``.
    """
    return Fraction(r, 6) * (n**3 + 5 * n)


# * Audit ------------------------------------------------------------------------
class AuditStatus(str, Enum):
    """Outcome of comparing a closed form with the master formula."""

    MATCH = "MATCH"
    MISMATCH = "MISMATCH"


@dataclass(frozen=True)
class Mismatch:
    """Single grid point where the formulas disagree."""

    inputs: tuple[tuple[str, int], ...]
    master: Fraction
    reference: Fraction

    def to_dict(self) -> dict[str, Any]:
        """Plain dictionary for reports."""
        return {
            "inputs": dict(self.inputs),
            "master": format_rational(self.master),
            "reference": format_rational(self.reference),
        }


@dataclass(frozen=True)
class FormulaAudit:
    """Comparison of one closed form over a grid."""

    formula: str
    checked: int
    mismatches: tuple[Mismatch, ...] = ()

    @property
    def status(self) -> AuditStatus:
        """MATCH when no grid point disagrees."""
        return AuditStatus.MISMATCH if self.mismatches else AuditStatus.MATCH

    def mismatch_inputs(self, name: str) -> list[int]:
        """Values of input ``name`` over all mismatches."""
        return [dict(m.inputs)[name] for m in self.mismatches]

    def to_dict(self) -> dict[str, Any]:
        """Plain dictionary for reports."""
        return {
            "formula": self.formula,
            "status": self.status.value,
            "checked": self.checked,
            "mismatches": [m.to_dict() for m in self.mismatches],
        }


@dataclass(frozen=True)
class AuditReport:
    """All closed-form comparisons for one variety."""

    variety: PolarizedThreefold
    audits: tuple[FormulaAudit, ...]

    def __getitem__(self, formula: str) -> FormulaAudit:
        for audit in self.audits:
            if audit.formula == formula:
                return audit
        raise KeyError(formula)

    def to_dict(self) -> dict[str, Any]:
        """Plain dictionary for reports."""
        return {
            "variety": self.variety.name,
            "audits": [a.to_dict() for a in self.audits],
        }


def _compare(
    formula: str,
    points: list[tuple[tuple[str, int], ...]],
    master: Any,
    reference: Any,
) -> FormulaAudit:
    mismatches: list[Mismatch] = []
    for inputs in points:
        kws = dict(inputs)
        ours, theirs = master(**kws), reference(**kws)
        if ours != theirs:
            mismatches.append(Mismatch(inputs, ours, theirs))
    audit = FormulaAudit(formula, len(points), tuple(mismatches))
    logger.debug(
        "%s: %s over %d points (%d mismatches)",
        formula,
        audit.status.value,
        audit.checked,
        len(mismatches),
    )
    return audit


def audit_formulas(
    variety: PolarizedThreefold,
    radius: int = 6,
    c2_range: tuple[int, int] = (-20, 60),
) -> AuditReport:
    """
    Compare the master formula with the published closed forms.

    Line bundle formulas are checked for ``|n| <= radius``; rank-two formulas
    for ``|c1| <= radius`` and ``c2`` in ``c2_range`` (inclusive).
    """
    twists = [(("n", n),) for n in range(-radius, radius + 1)]
    classes = [
        (("c1", c1), ("c2", c2))
        for c1 in range(-radius, radius + 1)
        for c2 in range(c2_range[0], c2_range[1] + 1)
    ]

    def master_line(n: int) -> Fraction:
        return chi_line_exact(variety, n)

    def master_rank2(c1: int, c2: int) -> Fraction:
        return chi_rank2_exact(variety, c1, c2)

    if variety.family is Family.FANO:
        assert variety.genus is not None  # ruff:ignore[assert]
        g = variety.genus
        audits = (
            _compare(
                "fano-line",
                twists,
                master_line,
                lambda n: reference_fano_line_chi(g, n),
            ),
            _compare(
                "fano-rank2",
                classes,
                master_rank2,
                lambda c1, c2: reference_fano_rank2_chi(g, c1, c2),
            ),
        )
    elif variety.family is Family.CICY:
        r, k = variety.degree, variety.codimension
        audits = (
            _compare(
                "cicy-rank2",
                classes,
                master_rank2,
                lambda c1, c2: reference_cicy_rank2_chi(r, k, c1, c2),
            ),
            _compare(
                "cicy-line",
                twists,
                master_line,
                lambda n: reference_cicy_line_chi(r, n),
            ),
        )
    else:
        msg = f"No published closed forms for {variety.family.value} variety {variety.name}"
        raise UnsupportedFamilyError(msg)

    return AuditReport(variety, audits)


def line_formula_expected_to_match(variety: PolarizedThreefold) -> bool:
    """
    Whether the published line bundle formula should agree with the master.

    Always true on prime Fanos.  On complete intersection Calabi-Yau threefolds
    the published ``r (n^3 + 5n) / 6`` equals ``r (n^3 - n) / 6 + n (k + 4)``
    only when ``k + 4 == r``, i.e. on the quintic.
    """
    if variety.family is Family.CICY:
        return variety.codimension + 4 == variety.degree
    return True
