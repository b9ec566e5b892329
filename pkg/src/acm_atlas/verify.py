"""
Verification suites (:mod:`acm_atlas.verify`)
=============================================

Exact identity checks over grids, the closed-form audit and the comparison of
:func:`acm_atlas.classify.classify` with the shipped golden tables.  A suite
returns a list of failure messages; an empty list is a pass.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from importlib import resources
from typing import TYPE_CHECKING, Any

from .chern import BundleClass, dual, is_stable, stability_number, twist
from .classify import IntRange, classify, fano_constraint
from .errors import AcmAtlasError, NegativeGenusError, NonIntegralGenusError
from .report import check_schema_version
from .rr import (
    AuditStatus,
    audit_formulas,
    chi_line,
    chi_line_exact,
    chi_rank2,
    chi_rank2_exact,
    format_rational,
    line_formula_expected_to_match,
)
from .serre import bundle_to_curve, curve_to_bundle
from .variety import Family

if TYPE_CHECKING:
    from collections.abc import Callable, Iterator
    from pathlib import Path

    from .catalog import Catalog
    from .variety import PolarizedThreefold


logger = logging.getLogger(__name__)

SCOPES = ("all", "fano", "cicy", "formulas")
# failure messages kept per suite and variety
_MAX_REPORTED = 5


@dataclass(frozen=True)
class VerifyConfig:
    """Grid sizes for the verification suites."""

    audit_radius: int = 6
    c2_range: tuple[int, int] = (-20, 60)
    twist_radius: int = 10
    split_radius: int = 5
    round_trip_c1: tuple[int, int] = (-2, 4)
    round_trip_c2: tuple[int, int] = (1, 100)

    @classmethod
    def with_grid(cls, radius: int | None) -> VerifyConfig:
        """Defaults, with all three radii replaced by ``radius`` when given."""
        if radius is None:
            return cls()
        if radius < 0:
            msg = f"Grid radius must be non-negative, got {radius}"
            raise ValueError(msg)
        return cls(audit_radius=radius, twist_radius=radius, split_radius=radius)

    def classes(self) -> Iterator[tuple[int, int]]:
        """``(c1, c2)`` over the audit grid."""
        for c1 in range(-self.audit_radius, self.audit_radius + 1):
            for c2 in range(self.c2_range[0], self.c2_range[1] + 1):
                yield c1, c2


class Status(str, Enum):
    PASS = "PASS"
    FAIL = "FAIL"


@dataclass(frozen=True)
class Finding:
    """Outcome of one suite on one variety."""

    suite: str
    variety: str
    failures: tuple[str, ...] = ()
    detail: dict[str, Any] = field(default_factory=dict, compare=False)

    @property
    def status(self) -> Status:
        return Status.FAIL if self.failures else Status.PASS

    def to_dict(self) -> dict[str, Any]:
        return {
            "suite": self.suite,
            "variety": self.variety,
            "status": self.status.value,
            "failures": list(self.failures),
            **self.detail,
        }


@dataclass(frozen=True)
class VerifyResult:
    scope: str
    findings: tuple[Finding, ...]

    @property
    def passed(self) -> bool:
        return bool(self.findings) and all(
            f.status is Status.PASS for f in self.findings
        )

    @property
    def first_failure(self) -> Finding | None:
        return next((f for f in self.findings if f.status is Status.FAIL), None)

    def summary(self) -> dict[str, Any]:
        return {
            "scope": self.scope,
            "passed": self.passed,
            "findings": len(self.findings),
            "failed": sum(f.status is Status.FAIL for f in self.findings),
            "varieties": sorted({f.variety for f in self.findings}),
        }


def _admissible(variety: PolarizedThreefold, c1: int, c2: int) -> bool:
    return (c1 - variety.index) * c2 % 2 == 0


# * Chern class suites ----------------------------------------------------------------
def _bundles(variety: PolarizedThreefold) -> list[BundleClass]:
    return [
        BundleClass(c1, c2, b=b)
        for c1 in range(-2, 5)
        for c2 in (1, variety.degree)
        for b in (0, 1)
    ]


def check_twist_group_law(
    variety: PolarizedThreefold, config: VerifyConfig
) -> list[str]:
    """``twist(twist(B, m), n) == twist(B, m + n)`` and ``twist(B, 0) == B``."""
    radius = config.twist_radius
    failures: list[str] = []
    for bundle in _bundles(variety):
        if twist(variety, bundle, 0) != bundle:
            failures.append(f"twist by 0 changed {bundle}")
        for m in range(-radius, radius + 1):
            once = twist(variety, bundle, m)
            for n in range(-radius, radius + 1):
                if twist(variety, once, n) != twist(variety, bundle, m + n):
                    failures.append(f"{bundle}: twist {m} then {n} != twist {m + n}")
    return failures


def check_stability_invariance(
    variety: PolarizedThreefold, config: VerifyConfig
) -> list[str]:
    """``2b - c1`` does not change under twists."""
    radius = config.twist_radius
    failures: list[str] = []
    for bundle in _bundles(variety):
        value = stability_number(bundle)
        failures.extend(
            f"{bundle}: 2b - c1 changes under twist {n}"
            for n in range(-radius, radius + 1)
            if stability_number(twist(variety, bundle, n)) != value
        )
    return failures


def check_dual_involution(
    variety: PolarizedThreefold, config: VerifyConfig
) -> list[str]:
    """``dual(dual(B)) == B``."""
    del config
    return [
        f"dual is not an involution on {bundle}"
        for bundle in _bundles(variety)
        if dual(dual(bundle)) != bundle
    ]


# * Euler characteristic suites ------------------------------------------------------
def check_split_additivity(
    variety: PolarizedThreefold, config: VerifyConfig
) -> list[str]:
    """``chi(O(a) + O(b)) == chi(O(a)) + chi(O(b))``."""
    radius = config.split_radius
    failures: list[str] = []
    for a in range(-radius, radius + 1):
        for b in range(-radius, radius + 1):
            split = BundleClass(a + b, a * b * variety.degree)
            lhs = chi_rank2(variety, split)
            rhs = chi_line(variety, a) + chi_line(variety, b)
            if lhs != rhs:
                failures.append(f"O({a}) + O({b}): {lhs} != {rhs}")
    return failures


def check_serre_duality(
    variety: PolarizedThreefold, config: VerifyConfig
) -> list[str]:
    """``chi(E) == -chi(E^v (x) K)`` on admissible classes."""
    failures: list[str] = []
    for c1, c2 in config.classes():
        if not _admissible(variety, c1, c2):
            continue
        bundle = BundleClass(c1, c2)
        paired = twist(variety, dual(bundle), -variety.index)
        lhs, rhs = chi_rank2(variety, bundle), -chi_rank2(variety, paired)
        if lhs != rhs:
            failures.append(f"(c1, c2) = ({c1}, {c2}): {lhs} != {rhs}")
    return failures


def check_integrality(variety: PolarizedThreefold, config: VerifyConfig) -> list[str]:
    """
    ``chi(O(n))`` is integral, and ``chi(E)`` is integral exactly on
    admissible classes.
    """
    radius = config.audit_radius
    failures = [
        f"chi(O({n})) = {format_rational(value)}"
        for n in range(-radius, radius + 1)
        if (value := chi_line_exact(variety, n)).denominator != 1
    ]
    for c1, c2 in config.classes():
        integral = chi_rank2_exact(variety, c1, c2).denominator == 1
        if integral != _admissible(variety, c1, c2):
            failures.append(
                f"(c1, c2) = ({c1}, {c2}): integral = {integral} disagrees with parity"
            )
    return failures


def check_serre_sequence(
    variety: PolarizedThreefold, config: VerifyConfig
) -> list[str]:
    """
    ``chi(E) == chi(O) + chi(O(c1)) - c1 c2 + (c1 - index) c2 / 2``.
    """
    failures: list[str] = []
    chi_o = variety.structure_chi
    for c1, c2 in config.classes():
        expected = (
            chi_o
            + chi_line_exact(variety, c1)
            - c1 * c2
            + Fraction((c1 - variety.index) * c2, 2)
        )
        if (value := chi_rank2_exact(variety, c1, c2)) != expected:
            failures.append(
                f"(c1, c2) = ({c1}, {c2}): {format_rational(value)} "
                f"!= {format_rational(expected)}"
            )
    return failures


# * Serre correspondence -------------------------------------------------------------
def check_serre_round_trip(
    variety: PolarizedThreefold, config: VerifyConfig
) -> list[str]:
    """``curve_to_bundle(bundle_to_curve(B))`` reproduces ``(c1, c2)``."""
    failures: list[str] = []
    low1, high1 = config.round_trip_c1
    low2, high2 = config.round_trip_c2
    for c1 in range(low1, high1 + 1):
        for c2 in range(low2, high2 + 1):
            try:
                curve = bundle_to_curve(variety, BundleClass(c1, c2, b=0))
            except (NonIntegralGenusError, NegativeGenusError):
                continue
            back = curve_to_bundle(variety, curve)
            if (back.c1, back.c2) != (c1, c2):
                failures.append(f"({c1}, {c2}) -> {curve} -> ({back.c1}, {back.c2})")
    return failures


# * Tables ------------------------------------------------------------------------------
def check_classify_rows(
    variety: PolarizedThreefold, config: VerifyConfig
) -> list[str]:
    """
    Every row re-solves its defining constraint (prime Fano), matches the Serre
    correspondence at each ``c2`` endpoint, and is stable exactly when
    ``c1 >= 1``.
    """
    del config
    failures: list[str] = []
    for row in classify(variety):
        if variety.family is Family.FANO:
            solution = fano_constraint(variety, row.c1)
            top = row.c2.high if isinstance(row.c2, IntRange) else row.c2
            if solution.c2 != top:
                failures.append(f"c1 = {row.c1}: constraint gives c2 = {solution.c2}")
            base = BundleClass(row.c1, solution.c2)
            shifted = twist(variety, base, solution.twist)
            if chi_rank2(variety, shifted) != solution.target:
                failures.append(f"c1 = {row.c1}: {solution.describe()} does not hold")

        for e, curve in zip(row.c2_endpoints, row.curves, strict=True):
            if bundle_to_curve(variety, BundleClass(row.c1, e, b=0)) != curve:
                failures.append(f"c1 = {row.c1}, c2 = {e}: curve {curve} mismatch")
            if not curve.is_subcanonical:
                failures.append(f"c1 = {row.c1}, c2 = {e}: {curve} not subcanonical")

        if is_stable(BundleClass(row.c1, 0, b=0)) != (row.c1 >= 1):
            failures.append(f"c1 = {row.c1}: stability disagrees with c1 >= 1")
    return failures


def load_golden(name: str, directory: Path | None = None) -> dict[str, Any]:
    """Golden table of a standard variety, from ``directory`` or the package."""
    if directory is None:
        golden = resources.files("acm_atlas.data").joinpath("golden", f"{name}.json")
        text = golden.read_text()
    else:
        text = (directory / f"{name}.json").read_text()
    data = json.loads(text)
    check_schema_version(data.get("schema_version"), f"Golden table {name}")
    return data


def check_golden(
    variety: PolarizedThreefold,
    config: VerifyConfig,
    directory: Path | None = None,
) -> list[str]:
    """Rows equal the shipped golden table."""
    del config
    try:
        expected = load_golden(variety.name, directory)["rows"]
    except FileNotFoundError:
        return [f"No golden table for {variety.name}"]

    produced = [row.golden_dict() for row in classify(variety) if row.golden]
    if len(produced) != len(expected):
        return [f"{len(produced)} rows, golden table has {len(expected)}"]
    return [
        f"row {i}: {got} != {want}"
        for i, (got, want) in enumerate(zip(produced, expected, strict=True))
        if got != want
    ]


# * Audit ---------------------------------------------------------------------------
def audit_finding(variety: PolarizedThreefold, config: VerifyConfig) -> Finding:
    """
    Closed-form audit, where the published ciCY line bundle formula is expected
    to disagree at every ``n != 0`` except on the quintic.
    """
    report = audit_formulas(variety, config.audit_radius, config.c2_range)
    failures: list[str] = []
    for audit in report.audits:
        if audit.formula == "cicy-line" and not line_formula_expected_to_match(variety):
            expected = [
                n for n in range(-config.audit_radius, config.audit_radius + 1) if n
            ]
            if audit.mismatch_inputs("n") != expected:
                failures.append(
                    f"{audit.formula}: expected mismatches at n = {expected}, "
                    f"got {audit.mismatch_inputs('n')}"
                )
        elif audit.status is not AuditStatus.MATCH:
            failures.append(
                f"{audit.formula}: {len(audit.mismatches)} unexpected mismatches"
            )
    return Finding(
        "audit",
        variety.name,
        tuple(failures),
        detail={"audits": report.to_dict()["audits"]},
    )


# * Driver ------------------------------------------------------------------------------
PROPERTY_SUITES: dict[str, Callable[[PolarizedThreefold, VerifyConfig], list[str]]] = {
    "twist-group-law": check_twist_group_law,
    "stability-invariance": check_stability_invariance,
    "dual-involution": check_dual_involution,
    "split-additivity": check_split_additivity,
    "serre-duality": check_serre_duality,
    "integrality": check_integrality,
    "serre-sequence": check_serre_sequence,
    "serre-round-trip": check_serre_round_trip,
}
TABLE_SUITES: dict[str, Callable[[PolarizedThreefold, VerifyConfig], list[str]]] = {
    "classify-rows": check_classify_rows,
    "golden": check_golden,
}


def _run_suite(
    name: str,
    suite: Callable[[PolarizedThreefold, VerifyConfig], list[str]],
    variety: PolarizedThreefold,
    config: VerifyConfig,
) -> Finding:
    try:
        failures = suite(variety, config)
    except AcmAtlasError as e:
        failures = [f"{type(e).__name__}: {e}"]
    logger.debug("%s on %s: %d failures", name, variety.name, len(failures))
    return Finding(
        name,
        variety.name,
        tuple(failures[:_MAX_REPORTED]),
        detail={"failure_count": len(failures)} if failures else {},
    )


def _select(catalog: Catalog, scope: str) -> list[PolarizedThreefold]:
    if scope == "fano":
        return catalog.by_family(Family.FANO)
    if scope == "cicy":
        return catalog.by_family(Family.CICY)
    if scope == "formulas":
        return [v for v in catalog if v.family is not Family.CUSTOM]
    return list(catalog)


def run_verify(
    catalog: Catalog,
    scope: str = "all",
    config: VerifyConfig | None = None,
) -> VerifyResult:
    """
    Run the suites of ``scope`` on every selected catalog variety.

    ``formulas`` runs only the closed-form audit.  Other scopes run the property
    suites everywhere, and the table suites and audit on prime Fano and
    complete intersection Calabi-Yau threefolds.  Selecting no variety is a
    failure.
    """
    if scope not in SCOPES:
        msg = f"Unknown verify scope {scope!r}, expected one of {SCOPES}"
        raise ValueError(msg)
    config = config or VerifyConfig()

    varieties = _select(catalog, scope)
    if not varieties:
        logger.error("Nothing to verify: scope %s selects no variety", scope)

    findings: list[Finding] = []
    for variety in varieties:
        logger.info("Verifying %s", variety.name)
        tabulated = variety.family is not Family.CUSTOM
        if scope != "formulas":
            findings.extend(
                _run_suite(name, suite, variety, config)
                for name, suite in PROPERTY_SUITES.items()
            )
            if tabulated and variety.standard:
                findings.extend(
                    _run_suite(name, suite, variety, config)
                    for name, suite in TABLE_SUITES.items()
                )
        if tabulated:
            findings.append(audit_finding(variety, config))

    result = VerifyResult(scope, tuple(findings))
    logger.info(
        "verify %s: %d findings, %s",
        scope,
        len(findings),
        "PASS" if result.passed else "FAIL",
    )
    return result
