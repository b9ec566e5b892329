"""
Command line interface (:mod:`acm_atlas.cli`)
=============================================

Exit codes: ``0`` success, ``1`` verification failure, ``2`` usage error,
``3`` domain error.
"""

from __future__ import annotations

import logging
import sys
from argparse import ArgumentParser
from pathlib import Path
from typing import TYPE_CHECKING, Any

from .catalog import Catalog, catalog_to_json, load_catalog, parse_variety_spec
from .chern import BundleClass, is_stable, twist
from .classify import c1_bounds, classify, splitting_bound_data
from .errors import ConsistencyError, DomainError, UsageError
from .report import FORMATS, ReportDocument
from .rr import (
    audit_formulas,
    chi_line,
    chi_polynomial,
    chi_rank2,
    hilbert_polynomial,
)
from .serre import CurveClass, bundle_to_curve, curve_to_bundle, span_defect
from .variety import Family
from .verify import SCOPES, VerifyConfig, run_verify

if TYPE_CHECKING:
    from argparse import Namespace
    from collections.abc import Callable, Sequence
    from logging import Logger

    from .variety import PolarizedThreefold


FORMAT = "[acm-atlas %(levelname)s] %(message)s"
logger: Logger = logging.getLogger(__name__)
# parent of every module logger in the package
package_logger: Logger = logging.getLogger("acm_atlas")

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_USAGE = 2
EXIT_DOMAIN = 3


# * Utilities -----------------------------------------------------------------
def _setup_logging(
    verbosity: int = 0,
    stdout: bool = False,
) -> None:
    """Setup logging."""
    level_number = max(0, logging.WARNING - 10 * verbosity)
    package_logger.setLevel(level_number)

    if stdout:
        handler = logging.StreamHandler(sys.stdout)
        logging.basicConfig(level=logging.WARNING, format=FORMAT, handlers=[handler])
    else:
        logging.basicConfig(level=logging.WARNING, format=FORMAT)


def _variety(options: Namespace, catalog: Catalog) -> PolarizedThreefold:
    return parse_variety_spec(options.variety, catalog, strict=not options.permissive)


def _bundle(options: Namespace) -> BundleClass:
    return BundleClass(options.c1, options.c2, b=options.b)


# * Commands -------------------------------------------------------------------
def cmd_classify(options: Namespace, catalog: Catalog) -> ReportDocument:
    """Candidate table of a variety."""
    variety = _variety(options, catalog)
    rows = classify(variety, strict=not options.permissive)
    return ReportDocument(
        command="classify",
        variety=variety.to_dict(),
        payload={"rows": [row.to_dict() for row in rows]},
        provenance={f"c1={row.c1}": row.trace for row in rows},
    )


def cmd_chi(options: Namespace, catalog: Catalog) -> ReportDocument:
    """``chi(E(n))`` with ``--c1/--c2``, else ``chi(O(n))``."""
    variety = _variety(options, catalog)
    n = options.n
    if options.c1 is None and options.c2 is None:
        polynomial = hilbert_polynomial(variety)
        payload: dict[str, Any] = {
            "n": n,
            "chi": chi_line(variety, n),
            "polynomial": polynomial.to_dict(),
        }
        provenance = {"chi": f"chi(O_V({n})) by Riemann-Roch"}
    elif options.c1 is None or options.c2 is None:
        msg = "--c1 and --c2 must be given together"
        raise UsageError(msg)
    else:
        bundle = _bundle(options)
        twisted = twist(variety, bundle, n)
        payload = {
            "n": n,
            "bundle": bundle.to_dict(),
            "twisted": twisted.to_dict(),
            "chi": chi_rank2(variety, twisted),
            "polynomial": chi_polynomial(variety, bundle).to_dict(),
        }
        provenance = {"chi": f"chi(E({n})) by Riemann-Roch for rank two"}
    return ReportDocument(
        command="chi",
        variety=variety.to_dict(),
        payload=payload,
        provenance=provenance,
    )


def cmd_twist(options: Namespace, catalog: Catalog) -> ReportDocument:
    """Class of ``E(n)``."""
    variety = _variety(options, catalog)
    bundle = _bundle(options)
    twisted = twist(variety, bundle, options.n)
    payload: dict[str, Any] = {
        "n": options.n,
        "bundle": bundle.to_dict(),
        "twisted": twisted.to_dict(),
    }
    if bundle.b is not None:
        payload["stable"] = is_stable(bundle)
    return ReportDocument(command="twist", variety=variety.to_dict(), payload=payload)


def cmd_bounds(options: Namespace, catalog: Catalog) -> ReportDocument:
    """Splitting window for ``c1``."""
    variety = _variety(options, catalog)
    data = splitting_bound_data(variety)
    window = c1_bounds(variety)
    return ReportDocument(
        command="bounds",
        variety=variety.to_dict(),
        payload={
            "c1": window.to_dict(),
            "empty": window.is_empty,
            "l_dot_d": data.l_dot_d,
            "l_dot_kl": data.l_dot_kl,
        },
        provenance={
            "c1": "-2 L.D - L.K_L <= -L.D c1 <= L.K_L on L = D1 . D2",
        },
    )


def cmd_curve(options: Namespace, catalog: Catalog) -> ReportDocument:
    """Zero locus of a normalized class, or the class of a subcanonical curve."""
    variety = _variety(options, catalog)
    inverse = (options.degree, options.genus, options.level)
    forward = (options.c1, options.c2)

    if all(x is not None for x in inverse) and all(x is None for x in forward):
        curve = CurveClass(options.degree, options.genus, options.level)
        bundle = curve_to_bundle(variety, curve)
    elif all(x is not None for x in forward) and all(x is None for x in inverse):
        bundle = BundleClass(options.c1, options.c2, b=0)
        curve = bundle_to_curve(variety, bundle)
    else:
        msg = "curve needs either --c1/--c2 or all of --degree/--genus/--level"
        raise UsageError(msg)

    payload: dict[str, Any] = {"bundle": bundle.to_dict(), "curve": curve.to_dict()}
    if (
        variety.family is Family.FANO
        and variety.genus is not None
        and curve.subcanonical_level == 0
        and 3 <= curve.degree <= variety.genus + 2  # ruff:ignore[magic-value-comparison]
    ):
        payload["span_defect"] = span_defect(variety, curve)
    return ReportDocument(command="curve", variety=variety.to_dict(), payload=payload)


def cmd_audit(options: Namespace, catalog: Catalog) -> ReportDocument:
    """Closed-form audit of one variety."""
    variety = _variety(options, catalog)
    config = VerifyConfig.with_grid(options.grid)
    report = audit_formulas(variety, config.audit_radius, config.c2_range)
    audits = report.to_dict()["audits"]
    return ReportDocument(
        command="audit",
        variety=variety.to_dict(),
        payload={
            "rows": [
                {
                    "formula": a["formula"],
                    "status": a["status"],
                    "checked": a["checked"],
                    "mismatches": len(a["mismatches"]),
                }
                for a in audits
            ]
        },
        audits=audits,
    )


def cmd_catalog(options: Namespace, catalog: Catalog) -> ReportDocument:
    """Active catalog with invariants."""
    del options
    return ReportDocument(
        command="catalog",
        payload={
            "source": catalog.source,
            "rows": [v.to_dict() for v in catalog],
        },
    )


def cmd_verify(options: Namespace, catalog: Catalog) -> ReportDocument:
    """All suites over the active catalog."""
    result = run_verify(catalog, options.scope, VerifyConfig.with_grid(options.grid))
    return ReportDocument(
        command="verify",
        payload={
            **result.summary(),
            "rows": [
                {
                    "suite": f.suite,
                    "variety": f.variety,
                    "status": f.status.value,
                }
                for f in result.findings
            ],
        },
        audits=[f.to_dict() for f in result.findings],
    )


COMMANDS: dict[str, Callable[[Namespace, Catalog], ReportDocument]] = {
    "classify": cmd_classify,
    "chi": cmd_chi,
    "twist": cmd_twist,
    "bounds": cmd_bounds,
    "curve": cmd_curve,
    "audit": cmd_audit,
    "verify": cmd_verify,
    "catalog": cmd_catalog,
}


# * Parser -----------------------------------------------------------------------
def _add_common_arguments(parser: ArgumentParser) -> None:
    _ = parser.add_argument(
        "--format",
        choices=FORMATS,
        default="json",
        help="Output format (default: json).",
    )
    _ = parser.add_argument(
        "--out",
        type=Path,
        default=None,
        help="Write the report to this path instead of stdout.",
    )
    _ = parser.add_argument(
        "--catalog",
        type=Path,
        default=None,
        help="""
        Catalog file.  Defaults to ``$ACM_ATLAS_CATALOG``, then to the built-in
        catalog.
        """,
    )
    _ = parser.add_argument(
        "--permissive",
        action="store_true",
        help="""
        Accept non-standard complete intersections and classify custom varieties
        generically.
        """,
    )
    _ = parser.add_argument(
        "--grid",
        type=int,
        default=None,
        help="Radius of the verification grids (audit, twist and split suites).",
    )
    _ = parser.add_argument(
        "-v",
        "--verbose",
        dest="verbosity",
        action="count",
        default=0,
        help="Set verbosity level. Pass multiple times to up level.",
    )
    _ = parser.add_argument(
        "--stdout",
        action="store_true",
        help="Log to stdout instead of stderr.",
    )


def _add_bundle_arguments(parser: ArgumentParser, required: bool = False) -> None:
    _ = parser.add_argument("--c1", type=int, default=None, required=required)
    _ = parser.add_argument("--c2", type=int, default=None, required=required)
    _ = parser.add_argument(
        "--b", type=int, default=None, help="Normalization level, if known."
    )


def get_parser() -> ArgumentParser:
    """Get argparser."""
    common = ArgumentParser(add_help=False)
    _add_common_arguments(common)

    parser = ArgumentParser(
        prog="acm-atlas",
        description="""
        Numerical candidates for rank-two bundles without intermediate cohomology
        on prime Fano and complete intersection Calabi-Yau threefolds.
        """,
    )
    _ = parser.add_argument("--version", action="store_true", help="Display version.")
    subparsers = parser.add_subparsers(dest="command")

    def add(name: str, help_: str) -> ArgumentParser:
        sub = subparsers.add_parser(name, help=help_, parents=[common])
        if name not in {"verify", "catalog"}:
            _ = sub.add_argument(
                "variety",
                help="fano:g=<n>, cicy:<d1>x<d2>..., custom:d=<n>,r=<n>,c2=<n> or a catalog name.",
            )
        return sub

    _ = add("classify", "Candidate table.")
    _ = add("bounds", "Splitting window for c1.")
    _ = add("audit", "Compare closed forms with the master formula.")

    chi = add("chi", "Euler characteristic of O(n) or E(n).")
    _add_bundle_arguments(chi)
    _ = chi.add_argument("-n", type=int, default=0, help="Twist (default 0).")

    twist_ = add("twist", "Chern classes of E(n).")
    _add_bundle_arguments(twist_, required=True)
    _ = twist_.add_argument("-n", type=int, required=True, help="Twist.")

    curve = add("curve", "Serre correspondence in either direction.")
    _ = curve.add_argument("--c1", type=int, default=None)
    _ = curve.add_argument("--c2", type=int, default=None)
    _ = curve.add_argument("--degree", type=int, default=None)
    _ = curve.add_argument("--genus", type=int, default=None)
    _ = curve.add_argument("--level", type=int, default=None)

    verify = add("verify", "Run all verification suites on the catalog.")
    _ = verify.add_argument("scope", nargs="?", choices=SCOPES, default="all")

    catalog = add("catalog", "List the active catalog.")
    _ = catalog.add_argument(
        "--export",
        action="store_true",
        help="Write the catalog file itself instead of a report.",
    )

    return parser


def _write(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text)
        logger.info("Wrote %s", out)


def main(args: Sequence[str] | None = None) -> int:
    """Main script."""
    parser = get_parser()
    options = parser.parse_args(args)

    if options.version:
        from acm_atlas import __version__

        print("acm-atlas", __version__)  # ruff:ignore[print]
        return EXIT_OK

    if not options.command:
        parser.print_help()
        return EXIT_USAGE

    _setup_logging(options.verbosity, options.stdout)
    logger.info("Command: %s", options.command)

    try:
        catalog = load_catalog(options.catalog)
        if options.command == "catalog" and options.export:
            _write(catalog_to_json(catalog), options.out)
            return EXIT_OK
        document = COMMANDS[options.command](options, catalog)
    except UsageError as e:
        logger.error("%s: %s", type(e).__name__, e)  # ruff:ignore[logging-exc-info]
        return EXIT_USAGE
    except DomainError as e:
        logger.error("%s: %s", type(e).__name__, e)  # ruff:ignore[logging-exc-info]
        return EXIT_DOMAIN
    except ConsistencyError as e:
        logger.error("%s: %s", type(e).__name__, e)  # ruff:ignore[logging-exc-info]
        return EXIT_VERIFY
    except ValueError as e:
        logger.error("%s", e)  # ruff:ignore[logging-exc-info]
        return EXIT_USAGE

    _write(document.render(options.format), options.out)

    if options.command == "verify" and not document.payload["passed"]:
        failed = [a for a in document.audits if a["status"] == "FAIL"]
        if failed:
            logger.error(
                "verify: %s failed on %s: %s",
                failed[0]["suite"],
                failed[0]["variety"],
                failed[0]["failures"][:1],
            )
        else:
            logger.error("verify: nothing was verified")
        return EXIT_VERIFY
    return EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
