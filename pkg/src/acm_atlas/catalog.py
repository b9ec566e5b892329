"""
Catalogs and variety specifications (:mod:`acm_atlas.catalog`)
==============================================================

A catalog is a JSON document

.. code-block:: json

    {
      "schema_version": "1.0",
      "varieties": [
        {"name": "V4", "family": "fano", "genus": 3},
        {"name": "X5", "family": "cicy", "multidegrees": [5]},
        {"name": "P3", "family": "custom", "degree": 1, "index": 4, "c2txh": 6}
      ]
    }

Family parameters may also be nested under a ``"params"`` object.  The
``schema_version`` key is optional, and a bare list of entries is accepted in
place of the object.  Custom entries must have integer valued ``chi(O(n))``.

The active catalog is the ``--catalog`` path, else the file named by
``ACM_ATLAS_CATALOG``, else the one shipped with the package.

>>> parse_variety_spec("cicy:2x4").name
'X8'
>>> parse_variety_spec("V22").genus
12
"""

from __future__ import annotations

import json
import logging
import os
import re
from dataclasses import dataclass, replace
from importlib import resources
from pathlib import Path
from typing import TYPE_CHECKING, Any

from .errors import AcmAtlasError, CatalogError, SpecParseError
from .report import SCHEMA_VERSION, check_schema_version, dumps
from .rr import validate_integrality
from .variety import Family, make_cicy, make_custom, make_prime_fano

if TYPE_CHECKING:
    from collections.abc import Iterator

    from .variety import PolarizedThreefold


logger = logging.getLogger(__name__)

CATALOG_ENV = "ACM_ATLAS_CATALOG"
BUILTIN_CATALOG = "catalog.json"


@dataclass(frozen=True)
class Catalog:
    """Named varieties, in file order."""

    varieties: tuple[PolarizedThreefold, ...]
    source: str = "<memory>"

    def __iter__(self) -> Iterator[PolarizedThreefold]:
        return iter(self.varieties)

    def __len__(self) -> int:
        return len(self.varieties)

    @property
    def names(self) -> list[str]:
        return [v.name for v in self.varieties]

    def get(self, name: str) -> PolarizedThreefold | None:
        return next((v for v in self.varieties if v.name == name), None)

    def by_family(self, family: Family) -> list[PolarizedThreefold]:
        return [v for v in self.varieties if v.family is family]

    def to_dict(self) -> dict[str, Any]:
        return {
            "source": self.source,
            "varieties": [v.to_dict() for v in self.varieties],
        }


# * Loading ----------------------------------------------------------------------
def _make_custom(degree: int, index: int, c2txh: int) -> PolarizedThreefold:
    variety = make_custom(degree, index, c2txh)
    validate_integrality(variety)
    return variety


def _entry_to_variety(entry: dict[str, Any]) -> PolarizedThreefold:
    # family parameters may be nested under "params"
    entry = {**entry, **entry.get("params", {})}
    family = Family(entry["family"])
    if family is Family.FANO:
        variety = make_prime_fano(int(entry["genus"]))
    elif family is Family.CICY:
        variety = make_cicy(
            [int(r) for r in entry["multidegrees"]],
            strict=bool(entry.get("strict", True)),
        )
    else:
        variety = _make_custom(
            int(entry["degree"]), int(entry["index"]), int(entry["c2txh"])
        )

    if (name := entry.get("name")) and name != variety.name:
        variety = replace(variety, name=str(name))
    return variety


def parse_catalog(data: Any, source: str = "<memory>") -> Catalog:
    """
    Build a :class:`Catalog` from decoded JSON.

    A bare list of entries is read as ``{"varieties": entries}``, and a missing
    ``schema_version`` as the current one.

    Raises
    ------
    CatalogError
        On a malformed document or an entry that cannot be constructed.
    SchemaVersionError
        If ``schema_version`` is present and not compatible.
    """
    if isinstance(data, list):
        data = {"varieties": data}
    if not isinstance(data, dict) or not isinstance(data.get("varieties"), list):
        msg = (
            f"Catalog {source} must be a list of entries "
            "or an object with a 'varieties' list"
        )
        raise CatalogError(msg)
    version = data.get("schema_version", SCHEMA_VERSION)
    check_schema_version(version, f"Catalog {source}")

    varieties: list[PolarizedThreefold] = []
    for index, entry in enumerate(data["varieties"]):
        try:
            varieties.append(_entry_to_variety(entry))
        except AcmAtlasError as e:
            msg = f"Catalog {source} entry {index} is invalid: {e}"
            raise CatalogError(msg) from e
        except (KeyError, TypeError, ValueError) as e:
            msg = f"Catalog {source} entry {index} is malformed: {entry!r}"
            raise CatalogError(msg) from e

    names = [v.name for v in varieties]
    if len(set(names)) != len(names):
        msg = f"Catalog {source} has duplicate names: {sorted(names)}"
        raise CatalogError(msg)

    return Catalog(tuple(varieties), source)


def builtin_catalog() -> Catalog:
    text = resources.files("acm_atlas.data").joinpath(BUILTIN_CATALOG).read_text()
    return parse_catalog(json.loads(text), source="<builtin>")


def load_catalog(path: str | Path | None = None) -> Catalog:
    """
    Load the active catalog.

    ``path`` overrides ``ACM_ATLAS_CATALOG``, which overrides the built-in.
    """
    if path is None and (env := os.getenv(CATALOG_ENV, "")):
        logger.debug("Catalog from %s=%s", CATALOG_ENV, env)
        path = env

    if path is None:
        catalog = builtin_catalog()
    else:
        path = Path(path)
        try:
            data = json.loads(path.read_text())
        except OSError as e:
            msg = f"Cannot read catalog {path}: {e.strerror}"
            raise CatalogError(msg) from e
        except json.JSONDecodeError as e:
            msg = f"Catalog {path} is not valid JSON: {e}"
            raise CatalogError(msg) from e
        catalog = parse_catalog(data, source=str(path))

    logger.info("Using catalog %s (%d varieties)", catalog.source, len(catalog))
    return catalog


def catalog_to_json(catalog: Catalog) -> str:
    """Serialize in the format :func:`parse_catalog` reads."""
    entries: list[dict[str, Any]] = []
    for v in catalog:
        entry: dict[str, Any] = {"name": v.name, "family": v.family.value}
        if v.family is Family.FANO:
            entry["genus"] = v.genus
        elif v.family is Family.CICY:
            entry["multidegrees"] = list(v.multidegrees)
            if not v.standard:
                entry["strict"] = False
        else:
            entry.update(degree=v.degree, index=v.index, c2txh=v.c2txh)
        entries.append(entry)
    return dumps({"schema_version": SCHEMA_VERSION, "varieties": entries})


# * Variety specifications ---------------------------------------------------------
_FANO_SPEC = re.compile(r"fano:g=(-?\d+)")
_CICY_SPEC = re.compile(r"cicy:(\d+(?:x\d+)*)")
_CUSTOM_SPEC = re.compile(r"custom:d=(-?\d+),r=(-?\d+),c2=(-?\d+)")


def parse_variety_spec(
    spec: str,
    catalog: Catalog | None = None,
    strict: bool = True,
) -> PolarizedThreefold:
    """
    Resolve ``fano:g=<n>``, ``cicy:<d1>x<d2>...``,
    ``custom:d=<n>,r=<n>,c2=<n>`` or a catalog name.

    Raises
    ------
    SpecParseError
        If ``spec`` matches none of the forms.
    DomainError
        If it parses but the invariants are invalid (e.g. ``fano:g=11``).
    """
    spec = spec.strip()
    if m := _FANO_SPEC.fullmatch(spec):
        return make_prime_fano(int(m.group(1)))
    if m := _CICY_SPEC.fullmatch(spec):
        return make_cicy([int(r) for r in m.group(1).split("x")], strict=strict)
    if m := _CUSTOM_SPEC.fullmatch(spec):
        return _make_custom(*(int(x) for x in m.groups()))

    if ":" not in spec:
        catalog = builtin_catalog() if catalog is None else catalog
        if (variety := catalog.get(spec)) is not None:
            return variety
        msg = f"Unknown variety {spec!r}; catalog {catalog.source} has {catalog.names}"
        raise SpecParseError(msg)

    msg = (
        f"Cannot parse variety spec {spec!r}: expected fano:g=<n>, "
        "cicy:<d1>x<d2>..., custom:d=<n>,r=<n>,c2=<n> or a catalog name"
    )
    raise SpecParseError(msg)
