from __future__ import annotations

import contextlib
import json
from typing import TYPE_CHECKING, Any

import pytest

from acm_atlas.catalog import (
    CATALOG_ENV,
    Catalog,
    builtin_catalog,
    catalog_to_json,
    load_catalog,
    parse_catalog,
    parse_variety_spec,
)
from acm_atlas.errors import (
    CatalogError,
    InvalidGenusError,
    NonIntegralChiError,
    NotCalabiYauError,
    SchemaVersionError,
    SpecParseError,
    UnknownTypeError,
)
from acm_atlas.variety import Family, make_cicy, make_custom, make_prime_fano

if TYPE_CHECKING:
    from pathlib import Path


def test_builtin_catalog(catalog: Catalog) -> None:
    assert len(catalog) == 20
    assert catalog.source == "<builtin>"
    assert catalog.names[:3] == ["V2", "V4", "V6"]
    assert len(catalog.by_family(Family.FANO)) == 10
    assert len(catalog.by_family(Family.CICY)) == 5
    assert len(catalog.by_family(Family.CUSTOM)) == 5
    assert catalog.get("V22") == make_prime_fano(12)
    assert catalog.get("X9") == make_cicy([3, 3])
    assert catalog.get("nope") is None


def test_builtin_names_match_constructors(catalog: Catalog) -> None:
    for v in catalog.by_family(Family.FANO):
        assert v.name == f"V{v.degree}"
    for v in catalog.by_family(Family.CICY):
        assert v.name == f"X{v.degree}"


def test_catalog_round_trip(catalog: Catalog) -> None:
    text = catalog_to_json(catalog)
    again = parse_catalog(json.loads(text))
    assert again.varieties == catalog.varieties
    assert catalog_to_json(again) == text


def test_entry_name_override() -> None:
    catalog = parse_catalog(
        {
            "schema_version": "1.0",
            "varieties": [
                {"name": "quintic", "family": "cicy", "multidegrees": [5]},
                {"family": "fano", "genus": 3},
                {"name": "Y", "family": "custom", "params": {"degree": 4, "index": 2, "c2txh": 12}},
            ],
        }
    )
    assert catalog.names == ["quintic", "V4", "Y"]
    assert catalog.varieties[2].index == 2
    quintic = catalog.get("quintic")
    assert quintic is not None
    assert quintic.degree == 5


@pytest.mark.parametrize(
    ("data", "match"),
    [
        ("catalog", "must be a list"),
        ({"schema_version": "1.0"}, "must be a list"),
        ([{"family": "fano", "genus": 3}, 4], "malformed"),
        ([{"family": "custom", "params": {"degree": 4, "index": 1, "c2txh": 23}}], "invalid"),
        ({"schema_version": "1.0", "varieties": [{"family": "fano"}]}, "malformed"),
        (
            {"schema_version": "1.0", "varieties": [{"family": "fano", "genus": 11}]},
            "invalid",
        ),
        (
            {"schema_version": "1.0", "varieties": [{"family": "k3", "genus": 3}]},
            "malformed",
        ),
        (
            {
                "schema_version": "1.0",
                "varieties": [
                    {"name": "A", "family": "fano", "genus": 3},
                    {"name": "A", "family": "fano", "genus": 4},
                ],
            },
            "duplicate",
        ),
    ],
)
def test_parse_catalog_errors(data: Any, match: str) -> None:
    with pytest.raises(CatalogError, match=match):
        parse_catalog(data)


@pytest.mark.parametrize("version", ["2.0", "banana", None])
def test_parse_catalog_schema_version(version: Any) -> None:
    with pytest.raises(SchemaVersionError):
        parse_catalog({"schema_version": version, "varieties": []})


@pytest.mark.parametrize(
    "data",
    [
        [{"name": "V4", "family": "fano", "params": {"genus": 3}}],
        {"varieties": [{"name": "V4", "family": "fano", "params": {"genus": 3}}]},
    ],
    ids=["bare-list", "no-schema-version"],
)
def test_parse_catalog_minimal_shapes(data: Any) -> None:
    catalog = parse_catalog(data)
    assert catalog.names == ["V4"]
    assert catalog.get("V4") == make_prime_fano(3)


def test_parse_catalog_empty_list() -> None:
    assert len(parse_catalog([])) == 0


def test_load_catalog_path(tmp_path: Path) -> None:
    path = tmp_path / "catalog.json"
    path.write_text(
        json.dumps({
            "schema_version": "1.1",
            "varieties": [{"name": "X5", "family": "cicy", "multidegrees": [5]}],
        })
    )
    catalog = load_catalog(path)
    assert catalog.names == ["X5"]
    assert catalog.source == str(path)


def test_load_catalog_env(tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> None:
    path = tmp_path / "env.json"
    path.write_text('{"schema_version": "1.0", "varieties": []}')

    monkeypatch.setenv(CATALOG_ENV, str(path))
    assert load_catalog().source == str(path)
    assert len(load_catalog()) == 0

    # explicit path wins
    monkeypatch.setenv(CATALOG_ENV, str(tmp_path / "missing.json"))
    assert load_catalog(path).source == str(path)

    monkeypatch.delenv(CATALOG_ENV)
    assert load_catalog().source == "<builtin>"


def test_load_catalog_errors(tmp_path: Path) -> None:
    with pytest.raises(CatalogError, match="Cannot read"):
        load_catalog(tmp_path / "missing.json")

    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(CatalogError, match="not valid JSON"):
        load_catalog(bad)


@pytest.mark.parametrize(
    ("spec", "expected"),
    [
        ("fano:g=3", contextlib.nullcontext(make_prime_fano(3))),
        (" fano:g=12 ", contextlib.nullcontext(make_prime_fano(12))),
        ("cicy:5", contextlib.nullcontext(make_cicy([5]))),
        ("cicy:3x2x2", contextlib.nullcontext(make_cicy([2, 2, 3]))),
        ("custom:d=1,r=4,c2=6", contextlib.nullcontext(make_custom(1, 4, 6))),
        ("custom:d=4,r=1,c2=23", pytest.raises(NonIntegralChiError, match="not integer valued")),
        ("V10", contextlib.nullcontext(make_prime_fano(6))),
        ("fano:g=11", pytest.raises(InvalidGenusError)),
        ("cicy:2x3", pytest.raises(NotCalabiYauError)),
        ("fano:genus=3", pytest.raises(SpecParseError, match="Cannot parse")),
        ("cicy:", pytest.raises(SpecParseError)),
        ("V11", pytest.raises(SpecParseError, match="Unknown variety")),
    ],
)
def test_parse_variety_spec(spec: str, expected: Any) -> None:
    with expected as e:
        assert parse_variety_spec(spec) == e


def test_parse_variety_spec_catalog_and_strict(monkeypatch: pytest.MonkeyPatch) -> None:
    catalog = Catalog((make_custom(2, 3, 8, name="Q"),))
    assert parse_variety_spec("Q", catalog).degree == 2
    with pytest.raises(SpecParseError, match="Unknown variety"):
        parse_variety_spec("V4", catalog)

    monkeypatch.setattr("acm_atlas.variety.CICY_TYPES", ((5,),))
    with pytest.raises(UnknownTypeError):
        parse_variety_spec("cicy:3x3")
    assert not parse_variety_spec("cicy:3x3", strict=False).standard


def test_catalog_to_dict() -> None:
    data = builtin_catalog().to_dict()
    assert data["source"] == "<builtin>"
    assert data["varieties"][0]["genus"] == 2
