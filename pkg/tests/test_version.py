"""Tests for `acm-atlas` package metadata."""

# pyright: reportUnreachable=false

from __future__ import annotations

import sys
from pathlib import Path

from packaging.version import Version

import acm_atlas

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib


ROOT = Path(__file__).parent.parent


def test_version() -> None:
    with (ROOT / "pyproject.toml").open("rb") as f:
        version = tomllib.load(f)["project"]["version"]

    assert version == acm_atlas.__version__
    assert Version(version).major == 0


def test_public_api() -> None:
    missing = [name for name in acm_atlas.__all__ if not hasattr(acm_atlas, name)]
    assert missing == []

