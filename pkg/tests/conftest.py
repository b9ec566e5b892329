from __future__ import annotations

import pytest

from acm_atlas.catalog import Catalog, builtin_catalog
from acm_atlas.variety import (
    CICY_TYPES,
    PRIME_FANO_GENERA,
    PolarizedThreefold,
    make_cicy,
    make_prime_fano,
)

FANOS = [make_prime_fano(g) for g in PRIME_FANO_GENERA]
CICYS = [make_cicy(t) for t in CICY_TYPES]


@pytest.fixture(scope="session")
def catalog() -> Catalog:
    return builtin_catalog()


@pytest.fixture(params=FANOS, ids=lambda v: v.name)
def fano(request: pytest.FixtureRequest) -> PolarizedThreefold:
    return request.param  # type: ignore[no-any-return]


@pytest.fixture(params=CICYS, ids=lambda v: v.name)
def cicy(request: pytest.FixtureRequest) -> PolarizedThreefold:
    return request.param  # type: ignore[no-any-return]


@pytest.fixture
def quintic() -> PolarizedThreefold:
    return make_cicy([5])
