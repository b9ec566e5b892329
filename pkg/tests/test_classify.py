from __future__ import annotations

import contextlib
import logging
from typing import TYPE_CHECKING, Any

import pytest

from acm_atlas.chern import BundleClass, is_stable
from acm_atlas.classify import (
    FANO_WITNESSES,
    ConstraintSolution,
    Existence,
    IntRange,
    SplittingBoundData,
    Tag,
    c1_bounds,
    classify,
    solve_c2,
    solve_chi_constraint,
)
from acm_atlas.errors import (
    DegenerateConstraintError,
    NonIntegralChiError,
    OutOfBoundsError,
    UnsupportedFamilyError,
)
from acm_atlas.verify import load_golden
from acm_atlas.variety import make_cicy, make_custom, make_prime_fano

from .conftest import CICYS, FANOS

if TYPE_CHECKING:
    from acm_atlas.variety import PolarizedThreefold


def test_int_range() -> None:
    r = IntRange(3, 5)
    assert list(r) == [3, 4, 5]
    assert len(r) == 3
    assert 4 in r
    assert 6 not in r
    assert "4" not in r
    assert r.endpoints == (3, 5)
    assert IntRange(2, 2).endpoints == (2,)
    assert IntRange(2, 1).endpoints == ()
    assert len(IntRange(2, 1)) == 0
    assert r.to_dict() == {"min": 3, "max": 5}


@pytest.mark.parametrize(
    ("level", "tag"),
    [
        (-2, Tag.LINE),
        (-1, Tag.CONIC),
        (0, Tag.ELLIPTIC),
        (1, Tag.HALF_CANONICAL),
        (2, Tag.TWO_CANONICAL),
        (3, Tag.OTHER),
        (-3, Tag.OTHER),
    ],
)
def test_tag_from_level(level: int, tag: Tag) -> None:
    assert Tag.from_level(level) is tag


# * Bounds -------------------------------------------------------------------------
@pytest.mark.parametrize(
    ("variety", "expected"),
    [
        (make_prime_fano(2), IntRange(-1, 3)),
        (make_prime_fano(12), IntRange(-1, 3)),
        (make_cicy([5]), IntRange(-2, 4)),
        (make_cicy([2, 2, 2, 2]), IntRange(-2, 4)),
        (make_custom(1, 4, 6), IntRange(2, 0)),
        (make_custom(2, 3, 8), IntRange(1, 1)),
        (make_custom(4, 2, 12), IntRange(0, 2)),
    ],
    ids=lambda x: getattr(x, "name", str(x)),
)
def test_c1_bounds(variety: PolarizedThreefold, expected: IntRange) -> None:
    assert c1_bounds(variety) == expected


def test_splitting_bound_data() -> None:
    data = SplittingBoundData.from_variety(make_prime_fano(5))
    assert data == SplittingBoundData(l_dot_d=8, l_dot_kl=8)
    assert data.window() == IntRange(-1, 3)


# * Constraints ---------------------------------------------------------------------
@pytest.mark.parametrize(
    ("genus", "c1", "expected"),
    [
        (3, 3, contextlib.nullcontext(14)),
        (4, 2, contextlib.nullcontext(10)),
        (7, -1, contextlib.nullcontext(1)),
        (9, 0, contextlib.nullcontext(2)),
        (6, 1, contextlib.nullcontext(IntRange(3, 8))),
        (12, 3, contextlib.nullcontext(59)),
        (4, 4, pytest.raises(OutOfBoundsError, match="outside")),
        (4, -2, pytest.raises(OutOfBoundsError)),
    ],
)
def test_solve_c2(genus: int, c1: int, expected: Any) -> None:
    with expected as e:
        assert solve_c2(make_prime_fano(genus), c1) == e


def test_solve_c2_unsupported() -> None:
    with pytest.raises(UnsupportedFamilyError):
        solve_c2(make_cicy([5]), 1)


def test_solve_chi_constraint() -> None:
    solution = solve_chi_constraint(make_prime_fano(4), 2, -1, 0)
    assert isinstance(solution, ConstraintSolution)
    assert solution.c2 == 10
    assert solution.describe() == "chi(E(-1)) = -1/2*c2 + 5 = 0 => c2 = 10"

    # elliptic row: chi(E) = -c2 + g + 3
    solution = solve_chi_constraint(make_prime_fano(6), 1, 0, 1)
    assert (solution.slope, solution.c2) == (-1, 8)
    assert solution.describe().startswith("chi(E) = -1*c2")


def test_solve_chi_constraint_errors() -> None:
    # twisted c1 + index == 0
    with pytest.raises(DegenerateConstraintError):
        solve_chi_constraint(make_prime_fano(4), 1, -1, 0)
    # chi(E) = -3/2*c2 + 21 for c1 = 2 on V6
    with pytest.raises(NonIntegralChiError, match="not an integer"):
        solve_chi_constraint(make_prime_fano(4), 2, 0, 1)


# * Tables ------------------------------------------------------------------------
def test_classify_fano(fano: PolarizedThreefold) -> None:
    genus = fano.genus
    assert genus is not None
    rows = classify(fano)
    assert [row.c1 for row in rows] == [-1, 0, 1, 2, 3]
    assert [row.c2 for row in rows] == [
        1,
        2,
        IntRange(3, genus + 2),
        2 * genus + 2,
        5 * genus - 1,
    ]
    assert [row.tag for row in rows] == [
        Tag.LINE,
        Tag.CONIC,
        Tag.ELLIPTIC,
        Tag.HALF_CANONICAL,
        Tag.TWO_CANONICAL,
    ]
    assert [row.genus for row in rows] == [0, 0, 1, genus + 2, 5 * genus]
    assert all(row.golden for row in rows)

    elliptic = rows[2]
    assert elliptic.span_defect == IntRange(0, genus - 1)
    assert elliptic.degenerate
    assert elliptic.c2_endpoints == (3, genus + 2)
    assert "h0(I_C(1))" in elliptic.trace


def test_classify_fano_existence() -> None:
    rows = {row.c1: row for row in classify(make_prime_fano(4))}
    assert rows[-1].existence is Existence.KNOWN
    assert rows[-1].witnesses == (1,)
    assert rows[1].witnesses == FANO_WITNESSES[4, 1]
    assert rows[2].existence is Existence.KNOWN
    assert rows[3].existence is Existence.CONJECTURAL

    rows = {row.c1: row for row in classify(make_prime_fano(3))}
    assert rows[1].existence is Existence.CONJECTURAL


def test_classify_cicy(cicy: PolarizedThreefold) -> None:
    r = cicy.degree
    rows = classify(cicy)
    assert [row.c1 for row in rows] == [-2, -1, 0, 1, 2, 3, 4]
    assert [row.c2 for row in rows] == [
        1,
        2,
        IntRange(3, r),
        2 * r - 2,
        IntRange(1, 3 * r - 1),
        4 * r,
        6 * r,
    ]
    assert [row.genus for row in rows] == [
        0,
        0,
        1,
        r,
        IntRange(2, 3 * r),
        6 * r + 1,
        12 * r + 1,
    ]
    assert rows[4].open_lower_bound
    assert not any(row.open_lower_bound for i, row in enumerate(rows) if i != 4)
    assert [row.tag for row in rows][:5] == [
        Tag.LINE,
        Tag.CONIC,
        Tag.ELLIPTIC,
        Tag.HALF_CANONICAL,
        Tag.TWO_CANONICAL,
    ]
    assert rows[5].tag is rows[6].tag is Tag.OTHER


@pytest.mark.parametrize(
    ("multidegrees", "c1", "c2", "genus"),
    [
        ([3, 3], 1, 16, 9),
        ([5], 4, 30, 61),
        ([2, 2, 2, 2], 3, 64, 97),
    ],
)
def test_classify_cicy_examples(
    multidegrees: list[int], c1: int, c2: int, genus: int
) -> None:
    row = next(row for row in classify(make_cicy(multidegrees)) if row.c1 == c1)
    assert (row.c2, row.genus) == (c2, genus)


def test_classify_quintic_existence(quintic: PolarizedThreefold) -> None:
    rows = {row.c1: row for row in classify(quintic)}
    assert rows[0].witnesses == (3, 4, 5)
    assert rows[4].witnesses == (30,)
    for c1 in (-2, -1, 0, 1, 4):
        assert rows[c1].existence is Existence.KNOWN
    for c1 in (2, 3):
        assert rows[c1].existence is Existence.CONJECTURAL

    rows = {row.c1: row for row in classify(make_cicy([3, 3]))}
    assert rows[4].existence is Existence.CONJECTURAL
    assert rows[-2].existence is Existence.KNOWN


@pytest.mark.parametrize("variety", FANOS + CICYS, ids=lambda v: v.name)
def test_stable_rows(variety: PolarizedThreefold) -> None:
    for row in classify(variety):
        assert is_stable(BundleClass(row.c1, 1, b=0)) == (row.c1 >= 1)


@pytest.mark.parametrize("variety", FANOS + CICYS, ids=lambda v: v.name)
def test_classify_matches_golden(variety: PolarizedThreefold) -> None:
    golden = load_golden(variety.name)
    assert golden["variety"] == variety.name
    assert [row.golden_dict() for row in classify(variety)] == golden["rows"]


def test_classify_row_dict() -> None:
    row = classify(make_prime_fano(6))[2]
    data = row.to_dict()
    assert data["c2"] == {"min": 3, "max": 8}
    assert data["span_defect"] == {"min": 0, "max": 5}
    assert data["degenerate"] is True
    assert data["curves"][0] == {"degree": 3, "genus": 1, "subcanonical_level": 0}
    assert data["golden"] is True


def test_classify_custom(caplog: pytest.LogCaptureFixture) -> None:
    variety = make_custom(4, 2, 12)
    with pytest.raises(UnsupportedFamilyError, match="permissive"):
        classify(variety)

    with caplog.at_level(logging.WARNING, logger="acm_atlas"):
        rows = classify(variety, strict=False)
    assert "generically" in caplog.text
    assert [row.c1 for row in rows] == [0, 1, 2]
    assert all(row.c2 is None for row in rows)
    assert all(row.tag is Tag.OTHER for row in rows)
    assert not any(row.golden for row in rows)
    assert rows[0].genus is None
    assert rows[0].curve is None
    assert rows[0].trace.startswith("chi(E) = ")


def test_classify_empty_window() -> None:
    assert classify(make_custom(1, 4, 6), strict=False) == []


def test_classify_nonstandard_cicy(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setattr("acm_atlas.variety.CICY_TYPES", ((5,),))
    rows = classify(make_cicy([2, 4], strict=False))
    assert rows
    assert not any(row.golden for row in rows)
