"""Identities checked on random classes."""

from __future__ import annotations

from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from acm_atlas.chern import BundleClass, dual, stability_number, twist
from acm_atlas.errors import NegativeGenusError, NonIntegralGenusError
from acm_atlas.rr import chi_line, chi_line_exact, chi_polynomial, chi_rank2_exact
from acm_atlas.serre import bundle_to_curve, curve_to_bundle
from acm_atlas.variety import PolarizedThreefold

from .conftest import CICYS, FANOS

small = st.integers(min_value=-30, max_value=30)
varieties = st.sampled_from(FANOS + CICYS)
bundles = st.builds(
    BundleClass,
    c1=small,
    c2=st.integers(min_value=-200, max_value=200),
    b=st.one_of(st.none(), small),
)


@given(varieties, bundles, small, small)
def test_twist_group_law(
    variety: PolarizedThreefold, bundle: BundleClass, m: int, n: int
) -> None:
    assert twist(variety, twist(variety, bundle, m), n) == twist(variety, bundle, m + n)
    assert twist(variety, bundle, 0) == bundle


@given(varieties, st.builds(BundleClass, c1=small, c2=small, b=small), small)
def test_stability_number_twist_invariant(
    variety: PolarizedThreefold, bundle: BundleClass, n: int
) -> None:
    assert stability_number(twist(variety, bundle, n)) == stability_number(bundle)


@given(bundles)
def test_dual_involution(bundle: BundleClass) -> None:
    assert dual(dual(bundle)) == bundle


@given(varieties, small, st.integers(min_value=-200, max_value=200))
def test_integrality_iff_parity(variety: PolarizedThreefold, c1: int, c2: int) -> None:
    integral = chi_rank2_exact(variety, c1, c2).denominator == 1
    assert integral == ((c1 - variety.index) * c2 % 2 == 0)


@given(varieties, small, st.integers(min_value=-200, max_value=200))
def test_serre_sequence(variety: PolarizedThreefold, c1: int, c2: int) -> None:
    expected = (
        variety.structure_chi
        + chi_line_exact(variety, c1)
        - c1 * c2
        + Fraction((c1 - variety.index) * c2, 2)
    )
    assert chi_rank2_exact(variety, c1, c2) == expected


@given(varieties, small, small)
def test_split_additivity(variety: PolarizedThreefold, a: int, b: int) -> None:
    split = chi_rank2_exact(variety, a + b, a * b * variety.degree)
    assert split == chi_line(variety, a) + chi_line(variety, b)


@given(
    varieties,
    st.integers(min_value=-2, max_value=4),
    st.integers(min_value=1, max_value=500),
)
def test_serre_round_trip(variety: PolarizedThreefold, c1: int, c2: int) -> None:
    try:
        curve = bundle_to_curve(variety, BundleClass(c1, c2, b=0))
    except (NonIntegralGenusError, NegativeGenusError):
        return
    assert curve.is_subcanonical
    bundle = curve_to_bundle(variety, curve)
    assert (bundle.c1, bundle.c2) == (c1, c2)


@settings(max_examples=25, deadline=None)
@given(varieties, bundles, st.integers(min_value=-6, max_value=6))
def test_chi_polynomial_matches_point_values(
    variety: PolarizedThreefold, bundle: BundleClass, n: int
) -> None:
    twisted = twist(variety, bundle, n)
    assert chi_polynomial(variety, bundle)(n) == chi_rank2_exact(
        variety, twisted.c1, twisted.c2
    )
