"""Checker verdicts, derivative series and compactness indicators."""
from __future__ import annotations

import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hardybidisc.errors import HypothesisError
from hardybidisc.hardyops import TruncationBox, semicommutator_matrix
from hardybidisc.randsym import random_symbol2, random_violating_pair, random_zero_pair
from hardybidisc.symbolcalc import make_arc, make_tent, make_trigpoly, tensor, wirtinger
from hardybidisc.theoremcheck import (
    Conclusion,
    TentSpec,
    arcs_disjoint,
    check_corollary1,
    check_corollary2,
    check_thm1,
    check_thm2_necessary,
    check_thm3,
    common_vanishing_arc,
    compactness_indicator,
    derivative_product_series,
    example_section4,
    supports_disjoint,
    tail_decays,
)

Z1 = make_trigpoly({(1, 0): 1.0})
Z1B = make_trigpoly({(-1, 0): 1.0})
Z2 = make_trigpoly({(0, 1): 1.0})


# ---------------------------------------------------------------------------
# zero law
# ---------------------------------------------------------------------------

def test_thm1_examples():
    v = check_thm1(Z1, Z1)          # g analytic in both variables
    assert v.conclusion is Conclusion.ZERO and v.certified
    v = check_thm1(Z1B, Z2)         # conj(f) analytic in z1, g analytic in z2
    assert v.conclusion is Conclusion.ZERO
    v = check_thm1(Z1, Z1B)
    assert v.conclusion is Conclusion.NONCOMPACT
    assert v.get("witness_box").value == 0   # the constant term already sees -1
    assert v.get("rank_sequence").value == [5, 9, 17]


def test_thm1_zero_symbol():
    v = check_thm1(make_trigpoly({(0, 0): 0.0}), Z1B)
    assert v.conclusion is Conclusion.ZERO and v.certified


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=25)
def test_certified_zero_is_sound(seed):
    f, g = random_zero_pair(np.random.default_rng(seed))
    v = check_thm1(f, g)
    assert v.conclusion is Conclusion.ZERO and v.certified
    assert semicommutator_matrix(f, g, TruncationBox(12, 12)).max_abs() == 0.0


@pytest.mark.parametrize("seed", range(5))
def test_violating_pairs_are_never_zero(seed):
    f, g = random_violating_pair(np.random.default_rng(seed))
    v = check_thm1(f, g)
    assert v.conclusion is not Conclusion.ZERO
    assert "witness_box" in v.names()


# ---------------------------------------------------------------------------
# derivative conditions
# ---------------------------------------------------------------------------

def test_derivative_series_of_z1_pair():
    s = derivative_product_series(Z1, Z1B, 1)
    # d(z1)/dz1 * d(conj z1)/dzbar1 = 1
    assert s == {(0, 0, 0): (Fraction(1), Fraction(0))}
    assert derivative_product_series(Z1, Z1B, 2) == {}


@pytest.mark.parametrize("seed", range(3))
def test_derivative_series_matches_wirtinger(seed):
    rng = np.random.default_rng(seed)
    f, g = random_symbol2(rng, 2), random_symbol2(rng, 2)
    s = derivative_product_series(f, g, 1)
    w = complex(math.cos(0.7), math.sin(0.7))   # the other coordinate lies on the circle
    z = (0.3 + 0.2j, w)
    val = 0j
    for (p, q, r), (re, im) in s.items():
        c = complex(float(re), float(im))
        val += c * z[0] ** p * np.conj(z[0]) ** q * w**r
    ref = wirtinger(f, z, "z1").value * wirtinger(g, z, "zbar1").value
    assert abs(val - ref) < 1e-12


def test_thm2_certifies_failure():
    v = check_thm2_necessary(Z1, Z1B)
    assert v.conclusion is Conclusion.NONCOMPACT and v.certified
    assert v.get("condition1_value_at_0").value == 1
    assert v.get("condition2_terms").value == 0


def test_thm2_inconclusive_when_conditions_hold():
    f = make_trigpoly({(1, 0): 1.0, (0, 1): 1.0})
    g = make_trigpoly({(2, 1): 1.0})
    v = check_thm2_necessary(f, g)
    assert v.conclusion is Conclusion.INCONCLUSIVE and v.certified


def test_thm2_sampled_path_for_truncated_symbols():
    f = tensor(make_tent(0.0, 1.0, 64), make_tent(0.0, 1.0, 64))
    v = check_thm2_necessary(f, f)
    assert not v.certified
    assert "condition1_sampled_max" in v.names()


@pytest.mark.parametrize("seed", range(4))
def test_failed_condition_means_flat_tail(seed):
    rng = np.random.default_rng(100 + seed)
    f, g = random_violating_pair(rng)
    if check_thm2_necessary(f, g).conclusion is not Conclusion.NONCOMPACT:
        pytest.skip("derivative conditions hold for this pair")
    rows = compactness_indicator(f, g, (4, 8, 16))
    assert not tail_decays(rows)


# ---------------------------------------------------------------------------
# arcs and tensor symbols
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("a,b,expected", [
    ((0.0, 1.0), (1.5, 2.0), True),
    ((0.0, 1.0), (0.5, 2.0), False),
    ((6.0, 6.2), (0.0, 0.1), True),
    ((6.0, 6.5), (0.0, 0.1), False),   # wraps past 2 pi
])
def test_arcs_disjoint(a, b, expected):
    assert arcs_disjoint(a, b) is expected


def test_supports_and_vanishing_arc():
    f, g = make_tent(math.pi / 4, math.pi / 4, 16), make_tent(5 * math.pi / 4, math.pi / 4, 16)
    assert supports_disjoint(f, g)
    assert common_vanishing_arc(f, g) == pytest.approx(math.pi / 2)
    assert not supports_disjoint(make_arc(0, 2, 8), make_arc(1, 3, 8))


@pytest.mark.parametrize("bandwidth,expected", [
    (1024, Conclusion.COMPACT_NONZERO),
    # at low bandwidth the witness entry does not clear ten times its error bound
    (256, Conclusion.INCONCLUSIVE),
])
def test_thm3_tent_quadruple(bandwidth, expected):
    f1 = f2 = make_tent(math.pi / 4, math.pi / 4, bandwidth)
    g1 = g2 = make_tent(5 * math.pi / 4, math.pi / 4, bandwidth)
    assert check_thm3(f1, f2, g1, g2).conclusion is expected


def test_thm3_polynomial_quadruple_fails_condition_one():
    z, zb = make_trigpoly({1: 1.0}), make_trigpoly({-1: 1.0})
    one = make_trigpoly({0: 1.0})
    v = check_thm3(z, one, zb, one)
    assert v.conclusion is Conclusion.NONCOMPACT


def test_thm3_rejects_zero_factor():
    one = make_trigpoly({0: 1.0})
    with pytest.raises(HypothesisError):
        check_thm3(make_trigpoly({0: 0.0}), one, one, one)


# ---------------------------------------------------------------------------
# corollaries
# ---------------------------------------------------------------------------

def test_corollary1():
    assert check_corollary1(Z1).conclusion is Conclusion.ZERO
    v = check_corollary1(Z1B, radii=(0.5, 0.9))
    assert v.conclusion is Conclusion.NONCOMPACT
    assert min(v.get("hankel_norm_min_mixed_r1").value) > 0.4


@pytest.mark.parametrize("seed", range(4))
def test_corollary2_never_compact_nonzero(seed):
    rng = np.random.default_rng(seed)
    f = random_symbol2(rng, 2, lo=(0, 0))          # analytic
    g = random_symbol2(rng, 2)
    v = check_corollary2(f, g)
    assert v.conclusion in (Conclusion.ZERO, Conclusion.NONCOMPACT)
    assert v.get("route").value == "thm1(f, g)"


def test_corollary2_routes():
    v = check_corollary2(Z1B, Z1)     # g analytic: commutator is -(T_g T_f - T_gf)
    assert v.get("route").value == "thm1(g, f)"
    v = check_corollary2(make_trigpoly({(1, -1): 1.0}), make_trigpoly({(-1, 1): 1.0}))
    assert v.conclusion is Conclusion.INCONCLUSIVE


# ---------------------------------------------------------------------------
# compactness indicators and the tent example
# ---------------------------------------------------------------------------

def test_indicator_of_zero_pair():
    rows = compactness_indicator(Z1, Z1, (4, 8))
    assert all(r.sigma1 == 0 and r.tail == 0 for r in rows)


def test_indicator_is_deterministic():
    f, g = random_violating_pair(np.random.default_rng(5))
    assert compactness_indicator(f, g, (4, 8)) == compactness_indicator(f, g, (4, 8))


def test_example_rejects_overlapping_tents():
    with pytest.raises(HypothesisError):
        example_section4({"g1": TentSpec(math.pi / 4, math.pi / 4)}, bandwidth=64)


@pytest.mark.slow
def test_example_sigma1_stabilizes():
    v = example_section4(bandwidths=(32, 64))
    s32, s64 = v.get("sigma@32").value[0], v.get("sigma@64").value[0]
    assert abs(s64 - s32) < 0.1 * s64
    assert v.conclusion is Conclusion.COMPACT_NONZERO
