"""Tests for the analytic-continuation and flop-invariance identities."""

from fractions import Fraction

import pytest

from qcflop import flopcheck as fc
from qcflop.algebra import RatFunc


def test_g_function_values():
    q = fc.q_var()
    assert fc.g_function(1) == q / (1 - q)
    assert fc.g_function(2) == q / (1 + q)
    assert fc.g_series(2, 3) == [0, 1, -1, 1]


def test_g_function_series_oracle_sign_pattern():
    for r in (1, 2, 3, 4):
        series = fc.g_series(r, 12)
        assert series[0] == 0
        for d in range(1, 13):
            assert series[d] == Fraction((-1) ** ((r + 1) * (d - 1)))


def test_reflection():
    q = fc.q_var()
    g1 = fc.g_function(1)
    assert g1 + g1.subs_reciprocal() == RatFunc.constant(fc.Q, 1, -1)
    g2 = fc.g_function(2)
    assert g2 + g2.subs_reciprocal() == RatFunc.constant(fc.Q, 1, 1)
    for r in range(1, 9):
        assert fc.verify_reflection(r)


def test_delta_g_polynomial_base_cases():
    assert fc.delta_g_polynomial(1, 0) == [0, 1]
    assert fc.delta_g_polynomial(1, 1) == [0, 1, 1]
    assert fc.delta_g_polynomial(2, 1) == [0, 1, -1]
    assert fc.delta_g_polynomial(1, 2) == [0, 1, 3, 2]


def test_delta_g_polynomial_matches_direct_differentiation():
    for r in (1, 2, 3, 4, 5):
        for m in range(8):
            p = fc.delta_g_polynomial(r, m)
            assert all(c.denominator == 1 for c in p), "coefficients must be integers"
            assert fc.evaluate_g_polynomial(p, r) == fc.delta_g_direct(r, m)


def test_delta_g_polynomial_series_oracle():
    # series of p_m(G) agrees with term-by-term differentiation of the series
    for r in (1, 2):
        base = fc.g_series(r, 30)
        for m in range(1, 8):
            got = fc.evaluate_g_polynomial(fc.delta_g_polynomial(r, m), r).series_expand(30)
            for d in range(31):
                assert got[d].as_rational() == base[d] * Fraction(d) ** m


def test_reciprocal_antisymmetry_small_cases():
    # r=1, m=1: q/(1-q)^2 invariant under q -> 1/q
    h1 = fc.delta_g_direct(1, 1)
    assert h1.subs_reciprocal() == h1
    # r=1, m=2: q(1+q)/(1-q)^3 flips sign
    h2 = fc.delta_g_direct(1, 2)
    assert h2.subs_reciprocal() == h2 * Fraction(-1)
    q = fc.q_var()
    assert h2 == q * (1 + q) / ((1 - q) ** 3)


def test_reciprocal_antisymmetry_sweep():
    for r in range(1, 6):
        for m in range(1, 8):
            assert fc.reciprocal_antisymmetry(r, m)


def test_flop_transform_generators():
    r = 2
    g = fc.RingRElement.g_symbol(r)
    image = fc.flop_transform(g)
    assert image == fc.RingRElement(r, {(0, 0, 0): Fraction(1), (0, 0, 1): Fraction(-1)})
    # involution on generators
    assert fc.flop_transform(image) == g
    qg = fc.RingRElement.q_monomial(r, 0, 1)
    once = fc.flop_transform(qg)
    assert once == fc.RingRElement.q_monomial(r, 1, 1)
    assert fc.flop_transform(once) == qg
    ql = fc.RingRElement.q_monomial(r, 1, 0)
    assert fc.flop_transform(ql) == fc.RingRElement.q_monomial(r, -1, 0)
    assert fc.flop_transform(fc.flop_transform(ql)) == ql


def test_flop_transform_involution_random():
    r = 1
    x = fc.RingRElement(r, {(2, 1, 3): Fraction(5), (-1, 2, 0): Fraction(1, 2),
                            (0, 0, 2): Fraction(-7)})
    assert fc.flop_transform(fc.flop_transform(x)) == x


def test_ring_closed_under_delta():
    # delta of a ring element stays in polynomial-in-G form and matches the
    # scalar recursion on pure G-powers
    r = 2
    g = fc.RingRElement.g_symbol(r)
    dg = g.delta()
    assert dg == fc.RingRElement(r, {(0, 0, 1): Fraction(1), (0, 0, 2): Fraction(-1)})
    # round-trip through the polynomial recursion
    p2 = fc.delta_g_polynomial(r, 2)
    elt = fc.RingRElement(r, {(0, 0, k): c for k, c in enumerate(p2) if c})
    assert g.delta().delta() == elt


def test_genus1_npoint_invariance():
    # r=1, n=2: both sides q/(12 (1-q)^2)
    lhs = fc.delta_g_direct(1, 1) * Fraction(1, 12)
    assert lhs == fc.q_var() / ((1 - fc.q_var()) ** 2) * Fraction(1, 12)
    assert fc.genus1_npoint_invariance(1, 2, kappa=Fraction(1, 12))
    assert fc.genus1_npoint_invariance(2, 3, kappa=Fraction(-1, 8))
    for r in (1, 2, 3, 4):
        kappa = Fraction((-1) ** (r + 1) * (r + 1), 24)
        for n in range(2, 7):
            assert fc.genus1_npoint_invariance(r, n, kappa=kappa)


def test_genus1_kappa_from_pipeline():
    assert fc.genus1_kappa(1) == Fraction(1, 12)
    assert fc.genus1_kappa(2) == Fraction(-1, 8)


def test_genus1_onepoint_defect():
    for r in (1, 2):
        assert fc.genus1_onepoint_defect(r) == 0
    # negative control: shifting the Chern pairing by -1 leaves +1/24
    assert fc.genus1_onepoint_defect(1, chern_shift=-1) == Fraction(1, 24)
    assert fc.genus1_onepoint_defect(1, chern_shift=1) == Fraction(-1, 24)


def test_fp_generating_invariance():
    assert fc.fp_generating_invariance(1)
    assert fc.fp_generating_invariance(3)
    assert fc.fp_generating_invariance(5)
    with pytest.raises(ValueError):
        fc.fp_generating_invariance(2)


def test_g_polynomial_fit_identity():
    r = 1
    series = fc.g_series(r, 12)
    polys = fc.g_polynomial_fit([Fraction(c) for c in series], 0, 3, r)
    assert polys == [[Fraction(0), Fraction(1)]]


def test_g_polynomial_fit_two_block():
    # q + G^2 with d2 = 1: p_0 = G^2, p_1 = 1
    r = 1
    g2 = fc.evaluate_g_polynomial([Fraction(0), Fraction(0), Fraction(1)], r)
    target = fc.q_var() + g2
    series = [c.as_rational() for c in target.series_expand(14)]
    polys = fc.g_polynomial_fit(series, 1, 2, r)
    assert polys[0] == [Fraction(0), Fraction(0), Fraction(1)]
    assert polys[1] == [Fraction(1)]


def test_g_polynomial_fit_rejects_outside_span():
    r = 1
    bad = RatFunc.one(fc.Q, 1) / ((1 - fc.q_var()) ** 3)
    series = [c.as_rational() for c in bad.series_expand(14)]
    with pytest.raises(fc.NotOfFiniteFormError):
        fc.g_polynomial_fit(series, 0, 2, r)
    with pytest.raises(fc.NotOfFiniteFormError):
        fc.g_polynomial_fit(series, 1, 2, r)


def test_g_polynomial_fit_roundtrip_ring_element():
    # build a finite-form element, expand, fit, and compare as functions;
    # the blocks q^j G^k are linearly dependent (q G differs from G - q by a
    # sign), so only the function is pinned down, not the representation
    r = 2
    polys = [[Fraction(1), Fraction(2)], [Fraction(0), Fraction(0), Fraction(3)],
             [Fraction(5)]]
    elt = fc.RingRElement.finite_form(r, 2, polys)
    assert elt.contact_weight() == 2
    series_by_weight = fc.ring_element_series(elt, 16)
    series = series_by_weight[2]
    got = fc.g_polynomial_fit(series, 2, 2, r)

    def as_function(blocks):
        q = fc.q_var()
        acc = fc.RatFunc.zero(fc.Q, 1)
        for j, p in enumerate(blocks):
            acc = acc + (q ** j) * fc.evaluate_g_polynomial(p, r)
        return acc

    assert as_function(got) == as_function(polys)
