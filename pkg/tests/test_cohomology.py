"""Tests for the cohomology ring of the local model."""

from fractions import Fraction
from math import comb

import pytest

from qcflop import cohomology as coh


def poly_division_reduce_oracle(r, raw):
    """Independent reduction: substitute x-powers by long division data.

    Reduces via a different route than CohClass.reduce: first push every
    x-power above r+1 down one at a time using the expanded relation written
    with lowest x first, then drop h-powers, iterating until stable.
    """
    work = {k: Fraction(v) for k, v in raw.items() if v}
    changed = True
    while changed:
        changed = False
        for (a, b), c in sorted(work.items()):
            if a > r:
                work.pop((a, b))
                changed = True
                break
            if b > r + 1:
                work.pop((a, b))
                # x^b = x^(b-r-2) * x^(r+2), x^(r+2) = sum_k (-1)^(k+1) C(r+1,k) h^k x^(r+2-k)
                for k in range(1, r + 2):
                    coeff = Fraction((-1) ** (k + 1) * comb(r + 1, k)) * c
                    key = (a + k, b - k)
                    val = work.get(key, Fraction(0)) + coeff
                    if val:
                        work[key] = val
                    else:
                        work.pop(key, None)
                changed = True
                break
    return {k: v for k, v in work.items() if v}


def test_ring_relations_vanish():
    for r in (1, 2, 3):
        assert coh.CohClass.reduce(r, {(r + 1, 0): Fraction(1)}).is_zero()
        # x (x-h)^(r+1)
        xh = {(1, 0): Fraction(-1), (0, 1): Fraction(1)}
        rel = coh.raw_mul({(0, 1): Fraction(1)}, coh.raw_pow(xh, r + 1))
        assert coh.CohClass.reduce(r, rel).is_zero()


def test_reduce_already_reduced_r1():
    got = coh.CohClass.reduce(1, {(0, 0): Fraction(1), (1, 0): Fraction(1),
                                  (0, 1): Fraction(1), (1, 1): Fraction(1)})
    assert got.coeffs == {(0, 0): 1, (1, 0): 1, (0, 1): 1, (1, 1): 1}


def test_reduce_matches_independent_oracle():
    for r in (1, 2):
        for (a, b) in [(0, r + 2), (1, r + 2), (r, r + 2), (r - 1, r + 3) if r > 1 else (0, r + 3)]:
            raw = {(a, b): Fraction(1)}
            got = coh.CohClass.reduce(r, raw).coeffs
            want = poly_division_reduce_oracle(r, raw)
            assert got == want


def test_integrate_normalization():
    for r in (1, 2, 3):
        assert coh.integrate(coh.monomial(r, r, r + 1)) == 1
        # low-degree monomials integrate to zero
        for (a, b) in coh.basis(r):
            if a + b < 2 * r + 1:
                assert coh.integrate(coh.monomial(r, a, b)) == 0


def test_integrate_reduce_then_read_r1():
    # x^3 reduces to 2 h x^2 for r = 1, so h^0 x^3 integrates to 2
    got = coh.integrate_raw(1, {(0, 3): Fraction(1)})
    want = poly_division_reduce_oracle(1, {(0, 3): Fraction(1)}).get((1, 2), Fraction(0))
    assert got == want == 2


def test_total_chern_degree_pieces():
    for r in (1, 2, 3, 4):
        assert coh.chern_class(r, 0).coeffs == {(0, 0): 1}
        # expand (r+1)h + x + (r+1)(x-h) = (r+2) x by hand
        assert coh.chern_class(r, 1) == coh.monomial(r, 0, 1, r + 2)


def test_degree1_chern_pairs_to_zero_with_line_class():
    # the line class of the exceptional locus pairs with h only; c1 = (r+2)x
    # has no h-component, which is the crepancy statement
    for r in (1, 2, 3):
        c1 = coh.chern_class(r, 1)
        assert all(a == 0 for (a, b) in c1.coeffs)


def test_ring_rank():
    for r in (1, 2, 3, 4):
        assert len(coh.basis(r)) == (r + 1) * (r + 2)


def test_poincare_duality_unimodular():
    for r in (1, 2, 3):
        gram = coh.pairing_matrix(r)
        d = coh.det_fraction(gram)
        assert abs(d) == 1


def test_chern_flop_identity():
    for r in range(1, 7):
        assert coh.chern_flop_identity(r) == -(r + 1)


def test_chern_flop_identity_r1_by_hand():
    # c2 = 3x^2 + 2hx for r = 1 (hand expansion); (c2.2h-x) = 6 - 8 = -2
    c2 = coh.chern_class(1, 2)
    assert c2 == coh.monomial(1, 0, 2, 3) + coh.monomial(1, 1, 1, 2)
    assert coh.chern_flop_identity(1) == -2


def test_genus1_degree0():
    # alpha = 0 gives 0
    assert coh.genus1_degree0(1, coh.CohClass(1, {})) == 0
    # alpha = h at r = 1: -(1/24)(c2.h) with (c2.h) = 3
    assert coh.genus1_degree0(1, coh.monomial(1, 1, 0)) == Fraction(-3, 24)
    # consistency with the flop pairing: value on 2h - x is (r+1)/24
    for r in (1, 2, 3):
        probe = coh.monomial(r, 1, 0, 2) + coh.monomial(r, 0, 1, -1)
        assert coh.genus1_degree0(r, probe) == Fraction(r + 1, 24)


def test_c3_minus_c2c1_value_and_flop_side():
    v = coh.c3_minus_c2c1(1)
    # oracle: integral of c3 is the fixed-point count (r+1)(r+2) = 6, and
    # c2.c1 = (3x^2 + 2hx).3x integrates to 24
    assert coh.integrate(coh.chern_class(1, 3)) == 6
    assert v == 6 - 24 == -18
    assert coh.c3_minus_c2c1_swapped(1) == v
    with pytest.raises(ValueError):
        coh.c3_minus_c2c1(2)


def test_grading_consistency():
    # scaling h -> t h, x -> t x multiplies the degree-3 number by t^3;
    # this is a pure bookkeeping check of graded_piece
    c = coh.total_chern(1)
    deg3 = c.graded_piece(3)
    assert all(a + b == 3 for (a, b) in deg3.coeffs)
