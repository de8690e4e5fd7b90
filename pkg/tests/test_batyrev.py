"""Tests for the small quantum ring and its spectrum."""

from fractions import Fraction

import pytest

from qcflop import batyrev as bat


def test_quantum_relations_reduce_as_stated():
    # h * h^r carries q1: reduce h^(r+1) and check it matches q1 (x-h)^(r+1)
    for r in (1, 2):
        ring = bat.ring_at_point(r, bat.gauss(Fraction(1, 3)), bat.gauss(Fraction(1, 5)))
        lhs = ring.reduce({(r + 1, 0): Fraction(1)})
        # q1 (x - h)^(r+1) expanded raw
        from math import comb
        raw = {}
        for k in range(r + 2):
            raw[(k, r + 1 - k)] = Fraction((-1) ** k * comb(r + 1, k), 3)
        rhs = ring.reduce(raw)
        assert lhs == rhs
        assert any(not v.is_zero() for v in lhs.values())
        # x (x-h)^(r+1) reduces to the scalar q2
        raw2 = {}
        for k in range(r + 2):
            raw2[(k, r + 2 - k)] = Fraction((-1) ** k * comb(r + 1, k))
        got = ring.reduce(raw2)
        assert got == {(0, 0): bat.gauss(Fraction(1, 5))}


def test_basis_monomials_reduce_to_themselves():
    r = 1
    ring = bat.ring_at_point(r, bat.gauss(Fraction(1, 7)), bat.gauss(Fraction(2, 7)))
    for (a, b) in bat.xi_basis(r):
        got = ring.reduce({(a, b): Fraction(1)})
        assert got == {(a, b): bat.GAUSS.one}


def test_classical_limit_matches_cohomology():
    # at q1 = q2 = 0 the ring is the classical one; compare reductions
    from qcflop import cohomology as coh
    for r in (1, 2):
        ring = bat.ring_at_point(r, bat.gauss(Fraction(0)), bat.gauss(Fraction(0)))
        for raw in ({(0, r + 2): Fraction(1)}, {(r + 1, 1): Fraction(1)},
                    {(2, r): Fraction(3), (0, 2): Fraction(-1)}):
            got = ring.reduce(raw)
            want = coh.CohClass.reduce(r, raw).coeffs
            got_frac = {k: v for k, v in got.items() if not v.is_zero()}
            assert set(got_frac) == set(want)
            for key, val in want.items():
                assert got_frac[key] == bat.gauss(val)


def test_mult_matrix_nilpotent_at_origin():
    import numpy as np
    for r in (1, 2):
        mat = bat.quantum_mult_matrix(r, "h", 0, 0)
        n = len(mat)
        arr = bat._matrix_to_complex(mat)
        power = np.linalg.matrix_power(arr, 2 * r + 2)
        assert abs(power).max() < 1e-12


def test_mult_matrices_commute_symbolically():
    assert bat.symbolic_matrices_commute(1)


def test_mult_matrices_commute_at_points():
    for r in (2, 3):
        for (a, b) in ((Fraction(1, 3), Fraction(1, 7)), (Fraction(-2, 5), Fraction(3, 4))):
            assert bat.matrices_commute_at(r, bat.gauss(a), bat.gauss(b))


def test_det_h_closed_form():
    for r in (1, 2):
        got = bat.det_h_symbolic(r)
        degree, coeff = bat.det_h_closed_form(r)
        assert got == {degree: coeff}


def test_det_h_at_points_r3():
    # full symbolic determinant is slow at r=3; verify at exact sample points
    degree, coeff = bat.det_h_closed_form(3)
    one = bat.q1_field_one()
    for (a, b) in ((Fraction(1, 3), Fraction(1, 7)), (Fraction(-2, 5), Fraction(3, 4))):
        ring = bat.ring_at_point(3, bat.gauss(a), bat.gauss(b))
        det = bat._matrix_det(ring.mult_matrix("h"), bat.GAUSS.one)
        want = coeff.eval_rational(a) * bat.gauss(b) ** degree
        assert det == want


def test_eigen_formula_leading_terms():
    r = 2
    pair = bat.eigen_formulas(r, 0, 0, 6)
    # xi-eigenvalue leading term is q2^(1/(r+2))
    assert pair.xi.coefficient(0, 1) == pair.xi.field.one
    # h-eigenvalue leading term is q1^(1/(r+1)) q2^(1/(r+2))
    assert pair.h.coefficient(1, 1) == pair.h.field.one
    fld = bat.eigen_field(r)
    omega = fld.zeta(r + 2)
    eta = fld.zeta(r + 1)
    pair12 = bat.eigen_formulas(r, 1, 2, 6)
    assert pair12.h.coefficient(1, 1) == eta**2 * omega
    # setting q1 = 0 kills the h-eigenvalue
    assert pair12.h.set_q1_zero().is_zero()
    assert not pair12.xi.set_q1_zero().is_zero()


def test_eigen_relations_exact():
    report = bat.verify_eigen_relations(1, 6)
    assert report["pairs_checked"] == 6
    assert report["failures"] == []
    report = bat.verify_eigen_relations(2, 5)
    assert report["pairs_checked"] == 12
    assert report["failures"] == []


def test_eigen_relations_negative_control():
    # flipping one sign must fail, surfacing a leading exponent
    r = 1
    pair = bat.eigen_formulas(r, 0, 1, 6)
    corrupted = bat.EigenPair(r, 0, 1, -pair.h, pair.xi)
    first, second = bat.eigen_relation_residuals(corrupted)
    assert not first.is_zero() or not second.is_zero()
    pair2 = bat.eigen_formulas(r, 1, 0, 6)
    corrupted2 = bat.EigenPair(r, 1, 0, pair2.h, -pair2.xi)
    f2, s2 = bat.eigen_relation_residuals(corrupted2)
    assert not f2.is_zero() and not s2.is_zero()


def test_eigenvalue_count_and_product():
    for r in (1, 2):
        assert bat.eigenvalue_product_identity(r)
    n = 0
    for i in range(3):
        for j in range(4):
            n += 1
    assert n == 12 == len(bat.xi_basis(2))


def test_spectrum_structure_match():
    for r in (1, 2, 3, 4):
        assert bat.spectrum_structure_match(r)


def test_semisimplicity_certificate_r1():
    report = bat.semisimplicity_certificate(
        1, (Fraction(3, 10), Fraction(0)), (Fraction(7, 10), Fraction(0)))
    assert report["certified"]
    assert report["eigenvalues"] == 6
    assert report["min_gap"] > 1e-6
    assert report["spectrum_match"] <= 1e-9


def test_semisimplicity_certificate_r2():
    report = bat.semisimplicity_certificate(
        2, (Fraction(1, 5), Fraction(1, 10)), (Fraction(1, 4), Fraction(0)))
    assert report["certified"]
    assert report["eigenvalues"] == 12


def test_certificate_rejects_origin():
    with pytest.raises(ValueError):
        bat.semisimplicity_certificate(1, (Fraction(0), Fraction(0)),
                                       (Fraction(1, 2), Fraction(0)))


def test_engine_rejects_degeneration_point():
    with pytest.raises(ZeroDivisionError):
        bat.ring_at_point(1, bat.gauss(Fraction(1)), bat.gauss(Fraction(1, 2)))
