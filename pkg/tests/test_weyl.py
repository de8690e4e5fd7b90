"""Tests for the quadratic-hamiltonian quantization toy model."""

from fractions import Fraction

import pytest

from qcflop import weyl


def lower(dim=1, exp=-1, coeff=1):
    return weyl.EndoLaurent.scalar_z_power(dim, exp, coeff)


def test_symplectic_form_examples():
    f = weyl.LoopVector.basis(1, 3, 0, 0)
    g = weyl.LoopVector.basis(1, 3, 0, -1)
    assert weyl.symplectic_form(f, g) == 1
    assert weyl.symplectic_form(f, f) == 0
    f1 = weyl.LoopVector.basis(1, 3, 0, 1)
    g2 = weyl.LoopVector.basis(1, 3, 0, -2)
    assert weyl.symplectic_form(f1, g2) == -1


def test_symplectic_form_antisymmetry_and_nondegeneracy():
    dim, K = 2, 2
    basis = [(i, m) for i in range(dim) for m in range(-K - 1, K + 1)]
    gram = None
    vals = {}
    for u in basis:
        for v in basis:
            fu = weyl.LoopVector.basis(dim, K, *u)
            fv = weyl.LoopVector.basis(dim, K, *v)
            vals[(u, v)] = weyl.symplectic_form(fu, fv, gram)
    for u in basis:
        assert any(vals[(u, v)] for v in basis), "degenerate direction"
        for v in basis:
            assert vals[(u, v)] == -vals[(v, u)]


def test_darboux_normalization():
    # Omega(p-vector, q-vector) = 1 on matching indices
    dim, K = 2, 3
    for i in range(dim):
        for k in range(K + 1):
            p = weyl.darboux_vector(dim, K, "p", (i, k))
            q = weyl.darboux_vector(dim, K, "q", (i, k))
            assert weyl.symplectic_form(p, q) == 1
            assert weyl.symplectic_form(q, p) == -1


def test_is_infinitesimal_symplectic():
    assert weyl.is_infinitesimal_symplectic(lower(1, -1), 1, 3)
    assert weyl.is_infinitesimal_symplectic(lower(1, 1), 1, 3)
    assert not weyl.is_infinitesimal_symplectic(lower(1, 0), 1, 3)
    # even powers need antisymmetric matrices, odd powers symmetric ones
    anti = weyl.EndoLaurent.matrix_z_power(2, -2, [[0, 1], [-1, 0]])
    assert weyl.is_infinitesimal_symplectic(anti, 2, 3)
    sym = weyl.EndoLaurent.matrix_z_power(2, -2, [[0, 1], [1, 0]])
    assert not weyl.is_infinitesimal_symplectic(sym, 2, 3)


def test_hamiltonian_of_z_inverse():
    # P(1/z) = -q_0^2/2 - sum_m q_(m+1) p_m
    K = 5
    P = weyl.hamiltonian_of(lower(1, -1), 1, K)
    assert P.qq == {(((0, 0)), (0, 0)): Fraction(-1, 2)}
    want_pq = {((0, m), (0, m + 1)): Fraction(-1) for m in range(K)}
    assert P.pq == want_pq
    assert P.pp == {}


def test_hamiltonian_of_zero_operator():
    P = weyl.hamiltonian_of(weyl.EndoLaurent(1, {}), 1, 3)
    assert P.is_zero()


def test_hamiltonian_of_rejects_nonsymplectic():
    with pytest.raises(weyl.NonSymplecticError):
        weyl.hamiltonian_of(lower(1, -2), 1, 3)


def test_hamiltonian_of_matrix_z_minus2():
    # with an antisymmetric coefficient the z^-2 operator is symplectic;
    # its hamiltonian couples the two directions (oracle-frozen values)
    K = 3
    anti = weyl.EndoLaurent.matrix_z_power(2, -2, [[0, 1], [-1, 0]])
    P = weyl.hamiltonian_of(anti, 2, K)
    assert P.pp == {}
    # qq block: cross terms q^0_k q^1_l with k + l = 1
    assert P.qq == {((0, 0), (1, 1)): Fraction(-1), ((0, 1), (1, 0)): Fraction(1)}
    # pq block: q^(1-direction)_(m+2) p^(0-direction)_m shifted pairs
    want_pq = {}
    for m in range(K - 1):
        want_pq[((0, m), (1, m + 2))] = Fraction(-1)
        want_pq[((1, m), (0, m + 2))] = Fraction(1)
    assert P.pq == want_pq


def test_quantize_table():
    # pp applied to q^2 gives 2 hbar
    v = (0, 0)
    P = weyl.QuadHamiltonian(1, 3, pp={(v, v): Fraction(1)})
    op = weyl.quantize(P)
    q2 = weyl.FockPolynomial({((v, v), 0): Fraction(1)})
    got = op.apply(q2)
    assert got == weyl.FockPolynomial({((), 1): Fraction(2)})
    # qq applied to 1 gives q^2/hbar
    P2 = weyl.QuadHamiltonian(1, 3, qq={(v, v): Fraction(1)})
    got2 = weyl.quantize(P2).apply(weyl.FockPolynomial.one())
    assert got2 == weyl.FockPolynomial({((v, v), -1): Fraction(1)})
    # quantized P(1/z) acts as -q0^2/2 - sum q_(m+1) d/dq_m
    K = 3
    P3 = weyl.hamiltonian_of(lower(1, -1), 1, K)
    op3 = weyl.quantize(P3)
    x1 = weyl.FockPolynomial.variable((0, 1))
    got3 = op3.apply(x1)
    want = weyl.FockPolynomial({(((0, 0), (0, 0), (0, 1)), -1): Fraction(-1, 2),
                                (((0, 2),), 0): Fraction(-1)})
    assert got3 == want


def test_cocycle_values():
    v0 = (0, 0)
    v1 = (0, 1)
    pp_same = weyl.QuadHamiltonian(1, 3, pp={(v0, v0): Fraction(1)})
    qq_same = weyl.QuadHamiltonian(1, 3, qq={(v0, v0): Fraction(1)})
    assert weyl.commutator_cocycle(pp_same, qq_same) == 2
    pp_mixed = weyl.QuadHamiltonian(1, 3, pp={(v0, v1): Fraction(1)})
    qq_mixed = weyl.QuadHamiltonian(1, 3, qq={(v0, v1): Fraction(1)})
    assert weyl.commutator_cocycle(pp_mixed, qq_mixed) == 1
    # pure pp pairs have no defect
    assert weyl.commutator_cocycle(pp_same, pp_mixed) == 0
    # antisymmetry
    assert weyl.commutator_cocycle(qq_same, pp_same) == -2


def test_cocycle_full_table():
    # dim 2, cutoff 3: every pp/qq pair matches 1 + delta delta
    dim, K = 2, 3
    variables = [(i, k) for i in range(dim) for k in range(K + 1)]
    for v in variables:
        for w in variables:
            P1 = weyl.QuadHamiltonian(dim, K, pp={tuple(sorted((v, w))): Fraction(1)})
            P2 = weyl.QuadHamiltonian(dim, K, qq={tuple(sorted((v, w))): Fraction(1)})
            got = weyl.commutator_cocycle(P1, P2)
            want = 1 + (1 if v == w else 0)
            assert got == want == weyl.expected_cocycle(P1, P2)
    # non-matching pairs vanish
    P1 = weyl.QuadHamiltonian(dim, K, pp={((0, 0), (0, 1)): Fraction(1)})
    P2 = weyl.QuadHamiltonian(dim, K, qq={((0, 0), (0, 2)): Fraction(1)})
    assert weyl.commutator_cocycle(P1, P2) == 0 == weyl.expected_cocycle(P1, P2)


def test_cocycle_against_expected_on_random_quadratics():
    dim, K = 2, 2
    v = [(0, 0), (0, 1), (1, 0), (1, 2)]
    P1 = weyl.QuadHamiltonian(dim, K,
                              pp={(v[0], v[1]): Fraction(2), (v[2], v[2]): Fraction(1, 3)},
                              pq={(v[0], v[3]): Fraction(5)},
                              qq={(v[1], v[3]): Fraction(-7, 2)})
    P2 = weyl.QuadHamiltonian(dim, K,
                              pp={(v[1], v[3]): Fraction(4)},
                              pq={(v[2], v[1]): Fraction(-1)},
                              qq={(v[0], v[1]): Fraction(6), (v[2], v[2]): Fraction(9)})
    assert weyl.commutator_cocycle(P1, P2) == weyl.expected_cocycle(P1, P2)


def test_lie_algebra_homomorphism():
    """P([A1, A2]) = {P(A1), P(A2)} for lowering-lowering and raising-raising
    pairs (the window is invariant in one direction, so no boundary terms)."""
    dim, K = 2, 3
    B = [[1, 2], [2, -1]]   # symmetric: odd z-powers
    C = [[0, 1], [1, 3]]
    for exp1, exp2 in ((-1, -1), (-1, -3), (1, 1)):
        A1 = weyl.EndoLaurent.matrix_z_power(dim, exp1, B)
        A2 = weyl.EndoLaurent.matrix_z_power(dim, exp2, C)
        assert weyl.is_infinitesimal_symplectic(A1, dim, K)
        assert weyl.is_infinitesimal_symplectic(A2, dim, K)
        bracket = A1.commutator(A2)
        lhs = weyl.hamiltonian_of(bracket, dim, K)
        rhs = weyl.poisson_bracket(weyl.hamiltonian_of(A1, dim, K),
                                   weyl.hamiltonian_of(A2, dim, K))
        assert lhs == rhs


def test_poisson_bracket_example():
    # {p^2, q^2} = 4 q p
    v = (0, 0)
    P1 = weyl.QuadHamiltonian(1, 2, pp={(v, v): Fraction(1)})
    P2 = weyl.QuadHamiltonian(1, 2, qq={(v, v): Fraction(1)})
    got = weyl.poisson_bracket(P1, P2)
    assert got == weyl.QuadHamiltonian(1, 2, pq={(v, v): Fraction(4)})


def test_dilaton_shift():
    coords = {}
    shifted = weyl.dilaton_shift(coords, 2, 3)
    assert shifted == {(0, 1): Fraction(1)}
    back = weyl.dilaton_unshift(shifted, 2, 3)
    assert back == {}
    # only the unit-direction k=1 slot moves
    coords = {(1, 1): Fraction(5), (0, 2): Fraction(-1)}
    shifted = weyl.dilaton_shift(coords, 2, 3)
    assert shifted[(1, 1)] == 5 and shifted[(0, 1)] == 1 and shifted[(0, 2)] == -1
    assert weyl.dilaton_unshift(shifted, 2, 3) == coords
