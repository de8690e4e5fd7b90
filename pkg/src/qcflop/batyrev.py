"""The small quantum ring of the local model and its spectrum.

The ring is C[h, x][q1, q2] / (h^(r+1) - q1 (x-h)^(r+1), (x-h)^(r+1) x - q2)
on the monomial basis h^a x^b, 0 <= a <= r, 0 <= b <= r+1.  Internally the
reduction works in the shifted coordinates (h, y) with y = x - h, where the
rewriting terminates after a single division by 1 - (-1)^(r+1) q1; the
structure constants are therefore polynomials in q2 and rational functions of
q1 with that sole denominator (they are not polynomial in q1: the determinant
of h* carries the denominator).

All engine code is generic over an exact coefficient field: elements need
+, -, *, /, is_zero.  Two instantiations are used: the univariate field
Q(q1) (RatFunc over the rational base field) with q2 specialized to rational
interpolation nodes, and the Gaussian rationals Q(i) for exact complex
sample points feeding the numeric certificate.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from qcflop.algebra import CycField, CycNumber, FracSeries, RatFunc

Vec = dict  # (a, b) in the active monomial frame -> field scalar


class SemisimplicityError(ValueError):
    """Raised when the numeric certificate cannot be granted."""


def xi_basis(r: int) -> list[tuple[int, int]]:
    return [(a, b) for a in range(r + 1) for b in range(r + 2)]


def _vec_add(target: Vec, key, value) -> None:
    cur = target.get(key)
    new = value if cur is None else cur + value
    if new.is_zero():
        target.pop(key, None)
    else:
        target[key] = new


class ReductionEngine:
    """Multiplication and reduction in the shifted (h, y) frame over a field."""

    def __init__(self, r: int, q1, q2, one):
        self.r = r
        self.q1 = q1
        self.q2 = q2
        self.one = one
        self.zero = one - one
        sign = (-1) ** (r + 1)
        denom = one - (q1 if sign == 1 else -q1)
        if denom.is_zero():
            raise ZeroDivisionError("q1 sits at the degeneration point of the quantum ring")
        # h^(r+1) y^(r+1) = (q1 q2 / denom) sum_m (-1)^m h^m y^(r-m)
        special_coeff = q1 * q2 / denom
        self.special: Vec = {}
        for m in range(r + 1):
            c = special_coeff if m % 2 == 0 else -special_coeff
            _vec_add(self.special, (m, r - m), c)
        # h^(r+1) y^B for B = 0..r+1
        self.h_carry: list[Vec] = []
        for B in range(r + 2):
            rep: Vec = {}
            if B == 0:
                _vec_add(rep, (0, r + 1), q1)
            else:
                for m in range(B):
                    c = q1 * q2 if m % 2 == 0 else -(q1 * q2)
                    _vec_add(rep, (m, B - 1 - m), c)
                if B <= r:
                    c = q1 if B % 2 == 0 else -q1
                    _vec_add(rep, (B, r + 1), c)
                else:
                    scale = q1 if B % 2 == 0 else -q1
                    for key, c in self.special.items():
                        _vec_add(rep, key, c * scale)
            self.h_carry.append(rep)

    def mult_h(self, vec: Vec) -> Vec:
        out: Vec = {}
        for (a, b), c in vec.items():
            if a < self.r:
                _vec_add(out, (a + 1, b), c)
            else:
                for key, v in self.h_carry[b].items():
                    _vec_add(out, key, v * c)
        return out

    def mult_y(self, vec: Vec) -> Vec:
        out: Vec = {}
        for (a, b), c in vec.items():
            if b < self.r + 1:
                _vec_add(out, (a, b + 1), c)
            else:
                # y^(r+2) = q2 - h y^(r+1)
                _vec_add(out, (a, 0), c * self.q2)
                if a < self.r:
                    _vec_add(out, (a + 1, self.r + 1), -c)
                else:
                    for key, v in self.special.items():
                        _vec_add(out, key, -(v * c))
        return out

    def mult_xi(self, vec: Vec) -> Vec:
        out = self.mult_h(vec)
        for key, c in self.mult_y(vec).items():
            _vec_add(out, key, c)
        return out

    def xi_monomial(self, a: int, b: int) -> Vec:
        """The reduced (h, y)-frame representative of h^a x^b."""
        vec: Vec = {(0, 0): self.one}
        for _ in range(b):
            vec = self.mult_xi(vec)
        for _ in range(a):
            vec = self.mult_h(vec)
        return vec


def _matrix_inverse(mat, one):
    n = len(mat)
    zero = one - one
    aug = [[mat[i][j] for j in range(n)] + [one if k == i else zero for k in range(n)]
           for i, _ in enumerate(mat)]
    for col in range(n):
        pivot = next((i for i in range(col, n) if not aug[i][col].is_zero()), None)
        if pivot is None:
            raise ZeroDivisionError("singular change-of-basis matrix")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = one / aug[col][col]
        aug[col] = [v * inv for v in aug[col]]
        for i in range(n):
            if i != col and not aug[i][col].is_zero():
                f = aug[i][col]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[col])]
    return [row[n:] for row in aug]


def _matrix_det(mat, one):
    n = len(mat)
    m = [row[:] for row in mat]
    det = one
    sign = 1
    for col in range(n):
        pivot = next((i for i in range(col, n) if not m[i][col].is_zero()), None)
        if pivot is None:
            return one - one
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            sign = -sign
        det = det * m[col][col]
        inv = one / m[col][col]
        for i in range(col + 1, n):
            if not m[i][col].is_zero():
                f = m[i][col] * inv
                m[i] = [a - f * b for a, b in zip(m[i], m[col])]
    return det if sign == 1 else (one - one) - det


class QuantumRing:
    """The quantum ring at a fixed exact scalar point (or symbolic q1)."""

    def __init__(self, r: int, q1, q2, one):
        self.r = r
        self.engine = ReductionEngine(r, q1, q2, one)
        self.basis = xi_basis(r)
        self.index = {mono: k for k, mono in enumerate(self.basis)}
        self._embed = [self.engine.xi_monomial(a, b) for (a, b) in self.basis]
        n = len(self.basis)
        zero = one - one
        embed_cols = [[self._embed[k].get(mono, zero) for k in range(n)]
                      for mono in self.basis]
        self._from_y = _matrix_inverse(embed_cols, one)

    def _y_to_xi(self, vec: Vec) -> list:
        zero = self.engine.zero
        coords = [vec.get(mono, zero) for mono in self.basis]
        n = len(self.basis)
        return [sum((self._from_y[i][j] * coords[j] for j in range(n)),
                    start=zero) for i in range(n)]

    def reduce(self, raw: dict[tuple[int, int], Fraction]) -> dict:
        """Reduce a raw polynomial in (h, x) to the monomial basis.

        Raw keys are (h-exponent, x-exponent) with Fraction coefficients.
        """
        engine = self.engine
        total: Vec = {}
        for (A, B), c in raw.items():
            vec: Vec = {(0, 0): engine.one * c}
            for _ in range(B):
                vec = engine.mult_xi(vec)
            for _ in range(A):
                vec = engine.mult_h(vec)
            for key, v in vec.items():
                _vec_add(total, key, v)
        coords = self._y_to_xi(total)
        return {self.basis[k]: coords[k] for k in range(len(coords))
                if not coords[k].is_zero()}

    def mult_matrix(self, which: str) -> list[list]:
        """Matrix of multiplication by h or x on the monomial basis (columns
        indexed by basis monomials)."""
        if which not in ("h", "xi"):
            raise ValueError("operator must be 'h' or 'xi'")
        op = self.engine.mult_h if which == "h" else self.engine.mult_xi
        n = len(self.basis)
        cols = [self._y_to_xi(op(self._embed[k])) for k in range(n)]
        return [[cols[j][i] for j in range(n)] for i in range(n)]


# --- instantiations -----------------------------------------------------------

_QF = CycField(1)


def q1_field_one() -> RatFunc:
    return RatFunc.one(_QF, 1)


def q1_symbol() -> RatFunc:
    return RatFunc.monomial(_QF, 1, 1)


def ring_symbolic_q1(r: int, q2_value: Fraction) -> QuantumRing:
    """Ring over the field Q(q1) with q2 a fixed rational value."""
    one = q1_field_one()
    q2 = RatFunc.constant(_QF, 1, q2_value)
    return QuantumRing(r, q1_symbol(), q2, one)


GAUSS = CycField(4)


def gauss(re: Fraction, im: Fraction = Fraction(0)) -> CycNumber:
    return GAUSS.from_rational(re) + GAUSS.zeta() * im


def ring_at_point(r: int, q1: CycNumber, q2: CycNumber) -> QuantumRing:
    return QuantumRing(r, q1, q2, GAUSS.one)


def quantum_mult_matrix(r: int, which: str, q1, q2) -> list[list]:
    """Multiplication matrix at an exact sample point (Gaussian-rational scalars)."""
    if isinstance(q1, (int, Fraction)):
        q1 = gauss(Fraction(q1))
    if isinstance(q2, (int, Fraction)):
        q2 = gauss(Fraction(q2))
    return ring_at_point(r, q1, q2).mult_matrix(which)


def quantum_mult_matrix_symbolic(r: int, which: str,
                                 q2_degree_bound: int | None = None) -> list[list[list[RatFunc]]]:
    """Fully symbolic matrix: entry (i, j) is a list of RatFunc-in-q1
    coefficients ascending in q2, obtained by exact interpolation.

    One extra node checks the degree bound; entries carry the single
    denominator 1 - (-1)^(r+1) q1.
    """
    if q2_degree_bound is None:
        q2_degree_bound = r + 2
    nodes = [Fraction(k) for k in range(q2_degree_bound + 2)]
    mats = [ring_symbolic_q1(r, t).mult_matrix(which) for t in nodes]
    n = (r + 1) * (r + 2)
    zero = q1_field_one() - q1_field_one()
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            values = [mats[s][i][j] for s in range(len(nodes) - 1)]
            poly = _lagrange_interpolate(nodes[:-1], values, zero)
            check = _poly_eval(poly, RatFunc.constant(_QF, 1, nodes[-1]), zero)
            if not (check == mats[-1][i][j]):
                raise ArithmeticError("q2-degree bound too small for interpolation")
            row.append(poly)
        out.append(row)
    return out


def _lagrange_interpolate(nodes: list[Fraction], values: list, zero) -> list:
    """Coefficient list (ascending) of the interpolating polynomial; values in
    any field containing the rationals."""
    n = len(nodes)
    out = [zero] * n
    for s in range(n):
        # numerator polynomial prod_{t != s} (X - node_t), rational coefficients
        numer = [Fraction(1)]
        denom = Fraction(1)
        for t in range(n):
            if t == s:
                continue
            numer = [Fraction(0)] + numer
            for k in range(len(numer) - 1):
                numer[k] -= nodes[t] * numer[k + 1]
            denom *= nodes[s] - nodes[t]
        scale = values[s] * (1 / denom)
        for k in range(n):
            coeff = numer[k] if k < len(numer) else Fraction(0)
            if coeff:
                out[k] = out[k] + scale * coeff
    return out


def _poly_eval(poly: list, x, zero):
    acc = zero
    for c in reversed(poly):
        acc = acc * x + c
    return acc


def _poly_list_mul(a: list, b: list, zero) -> list:
    out = [zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return out


def symbolic_matrices_commute(r: int) -> bool:
    """[h*, x*] = 0 with q1 symbolic and q2 symbolic (via coefficient lists)."""
    H = quantum_mult_matrix_symbolic(r, "h")
    X = quantum_mult_matrix_symbolic(r, "xi")
    n = len(H)
    zero = q1_field_one() - q1_field_one()
    for i in range(n):
        for j in range(n):
            acc: dict[int, RatFunc] = {}
            for k in range(n):
                for term in (_poly_list_mul(H[i][k], X[k][j], zero),):
                    for d, c in enumerate(term):
                        acc[d] = acc.get(d, zero) + c
                for term in (_poly_list_mul(X[i][k], H[k][j], zero),):
                    for d, c in enumerate(term):
                        acc[d] = acc.get(d, zero) - c
            if any(not c.is_zero() for c in acc.values()):
                return False
    return True


def matrices_commute_at(r: int, q1: CycNumber, q2: CycNumber) -> bool:
    """Exact commutator check of the two multiplication matrices at a point."""
    ring = ring_at_point(r, q1, q2)
    H = ring.mult_matrix("h")
    X = ring.mult_matrix("xi")
    n = len(H)
    for i in range(n):
        for j in range(n):
            acc = GAUSS.zero
            for k in range(n):
                acc = acc + H[i][k] * X[k][j] - X[i][k] * H[k][j]
            if not acc.is_zero():
                return False
    return True


def det_h_closed_form(r: int) -> tuple[int, RatFunc]:
    """(q2-degree, coefficient): det(h*) = -q1^(r+2) q2^(r+1) / (1+(-1)^r q1)."""
    q1 = q1_symbol()
    one = q1_field_one()
    denom = one + q1 * Fraction((-1) ** r)
    return r + 1, -(q1 ** (r + 2)) / denom


def det_h_symbolic(r: int, q2_degree_bound: int | None = None) -> dict[int, RatFunc]:
    """Exact det(h*) as a q2-polynomial over Q(q1), by interpolation.

    One extra node validates the degree bound (default r+2, one above the
    actual degree r+1 of the determinant).
    """
    if q2_degree_bound is None:
        q2_degree_bound = r + 2
    one = q1_field_one()
    zero = one - one
    nodes = [Fraction(k) for k in range(q2_degree_bound + 2)]
    dets = [_matrix_det(ring_symbolic_q1(r, t).mult_matrix("h"), one) for t in nodes]
    poly = _lagrange_interpolate(nodes[:-1], dets[:-1], zero)
    check = _poly_eval(poly, RatFunc.constant(_QF, 1, nodes[-1]), zero)
    if not (check == dets[-1]):
        raise ArithmeticError("q2-degree bound too small for the determinant")
    return {k: c for k, c in enumerate(poly) if not c.is_zero()}


# --- closed-form eigenvalues ----------------------------------------------------


class EigenPair:
    """Closed-form eigenvalue pair of the two divisor multiplications."""

    __slots__ = ("r", "i", "j", "h", "xi")

    def __init__(self, r: int, i: int, j: int, h: FracSeries, xi: FracSeries):
        self.r = r
        self.i = i
        self.j = j
        self.h = h
        self.xi = xi


def eigen_field(r: int) -> CycField:
    return CycField((r + 1) * (r + 2))


def eigen_formulas(r: int, i: int, j: int, order: int) -> EigenPair:
    """The (i, j) eigenvalue pair as truncated fractional series.

    h = eta^j omega^i q1^(1/(r+1)) q2^(1/(r+2)) (1 + omega^i q1^(1/(r+1)))^(-1/(r+2))
    xi = eta^j q2^(1/(r+2)) (1 + omega^i q1^(1/(r+1)))^((r+1)/(r+2))

    with omega, eta the primitive roots of unity of orders r+1 and r+2.  The
    truncation order counts steps in the q1^(1/(r+1)) direction.
    """
    if not (0 <= i <= r and 0 <= j <= r + 1):
        raise ValueError("eigenvalue indices out of range")
    fld = eigen_field(r)
    omega = fld.zeta(r + 2)  # order r+1
    eta = fld.zeta(r + 1)    # order r+2
    d1, d2 = r + 1, r + 2
    X = FracSeries.monomial(fld, d1, d2, order, 1, 0)
    Y = FracSeries.monomial(fld, d1, d2, order, 0, 1)
    base = FracSeries.one(fld, d1, d2, order) + X * omega**i
    h = X * Y * (eta**j * omega**i) * base.binomial_power(Fraction(-1, r + 2))
    xi = Y * eta**j * base.binomial_power(Fraction(r + 1, r + 2))
    return EigenPair(r, i, j, h, xi)


def eigen_relation_residuals(pair: EigenPair) -> tuple[FracSeries, FracSeries]:
    """(h^(r+1) - q1 (xi-h)^(r+1), xi (xi-h)^(r+1) - q2) at the pair."""
    r = pair.r
    fld = pair.h.field
    order = pair.h.trunc
    q1 = FracSeries.monomial(fld, r + 1, r + 2, order, r + 1, 0)
    q2 = FracSeries.monomial(fld, r + 1, r + 2, order, 0, r + 2)
    diff = pair.xi - pair.h
    first = pair.h ** (r + 1) - q1 * diff ** (r + 1)
    second = pair.xi * diff ** (r + 1) - q2
    return first, second


def verify_eigen_relations(r: int, order: int) -> dict:
    """Check both quantum relations for every index pair through the order."""
    if order < 1:
        raise ValueError("order must be at least 1")
    failures = []
    pairs = 0
    for i in range(r + 1):
        for j in range(r + 2):
            pair = eigen_formulas(r, i, j, order)
            first, second = eigen_relation_residuals(pair)
            pairs += 1
            for name, res in (("spectrum-relation-1", first), ("spectrum-relation-2", second)):
                if not res.is_zero():
                    exps = sorted(res.terms)
                    failures.append({"i": i, "j": j, "relation": name,
                                     "leading_exponent": list(exps[0])})
    return {"r": r, "order": order, "pairs_checked": pairs, "failures": failures}


def eigenvalue_product_identity(r: int, order: int | None = None) -> bool:
    """prod of all h-eigenvalues equals -q1^(r+2) q2^(r+1)/(1+(-1)^r q1)."""
    if order is None:
        order = (r + 5) * (r + 1)
    fld = eigen_field(r)
    d1, d2 = r + 1, r + 2
    prod = FracSeries.one(fld, d1, d2, order)
    for i in range(r + 1):
        for j in range(r + 2):
            prod = prod * eigen_formulas(r, i, j, order).h
    # closed form expanded: -q1^(r+2) q2^(r+1) sum_k (-(-1)^r q1)^k
    want = FracSeries.zero(fld, d1, d2, order)
    k = 0
    while (r + 2 + k) * (r + 1) <= order:
        coeff = Fraction(-((-1) ** ((r + 1) * k)))
        want = want + FracSeries.monomial(fld, d1, d2, order,
                                          (r + 2 + k) * (r + 1), (r + 1) * (r + 2), coeff)
        k += 1
    return prod == want


def spectrum_structure_match(r: int) -> bool:
    """Leading q1-coefficients of the closed forms match the equivariant
    spectrum roots: {omega^i} = {(-1)^r xi^(-i)} as subsets of Q(zeta_(r+1))."""
    fld = CycField(r + 1)
    closed_form_side = {fld.zeta(i).coeffs for i in range(r + 1)}
    sign = Fraction((-1) ** r)
    root_side = {(fld.zeta(-i) * sign).coeffs for i in range(r + 1)}
    return closed_form_side == root_side


# --- numeric certificate --------------------------------------------------------


def eigenvalues_numeric(r: int, q1: complex, q2: complex, which: str = "h") -> list[complex]:
    """All (r+1)(r+2) closed-form eigenvalues at a numeric point, with
    principal fractional powers."""
    out = []
    root1 = q1 ** (1.0 / (r + 1))
    root2 = q2 ** (1.0 / (r + 2))
    for i in range(r + 1):
        omega_i = np.exp(2j * np.pi * i / (r + 1))
        base = 1 + omega_i * root1
        for j in range(r + 2):
            eta_j = np.exp(2j * np.pi * j / (r + 2))
            if which == "h":
                out.append(eta_j * omega_i * root1 * root2 * base ** (-1.0 / (r + 2)))
            else:
                out.append(eta_j * root2 * base ** ((r + 1.0) / (r + 2)))
    return out


def _matrix_to_complex(mat) -> np.ndarray:
    n = len(mat)
    out = np.zeros((n, n), dtype=complex)
    for i in range(n):
        for j in range(n):
            entry = mat[i][j]
            out[i, j] = entry.to_complex()
    return out


def _multiset_match(a: list[complex], b: list[complex]) -> float:
    """Greedy nearest matching; returns the largest matched distance."""
    remaining = list(b)
    worst = 0.0
    for x in a:
        best = min(range(len(remaining)), key=lambda k: abs(remaining[k] - x))
        worst = max(worst, abs(remaining[best] - x))
        remaining.pop(best)
    return worst


def semisimplicity_certificate(r: int, q1: tuple[Fraction, Fraction],
                               q2: tuple[Fraction, Fraction],
                               gap_tol: float = 1e-6,
                               match_tol: float = 1e-9) -> dict:
    """Certify pairwise-distinct eigenvalues and formula-vs-matrix agreement.

    The sample point must be small and nonzero in both variables.  Raises
    SemisimplicityError when the gap or matching tolerance fails; also checks
    that the eigenvector frame of h* diagonalizes x* (simultaneous
    diagonalizability, with no branch pairing asserted).
    """
    q1c = complex(Fraction(q1[0]), Fraction(q1[1]))
    q2c = complex(Fraction(q2[0]), Fraction(q2[1]))
    for name, val in (("q1", q1c), ("q2", q2c)):
        if val == 0:
            raise ValueError(f"{name} must be nonzero (the classical ring is not semisimple)")
        if abs(val) >= 1:
            raise ValueError(f"{name} must be small (inside the unit disk)")
    exact_q1 = gauss(Fraction(q1[0]), Fraction(q1[1]))
    exact_q2 = gauss(Fraction(q2[0]), Fraction(q2[1]))
    ring = ring_at_point(r, exact_q1, exact_q2)
    H = _matrix_to_complex(ring.mult_matrix("h"))
    X = _matrix_to_complex(ring.mult_matrix("xi"))
    formula = eigenvalues_numeric(r, q1c, q2c, "h")
    gaps = [abs(a - b) for idx, a in enumerate(formula) for b in formula[idx + 1:]]
    min_gap = min(gaps)
    if min_gap <= gap_tol:
        raise SemisimplicityError(f"eigenvalue gap {min_gap:.3e} below tolerance")
    matrix_spec = list(np.linalg.eigvals(H))
    worst = _multiset_match(formula, matrix_spec)
    if worst > match_tol:
        raise SemisimplicityError(
            f"formula-vs-matrix spectrum mismatch {worst:.3e} above tolerance")
    # simultaneous diagonalizability: eigenvectors of h* diagonalize x*
    _, vecs = np.linalg.eig(H)
    conj = np.linalg.solve(vecs, X @ vecs)
    off = conj - np.diag(np.diag(conj))
    off_norm = float(np.max(np.abs(off)))
    commutator = float(np.max(np.abs(H @ X - X @ H)))
    return {
        "r": r,
        "sample": {"q1": [str(q1[0]), str(q1[1])], "q2": [str(q2[0]), str(q2[1])]},
        "eigenvalues": len(formula),
        "min_gap": min_gap,
        "spectrum_match": worst,
        "simultaneous_offdiag": off_norm,
        "commutator_norm": commutator,
        "certified": bool(min_gap > gap_tol and worst <= match_tol
                          and off_norm < 1e-6 and commutator < 1e-12),
    }
