"""Analytic-continuation identities for the extremal generating functions.

The carrier of continuation is the rational function G(q) = q/(1-(-1)^(r+1)q)
(the positive-degree part of the extremal three-point functions).  The flop
acts on generating functions by G -> (-1)^r - G together with inversion of
the extremal Novikov variable, and all higher structure is controlled by the
logarithmic derivative delta = q d/dq, for which delta^m G is a polynomial in
G with integer coefficients.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb

from qcflop.algebra import CycField, RatFunc
from qcflop import cohomology as coh

Q = CycField(1)


class NotOfFiniteFormError(ValueError):
    """Raised when a series does not fit the finite polynomial-in-G form."""


def q_var() -> RatFunc:
    return RatFunc.monomial(Q, 1, 1)


def g_function(r: int) -> RatFunc:
    """The extremal function q/(1 - (-1)^(r+1) q) as an exact rational function."""
    if r < 1:
        raise ValueError("r must be at least 1")
    q = q_var()
    sign = (-1) ** (r + 1)
    return q / (RatFunc.one(Q, 1) - q * sign)


def g_series(r: int, order: int) -> list[Fraction]:
    return [c.as_rational() for c in g_function(r).series_expand(order)]


def verify_reflection(r: int) -> bool:
    """G(q) + G(1/q) = (-1)^r, exactly."""
    g = g_function(r)
    return g + g.subs_reciprocal() == RatFunc.constant(Q, 1, (-1) ** r)


# --- polynomials in G --------------------------------------------------------

GPoly = list[Fraction]  # ascending coefficients in G


def _gpoly_trim(p: GPoly) -> GPoly:
    while p and p[-1] == 0:
        p.pop()
    return p


def _gpoly_mul(a: GPoly, b: GPoly) -> GPoly:
    out = [Fraction(0)] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _gpoly_trim(out)


def _gpoly_derivative(p: GPoly) -> GPoly:
    return _gpoly_trim([p[k] * k for k in range(1, len(p))])


def delta_g_polynomial(r: int, m: int) -> GPoly:
    """The polynomial p_m with delta^m G = p_m(G), by the Leibniz recursion.

    Built from delta G = G + (-1)^(r+1) G^2 and the chain rule; coefficients
    stay integral.
    """
    if m < 0:
        raise ValueError("m must be nonnegative")
    delta_g = [Fraction(0), Fraction(1), Fraction((-1) ** (r + 1))]
    p: GPoly = [Fraction(0), Fraction(1)]
    for _ in range(m):
        p = _gpoly_mul(_gpoly_derivative(p), delta_g)
    return p


def evaluate_g_polynomial(p: GPoly, r: int) -> RatFunc:
    g = g_function(r)
    out = RatFunc.zero(Q, 1)
    power = RatFunc.one(Q, 1)
    for c in p:
        if c:
            out = out + power * c
        power = power * g
    return out


def delta_g_direct(r: int, m: int) -> RatFunc:
    """delta^m G by direct rational differentiation (independent route)."""
    f = g_function(r)
    for _ in range(m):
        f = f.delta()
    return f


def reciprocal_antisymmetry(r: int, m: int) -> bool:
    """delta^m G picks up (-1)^(m-1) under q -> 1/q, for m >= 1."""
    if m < 1:
        raise ValueError("m must be at least 1; m = 0 is the reflection identity")
    h = delta_g_direct(r, m)
    return h.subs_reciprocal() == h * Fraction((-1) ** (m - 1))


def genus1_kappa(r: int) -> Fraction:
    """Coefficient kappa with (genus-one dG)/dlog q = kappa * G."""
    from qcflop import canonical

    form, _ = canonical.genus_one_form(r)
    ratio = form / canonical.g_in_w(r).as_q_function()
    return ratio.constant_value().as_rational()


def genus1_npoint_invariance(r: int, n: int, kappa: Fraction | None = None) -> bool:
    """The n-point extremal genus-one functions transform with sign (-1)^(n-2).

    With dG/dlog q = kappa*G, the n-point function is kappa * delta^(n-1) G,
    so the statement reduces to the reciprocal antisymmetry at order n - 1.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    if kappa is None:
        kappa = genus1_kappa(r)
    lhs = delta_g_direct(r, n - 1) * kappa
    rhs = lhs.subs_reciprocal() * Fraction((-1) ** (n - 2))
    return lhs == rhs


def genus1_onepoint_defect(r: int, chern_shift: Fraction | int = 0) -> Fraction:
    """Total defect of the genus-one one-point function across the flop.

    Combines the classical degree-zero term -(1/24)(c_(2r).(2h - x)) with the
    quantum correction (-1)^r kappa obtained from the genus-one potential;
    vanishes identically.  ``chern_shift`` perturbs the Chern pairing for
    negative controls.
    """
    chern_pairing = coh.chern_flop_identity(r) + Fraction(chern_shift)
    classical = -Fraction(1, 24) * chern_pairing
    quantum = Fraction((-1) ** r) * genus1_kappa(r)
    return classical + quantum


def fp_generating_invariance(m: int) -> bool:
    """Invariance of the d >= 1 part of the higher-genus zero-point series.

    For the threefold case the degree-d values are proportional to d^m with
    m = 2g - 3 odd; the series is C_g * delta^m G with C_g an opaque positive
    constant, so invariance is the odd-order reciprocal antisymmetry.
    """
    if m < 1 or m % 2 == 0:
        raise ValueError("m must be odd and positive (m = 2g - 3)")
    if not reciprocal_antisymmetry(1, m):
        return False
    # degree pattern: the q^d coefficient of delta^m G at r = 1 is d^m
    coeffs = delta_g_direct(1, m).series_expand(10)
    return all(coeffs[d].as_rational() == Fraction(d**m) for d in range(1, 11))


# --- the analytic-continuation ring ------------------------------------------


class RingRElement:
    """Polynomial in the formal symbol G over Laurent-in-q^l, poly-in-q^g terms.

    Terms map (l_exponent, g_exponent, G_degree) -> Fraction with
    g_exponent >= 0; G is transcendental here, its relation to q enters only
    at evaluation time.
    """

    __slots__ = ("r", "terms")

    def __init__(self, r: int, terms: dict[tuple[int, int, int], Fraction]):
        for (_, eg, k) in terms:
            if eg < 0 or k < 0:
                raise ValueError("fiber-class exponent and G-degree must be nonnegative")
        self.r = r
        self.terms = {key: Fraction(c) for key, c in terms.items() if c}

    @classmethod
    def g_symbol(cls, r: int) -> "RingRElement":
        return cls(r, {(0, 0, 1): Fraction(1)})

    @classmethod
    def q_monomial(cls, r: int, el: int, eg: int = 0) -> "RingRElement":
        return cls(r, {(el, eg, 0): Fraction(1)})

    @classmethod
    def finite_form(cls, r: int, d2: int, polys: list[GPoly]) -> "RingRElement":
        """q^(d2 g) (p_0(G) + q^l p_1(G) + ... + q^(d2 l) p_d2(G))."""
        if len(polys) != d2 + 1:
            raise ValueError("need exactly d2 + 1 polynomials")
        terms: dict[tuple[int, int, int], Fraction] = {}
        for j, p in enumerate(polys):
            for k, c in enumerate(p):
                if c:
                    terms[(j, d2, k)] = terms.get((j, d2, k), Fraction(0)) + c
        return cls(r, terms)

    def __add__(self, other: "RingRElement") -> "RingRElement":
        out = dict(self.terms)
        for key, c in other.terms.items():
            val = out.get(key, Fraction(0)) + c
            if val:
                out[key] = val
            else:
                out.pop(key, None)
        return RingRElement(self.r, out)

    def __mul__(self, other: "RingRElement") -> "RingRElement":
        out: dict[tuple[int, int, int], Fraction] = {}
        for (l1, g1, k1), c1 in self.terms.items():
            for (l2, g2, k2), c2 in other.terms.items():
                key = (l1 + l2, g1 + g2, k1 + k2)
                val = out.get(key, Fraction(0)) + c1 * c2
                if val:
                    out[key] = val
                else:
                    out.pop(key, None)
        return RingRElement(self.r, out)

    def scale(self, c) -> "RingRElement":
        c = Fraction(c)
        return RingRElement(self.r, {k: v * c for k, v in self.terms.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, RingRElement):
            return NotImplemented
        return self.r == other.r and self.terms == other.terms

    def __hash__(self):
        return hash((self.r, tuple(sorted(self.terms.items()))))

    def contact_weight(self) -> int:
        """The common fiber-class exponent d2, when it is uniform."""
        weights = {eg for (_, eg, _) in self.terms}
        if len(weights) != 1:
            raise ValueError("element mixes contact weights")
        return weights.pop()

    def delta(self) -> "RingRElement":
        """q^l d/dq^l; stays inside the ring since delta G = G + (-1)^(r+1) G^2."""
        sign = Fraction((-1) ** (self.r + 1))
        out = RingRElement(self.r, {})
        for (el, eg, k), c in self.terms.items():
            # product rule on q^(el) * G^k
            if el:
                out = out + RingRElement(self.r, {(el, eg, k): c * el})
            if k:
                # k G^(k-1) (G + sign G^2)
                out = out + RingRElement(self.r, {(el, eg, k): c * k,
                                                  (el, eg, k + 1): c * k * sign})
        return out


def flop_transform(x: RingRElement) -> RingRElement:
    """The continuation map: G -> (-1)^r - G, with l -> -l' and g -> g' + l'
    on the curve-class exponents."""
    r = x.r
    sign = Fraction((-1) ** r)
    out = RingRElement(r, {})
    for (el, eg, k), c in x.terms.items():
        # ((-1)^r - G)^k expanded binomially
        for j in range(k + 1):
            coeff = c * comb(k, j) * (sign ** (k - j)) * Fraction((-1) ** j)
            out = out + RingRElement(r, {(eg - el, eg, j): coeff})
    return out


def ring_element_series(x: RingRElement, order: int) -> dict[int, list[Fraction]]:
    """Expansion in q^l through the given order, grouped by fiber exponent.

    Returns eg -> dense coefficient list in q^l (index = l-exponent); requires
    all l-exponents to be nonnegative after evaluation (true for effective
    elements at d2 >= 0).
    """
    g = g_function(x.r)
    out: dict[int, list[Fraction]] = {}
    for (el, eg, k), c in x.terms.items():
        if el < 0:
            raise ValueError("series expansion needs nonnegative extremal exponents")
        series = (g ** k).series_expand(order)
        row = out.setdefault(eg, [Fraction(0)] * (order + 1))
        for d, coeff in enumerate(series):
            if el + d <= order:
                row[el + d] += c * coeff.as_rational()
    return out


def g_polynomial_fit(series: list[Fraction], d2: int, degree_bound: int, r: int) -> list[GPoly]:
    """Fit a q^l-series to the form sum_j q^(j l) p_j(G), j = 0..d2.

    The linear system in the (d2+1)(degree_bound+1) unknown coefficients is
    solved exactly; extra series coefficients must be consistent.
    """
    unknowns = [(j, k) for j in range(d2 + 1) for k in range(degree_bound + 1)]
    rows = len(series)
    if rows < len(unknowns):
        raise ValueError("not enough series coefficients to determine the fit")
    g = g_function(r)
    columns = []
    for (j, k) in unknowns:
        base = (g ** k).series_expand(rows - 1)
        col = [Fraction(0)] * rows
        for d, c in enumerate(base):
            if j + d < rows:
                col[j + d] += c.as_rational()
        columns.append(col)
    # exact Gaussian elimination on the augmented system
    aug = [[columns[u][i] for u in range(len(unknowns))] + [Fraction(series[i])]
           for i in range(rows)]
    n_unknowns = len(unknowns)
    pivot_rows: list[int] = []
    row_at = 0
    for col in range(n_unknowns):
        pivot = next((i for i in range(row_at, rows) if aug[i][col] != 0), None)
        if pivot is None:
            continue
        aug[row_at], aug[pivot] = aug[pivot], aug[row_at]
        inv = 1 / aug[row_at][col]
        aug[row_at] = [v * inv for v in aug[row_at]]
        for i in range(rows):
            if i != row_at and aug[i][col] != 0:
                factor = aug[i][col]
                aug[i] = [a - factor * b for a, b in zip(aug[i], aug[row_at])]
        pivot_rows.append(col)
        row_at += 1
    # consistency: all remaining rows must be fully zero
    for i in range(row_at, rows):
        if any(v != 0 for v in aug[i]):
            raise NotOfFiniteFormError("series is not of the finite polynomial-in-G form")
    if len(pivot_rows) < n_unknowns:
        # free unknowns: solution exists but is not unique at this bound;
        # set free ones to zero (columns were dependent, e.g. G itself fits
        # several ways only if basis degenerates, which it does not)
        pass
    solution = {unknowns[c]: Fraction(0) for c in range(n_unknowns)}
    for row_idx, col in enumerate(pivot_rows):
        solution[unknowns[col]] = aug[row_idx][-1]
    polys = []
    for j in range(d2 + 1):
        p = [solution[(j, k)] for k in range(degree_bound + 1)]
        polys.append(_gpoly_trim(p))
    return polys
