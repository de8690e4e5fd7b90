"""Canonical coordinates, connection one-form, R-matrix and genus-one potential.

Everything here lives on the extremal Novikov line (the small-quantum locus
with the Kaehler coordinate t, q = e^t), in the cyclotomic field of order
2(r+1) so that the half-integer root-of-unity powers of the normalized frame
exist.  The root Novikov variable w satisfies w^(r+1) = q.

Conventions:

- xi is the primitive (r+1)-st root of unity, zeta the primitive 2(r+1)-st
  root with zeta^2 = xi.
- c_i = (-1)^r xi^i w^(-1), a_i = 1 + c_i, and the quantum spectrum roots are
  p_i = lam / a_i, which solve q (lam - p)^(r+1) = p^(r+1) identically.
- The normalized frame enters only through the factorization Psi = D M with
  M_{i,mu} = p_i^(mu - r) and diag(D)^2 = q c_i / ((r+1) lam); the square
  roots themselves are never materialized, only the ratios
  d_i/d_j = e_i e_j zeta^(i-j), where e in {+-1}^(r+1) is the branch choice.
- One-forms are restricted to the t-line and stored as their dt-coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dataclass_field
from fractions import Fraction
from math import comb

from qcflop.algebra import (
    CycField,
    CycNumber,
    EquivScalar,
    RatFunc,
    elementary_symmetric,
)
from qcflop.algebra.ratfunc import NonIntegrableError


class FlatnessError(ValueError):
    """Raised when a diagonal integrand carries a non-integrable constant."""


class CancellationError(ValueError):
    """Raised when negative weight powers survive an announced limit."""


# --- frame -------------------------------------------------------------------


@dataclass
class CanonicalFrame:
    r: int
    field: CycField
    zeta: CycNumber
    xi: CycNumber
    c: list[RatFunc]
    a: list[RatFunc]
    p: list[EquivScalar]
    eps: list[list[EquivScalar]] | None = dataclass_field(default=None)

    @property
    def u(self) -> int:
        return self.r + 1

    def lam(self, exp: int = 1, coeff=1) -> EquivScalar:
        return EquivScalar.lam_power(self.field, self.u, exp, coeff)

    def rat_const(self, c) -> RatFunc:
        return RatFunc.constant(self.field, self.u, c)

    def q(self) -> RatFunc:
        return RatFunc.q_power(self.field, self.u, 1)


def build_spectrum(r: int) -> CanonicalFrame:
    """Spectrum roots p_i = lam/a_i with a_i = 1 + (-1)^r xi^i w^(-1)."""
    if r < 1:
        raise ValueError("r must be at least 1")
    fld = CycField(2 * (r + 1))
    zeta = fld.zeta()
    xi = zeta * zeta
    u = r + 1
    sign = Fraction((-1) ** r)
    c = [RatFunc.monomial(fld, u, -1, xi**i * sign) for i in range(r + 1)]
    a = [RatFunc.one(fld, u) + ci for ci in c]
    p = [EquivScalar(fld, u, {1: ai.inverse()}) for ai in a]
    return CanonicalFrame(r=r, field=fld, zeta=zeta, xi=xi, c=c, a=a, p=p)


def char_residuals(frame: CanonicalFrame) -> list[EquivScalar]:
    """q (lam - p_i)^(r+1) - p_i^(r+1) for each i; all must vanish exactly."""
    r = frame.r
    q = EquivScalar.from_ratfunc(frame.q())
    lam = frame.lam()
    out = []
    for p_i in frame.p:
        out.append(q * (lam - p_i) ** (r + 1) - p_i ** (r + 1))
    return out


def g_in_w(r: int) -> RatFunc:
    """The extremal function G as a rational function of w (with q = w^(r+1))."""
    fld = CycField(2 * (r + 1))
    q = RatFunc.q_power(fld, r + 1, 1)
    return q / (RatFunc.one(fld, r + 1) - q * Fraction((-1) ** (r + 1)))


def as_g_polynomial(f: RatFunc, r: int) -> list[CycNumber] | None:
    """Write a rational function of q as a polynomial in G, if possible.

    Substitutes the inverse relation q = G/(1 + (-1)^(r+1) G); a polynomial
    fit exists exactly when the substituted denominator is constant.
    """
    fq = f.as_q_function() if f.root_order != 1 else f
    fld = f.field
    g = RatFunc.monomial(fld, 1, 1)
    q_of_g = g / (RatFunc.one(fld, 1) + g * Fraction((-1) ** (r + 1)))
    composed = fq.subs_ratfunc(q_of_g)
    if composed.den.degree > 0:
        return None
    inv = composed.den.constant().inverse()
    return [c * inv for c in composed.num.coeffs]


def charpoly_coefficients(frame: CanonicalFrame) -> list[EquivScalar]:
    """Elementary symmetric functions e_1..e_(r+1) of the spectrum roots."""
    one = EquivScalar.one(frame.field, frame.u)
    es = elementary_symmetric(frame.p, one)
    return es[1:]


def charpoly_expected(frame: CanonicalFrame, k: int) -> EquivScalar:
    """(-1)^r C(r+1, k) G lam^k, the closed form of e_k."""
    r = frame.r
    gw = g_in_w(r) * Fraction((-1) ** r * comb(r + 1, k))
    return EquivScalar(frame.field, frame.u, {k: gw})


# --- pairing and canonical basis ----------------------------------------------


def equiv_pairing(r: int, k: int, l: int) -> EquivScalar:
    """The equivariant pairing of p^k with p^l: C(2r-d, r-d) lam^-(2r+1-d)
    for d = k + l <= r, and zero beyond."""
    if k < 0 or l < 0:
        raise ValueError("exponents must be nonnegative")
    fld = CycField(2 * (r + 1))
    d = k + l
    if d > r:
        return EquivScalar.zero(fld, r + 1)
    return EquivScalar.lam_power(fld, r + 1, -(2 * r + 1 - d), comb(2 * r - d, r - d))


def pair_p_polynomials(r: int, A: list[EquivScalar], B: list[EquivScalar]) -> EquivScalar:
    """Pairing of two elements written on the basis 1, p, ..., p^r."""
    fld = CycField(2 * (r + 1))
    out = EquivScalar.zero(fld, r + 1)
    for k, ak in enumerate(A):
        if ak.is_zero():
            continue
        for l, bl in enumerate(B):
            if bl.is_zero():
                continue
            out = out + ak * bl * equiv_pairing(r, k, l)
    return out


def lemma_zero_value(r: int, k: int) -> EquivScalar:
    """The pairing of (p/lam)^k (1 - p/lam)^(2r-k); vanishes for k <= r-1."""
    fld = CycField(2 * (r + 1))
    out = EquivScalar.zero(fld, r + 1)
    for m in range(2 * r - k + 1):
        d = k + m
        if d > r:
            continue
        coeff = Fraction((-1) ** m * comb(2 * r - k, m))
        out = out + equiv_pairing(r, d, 0) * EquivScalar.lam_power(fld, r + 1, -d, coeff)
    return out


def _sym_omitting(values: list[RatFunc], omit: int, one: RatFunc) -> list[RatFunc]:
    rest = [v for i, v in enumerate(values) if i != omit]
    return elementary_symmetric(rest, one)


def canonical_basis(frame: CanonicalFrame) -> list[list[EquivScalar]]:
    """Coefficient arrays of the idempotent basis on 1, p, ..., p^r.

    eps_i = (q c_i/(r+1)) a_i^r prod_{l != i} (1 - a_l p/lam), expanded.
    """
    r = frame.r
    fld, u = frame.field, frame.u
    one = RatFunc.one(fld, u)
    q = frame.q()
    out: list[list[EquivScalar]] = []
    for i in range(r + 1):
        prefactor = q * frame.c[i] * Fraction(1, r + 1) * frame.a[i] ** r
        sym = _sym_omitting(frame.a, i, one)
        coeffs = []
        for k in range(r + 1):
            rf = prefactor * sym[k] * Fraction((-1) ** k)
            coeffs.append(EquivScalar(fld, u, {-k: rf}))
        out.append(coeffs)
    frame.eps = out
    return out


def du_of_eps(frame: CanonicalFrame, i: int, j: int) -> EquivScalar:
    """du_j applied to eps_i: substitute p -> p_j in the coefficient array."""
    if frame.eps is None:
        canonical_basis(frame)
    coeffs = frame.eps[i]
    out = EquivScalar.zero(frame.field, frame.u)
    pj_pow = EquivScalar.one(frame.field, frame.u)
    for k in range(len(coeffs)):
        out = out + coeffs[k] * pj_pow
        pj_pow = pj_pow * frame.p[j]
    return out


def eps_pairing(frame: CanonicalFrame, i: int, j: int) -> EquivScalar:
    if frame.eps is None:
        canonical_basis(frame)
    return pair_p_polynomials(frame.r, frame.eps[i], frame.eps[j])


def eps_norm_closed_form(frame: CanonicalFrame, i: int) -> EquivScalar:
    """q c_i a_i^(2r) / ((r+1) lam^(2r+1))."""
    r = frame.r
    rf = frame.q() * frame.c[i] * frame.a[i] ** (2 * r) * Fraction(1, r + 1)
    return EquivScalar(frame.field, frame.u, {-(2 * r + 1): rf})


def delta_i(frame: CanonicalFrame) -> list[EquivScalar]:
    """Norm-square inverses Delta_i = (r+1) lam q^(-1) c_i^(-1) p_i^(2r)."""
    r = frame.r
    out = []
    qinv = frame.q().inverse()
    for i in range(r + 1):
        rf = qinv * frame.c[i].inverse() * Fraction(r + 1)
        out.append(EquivScalar(frame.field, frame.u, {1: rf}) * frame.p[i] ** (2 * r))
    return out


def delta_product_closed_form(frame: CanonicalFrame) -> EquivScalar:
    """(r+1)^(r+1) lam^((2r+1)(r+1)) xi^(-r(r+1)/2) q^(-r) G^(2r)."""
    r = frame.r
    coeff = frame.xi ** (-(r * (r + 1)) // 2) * Fraction((r + 1) ** (r + 1))
    rf = g_in_w(r) ** (2 * r) * frame.q() ** (-r) * coeff
    return EquivScalar(frame.field, frame.u, {(2 * r + 1) * (r + 1): rf})


# --- the three terms of the genus-one differential ----------------------------


def term_log_delta(frame: CanonicalFrame) -> RatFunc:
    """dt-coefficient of d log(prod Delta_i); equals r (1 - 2(-1)^r G)."""
    prod = EquivScalar.one(frame.field, frame.u)
    for d in delta_i(frame):
        prod = prod * d
    if not prod.is_simple():
        raise ValueError("product of norms is not a pure weight power")
    ((_, f),) = prod.terms.items()
    return f.delta() / f


def power_sums(frame: CanonicalFrame, kmax: int) -> list[EquivScalar]:
    """Power sums of the spectrum roots, exactly."""
    sums = []
    for k in range(kmax + 1):
        acc = EquivScalar.zero(frame.field, frame.u)
        for p_i in frame.p:
            acc = acc + p_i**k
        sums.append(acc)
    return sums


def term_c_minus_one(frame: CanonicalFrame) -> tuple[RatFunc, dict[int, RatFunc]]:
    """The localized first-Chern term (r+1)/(24 lam) sum_i du_i, by flat direction.

    Returns the dt_1-coefficient after the weight goes to zero, together with
    the limits of the k >= 2 components (all zero).  The k = 0 component is
    the unit direction; it retains an uncancelled 1/lam (its partner lives in
    the second-torus bookkeeping, which has no housing here) and is excluded
    from the t-line restriction.
    """
    r = frame.r
    sums = power_sums(frame, r)
    prefactor = frame.lam(-1, Fraction(r + 1, 24))
    main = (prefactor * sums[1]).nonequivariant_limit()
    others: dict[int, RatFunc] = {}
    for k in range(2, r + 1):
        others[k] = (prefactor * sums[k]).nonequivariant_limit()
    return main, others


# --- transition matrix and connection -----------------------------------------


def m_matrix(frame: CanonicalFrame) -> list[list[EquivScalar]]:
    """M_{i,mu} = p_i^(mu - r)."""
    r = frame.r
    return [[frame.p[i] ** (mu - r) for mu in range(r + 1)] for i in range(r + 1)]


def m_inverse(frame: CanonicalFrame) -> list[list[EquivScalar]]:
    """(M^-1)_{mu, j} = (-1)^mu (q c_j/(r+1)) lam^(r - mu) S^j_mu(a)."""
    r = frame.r
    fld, u = frame.field, frame.u
    one = RatFunc.one(fld, u)
    q = frame.q()
    cols = []
    for j in range(r + 1):
        sym = _sym_omitting(frame.a, j, one)
        pref = q * frame.c[j] * Fraction(1, r + 1)
        cols.append([EquivScalar(fld, u, {r - mu: pref * sym[mu] * Fraction((-1) ** mu)})
                     for mu in range(r + 1)])
    return [[cols[j][mu] for j in range(r + 1)] for mu in range(r + 1)]


def mat_mul(A: list[list[EquivScalar]], B: list[list[EquivScalar]]) -> list[list[EquivScalar]]:
    n = len(A)
    m = len(B[0])
    inner = len(B)
    zero = None
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = None
            for k in range(inner):
                term = A[i][k] * B[k][j]
                acc = term if acc is None else acc + term
            row.append(acc)
        out.append(row)
    return out


def mat_transpose(A: list[list]) -> list[list]:
    return [list(row) for row in zip(*A)]


def mat_is_identity(A: list[list[EquivScalar]]) -> bool:
    for i, row in enumerate(A):
        for j, entry in enumerate(row):
            want = 1 if i == j else 0
            if not (entry == want):
                return False
    return True


def _branch_signs(r: int, signs: list[int] | None) -> list[int]:
    if signs is None:
        return [1] * (r + 1)
    if len(signs) != r + 1 or any(s not in (1, -1) for s in signs):
        raise ValueError("branch signs must be a +-1 vector of length r+1")
    return list(signs)


def connection_form(frame: CanonicalFrame, signs: list[int] | None = None,
                    pair_flip: tuple[int, int] | None = None) -> list[list[CycNumber]]:
    """dt-coefficients of the connection one-form, from the D*M factorization.

    Entry (i, j) is e_i e_j zeta^(i-j) (M dM^-1)_{ij} off the diagonal and
    (M dM^-1)_{ii} - r/(2(r+1)) on it (the d log d_i term); entries come out
    constant, the diagonal vanishes and the matrix is antisymmetric.  A
    ``pair_flip`` flips the square-root branch of one unordered pair only,
    which is still consistent for everything built from pair products.
    """
    r = frame.r
    e = _branch_signs(r, signs)
    M = m_matrix(frame)
    Minv = m_inverse(frame)
    dMinv = [[entry.delta() for entry in row] for row in Minv]
    core = mat_mul(M, dMinv)
    out: list[list[CycNumber]] = []
    for i in range(r + 1):
        row = []
        for j in range(r + 1):
            if i == j:
                entry = core[i][i] - Fraction(r, 2 * (r + 1))
            else:
                ratio = frame.zeta ** (i - j) * Fraction(e[i] * e[j])
                entry = core[i][j] * ratio
            val = entry.coefficient(0)
            if entry.lam_degrees() != (0, 0) and not entry.is_zero():
                raise ValueError("connection entry is not weight-free")
            if not val.is_constant():
                raise ValueError("connection entry is not constant in w")
            row.append(val.constant_value())
        out.append(row)
    if pair_flip is not None:
        i, j = pair_flip
        if i == j:
            raise ValueError("pair flip needs two distinct indices")
        out[i][j] = -out[i][j]
        out[j][i] = -out[j][i]
    return out


def connection_display_form(frame: CanonicalFrame) -> list[list[CycNumber]]:
    """The closed-form display: zeta^(j-i)/(r+1)^2 sum_mu mu xi^(mu(j-i)).

    This is the derived connection under the opposite square-root branch of
    each pair (entrywise the negative of the default-branch derived form).
    """
    r = frame.r
    fld = frame.field
    out = []
    for i in range(r + 1):
        row = []
        for j in range(r + 1):
            if i == j:
                row.append(fld.zero)
                continue
            s = fld.zero
            for mu in range(1, r + 1):
                s = s + frame.xi ** (mu * (j - i)) * Fraction(mu)
            row.append(frame.zeta ** (j - i) * s * Fraction(1, (r + 1) ** 2))
        out.append(row)
    return out


# --- first-order asymptotic matrix --------------------------------------------


def r1_offdiagonal(frame: CanonicalFrame, signs: list[int] | None = None,
                   pair_flip: tuple[int, int] | None = None) -> list[list[EquivScalar]]:
    """Solve the dt-restricted first-order relation: entry (i,j) is the
    connection dt-coefficient divided by p_i - p_j; diagonal left zero."""
    r = frame.r
    conn = connection_form(frame, signs, pair_flip)
    out = [[EquivScalar.zero(frame.field, frame.u) for _ in range(r + 1)] for _ in range(r + 1)]
    for i in range(r + 1):
        for j in range(r + 1):
            if i == j:
                continue
            dp = frame.p[i] - frame.p[j]
            out[i][j] = EquivScalar(frame.field, frame.u,
                                    {0: frame.rat_const(conn[i][j])}) / dp
    return out


def r1_offdiagonal_display(frame: CanonicalFrame) -> list[list[EquivScalar]]:
    """Closed form (-1)^r zeta^(j-i) q^(1/(r+1)) a_i a_j
    sum_mu mu xi^(mu(j-i)) / ((r+1)^2 lam (xi^j - xi^i))."""
    r = frame.r
    fld, u = frame.field, frame.u
    out = [[EquivScalar.zero(fld, u) for _ in range(r + 1)] for _ in range(r + 1)]
    w = RatFunc.monomial(fld, u, 1)
    for i in range(r + 1):
        for j in range(r + 1):
            if i == j:
                continue
            s = fld.zero
            for mu in range(1, r + 1):
                s = s + frame.xi ** (mu * (j - i)) * Fraction(mu)
            denom = frame.xi**j - frame.xi**i
            coeff = frame.zeta ** (j - i) * s * denom.inverse() \
                * Fraction((-1) ** r, (r + 1) ** 2)
            rf = w * frame.a[i] * frame.a[j] * coeff
            out[i][j] = EquivScalar(fld, u, {-1: rf})
    return out


def xi_constant(r: int) -> Fraction:
    """Brute-force evaluation of the diagonal combinatorial constant.

    Sums g_k = (xi^k - 1)^(-1) (sum_mu mu xi^(mu k)) (sum_mu mu xi^(-mu k))
    over k = 1..r in Q(zeta_(r+1)); the result is rational and equals
    -(r+2)(r+1)^2 r / 24.
    """
    if r < 1:
        raise ValueError("r must be at least 1")
    fld = CycField(r + 1)
    total = fld.zero
    for k in range(1, r + 1):
        xi_k = fld.zeta(k)
        s_plus = fld.zero
        s_minus = fld.zero
        for mu in range(1, r + 1):
            s_plus = s_plus + fld.zeta(mu * k) * Fraction(mu)
            s_minus = s_minus + fld.zeta(-mu * k) * Fraction(mu)
        total = total + (xi_k - fld.one).inverse() * s_plus * s_minus
    if not total.is_rational():
        raise ArithmeticError("diagonal constant failed to reduce to a rational")
    return total.as_rational()


def xi_constant_pair_identity(r: int) -> bool:
    """The vanishing sum_k (xi^k + 1) g_k(xi) = 0."""
    fld = CycField(r + 1)
    total = fld.zero
    for k in range(1, r + 1):
        xi_k = fld.zeta(k)
        s_plus = fld.zero
        s_minus = fld.zero
        for mu in range(1, r + 1):
            s_plus = s_plus + fld.zeta(mu * k) * Fraction(mu)
            s_minus = s_minus + fld.zeta(-mu * k) * Fraction(mu)
        g_k = (xi_k - fld.one).inverse() * s_plus * s_minus
        total = total + (xi_k + fld.one) * g_k
    return total.is_zero()


def _integrate_scalar(x: EquivScalar, mode: str = "drop-constant") -> EquivScalar:
    return EquivScalar(x.field, x.root_order,
                       {e: f.integrate_in_t(mode) for e, f in x.terms.items()})


def r1_diagonal(frame: CanonicalFrame, off: list[list[EquivScalar]]) -> list[EquivScalar]:
    """Integrate the flatness condition d R1_ii = -sum_j R1_ij R1_ji d(u_i - u_j)
    on the t-line, dropping the integration constant."""
    r = frame.r
    out = []
    for i in range(r + 1):
        integrand = EquivScalar.zero(frame.field, frame.u)
        for j in range(r + 1):
            if j == i:
                continue
            integrand = integrand - off[i][j] * off[j][i] * (frame.p[i] - frame.p[j])
        try:
            out.append(_integrate_scalar(integrand, "drop-constant"))
        except NonIntegrableError as exc:
            raise FlatnessError(f"diagonal {i}: {exc}") from exc
        # a nonzero constant term would violate flatness silently; flag it
        for e, f in integrand.terms.items():
            if 0 in f.laurent_items():
                raise FlatnessError(f"diagonal {i} integrand has a constant term at weight {e}")
    return out


def r1_diagonal_closed_form(frame: CanonicalFrame) -> list[EquivScalar]:
    """Xi_r/((r+1)^3 lam) (c_i^(-1) + c_i), the integrated display."""
    r = frame.r
    xi_r = xi_constant(r)
    out = []
    for i in range(r + 1):
        rf = (frame.c[i].inverse() + frame.c[i]) * Fraction(xi_r, (r + 1) ** 3)
        out.append(EquivScalar(frame.field, frame.u, {-1: rf}))
    return out


# --- the genus-one differential -----------------------------------------------


def genus_one_form(r: int, signs: list[int] | None = None,
                   pair_flip: tuple[int, int] | None = None) -> tuple[RatFunc, Fraction]:
    """Assemble dG/dlog q from the three terms and remove the constant.

    Returns (the dlog q coefficient as a rational function of q, the dropped
    constant).  Negative weight powers surviving the assembly raise
    CancellationError.
    """
    frame = build_spectrum(r)
    t_log = term_log_delta(frame)
    t_c, _ = term_c_minus_one(frame)
    off = r1_offdiagonal(frame, signs, pair_flip)
    diag = r1_diagonal(frame, off)
    third = EquivScalar.zero(frame.field, frame.u)
    for i in range(r + 1):
        third = third + diag[i] * frame.p[i]
    try:
        third_rf = third.nonequivariant_limit()
    except Exception as exc:
        raise CancellationError(f"weight powers survive the R-matrix term: {exc}") from exc
    total = t_log * Fraction(1, 48) - t_c + third_rf * Fraction(1, 2)
    total_q = total.as_q_function()
    const = total_q.eval_rational(0)
    if not const.is_rational():
        raise CancellationError("constant term is not rational")
    value = total_q - RatFunc.constant(total_q.field, 1, const)
    return value, const.as_rational()


def genus_one_expected(r: int) -> RatFunc:
    """((-1)^(r+1)(r+1)/24) q/(1 - (-1)^(r+1) q) as a function of q."""
    fld = CycField(2 * (r + 1))
    q = RatFunc.monomial(fld, 1, 1)
    sign = Fraction((-1) ** (r + 1))
    return q * Fraction(r + 1, 24) * sign / (RatFunc.one(fld, 1) - q * sign)


def genus_one_table(r: int, dmax: int) -> list[Fraction]:
    """Degree d = 1..dmax zero-point values: q^d-coefficient of dG/dlogq over d."""
    if dmax < 1:
        raise ValueError("dmax must be at least 1")
    form, _ = genus_one_form(r)
    coeffs = form.series_expand(dmax)
    out = []
    for d in range(1, dmax + 1):
        c = coeffs[d]
        if not c.is_rational():
            raise ArithmeticError("table entry is not rational")
        out.append(c.as_rational() / d)
    return out


# --- the full order-by-order recursion -----------------------------------------


def _scalar_matrix_from_cyc(frame: CanonicalFrame, mat: list[list[CycNumber]]) -> list[list[EquivScalar]]:
    return [[EquivScalar(frame.field, frame.u, {0: frame.rat_const(c)}) if not c.is_zero()
             else EquivScalar.zero(frame.field, frame.u) for c in row] for row in mat]


def _identity_matrix(frame: CanonicalFrame) -> list[list[EquivScalar]]:
    n = frame.r + 1
    return [[EquivScalar.one(frame.field, frame.u) if i == j
             else EquivScalar.zero(frame.field, frame.u) for j in range(n)] for i in range(n)]


def _unitarity_sum(mats: list[list[list[EquivScalar]]], n: int) -> list[list[EquivScalar]]:
    """sum_{a+b=n} (-1)^a R_a^T R_b."""
    acc = None
    for a_idx in range(n + 1):
        b_idx = n - a_idx
        term = mat_mul(mat_transpose(mats[a_idx]), mats[b_idx])
        if a_idx % 2 == 1:
            term = [[-x for x in row] for row in term]
        acc = term if acc is None else [[p + t for p, t in zip(pr, tr)]
                                        for pr, tr in zip(acc, term)]
    return acc


def r_matrix_recursion(r: int, order: int, diag_mode: str = "unitarity",
                       signs: list[int] | None = None) -> tuple[list, dict]:
    """R_1..R_order on the t-line from the order-lowering recursion.

    Off-diagonals solve [(connection + d) R_(n-1)]_{ij} = (R_n)_{ij} (p_i - p_j);
    diagonals integrate the vanishing-diagonal condition of the next step with
    constants fixed per ``diag_mode``: "zero" drops them, "unitarity" (the
    default) calibrates the even-order constants from the residue pairing so
    that sum_{a+b=n} (-1)^a R_a^T R_b = 0 can hold exactly.

    Returns ([Id, R_1, ..., R_order], report) where the report collects the
    diagonal constants and the exact unitarity residual status per order.
    """
    if order < 1:
        raise ValueError("order must be at least 1")
    if diag_mode not in ("unitarity", "zero"):
        raise ValueError(f"unknown diagonal mode {diag_mode!r}")
    frame = build_spectrum(r)
    conn = _scalar_matrix_from_cyc(frame, connection_form(frame, signs))
    size = r + 1
    mats: list[list[list[EquivScalar]]] = [_identity_matrix(frame)]
    constants: dict[tuple[int, int], str] = {}
    for n in range(1, order + 1):
        prev = mats[n - 1]
        source = mat_mul(conn, prev)
        d_prev = [[entry.delta() for entry in row] for row in prev]
        numer = [[source[i][j] + d_prev[i][j] for j in range(size)] for i in range(size)]
        new = [[EquivScalar.zero(frame.field, frame.u) for _ in range(size)] for _ in range(size)]
        for i in range(size):
            for j in range(size):
                if i == j:
                    continue
                new[i][j] = numer[i][j] / (frame.p[i] - frame.p[j])
        # diagonal from the vanishing-diagonal condition of step n+1
        follow = mat_mul(conn, new)
        for i in range(size):
            integrand = -follow[i][i]
            for e, f in integrand.terms.items():
                if 0 in f.laurent_items():
                    raise FlatnessError(f"order {n}, diagonal {i}: constant term at weight {e}")
            new[i][i] = _integrate_scalar(integrand, "drop-constant")
        if diag_mode == "unitarity" and n % 2 == 0:
            # 2 R_n[i][i] + [sum_{0<a<n} (-1)^a R_a^T R_(n-a)]_{ii} must vanish;
            # the recursion fixes R_n[i][i] only up to a constant, so align it
            mid = None
            for a_idx in range(1, n):
                term = mat_mul(mat_transpose(mats[a_idx]), mats[n - a_idx])
                if a_idx % 2 == 1:
                    term = [[-x for x in row] for row in term]
                mid = term if mid is None else [[p + t for p, t in zip(pr, tr)]
                                                for pr, tr in zip(mid, term)]
            for i in range(size):
                gap = mid[i][i] * Fraction(-1, 2) - new[i][i]
                for e, f in gap.terms.items():
                    items = f.laurent_items()
                    if any(exp != 0 for exp in items):
                        raise FlatnessError(
                            f"order {n}, diagonal {i}: unitarity gap is not a constant")
                    const = items.get(0)
                    if const is not None and not const.is_zero():
                        new[i][i] = new[i][i] + EquivScalar(
                            frame.field, frame.u, {e: frame.rat_const(const)})
                        constants[(n, i)] = repr(const)
        mats.append(new)
    residuals = {}
    for n in range(1, order + 1):
        s = _unitarity_sum(mats, n)
        residuals[n] = all(entry.is_zero() for row in s for entry in row)
    report = {
        "diagonal_mode": diag_mode,
        "constants": {f"{n},{i}": v for (n, i), v in sorted(constants.items())},
        "unitarity_exact": residuals,
        "euler_normalization": "not asserted; constants recorded per order",
    }
    return mats, report
