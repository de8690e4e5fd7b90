"""The classical cohomology ring of the local model and its Chern numbers.

The ring is Z[h, x]/(h^(r+1), x(x-h)^(r+1)) where h is the hyperplane class
of the base projective space and x the relative hyperplane class; the
monomial basis is h^a x^b with 0 <= a <= r, 0 <= b <= r+1, and integration
reads off the coefficient of h^r x^(r+1).

Raw (unreduced) polynomials in h, x appear as dicts mapping exponent pairs
(A, B) to Fractions.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb

RawPoly = dict[tuple[int, int], Fraction]


def raw_add(p: RawPoly, q: RawPoly) -> RawPoly:
    out = dict(p)
    for key, c in q.items():
        val = out.get(key, Fraction(0)) + c
        if val:
            out[key] = val
        else:
            out.pop(key, None)
    return out


def raw_mul(p: RawPoly, q: RawPoly) -> RawPoly:
    out: RawPoly = {}
    for (a1, b1), c1 in p.items():
        for (a2, b2), c2 in q.items():
            key = (a1 + a2, b1 + b2)
            val = out.get(key, Fraction(0)) + c1 * c2
            if val:
                out[key] = val
            else:
                out.pop(key, None)
    return out


def raw_scale(p: RawPoly, c) -> RawPoly:
    c = Fraction(c)
    return {k: v * c for k, v in p.items() if v * c}


def raw_pow(p: RawPoly, n: int) -> RawPoly:
    out: RawPoly = {(0, 0): Fraction(1)}
    for _ in range(n):
        out = raw_mul(out, p)
    return out


def substitute_h_by_x_minus_h(p: RawPoly) -> RawPoly:
    """The exponent-level substitution h -> x - h, x -> x on a raw polynomial."""
    out: RawPoly = {}
    base = {(1, 0): Fraction(-1), (0, 1): Fraction(1)}  # x - h
    for (a, b), c in p.items():
        term = raw_scale(raw_pow(base, a), c)
        term = raw_mul(term, {(0, b): Fraction(1)})
        out = raw_add(out, term)
    return out


class CohClass:
    """A reduced element of the cohomology ring, on the h^a x^b basis."""

    __slots__ = ("r", "coeffs")

    def __init__(self, r: int, coeffs: RawPoly):
        for (a, b) in coeffs:
            if not (0 <= a <= r and 0 <= b <= r + 1):
                raise ValueError(f"exponent ({a},{b}) outside the monomial basis")
        self.r = r
        self.coeffs = {k: Fraction(c) for k, c in coeffs.items() if c}

    @classmethod
    def reduce(cls, r: int, raw: RawPoly) -> "CohClass":
        """Canonical form: apply h^(r+1) = 0 and rewrite excess x-powers via
        the relation x(x-h)^(r+1) = 0, one x-power at a time."""
        work = {k: Fraction(c) for k, c in raw.items() if c}
        # x^(r+2) = -sum_{k>=1} C(r+1,k) (-h)^k x^(r+2-k)
        rewrite: RawPoly = {}
        for k in range(1, r + 2):
            coeff = Fraction(-((-1) ** k * comb(r + 1, k)))
            rewrite = raw_add(rewrite, {(k, r + 2 - k): coeff})
        while True:
            work = {k: c for k, c in work.items() if k[0] <= r and c}
            high = [key for key in work if key[1] >= r + 2]
            if not high:
                break
            key = max(high, key=lambda t: t[1])
            a, b = key
            c = work.pop(key)
            # h^a x^b = h^a x^(b - r - 2) * x^(r+2)
            shifted = {(a + da, b - (r + 2) + db): v * c for (da, db), v in rewrite.items()}
            work = raw_add(work, shifted)
        work = {k: c for k, c in work.items() if k[0] <= r and c}
        return cls(r, work)

    def raw(self) -> RawPoly:
        return dict(self.coeffs)

    def __add__(self, other: "CohClass") -> "CohClass":
        return CohClass(self.r, raw_add(self.coeffs, other.coeffs))

    def __sub__(self, other: "CohClass") -> "CohClass":
        return self + other.scale(-1)

    def __mul__(self, other: "CohClass") -> "CohClass":
        return CohClass.reduce(self.r, raw_mul(self.coeffs, other.coeffs))

    def scale(self, c) -> "CohClass":
        return CohClass(self.r, raw_scale(self.coeffs, c))

    def __eq__(self, other) -> bool:
        if not isinstance(other, CohClass):
            return NotImplemented
        return self.r == other.r and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.r, tuple(sorted(self.coeffs.items()))))

    def is_zero(self) -> bool:
        return not self.coeffs

    def graded_piece(self, degree: int) -> "CohClass":
        """The part of total cohomological degree ``degree`` (in divisor units)."""
        return CohClass(self.r, {k: c for k, c in self.coeffs.items() if k[0] + k[1] == degree})

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for (a, b) in sorted(self.coeffs):
            c = self.coeffs[(a, b)]
            mono = "".join(
                [f"h^{a}" if a > 1 else "h" if a == 1 else "",
                 f"x^{b}" if b > 1 else "x" if b == 1 else ""]) or "1"
            parts.append(f"{c}*{mono}")
        return " + ".join(parts)


def basis(r: int) -> list[tuple[int, int]]:
    return [(a, b) for a in range(r + 1) for b in range(r + 2)]


def monomial(r: int, a: int, b: int, c=1) -> CohClass:
    return CohClass.reduce(r, {(a, b): Fraction(c)})


def integrate(c: CohClass) -> Fraction:
    """Integration normalized by the value 1 on h^r x^(r+1)."""
    return c.coeffs.get((c.r, c.r + 1), Fraction(0))


def integrate_raw(r: int, raw: RawPoly) -> Fraction:
    return integrate(CohClass.reduce(r, raw))


def total_chern_raw(r: int) -> RawPoly:
    """(1+h)^(r+1) (1+x) (1+x-h)^(r+1) as a raw polynomial."""
    one_h = {(0, 0): Fraction(1), (1, 0): Fraction(1)}
    one_x = {(0, 0): Fraction(1), (0, 1): Fraction(1)}
    one_xh = {(0, 0): Fraction(1), (0, 1): Fraction(1), (1, 0): Fraction(-1)}
    return raw_mul(raw_pow(one_h, r + 1), raw_mul(one_x, raw_pow(one_xh, r + 1)))


def total_chern(r: int) -> CohClass:
    return CohClass.reduce(r, total_chern_raw(r))


def chern_class(r: int, k: int) -> CohClass:
    """The degree-k piece c_k of the total Chern class, reduced."""
    raw = {key: c for key, c in total_chern_raw(r).items() if key[0] + key[1] == k}
    return CohClass.reduce(r, raw)


def chern_flop_identity(r: int) -> Fraction:
    """The pairing of c_(2r) against 2h - x; equals -(r+1) for every r."""
    if r < 1:
        raise ValueError("r must be at least 1")
    c2r = chern_class(r, 2 * r)
    probe = monomial(r, 1, 0, 2) + monomial(r, 0, 1, -1)
    return integrate(c2r * probe)


def genus1_degree0(r: int, alpha: CohClass) -> Fraction:
    """Degree-zero genus-one one-point value: -(1/24) (c_(2r) . alpha)."""
    c2r = chern_class(r, 2 * r)
    return -Fraction(1, 24) * integrate(c2r * alpha)


def c3_minus_c2c1(r: int = 1) -> Fraction:
    """Integral of c_3 - c_2 c_1 on the threefold local model (r = 1 only)."""
    if r != 1:
        raise ValueError("the threefold Chern number is defined only for r = 1")
    c1 = chern_class(r, 1)
    c2 = chern_class(r, 2)
    c3 = chern_class(r, 3)
    return integrate(c3) - integrate(c2 * c1)


def c3_minus_c2c1_swapped(r: int = 1) -> Fraction:
    """Same number recomputed after the raw substitution h -> x - h.

    The substitution is not a ring map on the quotient, but integration is
    invariant under it, which is the identification of the two sides of the
    flop for the local model.
    """
    if r != 1:
        raise ValueError("the threefold Chern number is defined only for r = 1")
    total = total_chern_raw(r)
    c1 = {k: c for k, c in total.items() if k[0] + k[1] == 1}
    c2 = {k: c for k, c in total.items() if k[0] + k[1] == 2}
    c3 = {k: c for k, c in total.items() if k[0] + k[1] == 3}
    diff = raw_add(c3, raw_scale(raw_mul(c2, c1), -1))
    return integrate_raw(r, substitute_h_by_x_minus_h(diff))


def pairing_matrix(r: int) -> list[list[Fraction]]:
    """Gram matrix of integrate on products of basis monomials."""
    mons = [monomial(r, a, b) for (a, b) in basis(r)]
    return [[integrate(m1 * m2) for m2 in mons] for m1 in mons]


def det_fraction(matrix: list[list[Fraction]]) -> Fraction:
    """Exact determinant by fraction-free-ish Gaussian elimination."""
    n = len(matrix)
    m = [row[:] for row in matrix]
    det = Fraction(1)
    for col in range(n):
        pivot = next((i for i in range(col, n) if m[i][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det *= m[col][col]
        inv = 1 / m[col][col]
        for i in range(col + 1, n):
            factor = m[i][col] * inv
            if factor:
                for j in range(col, n):
                    m[i][j] -= factor * m[col][j]
    return det
