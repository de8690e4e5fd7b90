"""Quadratic hamiltonians and Weyl quantization on a truncated loop space.

The phase space is spanned by T_i z^m for -K-1 <= m <= K over the rationals,
with the residue pairing Omega(f, g) = Res_(z=0) (f(-z), g(z)).  Darboux
coordinates: q^i_k is the coefficient of T_i z^k and p^i_k the coefficient of
T_i (-z)^(-k-1) (the sign makes Omega = sum dp^i_k wedge dq^i_k, which is
what reproduces the standard quadratic hamiltonian of multiplication by 1/z).

Operators that move vectors outside the cutoff window have that part silently
truncated; the window is a genuine symplectic subspace, so all identities
below hold exactly within it.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

Var = tuple[int, int]  # (direction index, z-mode index), mode >= 0


class NonSymplecticError(ValueError):
    """Raised when an operator fails the infinitesimal symplectic identity."""


class FormalismError(ValueError):
    """Raised when a commutator defect is not a central scalar."""


class LoopVector:
    """Rational coefficient vector on the basis T_i z^m, -K-1 <= m <= K."""

    __slots__ = ("dim", "cutoff", "coeffs")

    def __init__(self, dim: int, cutoff: int, coeffs: dict[tuple[int, int], Fraction] | None = None):
        self.dim = dim
        self.cutoff = cutoff
        clean = {}
        for (i, m), c in (coeffs or {}).items():
            if not (0 <= i < dim):
                raise ValueError(f"direction {i} out of range")
            if not (-cutoff - 1 <= m <= cutoff):
                continue  # silently truncate to the window
            c = Fraction(c)
            if c:
                clean[(i, m)] = c
        self.coeffs = clean

    @classmethod
    def basis(cls, dim: int, cutoff: int, i: int, m: int) -> "LoopVector":
        return cls(dim, cutoff, {(i, m): Fraction(1)})

    def __add__(self, other: "LoopVector") -> "LoopVector":
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            val = out.get(k, Fraction(0)) + c
            if val:
                out[k] = val
            else:
                out.pop(k, None)
        return LoopVector(self.dim, self.cutoff, out)

    def scale(self, c) -> "LoopVector":
        c = Fraction(c)
        return LoopVector(self.dim, self.cutoff, {k: v * c for k, v in self.coeffs.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, LoopVector):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __repr__(self) -> str:
        return f"LoopVector({self.coeffs})"


class EndoLaurent:
    """End(H)-valued Laurent polynomial in z: z-exponent -> dim x dim matrix."""

    def __init__(self, dim: int, terms: dict[int, Iterable[Iterable[Fraction]]]):
        self.dim = dim
        self.terms = {}
        for exp, mat in terms.items():
            rows = tuple(tuple(Fraction(x) for x in row) for row in mat)
            if len(rows) != dim or any(len(row) != dim for row in rows):
                raise ValueError("matrix size must match the dimension")
            if any(any(x for x in row) for row in rows):
                self.terms[exp] = rows

    @classmethod
    def scalar_z_power(cls, dim: int, exp: int, coeff=1) -> "EndoLaurent":
        mat = [[Fraction(coeff) if i == j else Fraction(0) for j in range(dim)]
               for i in range(dim)]
        return cls(dim, {exp: mat})

    @classmethod
    def matrix_z_power(cls, dim: int, exp: int, mat) -> "EndoLaurent":
        return cls(dim, {exp: mat})

    def apply(self, v: LoopVector) -> LoopVector:
        out: dict[tuple[int, int], Fraction] = {}
        for exp, mat in self.terms.items():
            for (j, m), c in v.coeffs.items():
                for i in range(self.dim):
                    entry = mat[i][j]
                    if entry:
                        key = (i, m + exp)
                        out[key] = out.get(key, Fraction(0)) + entry * c
        return LoopVector(v.dim, v.cutoff, out)

    def commutator(self, other: "EndoLaurent") -> "EndoLaurent":
        out: dict[int, list[list[Fraction]]] = {}

        def accumulate(a, b, sign):
            for e1, m1 in a.terms.items():
                for e2, m2 in b.terms.items():
                    exp = e1 + e2
                    tgt = out.setdefault(exp, [[Fraction(0)] * self.dim for _ in range(self.dim)])
                    for i in range(self.dim):
                        for j in range(self.dim):
                            acc = sum(m1[i][k] * m2[k][j] for k in range(self.dim))
                            tgt[i][j] += sign * acc

        accumulate(self, other, 1)
        accumulate(other, self, -1)
        return EndoLaurent(self.dim, out)


def symplectic_form(f: LoopVector, g: LoopVector, gram: list[list[Fraction]] | None = None) -> Fraction:
    """Omega(f, g) = Res_(z=0) (f(-z), g(z)), with an optional symmetric metric."""
    if f.dim != g.dim or f.cutoff != g.cutoff:
        raise ValueError("incompatible loop vectors")
    total = Fraction(0)
    for (i, a), fc in f.coeffs.items():
        for (j, b), gc in g.coeffs.items():
            if a + b != -1:
                continue
            pairing = Fraction(1 if i == j else 0) if gram is None else Fraction(gram[i][j])
            if pairing:
                total += Fraction((-1) ** (a % 2)) * pairing * fc * gc
    return total


def is_infinitesimal_symplectic(A: EndoLaurent, dim: int, cutoff: int,
                                gram: list[list[Fraction]] | None = None) -> bool:
    """Omega(Af, g) + Omega(f, Ag) = 0 on all basis pairs within the cutoff."""
    modes = range(-cutoff - 1, cutoff + 1)
    images = {}
    for i in range(dim):
        for a in modes:
            f = LoopVector.basis(dim, cutoff, i, a)
            images[(i, a)] = A.apply(f)
    for i in range(dim):
        for a in modes:
            f = LoopVector.basis(dim, cutoff, i, a)
            for j in range(dim):
                for b in modes:
                    g = LoopVector.basis(dim, cutoff, j, b)
                    val = symplectic_form(images[(i, a)], g, gram) \
                        + symplectic_form(f, images[(j, b)], gram)
                    if val:
                        return False
    return True


# --- quadratic hamiltonians -----------------------------------------------------


class QuadHamiltonian:
    """Quadratic form in the Darboux coordinates, split into pp/pq/qq blocks.

    Keys of pp and qq are unordered variable pairs (sorted tuples); pq keys
    are (p-variable, q-variable).  A monomial like p_v^2 is stored under the
    pair (v, v) with its plain coefficient.
    """

    __slots__ = ("dim", "cutoff", "pp", "pq", "qq")

    def __init__(self, dim: int, cutoff: int,
                 pp: dict | None = None, pq: dict | None = None, qq: dict | None = None):
        self.dim = dim
        self.cutoff = cutoff
        self.pp = {k: Fraction(v) for k, v in (pp or {}).items() if v}
        self.pq = {k: Fraction(v) for k, v in (pq or {}).items() if v}
        self.qq = {k: Fraction(v) for k, v in (qq or {}).items() if v}

    def __eq__(self, other) -> bool:
        if not isinstance(other, QuadHamiltonian):
            return NotImplemented
        return (self.pp, self.pq, self.qq) == (other.pp, other.pq, other.qq)

    def is_zero(self) -> bool:
        return not (self.pp or self.pq or self.qq)

    def __repr__(self) -> str:
        return f"QuadHamiltonian(pp={self.pp}, pq={self.pq}, qq={self.qq})"


def darboux_vector(dim: int, cutoff: int, kind: str, var: Var) -> LoopVector:
    """The loop vector of a unit Darboux coordinate: q^i_k -> T_i z^k and
    p^i_k -> (-1)^(k+1) T_i z^(-k-1)."""
    i, k = var
    if kind == "q":
        return LoopVector.basis(dim, cutoff, i, k)
    if kind == "p":
        return LoopVector.basis(dim, cutoff, i, -k - 1).scale(Fraction((-1) ** (k + 1)))
    raise ValueError(f"unknown coordinate kind {kind!r}")


def hamiltonian_of(A: EndoLaurent, dim: int, cutoff: int) -> QuadHamiltonian:
    """P(A)(f) = (1/2) Omega(Af, f) as a quadratic form; rejects operators
    that are not infinitesimally symplectic."""
    if not is_infinitesimal_symplectic(A, dim, cutoff):
        raise NonSymplecticError("operator fails Omega(Af,g) + Omega(f,Ag) = 0")
    variables = [(i, k) for i in range(dim) for k in range(cutoff + 1)]
    gens = [("p", v) for v in variables] + [("q", v) for v in variables]
    vectors = {u: darboux_vector(dim, cutoff, *u) for u in gens}
    images = {u: A.apply(vec) for u, vec in vectors.items()}
    pp: dict = {}
    pq: dict = {}
    qq: dict = {}
    for idx, u in enumerate(gens):
        for v in gens[idx:]:
            quad = symplectic_form(images[u], vectors[v])
            quad += symplectic_form(images[v], vectors[u])
            # from (1/2) Omega(Af, f): the x_u^2 coefficient is quad/4 (quad
            # double-counts the diagonal), the x_u x_v one (u != v) is quad/2
            coeff = quad * Fraction(1, 4) * (2 if u != v else 1)
            if not coeff:
                continue
            (ku, vu), (kv, vv) = u, v
            if ku == "p" and kv == "p":
                key = tuple(sorted((vu, vv)))
                pp[key] = pp.get(key, Fraction(0)) + coeff
            elif ku == "q" and kv == "q":
                key = tuple(sorted((vu, vv)))
                qq[key] = qq.get(key, Fraction(0)) + coeff
            else:
                pvar, qvar = (vu, vv) if ku == "p" else (vv, vu)
                key = (pvar, qvar)
                pq[key] = pq.get(key, Fraction(0)) + coeff
    return QuadHamiltonian(dim, cutoff, pp, pq, qq)


# --- classical polynomials and the Poisson bracket -------------------------------

ClassicalPoly = dict  # (p-monomial tuple, q-monomial tuple) -> Fraction


def _mono_mul(a: tuple, b: tuple) -> tuple:
    return tuple(sorted(a + b))


def _cp_add(target: ClassicalPoly, key, value) -> None:
    cur = target.get(key, Fraction(0)) + value
    if cur:
        target[key] = cur
    else:
        target.pop(key, None)


def hamiltonian_to_classical(P: QuadHamiltonian) -> ClassicalPoly:
    out: ClassicalPoly = {}
    for (v, w), c in P.pp.items():
        _cp_add(out, ((v, w) if v <= w else (w, v), ()), c)
    for (pv, qv), c in P.pq.items():
        _cp_add(out, ((pv,), (qv,)), c)
    for (v, w), c in P.qq.items():
        _cp_add(out, ((), (v, w) if v <= w else (w, v)), c)
    return out


def classical_to_hamiltonian(poly: ClassicalPoly, dim: int, cutoff: int) -> QuadHamiltonian:
    pp: dict = {}
    pq: dict = {}
    qq: dict = {}
    for (pm, qm), c in poly.items():
        if len(pm) + len(qm) != 2:
            raise FormalismError("Poisson bracket left a non-quadratic term")
        if len(pm) == 2:
            pp[tuple(sorted(pm))] = pp.get(tuple(sorted(pm)), Fraction(0)) + c
        elif len(qm) == 2:
            qq[tuple(sorted(qm))] = qq.get(tuple(sorted(qm)), Fraction(0)) + c
        else:
            key = (pm[0], qm[0])
            pq[key] = pq.get(key, Fraction(0)) + c
    return QuadHamiltonian(dim, cutoff, pp, pq, qq)


def _mono_derivative(mono: tuple, var) -> tuple[int, tuple]:
    count = mono.count(var)
    if count == 0:
        return 0, ()
    out = list(mono)
    out.remove(var)
    return count, tuple(out)


def poisson_bracket(P1: QuadHamiltonian, P2: QuadHamiltonian) -> QuadHamiltonian:
    """{P1, P2} = sum_v dP1/dp_v dP2/dq_v - dP2/dp_v dP1/dq_v."""
    a = hamiltonian_to_classical(P1)
    b = hamiltonian_to_classical(P2)
    variables = set()
    for poly in (a, b):
        for (pm, qm) in poly:
            variables.update(pm)
            variables.update(qm)
    out: ClassicalPoly = {}
    for v in variables:
        for (pm1, qm1), c1 in a.items():
            n1, dp1 = _mono_derivative(pm1, v)
            if n1 == 0:
                continue
            for (pm2, qm2), c2 in b.items():
                n2, dq2 = _mono_derivative(qm2, v)
                if n2 == 0:
                    continue
                key = (_mono_mul(dp1, pm2), _mono_mul(qm1, dq2))
                _cp_add(out, key, Fraction(n1 * n2) * c1 * c2)
        for (pm2, qm2), c2 in b.items():
            n2, dp2 = _mono_derivative(pm2, v)
            if n2 == 0:
                continue
            for (pm1, qm1), c1 in a.items():
                n1, dq1 = _mono_derivative(qm1, v)
                if n1 == 0:
                    continue
                key = (_mono_mul(pm1, dp2), _mono_mul(dq1, qm2))
                _cp_add(out, key, -Fraction(n1 * n2) * c1 * c2)
    return classical_to_hamiltonian(out, P1.dim, P1.cutoff)


# --- Fock space -----------------------------------------------------------------


class FockPolynomial:
    """Polynomial in the position variables with Laurent powers of hbar.

    Terms map (sorted variable tuple, hbar exponent) to Fractions.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: dict[tuple[tuple, int], Fraction] | None = None):
        self.terms = {}
        for (mono, h), c in (terms or {}).items():
            c = Fraction(c)
            if c:
                self.terms[(tuple(sorted(mono)), h)] = c

    @classmethod
    def one(cls) -> "FockPolynomial":
        return cls({((), 0): Fraction(1)})

    @classmethod
    def variable(cls, var: Var) -> "FockPolynomial":
        return cls({((var,), 0): Fraction(1)})

    def __add__(self, other: "FockPolynomial") -> "FockPolynomial":
        out = dict(self.terms)
        for k, c in other.terms.items():
            val = out.get(k, Fraction(0)) + c
            if val:
                out[k] = val
            else:
                out.pop(k, None)
        return FockPolynomial(out)

    def __sub__(self, other: "FockPolynomial") -> "FockPolynomial":
        return self + other.scale(-1)

    def __mul__(self, other: "FockPolynomial") -> "FockPolynomial":
        out: dict = {}
        for (m1, h1), c1 in self.terms.items():
            for (m2, h2), c2 in other.terms.items():
                key = (_mono_mul(m1, m2), h1 + h2)
                val = out.get(key, Fraction(0)) + c1 * c2
                if val:
                    out[key] = val
                else:
                    out.pop(key, None)
        return FockPolynomial(out)

    def scale(self, c) -> "FockPolynomial":
        c = Fraction(c)
        return FockPolynomial({k: v * c for k, v in self.terms.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, FockPolynomial):
            return NotImplemented
        return self.terms == other.terms

    def is_zero(self) -> bool:
        return not self.terms

    def __repr__(self) -> str:
        return f"FockPolynomial({self.terms})"


class FockOperator:
    """Normal-ordered operator: terms (q-monomial, derivative monomial, hbar
    exponent) -> coefficient, acting on FockPolynomial."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        self.terms = {}
        for (qm, dm, h), c in (terms or {}).items():
            c = Fraction(c)
            if c:
                key = (tuple(sorted(qm)), tuple(sorted(dm)), h)
                self.terms[key] = self.terms.get(key, Fraction(0)) + c
        self.terms = {k: v for k, v in self.terms.items() if v}

    def __add__(self, other: "FockOperator") -> "FockOperator":
        out = dict(self.terms)
        for k, c in other.terms.items():
            val = out.get(k, Fraction(0)) + c
            if val:
                out[k] = val
            else:
                out.pop(k, None)
        return FockOperator(out)

    def __sub__(self, other: "FockOperator") -> "FockOperator":
        return self + other.scale(-1)

    def scale(self, c) -> "FockOperator":
        c = Fraction(c)
        return FockOperator({k: v * c for k, v in self.terms.items()})

    def __mul__(self, other: "FockOperator") -> "FockOperator":
        """Composition self . other, renormal-ordered exactly."""
        out: dict = {}
        for (q1, d1, h1), c1 in self.terms.items():
            for (q2, d2, h2), c2 in other.terms.items():
                # move the derivatives d1 across the position monomial q2:
                # start from (q2, ()) and apply one derivative at a time
                pieces: dict[tuple[tuple, tuple], Fraction] = {(q2, ()): Fraction(1)}
                for v in d1:
                    nxt: dict[tuple[tuple, tuple], Fraction] = {}
                    for (qm, dm), w in pieces.items():
                        count, reduced = _mono_derivative(qm, v)
                        if count:
                            key = (reduced, dm)
                            nxt[key] = nxt.get(key, Fraction(0)) + w * count
                        key = (qm, _mono_mul(dm, (v,)))
                        nxt[key] = nxt.get(key, Fraction(0)) + w
                    pieces = nxt
                for (qm, dm), w in pieces.items():
                    key = (_mono_mul(q1, qm), _mono_mul(dm, d2), h1 + h2)
                    val = out.get(key, Fraction(0)) + c1 * c2 * w
                    if val:
                        out[key] = val
                    else:
                        out.pop(key, None)
        return FockOperator(out)

    def commutator(self, other: "FockOperator") -> "FockOperator":
        return self * other - other * self

    def apply(self, poly: FockPolynomial) -> FockPolynomial:
        out: dict = {}
        for (qm, dm, h), c in self.terms.items():
            for (mono, ph), pc in poly.terms.items():
                coeff = c * pc
                current = mono
                ok = True
                for v in dm:
                    count, current = _mono_derivative(current, v)
                    if count == 0:
                        ok = False
                        break
                    coeff *= count
                if not ok or not coeff:
                    continue
                key = (_mono_mul(qm, current), h + ph)
                val = out.get(key, Fraction(0)) + coeff
                if val:
                    out[key] = val
                else:
                    out.pop(key, None)
        return FockPolynomial(out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FockOperator):
            return NotImplemented
        return self.terms == other.terms

    def is_zero(self) -> bool:
        return not self.terms

    def scalar_part(self) -> Fraction:
        return self.terms.get(((), (), 0), Fraction(0))

    def is_scalar(self) -> bool:
        return all(k == ((), (), 0) for k in self.terms)

    def __repr__(self) -> str:
        return f"FockOperator({self.terms})"


def quantize(P: QuadHamiltonian) -> FockOperator:
    """The quantization table: pp -> hbar d d, pq -> q d, qq -> q q / hbar."""
    terms: dict = {}

    def add(key, c):
        terms[key] = terms.get(key, Fraction(0)) + c

    for (v, w), c in P.pp.items():
        add(((), tuple(sorted((v, w))), 1), c)
    for (pv, qv), c in P.pq.items():
        add(((qv,), (pv,), 0), c)
    for (v, w), c in P.qq.items():
        add((tuple(sorted((v, w))), (), -1), c)
    return FockOperator(terms)


def commutator_cocycle(P1: QuadHamiltonian, P2: QuadHamiltonian) -> Fraction:
    """[P1^, P2^] - {P1, P2}^ must be a central scalar; return it."""
    defect = quantize(P1).commutator(quantize(P2)) - quantize(poisson_bracket(P1, P2))
    if not defect.is_scalar():
        raise FormalismError(f"non-scalar quantization defect: {defect}")
    return defect.scalar_part()


def expected_cocycle(P1: QuadHamiltonian, P2: QuadHamiltonian) -> Fraction:
    """The closed-form table: nonzero only on matching (pp, qq) pairs, where
    it is +-(1 + delta^(ij) delta_(kl))."""
    total = Fraction(0)
    for (v, w), c1 in P1.pp.items():
        c2 = P2.qq.get((v, w) if v <= w else (w, v))
        if c2:
            total += c1 * c2 * (1 + (1 if v == w else 0))
    for (v, w), c1 in P1.qq.items():
        c2 = P2.pp.get((v, w) if v <= w else (w, v))
        if c2:
            total -= c1 * c2 * (1 + (1 if v == w else 0))
    return total


# --- dilaton shift ----------------------------------------------------------------


def dilaton_shift(coords: dict[Var, Fraction], dim: int, cutoff: int,
                  unit_index: int = 0) -> dict[Var, Fraction]:
    """t^mu_k = q^mu_k + delta^(mu, unit) delta_(k, 1)."""
    if cutoff < 1:
        raise ValueError("the dilaton shift needs the mode k = 1 inside the cutoff")
    out = {k: Fraction(v) for k, v in coords.items()}
    key = (unit_index, 1)
    out[key] = out.get(key, Fraction(0)) + 1
    if not out[key]:
        del out[key]
    return out


def dilaton_unshift(coords: dict[Var, Fraction], dim: int, cutoff: int,
                    unit_index: int = 0) -> dict[Var, Fraction]:
    out = {k: Fraction(v) for k, v in coords.items()}
    key = (unit_index, 1)
    out[key] = out.get(key, Fraction(0)) - 1
    if not out[key]:
        del out[key]
    return out
