"""Rational functions in a formal root w of the Novikov variable.

A RatFunc is a reduced fraction num/den of dense polynomials in w over a
cyclotomic field, with the denominator monic.  The parameter ``root_order``
is the integer u with w^u = q, so q-dependence is recovered by substituting
w^u; u = 1 simply means w is q itself.  The logarithmic derivative
delta = q d/dq acts as (w/u) d/dw.
"""

from __future__ import annotations

from fractions import Fraction

from qcflop.algebra.cyclotomic import CycField, CycNumber
from qcflop.algebra.poly import Poly


class ExpansionError(ValueError):
    """Raised when a power-series expansion hits a pole at w = 0."""


class NonIntegrableError(ValueError):
    """Raised by strict integration when a constant term obstructs it."""


class NotLaurentError(ValueError):
    """Raised when a rational function is not a Laurent polynomial."""


class RatFunc:
    __slots__ = ("field", "root_order", "num", "den")

    def __init__(self, field: CycField, root_order: int, num: Poly, den: Poly, reduce: bool = True):
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if reduce:
            g = num.gcd(den)
            if not g.is_zero() and g.degree >= 1:
                num, _ = num.divmod(g)
                den, _ = den.divmod(g)
            lead_inv = den.lead().inverse()
            num = num.scale(lead_inv)
            den = den.scale(lead_inv)
        self.field = field
        self.root_order = root_order
        self.num = num
        self.den = den

    # construction ---------------------------------------------------------

    @classmethod
    def zero(cls, field: CycField, root_order: int) -> "RatFunc":
        return cls(field, root_order, Poly.zero(field), Poly.one(field), reduce=False)

    @classmethod
    def one(cls, field: CycField, root_order: int) -> "RatFunc":
        return cls(field, root_order, Poly.one(field), Poly.one(field), reduce=False)

    @classmethod
    def constant(cls, field: CycField, root_order: int, c) -> "RatFunc":
        if isinstance(c, (int, Fraction)):
            c = field.from_rational(c)
        return cls(field, root_order, Poly(field, [c]), Poly.one(field), reduce=False)

    @classmethod
    def monomial(cls, field: CycField, root_order: int, exp: int, coeff=1) -> "RatFunc":
        """coeff * w^exp, with negative exponents allowed."""
        if exp >= 0:
            return cls(field, root_order, Poly.monomial(field, exp, coeff), Poly.one(field), reduce=False)
        return cls(field, root_order, Poly(field, [coeff]), Poly.monomial(field, -exp), reduce=False)

    @classmethod
    def q_power(cls, field: CycField, root_order: int, d: int, coeff=1) -> "RatFunc":
        return cls.monomial(field, root_order, d * root_order, coeff)

    def _check(self, other: "RatFunc") -> None:
        if other.field is not self.field or other.root_order != self.root_order:
            raise ValueError("mixing rational functions over different settings")

    def _lift(self, other) -> "RatFunc | None":
        if isinstance(other, RatFunc):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction, CycNumber)):
            return RatFunc.constant(self.field, self.root_order, other)
        return None

    # arithmetic -----------------------------------------------------------

    def __add__(self, other) -> "RatFunc":
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return RatFunc(self.field, self.root_order, self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __sub__(self, other) -> "RatFunc":
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return RatFunc(self.field, self.root_order, self.num * o.den - o.num * self.den, self.den * o.den)

    def __rsub__(self, other) -> "RatFunc":
        return (-self) + other

    def __neg__(self) -> "RatFunc":
        return RatFunc(self.field, self.root_order, -self.num, self.den, reduce=False)

    def __mul__(self, other) -> "RatFunc":
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return RatFunc(self.field, self.root_order, self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RatFunc":
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if o.num.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RatFunc(self.field, self.root_order, self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other) -> "RatFunc":
        return self.inverse() * other

    def inverse(self) -> "RatFunc":
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of the zero rational function")
        return RatFunc(self.field, self.root_order, self.den, self.num)

    def __pow__(self, n: int) -> "RatFunc":
        if n < 0:
            return self.inverse() ** (-n)
        result = RatFunc.one(self.field, self.root_order)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        # cross-multiplication of normalized forms
        return self.num * o.den == o.num * self.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def constant_value(self) -> CycNumber:
        if not self.is_constant():
            raise ValueError("not a constant")
        return self.num.constant()

    # calculus -------------------------------------------------------------

    def delta(self) -> "RatFunc":
        """q d/dq, computed as (w / root_order) d/dw by the quotient rule."""
        w = Poly.monomial(self.field, 1)
        n, d = self.num, self.den
        dnum = w * (n.derivative() * d - n * d.derivative())
        dden = d * d * self.root_order
        return RatFunc(self.field, self.root_order, dnum, dden)

    def is_laurent(self) -> bool:
        return self.den.is_monomial()

    def laurent_items(self) -> dict[int, CycNumber]:
        """Exponent -> coefficient map; requires a monomial denominator."""
        if not self.is_laurent():
            raise NotLaurentError(f"denominator {self.den} is not a monomial")
        shift = self.den.monomial_exponent()
        lead = self.den.coeffs[shift]
        inv = lead.inverse()
        return {k - shift: c * inv for k, c in enumerate(self.num.coeffs) if not c.is_zero()}

    @classmethod
    def from_laurent_items(cls, field: CycField, root_order: int, items: dict[int, CycNumber]) -> "RatFunc":
        out = cls.zero(field, root_order)
        for exp, c in items.items():
            out = out + cls.monomial(field, root_order, exp, c)
        return out

    def integrate_in_t(self, mode: str = "strict") -> "RatFunc":
        """Inverse of delta on Laurent polynomials: w^a -> (root_order/a) w^a.

        The w^0 term is dropped in ``drop-constant`` mode and is an error in
        ``strict`` mode.
        """
        if mode not in ("strict", "drop-constant"):
            raise ValueError(f"unknown integration mode {mode!r}")
        items = self.laurent_items()
        out: dict[int, CycNumber] = {}
        for a, c in items.items():
            if a == 0:
                if mode == "strict":
                    raise NonIntegrableError(f"nonzero constant term {c} is not integrable")
                continue
            out[a] = c * Fraction(self.root_order, a)
        return RatFunc.from_laurent_items(self.field, self.root_order, out)

    def series_expand(self, order: int) -> list[CycNumber]:
        """Taylor coefficients in w through w^order; errors on a pole at 0."""
        if self.is_zero():
            return [self.field.zero] * (order + 1)
        den0 = self.den.coeffs[0] if self.den.coeffs else self.field.zero
        if den0.is_zero():
            raise ExpansionError("pole at w = 0")
        inv0 = den0.inverse()
        out: list[CycNumber] = []
        for k in range(order + 1):
            acc = self.num.coeffs[k] if k < len(self.num.coeffs) else self.field.zero
            for j in range(1, k + 1):
                dj = self.den.coeffs[j] if j < len(self.den.coeffs) else None
                if dj is not None and not dj.is_zero():
                    acc = acc - dj * out[k - j]
            out.append(acc * inv0)
        return out

    # substitutions ---------------------------------------------------------

    def subs_reciprocal(self) -> "RatFunc":
        """The rational function f(1/w)."""
        n_deg = max(self.num.degree, 0)
        d_deg = max(self.den.degree, 0)
        top = max(n_deg, d_deg)
        num_rev = self.num.reversed_coeffs(top)
        den_rev = self.den.reversed_coeffs(top)
        return RatFunc(self.field, self.root_order, num_rev, den_rev)

    def subs_ratfunc(self, value: "RatFunc") -> "RatFunc":
        """Substitute w -> value (value in any compatible RatFunc setting)."""
        num_v = self.num.eval(value)
        den_v = self.den.eval(value)
        if isinstance(num_v, CycNumber):
            num_v = RatFunc.constant(value.field, value.root_order, num_v)
        if isinstance(den_v, CycNumber):
            den_v = RatFunc.constant(value.field, value.root_order, den_v)
        return num_v / den_v

    def as_q_function(self) -> "RatFunc":
        """Rewrite as a rational function of q = w^root_order.

        Valid only when the reduced form is supported on exponents divisible
        by root_order; returns a RatFunc with root_order 1.
        """
        u = self.root_order
        if u == 1:
            return self
        for poly in (self.num, self.den):
            for k, c in enumerate(poly.coeffs):
                if not c.is_zero() and k % u != 0:
                    raise ValueError("not a function of the integer Novikov variable")
        def compress(poly: Poly) -> Poly:
            return Poly(self.field, [poly.coeffs[k] if k < len(poly.coeffs) else 0
                                     for k in range(0, max(poly.degree, 0) + 1, u)])
        return RatFunc(self.field, 1, compress(self.num), compress(self.den))

    def eval_rational(self, x) -> CycNumber:
        """Evaluate at an exact scalar (CycNumber or rational) value of w."""
        if isinstance(x, (int, Fraction)):
            x = self.field.from_rational(x)
        n = self.num.eval(x)
        d = self.den.eval(x)
        return n / d

    def to_complex(self, w: complex) -> complex:
        n = sum(c.to_complex() * w**k for k, c in enumerate(self.num.coeffs))
        d = sum(c.to_complex() * w**k for k, c in enumerate(self.den.coeffs))
        return n / d

    def __repr__(self) -> str:
        if self.den == Poly.one(self.field):
            return f"({self.num})"
        return f"({self.num}) / ({self.den})"
