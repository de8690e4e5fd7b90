"""Exact arithmetic in cyclotomic fields Q(zeta_N).

A CycNumber is a vector of phi(N) rationals giving an element of
Q[x]/Phi_N(x) evaluated at x = zeta_N = exp(2*pi*i/N).  Reduction modulo the
N-th cyclotomic polynomial is canonical, so equality is coefficient-wise.
N = 1 gives plain Q (degree-one vectors), which the rest of the package uses
as the rational base field.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence


def _poly_divmod_int(num: list[Fraction], den: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    # dense ascending coefficients; den leading coefficient must be nonzero
    num = list(num)
    q = [Fraction(0)] * max(1, len(num) - len(den) + 1)
    dlead = den[-1]
    while len(num) >= len(den) and any(num):
        while num and num[-1] == 0:
            num.pop()
        if len(num) < len(den):
            break
        factor = num[-1] / dlead
        shift = len(num) - len(den)
        q[shift] = factor
        for i, d in enumerate(den):
            num[shift + i] -= factor * d
        num.pop()
    while num and num[-1] == 0:
        num.pop()
    return q, num


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Dense ascending integer coefficients of the n-th cyclotomic polynomial."""
    if n < 1:
        raise ValueError("order must be positive")
    if n == 1:
        return (-1, 1)
    # x^n - 1 divided by the product of Phi_d over proper divisors d of n
    num = [Fraction(-1)] + [Fraction(0)] * (n - 1) + [Fraction(1)]
    for d in range(1, n):
        if n % d == 0:
            phi_d = [Fraction(c) for c in cyclotomic_polynomial(d)]
            num, rem = _poly_divmod_int(num, phi_d)
            if rem:
                raise ArithmeticError(f"cyclotomic division left a remainder at n={n}, d={d}")
    assert all(c.denominator == 1 for c in num)
    return tuple(int(c) for c in num)


def _euler_phi(n: int) -> int:
    count = 0
    for k in range(1, n + 1):
        a, b = k, n
        while b:
            a, b = b, a % b
        if a == 1:
            count += 1
    return count if n > 1 else 1


class CycField:
    """The cyclotomic field Q(zeta_N), with cached reduction data."""

    _instances: dict[int, "CycField"] = {}

    def __new__(cls, order: int):
        if order in cls._instances:
            return cls._instances[order]
        inst = super().__new__(cls)
        cls._instances[order] = inst
        return inst

    def __init__(self, order: int):
        if getattr(self, "_ready", False):
            return
        if order < 1:
            raise ValueError("order must be positive")
        self.order = order
        modulus = cyclotomic_polynomial(order)
        self.degree = len(modulus) - 1
        self.modulus = tuple(Fraction(c) for c in modulus)
        # reduction of x^k on the power basis, for k = 0 .. 2*degree - 2
        rows: list[tuple[Fraction, ...]] = []
        d = self.degree
        for k in range(d):
            row = [Fraction(0)] * d
            row[k] = Fraction(1)
            rows.append(tuple(row))
        for k in range(d, 2 * d - 1):
            prev = list(rows[k - 1])
            shifted = [Fraction(0)] + prev[: d - 1]
            lead = prev[d - 1]
            if lead:
                for i in range(d):
                    shifted[i] -= lead * self.modulus[i]
            rows.append(tuple(shifted))
        self._power_rows = rows
        self.zero = CycNumber(self, (Fraction(0),) * d)
        one = [Fraction(0)] * d
        one[0] = Fraction(1)
        self.one = CycNumber(self, tuple(one))
        self._ready = True

    def __repr__(self) -> str:
        return f"CycField({self.order})"

    def element(self, coeffs: Iterable[Fraction | int]) -> CycNumber:
        vec = [Fraction(c) for c in coeffs]
        if len(vec) > self.degree:
            # reduce high powers through the cached rows (or long division)
            out = [Fraction(0)] * self.degree
            for k, c in enumerate(vec):
                if c == 0:
                    continue
                row = self._power_row(k)
                for i, r in enumerate(row):
                    out[i] += c * r
            return CycNumber(self, tuple(out))
        vec += [Fraction(0)] * (self.degree - len(vec))
        return CycNumber(self, tuple(vec))

    def _power_row(self, k: int) -> tuple[Fraction, ...]:
        if k < len(self._power_rows):
            return self._power_rows[k]
        # extend lazily
        while len(self._power_rows) <= k:
            prev = list(self._power_rows[-1])
            d = self.degree
            shifted = [Fraction(0)] + prev[: d - 1]
            lead = prev[d - 1]
            if lead:
                for i in range(d):
                    shifted[i] -= lead * self.modulus[i]
            self._power_rows.append(tuple(shifted))
        return self._power_rows[k]

    def from_rational(self, a: Fraction | int) -> CycNumber:
        vec = [Fraction(0)] * self.degree
        vec[0] = Fraction(a)
        return CycNumber(self, tuple(vec))

    def zeta(self, k: int = 1) -> CycNumber:
        """zeta_N^k, reduced."""
        k %= self.order
        if self.order == 1:
            return self.one
        vec = [Fraction(0)] * (k + 1)
        vec[k] = Fraction(1)
        return self.element(vec)

    def embed(self, x: "CycNumber") -> "CycNumber":
        """Embed an element of Q(zeta_M) with M | N into this field."""
        src = x.field
        if src is self:
            return x
        if self.order % src.order != 0:
            raise ValueError(f"no canonical embedding of order {src.order} into {self.order}")
        step = self.order // src.order
        out = self.zero
        for k, c in enumerate(x.coeffs):
            if c:
                out = out + self.zeta(k * step) * c
        return out


class CycNumber:
    """An element of Q(zeta_N) on the power basis 1, zeta, ..., zeta^(phi(N)-1)."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: CycField, coeffs: tuple[Fraction, ...]):
        self.field = field
        self.coeffs = coeffs

    def _coerce(self, other) -> "CycNumber | None":
        if isinstance(other, CycNumber):
            if other.field is self.field:
                return other
            # mixing with a subfield of compatible order embeds it here; the
            # caller promotes itself when the other field is the larger one
            # (Python skips reflected operators for same-class operands)
            if self.field.order % other.field.order == 0:
                return self.field.embed(other)
            return None
        if isinstance(other, (int, Fraction)):
            return self.field.from_rational(other)
        return None

    def _promote(self, other) -> "CycNumber | None":
        if isinstance(other, CycNumber) and other.field.order % self.field.order == 0:
            return other.field.embed(self)
        return None

    def __add__(self, other) -> "CycNumber":
        o = self._coerce(other)
        if o is None:
            lifted = self._promote(other)
            return NotImplemented if lifted is None else lifted + other
        return CycNumber(self.field, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __sub__(self, other) -> "CycNumber":
        o = self._coerce(other)
        if o is None:
            lifted = self._promote(other)
            return NotImplemented if lifted is None else lifted - other
        return CycNumber(self.field, tuple(a - b for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other) -> "CycNumber":
        return (-self) + other

    def __neg__(self) -> "CycNumber":
        return CycNumber(self.field, tuple(-a for a in self.coeffs))

    def __mul__(self, other) -> "CycNumber":
        o = self._coerce(other)
        if o is None:
            lifted = self._promote(other)
            return NotImplemented if lifted is None else lifted * other
        d = self.field.degree
        conv = [Fraction(0)] * (2 * d - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(o.coeffs):
                if b:
                    conv[i + j] += a * b
        out = [Fraction(0)] * d
        rows = self.field._power_rows
        for k, c in enumerate(conv):
            if c == 0:
                continue
            if k < d:
                out[k] += c
            else:
                row = rows[k]
                for i, r in enumerate(row):
                    if r:
                        out[i] += c * r
        return CycNumber(self.field, tuple(out))

    __rmul__ = __mul__

    def inverse(self) -> "CycNumber":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero cyclotomic number")
        # extended Euclid in Q[x] against the cyclotomic modulus
        a = list(self.field.modulus)
        b = list(self.coeffs)
        while b and b[-1] == 0:
            b.pop()
        s_prev: list[Fraction] = [Fraction(0)]
        s_curr: list[Fraction] = [Fraction(1)]
        while True:
            q, r = _poly_divmod_int(a, b)
            if not r:
                break
            s_next = _poly_sub(s_prev, _poly_mul(q, s_curr))
            a, b = b, r
            s_prev, s_curr = s_curr, s_next
        # b is now the gcd (a nonzero constant, since the modulus is irreducible)
        if len(b) != 1:
            raise ArithmeticError("element is a zero divisor; cyclotomic modulus not irreducible?")
        inv_scale = 1 / b[0]
        return self.field.element([c * inv_scale for c in s_curr])

    def __truediv__(self, other) -> "CycNumber":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other) -> "CycNumber":
        return self.inverse() * other

    def __pow__(self, n: int) -> "CycNumber":
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self.field.from_rational(other)
        if not isinstance(other, CycNumber):
            return NotImplemented
        if other.field is not self.field:
            if self.field.order % other.field.order == 0:
                other = self.field.embed(other)
            elif other.field.order % self.field.order == 0:
                return other.field.embed(self).coeffs == other.coeffs
            elif self.is_rational() and other.is_rational():
                return self.coeffs[0] == other.coeffs[0]
            else:
                return False
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.field.order, self.coeffs))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"not a rational number: {self}")
        return self.coeffs[0]

    def to_complex(self) -> complex:
        zeta = cmath.exp(2j * cmath.pi / self.field.order)
        return sum(float(c) * zeta**k for k, c in enumerate(self.coeffs))

    def __repr__(self) -> str:
        if self.is_rational():
            return str(self.coeffs[0])
        parts = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                parts.append(str(c))
            else:
                parts.append(f"{c}*z{self.field.order}^{k}" if k > 1 else f"{c}*z{self.field.order}")
        return " + ".join(parts) if parts else "0"


def _poly_mul(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            if y:
                out[i + j] += x * y
    return out


def _poly_sub(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    n = max(len(a), len(b))
    out = [Fraction(0)] * n
    for i, x in enumerate(a):
        out[i] += x
    for i, y in enumerate(b):
        out[i] -= y
    while out and out[-1] == 0:
        out.pop()
    return out or [Fraction(0)]


def cyc_power_sum(order: int, k: int) -> CycNumber:
    """Sum of zeta_N^(k*i) over i = 0..N-1, fully reduced.

    Equals N when k is divisible by N and 0 otherwise.
    """
    if order < 1:
        raise ValueError("order must be positive")
    field = CycField(order)
    total = field.zero
    for i in range(order):
        total = total + field.zeta(k * i)
    return total


def elementary_symmetric(values: Sequence, ring_one):
    """All elementary symmetric functions e_0..e_n of the given values.

    Works over any commutative ring; ring_one is the multiplicative unit.
    """
    es = [ring_one]
    for v in values:
        nxt = [es[0]]
        for k in range(1, len(es) + 1):
            prev = es[k] if k < len(es) else None
            term = es[k - 1] * v
            nxt.append(term if prev is None else prev + term)
        es = nxt
    return es


def elementary_symmetric_omitting(values: Sequence[CycNumber], omit: int, k: int) -> CycNumber:
    """k-th elementary symmetric polynomial of the values with one omitted."""
    if not 0 <= omit < len(values):
        raise IndexError(f"omit index {omit} out of range")
    if not 0 <= k <= len(values) - 1:
        raise IndexError(f"symmetric degree {k} out of range")
    rest = [v for i, v in enumerate(values) if i != omit]
    one = values[0].field.one
    return elementary_symmetric(rest, one)[k]
