"""Simple algebraic extensions Q(theta) = Q[t]/(m(t)).

Elements are stored in the power basis ``1, theta, ..., theta^(d-1)`` as
integer numerators over one common positive denominator.  Arithmetic interoperates with ``int`` and
``Fraction`` so the same polynomial code runs over Q and over Q(theta).
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

import sympy


def _trim(c):
    c = list(c)
    while c and not c[-1]:
        c.pop()
    return c


def _qpoly_divmod(a, b):
    a = list(a)
    b = _trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lead = b[-1]
    while len(_trim(a)) >= len(b):
        a = _trim(a)
        k = len(a) - len(b)
        c = a[-1] / lead
        q[k] = c
        for i, bi in enumerate(b):
            a[i + k] -= c * bi
    return _trim(q), _trim(a)


def _qpoly_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return _trim(out)


def _qpoly_sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return _trim([x - y for x, y in zip(a, b)])


def _qpoly_xgcd_inverse(a, m):
    """Inverse of ``a`` modulo ``m`` over Q (extended Euclid)."""
    r0, r1 = _trim(m), _trim(a)
    s0, s1 = [], [Fraction(1)]
    while r1:
        q, r = _qpoly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _qpoly_sub(s0, _qpoly_mul(q, s1))
    if len(r0) != 1:
        raise ZeroDivisionError("element is not invertible")
    inv = [c / r0[0] for c in s0]
    return _qpoly_divmod(inv, m)[1]


class NumberField:
    """The field Q[t]/(m(t)) for a monic irreducible ``m``.

    ``minpoly`` lists coefficients from the constant term upwards.
    """

    def __init__(self, minpoly, name="theta", check=True):
        coeffs = [Fraction(c) for c in minpoly]
        coeffs = _trim(coeffs)
        if len(coeffs) < 2:
            raise ValueError("minimal polynomial must have positive degree")
        lead = coeffs[-1]
        self.minpoly = tuple(c / lead for c in coeffs)
        self.degree = len(self.minpoly) - 1
        self.name = name
        if check and self.degree > 1:
            t = sympy.Symbol("t")
            p = sympy.Poly(list(reversed([sympy.Rational(c.numerator, c.denominator)
                                          for c in self.minpoly])), t, domain="QQ")
            if not p.is_irreducible:
                raise ValueError(f"minimal polynomial {p.as_expr()} is reducible over Q")
        # t^k mod m for k = d .. 2d-2
        d = self.degree
        self._powers = []
        cur = [Fraction(0)] * d
        cur_full = [-c for c in self.minpoly[:-1]]  # t^d
        cur = cur_full
        for _ in range(max(d - 1, 0)):
            self._powers.append(tuple(cur))
            shifted = [Fraction(0)] + list(cur)
            top = shifted.pop()
            cur = [shifted[i] - top * self.minpoly[i] for i in range(d)]
        self._powers.append(tuple(cur))
        # the same rows over one integer denominator, for fast multiplication
        self._iden = lcm(*(c.denominator for row in self._powers for c in row))
        self._ipowers = [tuple(int(c * self._iden) for c in row) for row in self._powers]

    def __repr__(self):
        return f"NumberField({list(map(str, self.minpoly))})"

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.minpoly == other.minpoly

    def __hash__(self):
        return hash(self.minpoly)

    @property
    def gen(self):
        if self.degree == 1:
            return self(-self.minpoly[0])
        c = [Fraction(0)] * self.degree
        c[1] = Fraction(1)
        return NFElement(self, tuple(c))

    def __call__(self, value):
        if isinstance(value, NFElement):
            if value.field is not self and value.field != self:
                raise TypeError("element belongs to a different field")
            return value
        value = Fraction(value)
        return _canon(self, [value.numerator] + [0] * (self.degree - 1), value.denominator)

    def from_coefficients(self, coeffs):
        c = _qpoly_divmod([Fraction(x) for x in coeffs], list(self.minpoly))[1]
        c = c + [Fraction(0)] * (self.degree - len(c))
        return NFElement(self, tuple(c))

    def _reduce(self, prod):
        d = self.degree
        out = list(prod[:d]) + [Fraction(0)] * (d - len(prod[:d]))
        for k in range(d, len(prod)):
            ck = prod[k]
            if ck:
                row = self._powers[k - d]
                for i in range(d):
                    out[i] += ck * row[i]
        return tuple(out)


def _canon(field, n, d):
    """Element with integer numerators ``n`` over the common denominator ``d``."""
    if d < 0:
        n = [-a for a in n]
        d = -d
    g = gcd(d, *n)
    if g != 1:
        n = [a // g for a in n]
        d //= g
    e = NFElement.__new__(NFElement)
    e.field = field
    e.n = tuple(n)
    e.d = d
    return e


class NFElement:
    """An element of a NumberField, stored as integer numerators over one denominator."""

    __slots__ = ("field", "n", "d")

    def __init__(self, field, c):
        c = [Fraction(a) for a in c]
        den = lcm(*(a.denominator for a in c)) if c else 1
        done = _canon(field, [a.numerator * (den // a.denominator) for a in c], den)
        self.field = field
        self.n = done.n
        self.d = done.d

    @property
    def c(self):
        return tuple(Fraction(a, self.d) for a in self.n)

    def _coerce(self, other):
        if isinstance(other, NFElement):
            if other.field is self.field or other.field == self.field:
                return other
            if other.is_rational():
                return self.field(other.c[0])
            raise TypeError("elements of different number fields")
        if isinstance(other, (int, Fraction)):
            return self.field(other)
        return None

    def __bool__(self):
        return any(self.n)

    def __eq__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return False  # algebraic elements of different fields are kept apart
        if o is None:
            return NotImplemented
        return self.n == o.n and self.d == o.d

    def __hash__(self):
        if not any(self.n[1:]):
            return hash(Fraction(self.n[0], self.d))
        return hash((self.n, self.d))

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d1, d2 = self.d, o.d
        if d1 == d2:
            return _canon(self.field, [a + b for a, b in zip(self.n, o.n)], d1)
        return _canon(self.field, [a * d2 + b * d1 for a, b in zip(self.n, o.n)], d1 * d2)

    __radd__ = __add__

    def __neg__(self):
        return _canon(self.field, [-a for a in self.n], self.d)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d1, d2 = self.d, o.d
        if d1 == d2:
            return _canon(self.field, [a - b for a, b in zip(self.n, o.n)], d1)
        return _canon(self.field, [a * d2 - b * d1 for a, b in zip(self.n, o.n)], d1 * d2)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if isinstance(other, int):
            return _canon(self.field, [a * other for a in self.n], self.d)
        if isinstance(other, Fraction):
            return _canon(self.field, [a * other.numerator for a in self.n], self.d * other.denominator)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.n, o.n
        deg = len(a)
        prod = [0] * (2 * deg - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        prod[i + j] += ai * bj
        F = self.field
        D = F._iden
        if D == 1:
            out = prod[:deg]
        else:
            out = [v * D for v in prod[:deg]]
        for k in range(deg, len(prod)):
            ck = prod[k]
            if ck:
                row = F._ipowers[k - deg]
                for i in range(deg):
                    if row[i]:
                        out[i] += ck * row[i]
        return _canon(F, out, self.d * o.d * D)

    __rmul__ = __mul__

    def inverse(self):
        if not self:
            raise ZeroDivisionError("division by zero in number field")
        if not any(self.n[1:]):
            return self.field(Fraction(self.d, self.n[0]))
        inv = _qpoly_xgcd_inverse(list(self.c), list(self.field.minpoly))
        inv = inv + [Fraction(0)] * (self.field.degree - len(inv))
        return NFElement(self.field, tuple(inv))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("division by zero in number field")
            other = Fraction(other)
            return _canon(self.field, [a * other.denominator for a in self.n], self.d * other.numerator)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        result = self.field(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def is_rational(self):
        return not any(self.n[1:])

    def __repr__(self):
        terms = []
        for k, a in enumerate(self.c):
            if a:
                if k == 0:
                    terms.append(str(a))
                elif k == 1:
                    terms.append(f"({a})*{self.field.name}")
                else:
                    terms.append(f"({a})*{self.field.name}^{k}")
        return " + ".join(terms) if terms else "0"


def field_of(values):
    """Return the common NumberField of ``values`` (None when all rational)."""
    for v in values:
        if isinstance(v, NFElement):
            return v.field
    return None
