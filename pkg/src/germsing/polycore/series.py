"""Truncated power series in one parameter.

A series is known modulo ``u^prec``; ``prec is None`` marks an exact
(finite) series.  Every operation propagates the precision honestly, so an
order computed below ``prec`` is a true order.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .polynomial import Polynomial, _coerce_coeff


class TruncationError(ArithmeticError):
    """The requested quantity lies beyond the known precision."""


def _min_prec(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _low(s):
    """Lowest exponent that can be nonzero; None for the exact zero series."""
    if s.terms:
        return min(s.terms)
    return s.prec


class TruncatedSeries:
    __slots__ = ("terms", "prec", "ramification")

    def __init__(self, terms=None, prec=None, ramification=1):
        clean = {}
        for k, c in (terms or {}).items():
            if c and (prec is None or k < prec):
                if k < 0:
                    raise ValueError("negative exponent in power series")
                clean[k] = _coerce_coeff(c)
        self.terms = clean
        self.prec = prec
        self.ramification = ramification

    @classmethod
    def monomial(cls, c, k, prec=None):
        return cls({k: c}, prec)

    @classmethod
    def zero(cls, prec=None):
        return cls({}, prec)

    @property
    def exact(self):
        return self.prec is None

    def is_zero(self):
        """True when no nonzero term is known (exactly zero or zero to precision)."""
        return not self.terms

    def order(self):
        """Exponent of the lowest nonzero term.

        Raises TruncationError when the series vanishes to its precision and
        returns ``None`` for the exact zero series.
        """
        if self.terms:
            return min(self.terms)
        if self.prec is None:
            return None
        raise TruncationError(f"series vanishes to its precision O(u^{self.prec})")

    def leading_coefficient(self):
        return self.terms[self.order()]

    def coefficient(self, k):
        if self.prec is not None and k >= self.prec:
            raise TruncationError(f"coefficient of u^{k} beyond precision {self.prec}")
        return self.terms.get(k, Fraction(0))

    def truncate(self, prec):
        return TruncatedSeries(self.terms, _min_prec(self.prec, prec))

    def __add__(self, other):
        if not isinstance(other, TruncatedSeries):
            other = TruncatedSeries({0: other})
        prec = _min_prec(self.prec, other.prec)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out[k] + c if k in out else c
        return TruncatedSeries(out, prec)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries({k: -c for k, c in self.terms.items()}, self.prec)

    def __sub__(self, other):
        if not isinstance(other, TruncatedSeries):
            other = TruncatedSeries({0: other})
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            return TruncatedSeries({k: c * other for k, c in self.terms.items()}, self.prec)
        # error terms: A*O(u^pb) + B*O(u^pa)
        prec = None
        for s, t in ((self, other), (other, self)):
            if s.prec is not None:
                low = _low(t)
                if low is None:
                    return TruncatedSeries({}, None)
                prec = _min_prec(prec, s.prec + low)
        out = {}
        for i, a in self.terms.items():
            for j, b in other.terms.items():
                k = i + j
                if prec is not None and k >= prec:
                    continue
                out[k] = out[k] + a * b if k in out else a * b
        return TruncatedSeries(out, prec)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power of a series")
        result = TruncatedSeries({0: 1})
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, k):
        """Multiply by ``u^k``."""
        prec = None if self.prec is None else self.prec + k
        return TruncatedSeries({e + k: c for e, c in self.terms.items()}, prec)

    def scale_parameter(self, c, k=1):
        """Substitute ``u -> c * u^k``."""
        prec = None if self.prec is None else self.prec * k
        return TruncatedSeries({e * k: a * c ** e for e, a in self.terms.items()}, prec)

    def exponent_gcd(self):
        g = 0
        for k in self.terms:
            g = gcd(g, k)
        return g

    def compose(self, inner):
        """Return ``self(inner(u))``; ``inner`` must have positive order."""
        if not self.terms:
            if self.prec is None:
                return TruncatedSeries({}, None)
        o = inner.order()
        if o is None or o < 1:
            raise ValueError("inner series must have positive order")
        prec = None
        if self.prec is not None:
            prec = self.prec * o
        if inner.prec is not None:
            # an error O(u^p) in inner perturbs self(inner) by O(u^p)·self'(inner)
            deriv_order = min((k - 1) * o for k in self.terms if k) if any(self.terms) else None
            if deriv_order is not None:
                prec = _min_prec(prec, inner.prec + deriv_order)
        result = TruncatedSeries({}, prec)
        if not self.terms:
            return result
        power = TruncatedSeries({0: 1})
        top = max(self.terms)
        acc = {}
        for k in range(top + 1):
            if k:
                power = (power * inner).truncate(prec)
            c = self.terms.get(k)
            if c:
                for e, a in power.terms.items():
                    if prec is None or e < prec:
                        acc[e] = acc[e] + a * c if e in acc else a * c
        return TruncatedSeries(acc, prec)

    def derivative(self):
        prec = None if self.prec is None else max(self.prec - 1, 0)
        return TruncatedSeries({k - 1: c * k for k, c in self.terms.items() if k}, prec)

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.terms == other.terms and self.prec == other.prec

    def __repr__(self):
        body = " + ".join(f"({c})*u^{k}" for k, c in sorted(self.terms.items())) or "0"
        if self.prec is not None:
            body += f" + O(u^{self.prec})"
        return body


def root_of_unit_series(h, m, prec):
    """``(1 + h)^(1/m)`` for a series ``h`` of positive order, to ``prec``."""
    result = TruncatedSeries({0: 1}, prec)
    term = TruncatedSeries({0: 1}, prec)
    coeff = Fraction(1)
    alpha = Fraction(1, m)
    k = 0
    o = h.order() if h.terms else None
    if o is None:
        return TruncatedSeries({0: 1}, _min_prec(prec, h.prec))
    while True:
        k += 1
        if prec is not None and k * o >= prec:
            break
        coeff = coeff * (alpha - k + 1) / k
        term = (term * h).truncate(prec)
        if not term.terms and term.prec is not None:
            break
        result = result + term * coeff
    return result.truncate(_min_prec(prec, h.prec))


def inverse_unit(a, prec):
    """``1 / a`` modulo ``u^prec`` for a series with nonzero constant term."""
    if a.prec is not None:
        prec = min(prec, a.prec)
    a0 = a.coefficient(0)
    if not a0:
        raise ZeroDivisionError("series is not a unit")
    inv0 = Fraction(1) / a0
    out = [inv0]
    for k in range(1, prec):
        acc = 0
        for j, c in a.terms.items():
            if 0 < j <= k:
                acc = acc + c * out[k - j]
        out.append(-acc * inv0)
    return TruncatedSeries(dict(enumerate(out)), prec)


def reversion(s, prec):
    """Compositional inverse of ``s = u + O(u^2)`` to precision ``prec``."""
    if s.order() != 1 or s.leading_coefficient() != 1:
        raise ValueError("reversion needs a series of the form u + O(u^2)")
    if s.prec is not None:
        prec = min(prec, s.prec)
    # Newton on s(t) - u = 0; the number of correct terms doubles each step
    u = TruncatedSeries({1: 1})
    ds = TruncatedSeries(s.terms).derivative()
    exact_s = TruncatedSeries(s.terms)
    t = TruncatedSeries({1: 1})
    known = 2
    while known < prec:
        known = min(2 * known, prec)
        tk = t.truncate(known)
        err = (exact_s.compose(tk) - u).truncate(known)
        slope = ds.compose(tk).truncate(known)
        t = TruncatedSeries((t - err * inverse_unit(slope, known)).truncate(known).terms)
    return TruncatedSeries(t.terms, prec)


def substitute_series(p: Polynomial, assignment, N=None):
    """Compose a polynomial with series: ``p(series_1(u), ..., series_n(u))``.

    The result carries the honest precision of the composition, further
    truncated at ``N`` when given.  Raises ValueError when ``N`` exceeds
    the precision guaranteed by the inputs.
    """
    missing = [g for g in p.gens if g not in assignment]
    if missing:
        raise ValueError(f"no series assigned to {missing}")
    series = [assignment[g] for g in p.gens]
    # precision of p(series): each variable's error times the cofactor order
    prec = None
    for i, s in enumerate(series):
        if s.prec is None:
            continue
        dp = p.diff(p.gens[i])
        if not dp.terms:
            continue
        orders = []
        for e in dp.terms:
            o = 0
            for j, k in enumerate(e):
                if k:
                    sj = series[j]
                    oj = min(sj.terms) if sj.terms else (sj.prec if sj.prec is not None else None)
                    if oj is None:
                        o = None
                        break
                    o += oj * k
            if o is not None:
                orders.append(o)
        if orders:
            prec = _min_prec(prec, s.prec + min(orders))
    if N is not None:
        if prec is not None and N > prec:
            raise ValueError(f"truncation {N} exceeds guaranteed precision {prec}")
        prec = N
    cache = {}

    def power(i, k):
        key = (i, k)
        if key not in cache:
            if k == 0:
                cache[key] = TruncatedSeries({0: 1})
            elif k == 1:
                cache[key] = series[i].truncate(prec)
            else:
                cache[key] = (power(i, k - 1) * series[i]).truncate(prec)
        return cache[key]

    acc = {}
    for e, c in p.terms.items():
        t = TruncatedSeries({0: c})
        for i, k in enumerate(e):
            if k:
                t = (t * power(i, k)).truncate(prec)
        for k, a in t.terms.items():
            if prec is None or k < prec:
                acc[k] = acc[k] + a if k in acc else a
    return TruncatedSeries(acc, prec)
