"""Sparse multivariate polynomials with exact coefficients.

A :class:`Polynomial` maps exponent tuples to nonzero coefficients.  The
coefficients are ``Fraction`` values or elements of a
:class:`~germsing.polycore.numberfield.NumberField`; both support the field
operations, which is all this module relies on.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce


class VariableMismatch(ValueError):
    pass


def _coerce_coeff(c):
    if isinstance(c, int):
        return Fraction(c)
    return c


class Polynomial:
    __slots__ = ("gens", "terms", "_hash")

    def __init__(self, gens, terms=None):
        self.gens = tuple(gens)
        n = len(self.gens)
        clean = {}
        if terms:
            for e, c in terms.items():
                if c:
                    e = tuple(e)
                    if len(e) != n:
                        raise ValueError(f"exponent {e} does not match variables {self.gens}")
                    clean[e] = _coerce_coeff(c)
        self.terms = clean
        self._hash = None

    # -- constructors -------------------------------------------------
    @classmethod
    def constant(cls, gens, c):
        return cls(gens, {(0,) * len(gens): c})

    @classmethod
    def var(cls, gens, name):
        gens = tuple(gens)
        if name not in gens:
            raise VariableMismatch(f"unknown variable {name!r}")
        e = [0] * len(gens)
        e[gens.index(name)] = 1
        return cls(gens, {tuple(e): Fraction(1)})

    @classmethod
    def monomial(cls, gens, exps, c=1):
        return cls(gens, {tuple(exps): c})

    def zero(self):
        return Polynomial(self.gens)

    def one(self):
        return Polynomial.constant(self.gens, 1)

    # -- basic queries ---------------------------------------------------
    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self):
        return all(not any(e) for e in self.terms)

    def constant_term(self):
        return self.terms.get((0,) * len(self.gens), Fraction(0))

    def index(self, var):
        try:
            return self.gens.index(var)
        except ValueError:
            raise VariableMismatch(f"unknown variable {var!r} for {self.gens}") from None

    def degree(self, var=None):
        """Total degree, or the degree in ``var``; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        if var is None:
            return max(sum(e) for e in self.terms)
        i = self.index(var)
        return max(e[i] for e in self.terms)

    def order(self):
        """Lowest total degree of a term; raises on the zero polynomial."""
        if not self.terms:
            raise ValueError("order of the zero polynomial is infinite")
        return min(sum(e) for e in self.terms)

    def lowest_form(self):
        k = self.order()
        return Polynomial(self.gens, {e: c for e, c in self.terms.items() if sum(e) == k})

    def homogeneous_part(self, k):
        return Polynomial(self.gens, {e: c for e, c in self.terms.items() if sum(e) == k})

    def truncate(self, degree):
        """Drop every term of total degree >= ``degree``."""
        return Polynomial(self.gens, {e: c for e, c in self.terms.items() if sum(e) < degree})

    def variables(self):
        used = set()
        for e in self.terms:
            for i, k in enumerate(e):
                if k:
                    used.add(self.gens[i])
        return [g for g in self.gens if g in used]

    def coefficients(self):
        return list(self.terms.values())

    # -- arithmetic -------------------------------------------------------
    def _check(self, other):
        if self.gens != other.gens:
            raise VariableMismatch(f"variable contexts differ: {self.gens} vs {other.gens}")

    def _lift(self, other):
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        return Polynomial.constant(self.gens, other)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                s = v + c
                if s:
                    out[e] = s
                else:
                    del out[e]
        return Polynomial(self.gens, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.gens, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            if not other:
                return self.zero()
            other = _coerce_coeff(other)
            return Polynomial(self.gens, {e: c * other for e, c in self.terms.items()})
        self._check(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e)
                out[e] = c1 * c2 if v is None else v + c1 * c2
        return Polynomial(self.gens, out)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative power")
        result = self.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c):
        return self * c

    def __truediv__(self, other):
        if isinstance(other, Polynomial):
            return exact_div(self, other)
        return Polynomial(self.gens, {e: c / other for e, c in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.gens == other.gens and self.terms == other.terms
        if not self.terms:
            return not other
        return self.is_constant() and self.constant_term() == other

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.gens, frozenset(self.terms.items())))
        return self._hash

    # -- calculus and substitution --------------------------------------
    def diff(self, var):
        i = self.index(var)
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                out[tuple(ne)] = c * e[i]
        return Polynomial(self.gens, out)

    def subs(self, assignment):
        """Substitute polynomials (same context) or scalars for variables."""
        idx = {self.index(v): val for v, val in assignment.items()}
        result = self.zero()
        cache = {}

        def power(i, k):
            key = (i, k)
            if key not in cache:
                val = idx[i]
                if isinstance(val, Polynomial):
                    cache[key] = val ** k
                else:
                    cache[key] = Polynomial.constant(self.gens, _coerce_coeff(val) ** k if k else 1)
            return cache[key]

        for e, c in self.terms.items():
            keep = list(e)
            term = None
            for i in idx:
                if e[i]:
                    keep[i] = 0
                    p = power(i, e[i])
                    term = p if term is None else term * p
            mono = Polynomial(self.gens, {tuple(keep): c})
            result = result + (mono if term is None else mono * term)
        return result

    def evaluate(self, point):
        """Evaluate at a full assignment ``{var: value}`` and return a scalar."""
        vals = [point[g] for g in self.gens]
        total = Fraction(0)
        for e, c in self.terms.items():
            t = c
            for v, k in zip(vals, e):
                if k:
                    t = t * v ** k
            total = total + t
        return total

    def change_gens(self, gens):
        """Re-express in a new variable list (dropped variables must be absent)."""
        gens = tuple(gens)
        pos = []
        for g in self.gens:
            pos.append(gens.index(g) if g in gens else None)
        out = {}
        for e, c in self.terms.items():
            ne = [0] * len(gens)
            for i, k in enumerate(e):
                if k:
                    if pos[i] is None:
                        raise VariableMismatch(f"variable {self.gens[i]} still occurs")
                    ne[pos[i]] = k
            out[tuple(ne)] = c
        return Polynomial(gens, out)

    # -- univariate views -------------------------------------------------
    def coeffs_in(self, var):
        """Return ``{k: coefficient of var^k}`` with coefficients in the same context."""
        i = self.index(var)
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            ne = e[:i] + (0,) + e[i + 1:]
            out.setdefault(k, {})[ne] = c
        return {k: Polynomial(self.gens, t) for k, t in out.items()}

    def leading_coeff_in(self, var):
        cs = self.coeffs_in(var)
        return cs[max(cs)]

    # -- presentation -------------------------------------------------------
    def sort_key(self, e):
        return (sum(e),) + tuple(e)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=self.sort_key, reverse=True):
            c = self.terms[e]
            mono = "*".join(
                g if k == 1 else f"{g}^{k}" for g, k in zip(self.gens, e) if k
            )
            if isinstance(c, Fraction):
                neg = c < 0
                a = -c if neg else c
                cs = "" if (a == 1 and mono) else str(a)
            else:
                neg = False
                cs = f"({c})"
            body = cs + ("*" if cs and mono else "") + mono
            parts.append(("-" if neg else "+", body))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"Polynomial({self.gens}, {self})"


def lex_leading(p):
    e = max(p.terms)
    return e, p.terms[e]


def exact_div(p, q):
    """Divide ``p`` by ``q``; raises ValueError if the division is inexact."""
    p._check(q)
    if not q.terms:
        raise ZeroDivisionError("division by the zero polynomial")
    qe, qc = lex_leading(q)
    quot = {}
    r = p
    while r.terms:
        re, rc = lex_leading(r)
        diff = tuple(a - b for a, b in zip(re, qe))
        if any(d < 0 for d in diff):
            raise ValueError("inexact polynomial division")
        c = rc / qc
        quot[diff] = c
        r = r - Polynomial(p.gens, {diff: c}) * q
    return Polynomial(p.gens, quot)


def divides(q, p):
    try:
        exact_div(p, q)
        return True
    except ValueError:
        return False


def prem(a, b, var):
    """Pseudo-remainder of ``a`` by ``b`` as polynomials in ``var``."""
    db = b.degree(var)
    if db < 0:
        raise ZeroDivisionError("pseudo-remainder by zero")
    i = a.index(var)
    lb = b.leading_coeff_in(var)
    r = a
    da = r.degree(var)
    e = max(da - db + 1, 0)
    while r.terms and r.degree(var) >= db:
        dr = r.degree(var)
        lr = r.leading_coeff_in(var)
        shift = [0] * len(a.gens)
        shift[i] = dr - db
        r = r * lb - lr * Polynomial.monomial(a.gens, shift) * b
        e -= 1
    return r * (lb ** e) if e > 0 else r


def resultant(p, q, var):
    """Resultant of ``p`` and ``q`` with respect to ``var`` (subresultant PRS)."""
    p._check(q)
    if not p.terms or not q.terms:
        return p.zero()
    da, db = p.degree(var), q.degree(var)
    if da == 0 and db == 0:
        raise ValueError(f"both inputs are constant in {var}")
    if da == 0:
        return p ** db
    if db == 0:
        return q ** da
    a, b = p, q
    s = 1
    if da < db:
        a, b = b, a
        if da % 2 and db % 2:
            s = -s
    g = a.one()
    h = a.one()
    while True:
        da, db = a.degree(var), b.degree(var)
        delta = da - db
        if da % 2 and db % 2:
            s = -s
        r = prem(a, b, var)
        a = b
        if not r.terms:
            return p.zero()
        b = exact_div(r, g * h ** delta)
        g = a.leading_coeff_in(var)
        if delta == 0:
            pass
        elif delta == 1:
            h = g
        else:
            h = exact_div(g ** delta, h ** (delta - 1))
        if b.degree(var) <= 0:
            break
    da = a.degree(var)
    lb = b
    if da == 1:
        h = lb
    else:
        h = exact_div(lb ** da, h ** (da - 1))
    return h * s


def _content(p, var):
    cs = list(p.coeffs_in(var).values())
    return reduce(gcd, cs)


def _normalize(p):
    """Scale so the lexicographically leading coefficient is 1."""
    if not p.terms:
        return p
    _, c = lex_leading(p)
    return p / c


def _is_rational(p):
    return all(isinstance(c, Fraction) for c in p.terms.values())


def _to_sympy(p):
    import sympy
    gens = sympy.symbols(p.gens)
    rep = {e: sympy.Rational(c.numerator, c.denominator) for e, c in p.terms.items()}
    return sympy.Poly.from_dict(rep, *gens, domain="QQ")


def _from_sympy(gens, sp):
    return Polynomial(gens, {e: Fraction(int(c.numerator), int(c.denominator))
                             for e, c in sp.as_dict().items()})


def _univariate_gcd(p, q, var):
    a, b = p, q
    while b.terms:
        a, b = b, _field_rem(a, b, var)
    return a


def _field_rem(a, b, var):
    i = a.index(var)
    db = b.degree(var)
    lb = b.leading_coeff_in(var).constant_term()
    r = a
    while r.terms and r.degree(var) >= db:
        dr = r.degree(var)
        lr = r.leading_coeff_in(var).constant_term()
        shift = [0] * len(a.gens)
        shift[i] = dr - db
        r = r - Polynomial.monomial(a.gens, shift, lr / lb) * b
    return r


def gcd(p, q):
    """Greatest common divisor, normalized to a monic lex-leading coefficient."""
    p._check(q)
    if not p.terms:
        return _normalize(q)
    if not q.terms:
        return _normalize(p)
    if p.is_constant() or q.is_constant():
        return p.one()
    used = set(p.variables()) | set(q.variables())
    if _is_rational(p) and _is_rational(q):
        return _normalize(_from_sympy(p.gens, _to_sympy(p).gcd(_to_sympy(q))))
    if len(used) == 1:
        return _normalize(_univariate_gcd(p, q, used.pop()))
    var = next(g for g in p.gens if g in used)
    if p.degree(var) <= 0:
        return gcd(p, _content(q, var))
    if q.degree(var) <= 0:
        return gcd(_content(p, var), q)
    cp, cq = _content(p, var), _content(q, var)
    c = gcd(cp, cq)
    a, b = exact_div(p, cp), exact_div(q, cq)
    if a.degree(var) < b.degree(var):
        a, b = b, a
    while True:
        r = prem(a, b, var)
        if not r.terms:
            return _normalize(b * c)
        if r.degree(var) == 0:
            return _normalize(c)
        a, b = b, exact_div(r, _content(r, var))


def gcd_list(polys):
    return reduce(gcd, polys)


def squarefree_part(p):
    """Return ``(p / gcd(p, dp/dv for all v), is_squarefree)``."""
    if not p.terms:
        raise ValueError("squarefree part of the zero polynomial")
    g = p
    for v in p.gens:
        g = gcd(g, p.diff(v))
    if g.is_constant():
        return p, True
    return exact_div(p, g), False


def primitive(p):
    """Scale a rational polynomial to coprime integer coefficients, positive leading term."""
    if not p.terms:
        return p
    dens = 1
    nums = 0
    from math import gcd as igcd, lcm
    for c in p.terms.values():
        dens = lcm(dens, c.denominator)
    for c in p.terms.values():
        nums = igcd(nums, (c * dens).numerator)
    q = p * Fraction(dens, nums)
    _, lc = max(q.terms.items(), key=lambda kv: p.sort_key(kv[0]))
    return -q if lc < 0 else q


def poly_from_dict(gens, d):
    return Polynomial(gens, {tuple(e): Fraction(c) for e, c in d.items()})
