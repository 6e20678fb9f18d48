"""Univariate factoring over Q and Q(theta), and simple field extensions.

Factoring over Q goes through sympy.  Over a number field we use Trager's
norm method: shift until the norm is squarefree, factor the norm over Q and
pull the factors back with gcds over the field.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import count

import sympy

from .numberfield import NFElement, NumberField
from .polynomial import Polynomial, _univariate_gcd, exact_div, resultant

Z = ("z",)


def upoly(coeffs, field=None):
    """Univariate polynomial in ``z`` from coefficients listed constant-first."""
    terms = {}
    for k, c in enumerate(coeffs):
        if c:
            terms[(k,)] = field(c) if field is not None and not isinstance(c, NFElement) else c
    return Polynomial(Z, terms)


def ucoeffs(p):
    d = p.degree()
    return [p.terms.get((k,), Fraction(0)) for k in range(d + 1)]


def _monic(p):
    return p / ucoeffs(p)[-1]


def _rational_coeffs(p):
    return all(isinstance(c, Fraction) or (isinstance(c, NFElement) and c.is_rational())
               for c in p.terms.values())


def _as_rational(p):
    return Polynomial(Z, {e: (c if isinstance(c, Fraction) else c.c[0]) for e, c in p.terms.items()})


def factor_rational(p):
    """Irreducible monic factors (with multiplicity) of ``p`` over Q."""
    z = sympy.Symbol("z")
    expr = sum(sympy.Rational(c.numerator, c.denominator) * z ** e[0] for e, c in p.terms.items())
    _, facs = sympy.factor_list(expr, z)
    out = []
    for f, mult in facs:
        poly = sympy.Poly(f, z)
        coeffs = [Fraction(int(c.p), int(c.q)) for c in reversed(poly.all_coeffs())]
        out.append((_monic(upoly(coeffs)), mult))
    return out


def _lift_to_tz(p, field):
    """Replace every coefficient a_0 + a_1 theta + ... by a polynomial in ``t``."""
    gens = ("t", "z")
    terms = {}
    for (k,), c in p.terms.items():
        cs = c.c if isinstance(c, NFElement) else (c,) + (Fraction(0),) * (field.degree - 1)
        for i, a in enumerate(cs):
            if a:
                terms[(i, k)] = terms.get((i, k), Fraction(0)) + a
    return Polynomial(gens, terms)


def norm(p, field, shift=0):
    """``Res_t(m(t), p_t(z - shift*t))`` as a rational polynomial in ``z``."""
    gens = ("t", "z")
    lifted = _lift_to_tz(p, field)
    t = Polynomial.var(gens, "t")
    zz = Polynomial.var(gens, "z")
    if shift:
        lifted = lifted.subs({"z": zz - t * shift})
    m = Polynomial(gens, {(i, 0): c for i, c in enumerate(field.minpoly) if c})
    if lifted.degree("t") <= 0:
        r = lifted ** field.degree
    else:
        r = resultant(m, lifted, "t")
    return Polynomial(Z, {(e[1],): c for e, c in r.terms.items()})


def _is_squarefree_q(p):
    g = _univariate_gcd(p, p.diff("z"), "z")
    return g.degree() == 0


def factor_over(p, field):
    """Monic irreducible factors of a squarefree ``p`` over ``field`` (None = Q)."""
    if p.degree() <= 0:
        return []
    if field is None or _rational_coeffs(p) and field is None:
        return [f for f, _ in factor_rational(_as_rational(p))]
    if field.degree == 1:
        return [_embed(f, field) for f, _ in factor_rational(_as_rational(p))]
    theta = field.gen
    for k in _shifts():
        n = norm(p, field, k)
        if not _is_squarefree_q(n):
            continue
        out = []
        zz = Polynomial.var(Z, "z")
        for nf, _ in factor_rational(n):
            back = _embed(nf, field).subs({"z": zz + theta * k})
            g = _univariate_gcd(p, back, "z")
            if g.degree() > 0:
                out.append(_monic(g))
        return out
    raise AssertionError("unreachable")


def _shifts():
    yield 0
    for k in count(1):
        yield k
        yield -k


def _embed(p, field):
    return Polynomial(Z, {e: field(c) if not isinstance(c, NFElement) else c for e, c in p.terms.items()})


def extend_field(field, q):
    """A simple extension containing ``field`` and a root of the irreducible ``q``.

    Returns the NumberField of a primitive element ``beta + k*theta``.
    """
    if field is None or field.degree == 1:
        return NumberField([c for c in ucoeffs(_as_rational(_monic(q)))])
    for k in _shifts():
        if k == 0:
            continue
        n = norm(q, field, k)
        if _is_squarefree_q(n):
            return NumberField(ucoeffs(_monic(n)))
    raise AssertionError("unreachable")


def squarefree_decomposition_roots(p, field):
    """Distinct roots of ``p`` in ``field`` with multiplicities.

    Returns ``(roots, nonlinear)`` where ``nonlinear`` lists irreducible
    factors of degree > 1 (roots outside the field).
    """
    sf = p
    g = _univariate_gcd(p, p.diff("z"), "z")
    if g.degree() > 0:
        sf = exact_div(p, g)
    roots = []
    nonlinear = []
    for fac in factor_over(_monic(sf), field):
        if fac.degree() == 1:
            c0, c1 = ucoeffs(fac)
            root = -c0 / c1
            mult = 0
            rest = p
            lin = fac
            while True:
                try:
                    rest = exact_div(rest, lin)
                except ValueError:
                    break
                mult += 1
            roots.append((root, mult))
        else:
            nonlinear.append(fac)
    return roots, nonlinear
