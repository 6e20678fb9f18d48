"""Local algebra of the plane at the origin.

Standard bases for the local degree ordering (Mora's normal form with
ecart-driven reducer choice), colengths ``dim O_2 / I``, Milnor numbers and
intersection multiplicities of plane curve germs.

The local ordering ranks monomials of *lower* total degree higher; ties are
broken lexicographically with ``x`` before ``y``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Optional

from .polycore import Polynomial, gcd_list

INFINITE = "INFINITE"


def _key(e):
    return (-sum(e),) + tuple(e)


def leading_exponent(p):
    """Leading exponent for the local degree ordering (lowest total degree wins)."""
    return max(p.terms, key=_key)


def ecart(p):
    return p.degree() - sum(leading_exponent(p))


def _divides(a, b):
    return all(i <= j for i, j in zip(a, b))


# The kernel below works on dicts {exponent: int}; every intermediate result
# is made content free, so exact integer arithmetic replaces rationals.


def _to_ints(p):
    den = 1
    for c in p.terms.values():
        den = lcm(den, c.denominator)
    return _content_free({e: int(c * den) for e, c in p.terms.items()})


def _content_free(d):
    if not d:
        return d
    g = gcd(*d.values())
    if g == 1:
        return d
    return {e: c // g for e, c in d.items()}


def _cut(d, bound):
    if bound is None:
        return d
    return {e: c for e, c in d.items() if sum(e) < bound}


class _Entry:
    """A polynomial with its cached leading exponent and ecart."""

    __slots__ = ("terms", "lead", "ecart")

    def __init__(self, terms):
        self.terms = terms
        self.lead = max(terms, key=_key)
        self.ecart = max(sum(e) for e in terms) - sum(self.lead)


def _combine(h, hc, g, gc, shift):
    """``gc*h - hc*x^shift*g`` as an integer dict."""
    out = {e: c * gc for e, c in h.items()}
    for e, c in g.items():
        k = tuple(a + b for a, b in zip(e, shift))
        v = out.get(k, 0) - hc * c
        if v:
            out[k] = v
        else:
            out.pop(k, None)
    return out


def _normal_form(h, entries, bound):
    h = _content_free(_cut(h, bound))
    reducers = list(entries)
    while h:
        cur = _Entry(h)
        best = None
        for g in reducers:
            if _divides(g.lead, cur.lead) and (best is None or g.ecart < best.ecart):
                best = g
        if best is None:
            return h
        if best.ecart > cur.ecart:
            reducers.append(cur)
        shift = tuple(a - b for a, b in zip(cur.lead, best.lead))
        h = _content_free(_cut(_combine(h, h[cur.lead], best.terms, best.terms[best.lead], shift), bound))
    return h


def _s_poly(f, g):
    top = tuple(max(a, b) for a, b in zip(f.lead, g.lead))
    sf = tuple(a - b for a, b in zip(top, f.lead))
    sg = tuple(a - b for a, b in zip(top, g.lead))
    shifted = {tuple(a + b for a, b in zip(e, sf)): c for e, c in f.terms.items()}
    return _content_free(_combine(shifted, f.terms[f.lead], g.terms, g.terms[g.lead], sg))


def _to_poly(gens, d):
    return Polynomial(gens, {e: Fraction(c) for e, c in d.items()})


def mora_normal_form(f, basis, bound=None):
    """Weak normal form of ``f`` with respect to ``basis`` (Mora's algorithm).

    ``bound`` drops all terms of total degree >= bound, i.e. computes modulo
    the ideal ``m^bound``.  The result is determined up to a nonzero scalar.
    """
    entries = [_Entry(_to_ints(g)) for g in basis if g.terms]
    return _to_poly(f.gens, _normal_form(_to_ints(f), entries, bound))


def s_polynomial(f, g):
    return _to_poly(f.gens, _s_poly(_Entry(_to_ints(f)), _Entry(_to_ints(g))))


def _minimalize(entries):
    out = []
    for i, g in enumerate(entries):
        dominated = any(
            _divides(h.lead, g.lead) and (h.lead != g.lead or j < i)
            for j, h in enumerate(entries) if j != i
        )
        if not dominated:
            out.append(g)
    return out


def _standard_entries(generators, bound):
    gens = [_cut(_to_ints(g), bound) for g in generators if g.terms]
    basis = []
    for g in gens:
        h = _normal_form(g, basis, bound)
        if h:
            basis.append(_Entry(h))
    pairs = [(i, j) for j in range(len(basis)) for i in range(j)]
    while pairs:
        # lowest-degree lcm first keeps the computation small
        pairs.sort(key=lambda ij: -sum(max(a, b) for a, b in zip(basis[ij[0]].lead, basis[ij[1]].lead)))
        i, j = pairs.pop()
        ei, ej = basis[i].lead, basis[j].lead
        # product criterion: coprime leading monomials need no S-polynomial
        if all(a == 0 or b == 0 for a, b in zip(ei, ej)):
            continue
        if bound is not None and sum(max(a, b) for a, b in zip(ei, ej)) >= bound:
            continue  # the S-polynomial lies in m^bound
        h = _normal_form(_s_poly(basis[i], basis[j]), basis, bound)
        if h:
            basis.append(_Entry(h))
            k = len(basis) - 1
            pairs.extend((m, k) for m in range(k))
    return _minimalize(basis)


def standard_basis(generators, bound=None):
    """Standard basis for the local degree ordering.

    With ``bound`` the computation runs modulo ``m^bound``: every polynomial is
    truncated in degree ``bound``, so the returned leading terms describe
    ``I + m^bound`` below that degree.
    """
    gens = [g for g in generators if g.terms]
    if not gens:
        return []
    return [_to_poly(gens[0].gens, e.terms) for e in _standard_entries(gens, bound)]


@dataclass
class ColengthResult:
    value: object  # int or INFINITE
    standard_monomials: Optional[list] = None
    basis: list = field(default_factory=list)

    @property
    def finite(self):
        return self.value != INFINITE


def _staircase(leads, bound=None):
    """Monomials outside the ideal generated by ``leads`` (and by ``m^bound``).

    Returns None if there are infinitely many.
    """
    if bound is None:
        a = min((e[0] for e in leads if e[1] == 0), default=None)
        b = min((e[1] for e in leads if e[0] == 0), default=None)
        if a is None or b is None:
            return None
    else:
        a = b = bound
    return [(i, j) for i in range(a) for j in range(b)
            if (bound is None or i + j < bound) and not any(_divides(l, (i, j)) for l in leads)]


def _shares_local_component(generators):
    g = gcd_list(generators)
    return not g.is_constant() and not g.constant_term()


def colength(generators, truncated=True):
    """``dim_C O_2 / I`` for the ideal generated by ``generators``.

    A common factor vanishing at the origin means a curve component is shared
    and the colength is INFINITE.  Otherwise the computation runs modulo
    ``m^B`` with ``B`` grown by half until all standard monomials have degree
    ``< B - 1``; then ``m^(B-1)`` lies in the ideal (Nakayama) and the count
    is exact.  ``truncated=False`` runs plain Mora without the degree cap.
    """
    gens = [g for g in generators if g.terms]
    if not gens:
        return ColengthResult(INFINITE)
    if any(g.constant_term() for g in gens):
        return ColengthResult(0, [], [gens[0].one()])
    if _shares_local_component(gens):
        return ColengthResult(INFINITE)
    if not truncated:
        basis = standard_basis(gens)
        stairs = _staircase([leading_exponent(g) for g in basis])
        if stairs is None:
            return ColengthResult(INFINITE, None, basis)
        return ColengthResult(len(stairs), stairs, basis)
    B = max(8, 2 * min(g.order() for g in gens) + 2)
    while True:
        basis = standard_basis(gens, B)
        stairs = _staircase([leading_exponent(g) for g in basis], B)
        if all(i + j < B - 1 for i, j in stairs):
            return ColengthResult(len(stairs), sorted(stairs, key=lambda e: (sum(e), -e[0])), basis)
        B = B * 3 // 2


def _check_curve(g):
    if not g.terms:
        raise ValueError("the zero polynomial does not define a curve germ")
    if len(g.gens) != 2:
        raise ValueError(f"plane curve expected, got variables {g.gens}")


def milnor_number(g):
    """Milnor number of the plane curve germ ``g = 0`` at the origin."""
    _check_curve(g)
    if g.constant_term():
        raise ValueError("g is a unit at the origin; the germ is empty")
    x, y = g.gens
    return colength([g.diff(x), g.diff(y)]).value


def intersection_multiplicity(g1, g2):
    """Intersection multiplicity ``i(g1, g2)`` at the origin."""
    _check_curve(g1)
    _check_curve(g2)
    if g1.constant_term() or g2.constant_term():
        raise ValueError("both curves must pass through the origin")
    value = colength([g1, g2]).value
    if value != INFINITE:
        assert value >= g1.order() * g2.order(), "intersection below product of multiplicities"
    return value


def multiplicity(g):
    _check_curve(g)
    return g.order()
