"""Newton-Puiseux branch decomposition of plane curve germs.

Branches are computed with Duval's rational substitutions
``s = mu t^n, w = t^m (nu + w')`` so that every coefficient stays in one
simple extension of Q.  When an edge polynomial does not split over the
current field, the field is enlarged by a root of an irreducible factor and
the decomposition restarts from scratch; Galois-conjugate branches are
therefore always materialized separately.

Parametrizations are truncated power series with honest precision; any
quantity that would depend on unknown coefficients raises
:class:`~germsing.polycore.TruncationError`, and the callers retry with a
larger truncation order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, gcd
from typing import Optional

from .localalg import INFINITE, milnor_number
from .polycore import (
    NFElement,
    NumberField,
    Polynomial,
    TruncatedSeries,
    TruncationError,
    exact_div,
    inverse_unit,
    reversion,
    root_of_unit_series,
    substitute_series,
)
from .polycore.algfactor import extend_field, squarefree_decomposition_roots, upoly

SW = ("s", "w")


class NeedExtension(Exception):
    def __init__(self, factor):
        super().__init__("edge polynomial does not split")
        self.factor = factor


@dataclass
class PuiseuxBranch:
    """One branch ``u -> (x(u), y(u))`` of a plane curve germ."""

    x: TruncatedSeries
    y: TruncatedSeries
    field: Optional[NumberField] = None
    multiplicity: int = 0
    tangent_direction: tuple = ()
    delta_invariant: int = 0
    characteristic: tuple = ()

    @property
    def parametrization(self):
        return (self.x, self.y)

    @property
    def precision(self):
        precs = [s.prec for s in (self.x, self.y) if s.prec is not None]
        return min(precs) if precs else None


@dataclass
class SpaceBranch:
    """Image ``f o phi`` of a source branch, reparametrized primitively."""

    parametrization: tuple
    primitive_degree: int
    image_multiplicity: int
    lead_index: int
    tangent_direction: tuple
    field: Optional[NumberField] = None


# --------------------------------------------------------------------------
# Newton polygon machinery


def _bezout(n, m):
    """Integers (alpha, beta) with alpha*n - beta*m = 1."""
    old_r, r = n, m
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    assert old_r == 1
    return old_s, -old_t


def _edges(g, r):
    """Edges of the Newton polygon of ``g(s, w)`` between (0, r) and the w=0 axis."""
    lowest = {}
    for i, j in g.terms:
        if j <= r and (j not in lowest or i < lowest[j]):
            lowest[j] = i
    cur = (0, r)
    out = []
    while cur[1] > 0:
        best = None
        for j, i in lowest.items():
            if j >= cur[1]:
                continue
            ratio = Fraction(i - cur[0], cur[1] - j)
            if best is None or ratio < best[0] or (ratio == best[0] and j < best[1][1]):
                best = (ratio, (i, j))
        ratio, nxt = best
        m, n = ratio.numerator, ratio.denominator
        const = n * cur[0] + m * cur[1]
        coeffs = []
        for j in range(nxt[1], cur[1] + 1, n):
            i = (const - m * j) // n
            coeffs.append(g.terms.get((i, j), Fraction(0)))
        out.append((m, n, const, coeffs))
        cur = nxt
    return out


def _transform(g, mu, n, m, nu, const):
    """``g(mu t^n, t^m (nu + w)) / t^const`` in the variables (s=t, w)."""
    out = {}
    mu_pow = {}
    nu_pow = {}
    for (i, j), a in g.terms.items():
        if i not in mu_pow:
            mu_pow[i] = mu ** i
        base = a * mu_pow[i]
        texp = n * i + m * j - const
        for k in range(j + 1):
            if j - k not in nu_pow:
                nu_pow[j - k] = nu ** (j - k)
            c = base * nu_pow[j - k] * comb(j, k)
            if c:
                key = (texp, k)
                out[key] = out[key] + c if key in out else c
    return Polynomial(SW, out)


def _solve_simple(g, prec):
    """Power series root ``w(s)`` with ``w(0) = 0`` of ``g`` when dg/dw(0,0) != 0.

    Newton iteration; each step doubles the number of correct coefficients.
    """
    g = Polynomial(SW, {e: c for e, c in g.terms.items() if e[0] < prec})
    gw = g.diff("w")
    s = TruncatedSeries({1: 1})
    w = TruncatedSeries({})
    known = 1
    while known < prec:
        known = min(2 * known, prec)
        val = substitute_series(g, {"s": s, "w": w}, known)
        slope = substitute_series(gw, {"s": s, "w": w}, known)
        step = (val * inverse_unit(slope, known)).truncate(known)
        w = TruncatedSeries((w - step).terms)
    return w.truncate(prec)


@dataclass
class _State:
    cx: object
    ex: int
    ypoly: dict
    cy: object
    ey: int

    def advance(self, mu, n, m, nu):
        ypoly = {k * n: a * mu ** k for k, a in self.ypoly.items()}
        cy = self.cy * mu ** self.ey
        ey = self.ey * n + m
        head = cy * nu
        if head:
            ypoly[ey] = ypoly.get(ey, 0) + head
        return _State(self.cx * mu ** self.ex, self.ex * n, ypoly, cy, ey)

    def branch(self, w, field):
        x = TruncatedSeries({self.ex: self.cx})
        y = TruncatedSeries(self.ypoly)
        if w is not None:
            y = y + (w * self.cy).shift(self.ey)
        return PuiseuxBranch(x, y, field)


def _expand(g, r, state, K, prec, out):
    if all(j >= 1 for _, j in g.terms):
        out.append(state.branch(None, K))
        g = exact_div(g, Polynomial(SW, {(0, 1): 1}))
        r -= 1
    if r == 0:
        return
    if r == 1:
        w = _solve_simple(g, max(prec - state.ey, 1))
        out.append(state.branch(w, K))
        return
    for m, n, const, coeffs in _edges(g, r):
        roots, nonlinear = squarefree_decomposition_roots(upoly(coeffs, K), K)
        if nonlinear:
            raise NeedExtension(nonlinear[0])
        alpha, beta = _bezout(n, m)
        for zeta, mult in roots:
            mu = zeta ** beta
            nu = zeta ** alpha
            g2 = _transform(g, mu, n, m, nu, const)
            _expand(g2, mult, state.advance(mu, n, m, nu), K, prec, out)


def _raw_decomposition(g, K, prec):
    h = Polynomial(SW, g.terms)
    out = []
    if all(i >= 1 for i, _ in h.terms):
        out.append(PuiseuxBranch(TruncatedSeries({}), TruncatedSeries({1: 1}), K))
        h = exact_div(h, Polynomial(SW, {(1, 0): 1}))
    r = min(j for i, j in h.terms if i == 0)
    _expand(h, r, _State(Fraction(1), 1, {}, Fraction(1), 0), K, prec, out)
    return out


# --------------------------------------------------------------------------
# normalized parametrizations


def _lowest(s):
    if s.terms:
        return min(s.terms)
    return None if s.prec is None else s.prec


def normalize_parametrization(series, prec=None):
    """Reparametrize so that a coordinate of minimal order becomes ``a*tau^m``.

    Returns ``(k, m, a, new_series)``.  ``prec`` bounds the work for exact but
    non-monomial inputs.
    """
    known = [(min(s.terms), i) for i, s in enumerate(series) if s.terms]
    if not known:
        raise TruncationError("all coordinates vanish to the known precision")
    m = min(o for o, _ in known)
    for i, s in enumerate(series):
        if not s.terms and s.prec is not None and s.prec <= m:
            raise TruncationError("coordinate order not determined")
    cands = [i for o, i in known if o == m]
    mono = [i for i in cands if series[i].exact and len(series[i].terms) == 1]
    k = mono[0] if mono else cands[0]
    a = series[k].terms[m]
    if mono:
        return k, m, a, list(series)
    precs = [s.prec for s in series if s.prec is not None]
    target = min(precs) if precs else prec
    if target is None:
        raise ValueError("a finite precision is needed to normalize exact series")
    lead = series[k]
    h = TruncatedSeries({e - m: c / a for e, c in lead.terms.items() if e != m},
                        None if lead.prec is None else lead.prec - m)
    hp = h.prec if h.prec is not None else target
    root = root_of_unit_series(h, m, min(hp, target))
    tau = root.shift(1)
    inv = reversion(tau, tau.prec if tau.prec is not None else target)
    new = []
    for i, s in enumerate(series):
        if i == k:
            new.append(TruncatedSeries({m: a}))
        elif not s.terms and s.prec is None:
            new.append(s)
        else:
            new.append(s.compose(inv))
    return k, m, a, new


def characteristic_exponents(leading_order, other):
    """Characteristic exponents of a primitive branch ``(a tau^m, other(tau))``."""
    e = leading_order
    chars = []
    for k in sorted(other.terms):
        if e == 1:
            break
        if k % e:
            chars.append(k)
            e = gcd(e, k)
    if e != 1:
        if other.prec is not None:
            raise TruncationError("characteristic exponents beyond the known precision")
        raise ValueError("parametrization is not primitive")
    return tuple(chars)


def branch_delta(b):
    k, m, a, new = normalize_parametrization([b.x, b.y])
    other = new[1 - k]
    chars = characteristic_exponents(m, other)
    e_prev = m
    twice = 0
    for beta in chars:
        e = gcd(e_prev, beta)
        twice += (beta - 1) * (e_prev - e)
        e_prev = e
    return twice // 2, chars


def _tangent(b):
    m = b.multiplicity
    cx = b.x.coefficient(m) if (b.x.prec is None or b.x.prec > m) else None
    cy = b.y.coefficient(m) if (b.y.prec is None or b.y.prec > m) else None
    if cx is None or cy is None:
        raise TruncationError("tangent beyond precision")
    if cx:
        return (Fraction(1), cy / cx)
    return (Fraction(0), Fraction(1))


def _finish(b):
    orders = [_lowest(s) for s in (b.x, b.y)]
    orders = [o for o in orders if o is not None]
    b.multiplicity = min(orders)
    if not any(s.terms and min(s.terms) == b.multiplicity for s in (b.x, b.y)):
        raise TruncationError("multiplicity beyond precision")
    b.tangent_direction = _tangent(b)
    b.delta_invariant, b.characteristic = branch_delta(b)
    return b


def branch_decomposition(g, N=None):
    """Branches of the reduced plane curve germ ``g = 0`` at the origin."""
    if len(g.gens) != 2:
        raise ValueError("plane curve expected")
    if not g.terms or g.constant_term():
        raise ValueError("g must vanish at the origin")
    mu = milnor_number(g)
    if mu == INFINITE:
        raise ValueError("g is not reduced at the origin (infinite Milnor number)")
    prec = max(N or 0, 2 * mu + 2)
    K = None
    x, y = g.gens
    while True:
        try:
            branches = [_finish(b) for b in _raw_decomposition(g, K, prec)]
        except NeedExtension as exc:
            K = extend_field(K, exc.factor)
            continue
        except TruncationError:
            prec *= 2
            continue
        total = sum(b.multiplicity for b in branches)
        if total != g.order():
            raise AssertionError(f"branch multiplicities sum to {total}, order is {g.order()}")
        for b in branches:
            val = substitute_series(g, {x: b.x, y: b.y})
            if val.terms:
                raise AssertionError("branch does not satisfy the curve equation")
            b.field = K
        return branches


# --------------------------------------------------------------------------
# branch-level intersection data


def local_equation(b):
    """Weierstrass equation of a branch as ``(k, [e_0, ..., e_m])``.

    With ``u`` the coordinate of index ``k`` and ``v`` the other one, the
    branch is ``sum_q (-1)^q e_q(u) v^(m-q) = 0``; the ``e_q`` are elementary
    symmetric functions of the conjugate expansions, obtained from power sums
    so that no roots of unity are needed.
    """
    k, m, a, new = normalize_parametrization([b.x, b.y])
    v = new[1 - k]
    power_sums = []
    vq = TruncatedSeries({0: 1})
    for q in range(1, m + 1):
        vq = vq * v
        terms = {}
        for e, c in vq.terms.items():
            if e % m == 0:
                terms[e // m] = c * m / a ** (e // m)
        uprec = None if vq.prec is None else -(-vq.prec // m)
        power_sums.append(TruncatedSeries(terms, uprec))
    es = [TruncatedSeries({0: 1})]
    for q in range(1, m + 1):
        acc = TruncatedSeries({})
        for i in range(1, q + 1):
            term = es[q - i] * power_sums[i - 1]
            acc = acc + term if i % 2 else acc - term
        es.append(acc * Fraction(1, q))
    return k, es


def evaluate_local_equation(eq, b):
    """Series ``G(b(u))`` for a local branch equation ``eq``; its order is i(., b)."""
    k, es = eq
    m = len(es) - 1
    coords = [b.x, b.y]
    u, v = coords[k], coords[1 - k]
    total = TruncatedSeries({})
    for q, e in enumerate(es):
        if not u.terms and u.prec is None:
            eu = TruncatedSeries({0: e.coefficient(0)})
        else:
            eu = e.compose(u)
        term = eu * v ** (m - q)
        total = total + term if q % 2 == 0 else total - term
    return total


def branch_intersection(b1, b2):
    """Intersection multiplicity of two distinct branches."""
    return evaluate_local_equation(local_equation(b1), b2).order()


def order_along(h, b):
    """``ord_u h(b(u))`` for a polynomial ``h`` in the plane variables."""
    x, y = h.gens
    val = substitute_series(h, {x: b.x, y: b.y})
    o = val.order()
    if o is None:
        return INFINITE
    return o


class PlaneCurveGerm:
    """A reduced plane curve germ with its branch data.

    Branch-level quantities retry with a doubled truncation order whenever
    the available precision is insufficient.
    """

    def __init__(self, g, N=None):
        self.g = g
        self.N = N
        self._branches = None
        self._prec = None

    def _load(self, prec=None):
        self._branches = branch_decomposition(self.g, prec)
        self._prec = min((b.precision for b in self._branches if b.precision), default=None)

    @property
    def branches(self):
        if self._branches is None:
            self._load(self.N)
        return self._branches

    def _retry(self, fn):
        for _ in range(8):
            try:
                return fn(self.branches)
            except TruncationError:
                self._load(2 * (self._prec or 8))
        raise TruncationError("precision escalation did not converge")

    @property
    def field(self):
        return self.branches[0].field if self.branches else None

    @property
    def multiplicity(self):
        return self.g.order()

    @property
    def branch_count(self):
        return len(self.branches)

    def pairwise_intersections(self):
        def run(bs):
            out = {}
            for i in range(len(bs)):
                for j in range(i + 1, len(bs)):
                    out[(i, j)] = branch_intersection(bs[i], bs[j])
            return out
        return self._retry(run)

    def delta(self):
        return sum(b.delta_invariant for b in self.branches) + sum(self.pairwise_intersections().values())

    def milnor_from_branches(self):
        """``2*delta - r + 1`` from the branch data."""
        return 2 * self.delta() - self.branch_count + 1

    def intersection_with(self, h):
        """``sum_b ord h(b(u))`` over the branches; INFINITE on a shared branch."""
        def run(bs):
            total = 0
            for b in bs:
                o = order_along(h, b)
                if o == INFINITE:
                    return INFINITE
                total += o
            return total
        return self._retry(run)

    def tangent_directions(self):
        out = []
        for b in self.branches:
            if b.tangent_direction not in out:
                out.append(b.tangent_direction)
        return out


def tangent_directions(g):
    """Distinct tangent directions ``(a:b)`` of the germ, normalized (1:c) or (0:1)."""
    if not g.terms:
        raise ValueError("zero polynomial")
    return PlaneCurveGerm(g).tangent_directions()


# --------------------------------------------------------------------------
# images of branches under a map germ


def _components(f):
    return tuple(getattr(f, "components", f))


def image_parametrization(f, b, N=None):
    """Compose ``f`` with the branch ``b`` and extract the primitive degree."""
    comps = _components(f)
    x, y = comps[0].gens
    composite = [substitute_series(fi, {x: b.x, y: b.y}) for fi in comps]
    if all(not c.terms and c.prec is None for c in composite):
        raise ValueError("f is identically zero along the branch (not finite)")
    k, m, a, new = normalize_parametrization(composite, N)
    d = 0
    for s in new:
        d = gcd(d, s.exponent_gcd())
    prim = []
    for s in new:
        prec = None if s.prec is None else -(-s.prec // d)
        prim.append(TruncatedSeries({e // d: c for e, c in s.terms.items()}, prec))
    mult = m // d
    tangent = _projective(tuple(s.terms.get(mult, Fraction(0)) for s in prim))
    return SpaceBranch(tuple(prim), d, mult, k, tangent, b.field)


def _projective(v):
    """Scale a direction so that its first nonzero entry is 1."""
    pivot = next(c for c in v if c)
    return tuple(_rational_if_possible(c / pivot) if c else Fraction(0) for c in v)


def _rational_if_possible(c):
    if isinstance(c, NFElement) and c.is_rational():
        return Fraction(c.c[0])
    return Fraction(c) if isinstance(c, int) else c


def same_image(s1, s2):
    """True when two primitive space branches parametrize the same curve germ."""
    if s1.lead_index != s2.lead_index or s1.image_multiplicity != s2.image_multiplicity:
        return False
    m = s1.image_multiplicity
    k = s1.lead_index
    ratios = {}
    for c1, c2 in zip(s1.parametrization, s2.parametrization):
        precs = [p for p in (c1.prec, c2.prec) if p is not None]
        top = min(precs) if precs else None
        keys = set(c1.terms) | set(c2.terms)
        for e in keys:
            if top is not None and e >= top:
                continue
            a, b = c1.terms.get(e), c2.terms.get(e)
            if (a is None) != (b is None):
                return False
            r = b / a
            if e in ratios and ratios[e] != r:
                return False
            ratios[e] = r
    r_m = s2.parametrization[k].terms[m] / s1.parametrization[k].terms[m]
    # a scale c with c^e = ratio[e] for every exponent; built by Bezout steps
    g, cg = m, r_m
    for e, r in sorted(ratios.items()):
        if g == 1:
            break
        if e == 0 or e % g == 0:
            continue
        gg = gcd(g, e)
        p, q = _ext_gcd(g, e)
        cg = _pow(cg, p) * _pow(r, q)
        g = gg
    if g != 1:
        return False
    return all(_pow(cg, e) == r for e, r in ratios.items())


def _ext_gcd(a, b):
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_s, old_t


def _pow(c, k):
    return c ** k
