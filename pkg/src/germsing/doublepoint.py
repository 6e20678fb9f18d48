"""Double point curves of map germs (C^2, 0) -> (C^3, 0).

Supported inputs are germs of corank at most one whose components contain
an exactly linear combination (handled through the normal form
``(x, p, q)``), and double folds ``(x^2, y^2, h)`` up to permuting and
scaling the target coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import sympy

from .localalg import INFINITE, leading_exponent, milnor_number
from .polycore import Polynomial, exact_div, gcd, gcd_list, primitive, resultant
from .puiseux import PlaneCurveGerm, image_parametrization, same_image

CORANK1 = "CORANK1"
DOUBLE_FOLD = "DOUBLE_FOLD"
UNSUPPORTED = "UNSUPPORTED"

XY = ("x", "y")
LIFT = ("x", "y", "x'", "y'")


class UnsupportedGerm(ValueError):
    """The germ lies outside the classes handled here."""


class PreconditionError(ValueError):
    """A standing hypothesis (finite, generically one-to-one, ...) fails."""


def _linear_part(p):
    return tuple(p.terms.get(e, Fraction(0)) for e in ((1, 0), (0, 1)))


def _rank(rows):
    return sympy.Matrix([[sympy.Rational(c.numerator, c.denominator) for c in r] for r in rows]).rank()


def _pure_linear_combination(comps):
    """Coefficients ``c`` with ``sum c_i f_i`` a nonzero linear form, or None."""
    monos = sorted({e for f in comps for e in f.terms if sum(e) >= 2})
    lin = [_linear_part(f) for f in comps]
    if not monos:
        for i, l in enumerate(lin):
            if any(l):
                return tuple(Fraction(int(i == j)) for j in range(3))
        return None
    mat = sympy.Matrix([[sympy.Rational(str(f.terms.get(e, 0))) for f in comps] for e in monos])
    for vec in mat.nullspace():
        c = tuple(Fraction(int(v.p), int(v.q)) for v in vec)
        form = [sum(ci * l[k] for ci, l in zip(c, lin)) for k in range(2)]
        if any(form):
            return c
    return None


def _is_square_of(p, k):
    """True when ``p`` is ``c * v^2`` for the k-th variable."""
    e = (2, 0) if k == 0 else (0, 2)
    return set(p.terms) == {e}


class GermMap:
    """A polynomial map germ ``f = (f1, f2, f3)`` in the variables (x, y)."""

    def __init__(self, components, name=None):
        comps = tuple(components)
        if len(comps) != 3:
            raise ValueError("three component functions expected")
        for f in comps:
            if tuple(f.gens) != XY:
                raise ValueError(f"components must use variables (x, y), got {f.gens}")
            if f.constant_term():
                raise PreconditionError("f(0) != 0")
        self.components = comps
        self.name = name
        self.corank = 2 - _rank([_linear_part(f) for f in comps])
        self.coordinate_change = None
        self.input_class = self._classify()

    def _classify(self):
        if self.corank == 0:
            return CORANK1
        if self.corank == 1:
            c = _pure_linear_combination(self.components)
            if c is None:
                return UNSUPPORTED
            self.coordinate_change = c
            return CORANK1
        for i in range(3):
            for j in range(3):
                if i != j and _is_square_of(self.components[i], 0) and _is_square_of(self.components[j], 1):
                    self._fold_order = (i, j, 3 - i - j)
                    return DOUBLE_FOLD
        return UNSUPPORTED

    def __iter__(self):
        return iter(self.components)

    def __repr__(self):
        return "GermMap(" + ", ".join(str(f) for f in self.components) + ")"

    def normal_form(self):
        """Coordinates in which one component of ``f`` is the source coordinate ``X``.

        Returns ``(p, q, a, b)`` such that, with ``X = a*x + b*y`` and ``Y``
        the remaining source coordinate, ``f`` is A-equivalent to
        ``(X, p(X, Y), q(X, Y))``.
        """
        if self.input_class != CORANK1:
            raise UnsupportedGerm("normal form (x, p, q) needs a corank <= 1 germ")
        c = self.coordinate_change
        ell = Polynomial.constant(XY, 0)
        for ci, f in zip(c, self.components):
            ell = ell + f * ci
        a, b = _linear_part(ell)
        X = Polynomial.var(XY, "x")
        Y = Polynomial.var(XY, "y")
        if a:
            sub = {"x": (X - Y * b) / a, "y": Y}
        else:
            sub = {"x": Y, "y": X / b}
        drop = max(range(3), key=lambda i: (c[i] != 0, -i))
        others = [i for i in range(3) if i != drop]
        p, q = (self.components[i].subs(sub) for i in others)
        return p, q, a, b


# --------------------------------------------------------------------------
# divided differences and the lifting


def _lift_terms(f):
    """``f(x, y)`` and ``f(x', y')`` in the four-variable ring."""
    hi = Polynomial(LIFT, {(i, j, 0, 0): c for (i, j), c in f.terms.items()})
    lo = Polynomial(LIFT, {(0, 0, i, j): c for (i, j), c in f.terms.items()})
    return hi, lo


def _divided_pair(f):
    a1, a2 = {}, {}
    for (i, j), c in f.terms.items():
        # (x^i - x'^i) y^j / (x - x')
        for k in range(i):
            e = (k, j, i - 1 - k, 0)
            a1[e] = a1.get(e, 0) + c
        # x'^i (y^j - y'^j) / (y - y')
        for k in range(j):
            e = (0, k, i, j - 1 - k)
            a2[e] = a2.get(e, 0) + c
    return Polynomial(LIFT, a1), Polynomial(LIFT, a2)


@dataclass
class DividedDifferenceMatrix:
    entries: tuple  # three rows (alpha_i1, alpha_i2)

    def minors(self):
        rows = self.entries
        out = []
        for i in range(3):
            for j in range(i + 1, 3):
                out.append(rows[i][0] * rows[j][1] - rows[i][1] * rows[j][0])
        return out


def divided_differences(f):
    """Canonical divided-difference matrix; the defining identity is asserted."""
    comps = getattr(f, "components", f)
    xs = [Polynomial.var(LIFT, v) for v in LIFT]
    rows = []
    for fi in comps:
        a1, a2 = _divided_pair(fi)
        hi, lo = _lift_terms(fi)
        assert hi - lo == a1 * (xs[0] - xs[2]) + a2 * (xs[1] - xs[3]), "divided difference identity"
        rows.append((a1, a2))
    return DividedDifferenceMatrix(tuple(rows))


def lifting_ideal(f):
    """Generators of the lifting: pullback differences and the 2x2 minors."""
    comps = getattr(f, "components", f)
    diffs = []
    for fi in comps:
        hi, lo = _lift_terms(fi)
        diffs.append(hi - lo)
    return [d for d in diffs + divided_differences(comps).minors() if d.terms]


# --------------------------------------------------------------------------
# the double point curve


def normalize_equation(p):
    """Coprime integer coefficients, positive coefficient at the local leading term."""
    if not p.terms:
        return p
    q = primitive(p)
    if q.terms[leading_exponent(q)] < 0:
        q = -q
    return q


def _y_divided(h):
    """``(h(x, y) - h(x, y')) / (y - y')`` in the variables (x, y, y')."""
    gens = ("x", "y", "y'")
    out = {}
    for (i, j), c in h.terms.items():
        for k in range(j):
            e = (i, k, j - 1 - k)
            out[e] = out.get(e, 0) + c
    return Polynomial(gens, out)


def _corank1_lambda(f):
    p, q, a, b = f.normal_form()
    ap, aq = _y_divided(p), _y_divided(q)
    if ap.degree("y'") > aq.degree("y'"):
        ap, aq = aq, ap
    res = resultant(ap, aq, "y'").change_gens(XY)
    X = Polynomial.var(XY, "x")
    Y = Polynomial.var(XY, "y")
    if a:
        back = {"x": X * a + Y * b, "y": Y}
    else:
        back = {"x": Y, "y": X * b}
    return res.subs(back)


def _fold_parts(f):
    i, j, k = f._fold_order
    return f.components[k]


_SIGMAS = ((-1, 1), (1, -1), (-1, -1))


def _reflect(h, sigma):
    sx, sy = sigma
    return Polynomial(h.gens, {(a, b): c * sx ** a * sy ** b for (a, b), c in h.terms.items()})


def _fold_lambda(f):
    h = _fold_parts(f)
    X = Polynomial.var(XY, "x")
    Y = Polynomial.var(XY, "y")
    factors = []
    for sigma, forced in zip(_SIGMAS, (X * 2, Y * 2, None)):
        d = h - _reflect(h, sigma)
        if forced is not None:
            d = exact_div(d, forced)
        factors.append(d)
    out = factors[0] * factors[1] * factors[2]
    return out


def fold_lambda_by_lifting(f):
    """Cross-oracle for double folds: restrict the lifting to each reflection graph.

    For ``f = (x^2, y^2, h)`` the lifting lies over the graphs of the three
    reflections; restricting its generators to each graph and taking gcds
    yields one factor per reflection.  Returns the product of these factors
    together with the gcd obtained on the diagonal (expected to be a unit).
    """
    gens = lifting_ideal(f)
    X = Polynomial.var(LIFT, "x")
    Y = Polynomial.var(LIFT, "y")
    out = Polynomial.constant(XY, 1)
    diagonal = None
    for sigma in _SIGMAS + ((1, 1),):
        sub = {"x'": X * sigma[0], "y'": Y * sigma[1]}
        restricted = [g.subs(sub).change_gens(XY) for g in gens]
        restricted = [r for r in restricted if r.terms]
        g = gcd_list(restricted) if restricted else Polynomial.constant(XY, 0)
        if sigma == (1, 1):
            diagonal = g
        else:
            out = out * g
    return normalize_equation(out), diagonal


def double_point_curve(f):
    """Defining equation ``lambda`` of the double point curve D(f).

    The scheme structure produced by the elimination is kept (no squarefree
    reduction); only the content and sign are normalized.
    """
    if f.input_class == UNSUPPORTED:
        raise UnsupportedGerm(f"germ class not supported (corank {f.corank})")
    if f.corank == 0:
        # an immersion germ is injective near 0: no double points
        return Polynomial.constant(XY, 1)
    lam = _corank1_lambda(f) if f.input_class == CORANK1 else _fold_lambda(f)
    if not lam.terms:
        raise PreconditionError("lambda vanishes identically: f is not generically one-to-one")
    if lam.constant_term():
        return Polynomial.constant(XY, 1)
    return normalize_equation(lam)


def repeated_factor(lam):
    """A factor vanishing at 0 that occurs with multiplicity > 1, or None."""
    x, y = sympy.symbols("x y")
    expr = sum(sympy.Rational(str(c)) * x ** i * y ** j for (i, j), c in lam.terms.items())
    _, facs = sympy.factor_list(expr)
    for fac, mult in facs:
        if mult > 1 and fac.subs({x: 0, y: 0}) == 0:
            poly = sympy.Poly(fac, x, y)
            terms = {m: Fraction(int(c.p), int(c.q)) for m, c in zip(poly.monoms(), poly.coeffs())}
            return normalize_equation(Polynomial(XY, terms)) ** mult
    return None


@dataclass
class FiniteDeterminacy:
    finitely_determined: bool
    mu_D: object = None
    witness: Optional[Polynomial] = None
    empty: bool = False

    def __bool__(self):
        return self.finitely_determined


def is_finitely_determined(f, lam=None):
    """Finite determinacy test: lambda reduced at 0 and mu(D(f)) finite."""
    if lam is None:
        lam = double_point_curve(f)
    if lam.constant_term():
        return FiniteDeterminacy(True, 0, None, empty=True)
    rep = repeated_factor(lam)
    mu = milnor_number(lam)
    if rep is not None or mu == INFINITE:
        return FiniteDeterminacy(False, INFINITE, rep)
    return FiniteDeterminacy(True, mu, None)


# --------------------------------------------------------------------------
# identification and fold components

IDENTIFICATION = "IDENTIFICATION"
FOLD = "FOLD"


@dataclass
class Component:
    branch: object
    image: object
    kind: str
    partner: Optional[int] = None


@dataclass
class DoublePointData:
    lifting_ideal: list
    lam: Polynomial
    components: list = field(default_factory=list)
    r_i: int = 0
    r_f: int = 0
    image_multiplicity_total: int = 0
    curve: Optional[PlaneCurveGerm] = None

    @property
    def empty(self):
        return self.lam.constant_term() != 0

    def image_tangent_directions(self):
        out = []
        for c in self.components:
            if c.image.tangent_direction not in out:
                out.append(c.image.tangent_direction)
        return out


def classify_components(f, lam):
    """Split the branches of ``D(f) = V(lam)`` into identification pairs and folds."""
    data = DoublePointData(lifting_ideal(f), lam)
    if lam.constant_term():
        return data
    curve = PlaneCurveGerm(lam)
    data.curve = curve
    comps = []
    for b in curve.branches:
        img = image_parametrization(f, b)
        if img.primitive_degree > 2:
            raise AssertionError(f"f restricted to a branch has degree {img.primitive_degree} > 2")
        kind = FOLD if img.primitive_degree == 2 else IDENTIFICATION
        comps.append(Component(b, img, kind))
    for i, c in enumerate(comps):
        if c.kind != IDENTIFICATION or c.partner is not None:
            continue
        for j in range(i + 1, len(comps)):
            d = comps[j]
            if d.kind == IDENTIFICATION and d.partner is None and same_image(c.image, d.image):
                c.partner, d.partner = j, i
                break
        if c.partner is None:
            raise AssertionError(f"identification branch {i} has no partner with the same image")
    data.components = comps
    data.r_f = sum(c.kind == FOLD for c in comps)
    data.r_i = len(comps) - data.r_f
    total = 0
    for i, c in enumerate(comps):
        if c.kind == FOLD:
            total += c.image.image_multiplicity
        elif c.partner > i:
            total += c.image.image_multiplicity
    data.image_multiplicity_total = total
    return data
