"""Generic plane sections, the curve W(f) and its invariants.

For a finitely determined germ ``f`` and a certified generic linear form
``ell`` on the target, the source curve ``W(f)`` is ``D(f)`` together with
``V(ell o f)``.  :func:`invariant_profile` computes every invariant twice
where an independent route exists and records the comparisons.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional

from .doublepoint import (
    DOUBLE_FOLD,
    UNSUPPORTED,
    PreconditionError,
    UnsupportedGerm,
    classify_components,
    double_point_curve,
    is_finitely_determined,
)
from .localalg import INFINITE, colength, intersection_multiplicity, milnor_number
from .polycore import Polynomial, gcd, squarefree_part
from .puiseux import PlaneCurveGerm

BOX = 9
MAX_DRAWS = 500

PASS = "pass"
FAIL = "fail"
NOT_APPLICABLE = "not_applicable"


class IdentityFailure(AssertionError):
    """An identity that must hold exactly was violated."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class StageError(RuntimeError):
    """A sub-computation of the invariant profile failed."""

    def __init__(self, stage, error):
        super().__init__(f"{stage}: {error}")
        self.stage = stage
        self.error = error


@dataclass
class GenericLine:
    coefficients: tuple
    seed: int
    certificate: list = field(default_factory=list)
    rejected: list = field(default_factory=list)

    def __call__(self, v):
        return sum(a * c for a, c in zip(self.coefficients, v))


def _draws(seed, stream=""):
    rng = random.Random(f"{stream}{seed}")
    while True:
        v = tuple(rng.randint(-BOX, BOX) for _ in range(3))
        if any(v):
            yield v


def compose_linear(f, coeffs):
    comps = getattr(f, "components", f)
    out = Polynomial.constant(comps[0].gens, 0)
    for a, fi in zip(coeffs, comps):
        if a:
            out = out + fi * a
    return out


def _is_squarefree(p):
    return squarefree_part(p)[1]


def _unit_at_origin(p):
    return p.is_constant() or bool(p.constant_term())


def _line_checks(f, dp, coeffs):
    """Yield ``(check name, passed)`` for one candidate linear form."""
    g = compose_linear(f, coeffs)
    if not g.terms:
        yield "nonzero", False
        return
    dirs = dp.image_tangent_directions() if dp is not None else []
    yield "tangent_cone_avoidance", all(sum(a * c for a, c in zip(coeffs, v)) != 0 for v in dirs)
    yield "squarefree", _is_squarefree(g)
    lam = dp.lam if dp is not None else None
    yield "coprime_to_lambda", lam is None or _unit_at_origin(gcd(g, lam))
    yield "order", g.order() == min(fi.order() for fi in f.components)
    yield "lowest_form_squarefree", _is_squarefree(g.lowest_form())


def certify_line(f, dp, coeffs):
    """``(passed, failed)``: the checks passed by ``coeffs`` and the first failing one (or None)."""
    passed = []
    for name, ok in _line_checks(f, dp, coeffs):
        if not ok:
            return passed, name
        passed.append(name)
    return passed, None


def choose_generic_line(f, dp, seed, stream=""):
    """First seeded draw from ``[-9, 9]^3 minus 0`` passing every certificate check."""
    rejected = []
    for n, coeffs in enumerate(_draws(seed, stream)):
        if n >= MAX_DRAWS:
            raise RuntimeError(f"no generic line found after {MAX_DRAWS} draws")
        passed, failed = certify_line(f, dp, coeffs)
        if failed is None:
            return GenericLine(coeffs, seed, passed, rejected)
        rejected.append((coeffs, failed))


def source_slice(f, line):
    """``ell o f``, the equation of the preimage of the plane section."""
    coeffs = getattr(line, "coefficients", line)
    return compose_linear(f, coeffs)


def W_curve(f, lam, line):
    g = source_slice(f, line)
    common = gcd(lam, g)
    if not _unit_at_origin(common):
        raise ValueError(f"lambda and the slice share the factor {common}")
    return lam * g


def e_D(f, lam, seed, draws=8):
    """``dim O_2 / <lam, lam_x q_y - lam_y q_x>`` for a generic projection ``q``."""
    if lam.constant_term():
        return 0
    dp = classify_components(f, lam)
    for k in range(draws):
        line = choose_generic_line(f, dp, seed, stream=f"e_D/{k}/")
        q = source_slice(f, line)
        jac = lam.diff("x") * q.diff("y") - lam.diff("y") * q.diff("x")
        value = colength([lam, jac]).value
        if value != INFINITE:
            return value
    return INFINITE


@dataclass
class Check:
    name: str
    relation: str
    lhs: object
    rhs: object
    status: str

    def to_dict(self):
        return {"lhs": self.lhs, "relation": self.relation, "rhs": self.rhs, "status": self.status}


def _check(name, lhs, relation, rhs):
    ok = lhs == rhs if relation == "==" else lhs <= rhs
    return Check(name, relation, lhs, rhs, PASS if ok else FAIL)


@dataclass
class InvariantReport:
    germ: tuple
    seed: int
    input_class: str
    corank: int
    lam: Polynomial
    d_empty: bool = False
    finitely_determined: bool = True
    line: Optional[GenericLine] = None
    gamma: Optional[Polynomial] = None
    mu_D: object = None
    mu_gamma: object = None
    mu_W: object = None
    mu_W_formula: object = None
    m_D: object = None
    m_gamma: object = None
    m_fD: object = None
    i_D_gamma: object = None
    r_i: object = None
    r_f: object = None
    e_D: object = None
    components: list = field(default_factory=list)
    checks: list = field(default_factory=list)

    @property
    def identity_checks(self):
        return {c.name: c for c in self.checks}

    def failed(self):
        return [c for c in self.checks if c.status == FAIL]


def _stage(name, fn, *args, **kw):
    try:
        return fn(*args, **kw)
    except (UnsupportedGerm, PreconditionError, IdentityFailure):
        raise
    except Exception as exc:  # re-raised with the stage that failed
        raise StageError(name, exc) from exc


def invariant_profile(f, seed=0, with_e_d=False, strict=True, branch_checks=True):
    """Invariants of ``f`` and the identity checks relating them.

    ``branch_checks`` adds the Puiseux-side recomputations of i(D, gamma) and
    of the three Milnor numbers.  With ``strict`` a failed identity raises
    :class:`IdentityFailure`.
    """
    if f.input_class == UNSUPPORTED:
        raise UnsupportedGerm(f"unsupported germ class (corank {f.corank})")
    lam = _stage("double_point_curve", double_point_curve, f)
    fd = _stage("finite_determinacy", is_finitely_determined, f, lam)
    report = InvariantReport(tuple(f.components), seed, f.input_class, f.corank, lam)
    if not fd:
        raise PreconditionError(f"f is not finitely determined (repeated factor {fd.witness})")
    if fd.empty:
        report.d_empty = True
        report.mu_D = 0
        report.r_i = report.r_f = 0
        report.m_fD = 0
        return report
    dp = _stage("classify_components", classify_components, f, lam)
    line = _stage("choose_generic_line", choose_generic_line, f, dp, seed)
    g = source_slice(f, line)
    W = _stage("W_curve", W_curve, f, lam, line)
    report.line = line
    report.gamma = g
    report.mu_D = fd.mu_D
    report.mu_gamma = _stage("milnor_gamma", milnor_number, g)
    report.mu_W = _stage("milnor_W", milnor_number, W)
    report.m_D = lam.order()
    report.m_gamma = g.order()
    report.m_fD = dp.image_multiplicity_total
    report.r_i, report.r_f = dp.r_i, dp.r_f
    report.i_D_gamma = _stage("intersection", intersection_multiplicity, lam, g)
    report.mu_W_formula = report.mu_D + report.mu_gamma + 4 * report.m_fD - 1
    report.components = dp.components
    if with_e_d:
        report.e_D = _stage("e_D", e_D, f, lam, seed)

    checks = report.checks
    checks.append(_check("LEMMA_A", report.i_D_gamma, "==", 2 * report.m_fD))
    checks.append(_check("LEMMA_B", report.m_D * report.m_gamma, "<=", 2 * report.m_fD))
    checks.append(_check("LEMMA_C", report.mu_W, "==", report.mu_W_formula))
    if f.input_class == DOUBLE_FOLD:
        checks.append(_check("COR_DOUBLE_FOLD", report.m_D, "==", report.m_fD))
    transversal = gcd(lam.lowest_form(), g.lowest_form()).is_constant()
    if transversal:
        checks.append(_check("COR_TRANSVERSAL", 2 * report.m_fD, "==", report.m_D * report.m_gamma))
    else:
        checks.append(Check("COR_TRANSVERSAL", "==", 2 * report.m_fD, report.m_D * report.m_gamma, NOT_APPLICABLE))
    if branch_checks:
        branch_i = _stage("branch_intersection", dp.curve.intersection_with, g)
        checks.append(_check("BRANCH_SUM_I", report.i_D_gamma, "==", branch_i))
        for name, curve, mu in (("D", dp.curve, report.mu_D),
                                ("GAMMA", PlaneCurveGerm(g), report.mu_gamma),
                                ("W", PlaneCurveGerm(W), report.mu_W)):
            via_branches = _stage(f"branches_{name}", curve.milnor_from_branches)
            checks.append(_check(f"MILNOR_BRANCHES_{name}", mu, "==", via_branches))
    if strict and report.failed():
        names = ", ".join(c.name for c in report.failed())
        raise IdentityFailure(f"identity checks failed: {names}", report)
    return report
