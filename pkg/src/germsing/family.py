"""One-parameter unfoldings ``F = (f_t, t)`` and sampled equisingularity verdicts.

The verdict compares ``mu(W(f_t))`` at ``t = 0`` with its value at a few
seeded rational parameter values.  A constant value at the samples is
evidence, reported as ``EQUISINGULAR_AT_SAMPLES``, never as a proof for
all ``t``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .doublepoint import GermMap, PreconditionError, UnsupportedGerm, UNSUPPORTED
from .polycore import Polynomial
from .sliceinv import invariant_profile

EQUISINGULAR_AT_SAMPLES = "EQUISINGULAR_AT_SAMPLES"
NOT_EQUISINGULAR = "NOT_EQUISINGULAR"
INDETERMINATE = "INDETERMINATE"

XYT = ("x", "y", "t")
XY = ("x", "y")
HEIGHT = 9
WATCHED = ("mu_D", "mu_gamma", "m_fD")


class SemicontinuityError(AssertionError):
    """A Milnor number grew away from t = 0, which flat families forbid."""


class SampleRejected(ValueError):
    def __init__(self, t, reason):
        super().__init__(f"t = {t}: {reason}")
        self.t = t
        self.reason = reason


class UnfoldingFamily:
    """Components ``F_i(x, y, t)`` of an origin-preserving unfolding."""

    def __init__(self, components, name=None):
        comps = tuple(components)
        if len(comps) != 3:
            raise ValueError("three component functions expected")
        for F in comps:
            if tuple(F.gens) != XYT:
                raise ValueError(f"unfolding components must use variables (x, y, t), got {F.gens}")
        self.components = comps
        self.name = name
        self.origin_preserving = all(
            not any(e[0] == 0 and e[1] == 0 for e in F.terms) for F in comps
        )
        if not self.origin_preserving:
            raise PreconditionError("unfolding is not origin preserving: some F_i(0, 0, t) is nonzero")

    @classmethod
    def trivial(cls, f, name=None):
        comps = getattr(f, "components", f)
        return cls([Polynomial(XYT, {e + (0,): c for e, c in fi.terms.items()}) for fi in comps], name)

    def at(self, t0):
        """The components of ``f_{t0}`` as polynomials in (x, y)."""
        out = []
        for F in self.components:
            out.append(F.subs({"t": Fraction(t0)}).change_gens(XY))
        return out


def specialize(F, t0):
    """``f_{t0}`` as a GermMap; rejects unsupported or non finitely determined members."""
    f = GermMap(F.at(t0), name=f"{F.name or 'f'}_t={t0}")
    if f.input_class == UNSUPPORTED:
        raise SampleRejected(t0, "unsupported germ class")
    return f


def sample_parameters(seed, count, budget=None):
    """Seeded stream of distinct nonzero rationals ``p/q`` with ``|p|, q <= 9``."""
    rng = random.Random(f"t-samples/{seed}")
    seen = set()
    budget = budget if budget is not None else 200
    for _ in range(budget):
        t = Fraction(rng.choice([i for i in range(-HEIGHT, HEIGHT + 1) if i]), rng.randint(1, HEIGHT))
        if t not in seen:
            seen.add(t)
            yield t


@dataclass
class Sample:
    t: Fraction
    report: object

    def decomposition(self):
        r = self.report
        return {"mu_D": r.mu_D, "mu_gamma": r.mu_gamma, "m_fD": r.m_fD, "mu_W": r.mu_W}


@dataclass
class VerdictTable:
    samples: list
    verdict: str
    failing_invariant: Optional[str] = None
    rejected: list = field(default_factory=list)
    semicontinuity_violations: list = field(default_factory=list)
    seed: int = 0

    def mu_W_values(self):
        return {s.t: s.report.mu_W for s in self.samples}


def _profile(f, seed):
    return invariant_profile(f, seed, branch_checks=False)


def whitney_verdict(F, sample_count=3, seed=0):
    """Sampled Whitney-equisingularity verdict for the unfolding ``F``."""
    base_map = specialize(F, 0)
    base = Sample(Fraction(0), _profile(base_map, seed))
    if base.report.d_empty:
        raise PreconditionError("the base germ has no double points; W(f) is not defined")
    samples = []
    rejected = []
    for t in sample_parameters(seed, sample_count, budget=10 * sample_count + 20):
        if len(samples) >= sample_count:
            break
        try:
            f = specialize(F, t)
            report = _profile(f, seed)
        except (SampleRejected, UnsupportedGerm, PreconditionError) as exc:
            rejected.append((t, str(exc)))
            continue
        if report.d_empty:
            rejected.append((t, "empty double point curve"))
            continue
        samples.append(Sample(t, report))

    violations = []
    for s in samples:
        for name in ("mu_W", "mu_D", "mu_gamma"):
            if getattr(s.report, name) > getattr(base.report, name):
                violations.append((s.t, name, getattr(base.report, name), getattr(s.report, name)))
    if violations:
        raise SemicontinuityError(f"upper semicontinuity violated: {violations}")

    everything = sorted([base] + samples, key=lambda s: s.t)
    if not samples or len(samples) < min(2, sample_count):
        return VerdictTable(everything, INDETERMINATE, None, rejected, [], seed)
    moved = [s for s in samples if s.report.mu_W != base.report.mu_W]
    if not moved:
        return VerdictTable(everything, EQUISINGULAR_AT_SAMPLES, None, rejected, [], seed)
    failing = None
    for name in WATCHED:
        if any(getattr(s.report, name) != getattr(base.report, name) for s in samples):
            failing = name
            break
    return VerdictTable(everything, NOT_EQUISINGULAR, failing, rejected, [], seed)
