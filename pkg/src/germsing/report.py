"""JSON and text rendering of reports.

All numbers are exact: integers stay integers, other rationals become
strings ``"p/q"``, algebraic numbers are written in the power basis of their
field.  JSON output uses sorted keys so it can be compared byte for byte.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .polycore import NFElement, Polynomial

SCHEMA_VERSION = 1


def exact(value):
    """Convert a value to a JSON-friendly exact representation."""
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else f"{value.numerator}/{value.denominator}"
    if isinstance(value, NFElement):
        if value.is_rational():
            return exact(value.c[0])
        return repr(value)
    if isinstance(value, Polynomial):
        return str(value)
    if isinstance(value, (list, tuple)):
        return [exact(v) for v in value]
    if isinstance(value, dict):
        return {str(k): exact(v) for k, v in value.items()}
    return value


def _minpoly_text(field):
    if field is None:
        return "Q"
    terms = []
    for k, c in reversed(list(enumerate(field.minpoly))):
        if not c:
            continue
        mono = "" if k == 0 else (field.name if k == 1 else f"{field.name}^{k}")
        if k and c == 1:
            terms.append(mono)
        elif k and c == -1:
            terms.append("-" + mono)
        else:
            terms.append(f"{c}*{mono}" if mono else str(c))
    return "Q[" + field.name + "]/(" + " + ".join(terms).replace("+ -", "- ") + ")"


def _germ_dict(components):
    return {f"f{k}": str(f) for k, f in enumerate(components, start=1)}


def component_dict(index, comp):
    b = comp.branch
    img = comp.image
    return {
        "index": index,
        "kind": comp.kind,
        "partner": comp.partner,
        "coefficient_field": _minpoly_text(b.field),
        "multiplicity": b.multiplicity,
        "delta": b.delta_invariant,
        "tangent_direction": exact(b.tangent_direction),
        "image": {
            "primitive_degree": img.primitive_degree,
            "multiplicity": img.image_multiplicity,
            "tangent_direction": exact(img.tangent_direction),
        },
    }


def invariant_report_dict(report, germ_map=None):
    out = {
        "schema_version": SCHEMA_VERSION,
        "kind": "invariant_report",
        "germ": _germ_dict(report.germ),
        "seed": report.seed,
        "input_class": report.input_class,
        "corank": report.corank,
        "double_point_curve": {
            "lambda": str(report.lam),
            "empty": report.d_empty,
            "finitely_determined": report.finitely_determined,
        },
    }
    if germ_map is not None and germ_map.coordinate_change is not None:
        out["coordinate_change"] = {"linear_combination": exact(germ_map.coordinate_change)}
    if report.line is not None:
        out["generic_line"] = {
            "coefficients": exact(report.line.coefficients),
            "certificate": list(report.line.certificate),
            "rejected": [{"coefficients": exact(c), "failed": why} for c, why in report.line.rejected],
        }
        out["slice"] = str(report.gamma)
    names = ("mu_D", "mu_gamma", "mu_W", "mu_W_formula", "m_D", "m_gamma", "m_fD",
             "i_D_gamma", "r_i", "r_f")
    inv = {k: exact(getattr(report, k)) for k in names}
    if report.e_D is not None:
        inv["e_D"] = exact(report.e_D)
    out["invariants"] = inv
    out["components"] = [component_dict(i, c) for i, c in enumerate(report.components)]
    out["identity_checks"] = {c.name: exact(c.to_dict()) for c in report.checks}
    return out


def verdict_dict(table):
    samples = []
    for s in table.samples:
        r = s.report
        samples.append({
            "t": exact(s.t),
            "lambda": str(r.lam),
            "generic_line": exact(r.line.coefficients) if r.line else None,
            "mu_W": r.mu_W,
            "decomposition": {"mu_D": r.mu_D, "mu_gamma": r.mu_gamma, "m_fD": r.m_fD,
                              "formula": r.mu_W_formula},
            "identity_checks": {c.name: c.status for c in r.checks},
        })
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "verdict_table",
        "seed": table.seed,
        "verdict": table.verdict,
        "evidence": "sampled parameter values; not a proof for all t",
        "failing_invariant": table.failing_invariant,
        "samples": samples,
        "rejected_samples": [{"t": exact(t), "reason": why} for t, why in table.rejected],
        "semicontinuity_violations": exact(table.semicontinuity_violations),
    }


def finite_determinacy_dict(components, lam, fd):
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "finite_determinacy",
        "germ": _germ_dict(components),
        "lambda": str(lam),
        "double_point_curve_empty": fd.empty,
        "finitely_determined": fd.finitely_determined,
        "mu_D": exact(fd.mu_D),
        "witness": None if fd.witness is None else str(fd.witness),
    }


def to_json(d):
    return json.dumps(d, sort_keys=True, indent=2) + "\n"


# --------------------------------------------------------------------------
# text


def invariant_report_text(report):
    lines = [f"germ: ({', '.join(str(f) for f in report.germ)})",
             f"class: {report.input_class} (corank {report.corank})",
             f"lambda: {report.lam}"]
    if report.d_empty:
        lines.append("D(f) is empty: no double points, W(f) invariants not defined")
        return "\n".join(lines) + "\n"
    line = report.line
    lines.append(f"generic line: {exact(line.coefficients)} (seed {report.seed}, "
                 f"{len(line.rejected)} rejected draws)")
    lines.append(f"slice: {report.gamma}")
    lines.append(f"mu(D)={report.mu_D}  mu(slice)={report.mu_gamma}  mu(W)={report.mu_W}")
    lines.append(f"m(D)={report.m_D}  m(slice)={report.m_gamma}  m(f(D))={report.m_fD}  "
                 f"i(D,slice)={report.i_D_gamma}  r_i={report.r_i}  r_f={report.r_f}")
    if report.e_D is not None:
        lines.append(f"e_D={report.e_D}")
    for c in report.checks:
        lines.append(f"  {c.name:<24} {c.status:<15} {exact(c.lhs)} {c.relation} {exact(c.rhs)}")
    return "\n".join(lines) + "\n"


def verdict_text(table):
    lines = [f"verdict: {table.verdict} (sampled evidence, seed {table.seed})"]
    if table.failing_invariant:
        lines.append(f"first moving constituent: {table.failing_invariant}")
    for s in table.samples:
        r = s.report
        lines.append(f"  t={exact(s.t)!s:>6}  mu(W)={r.mu_W:<4} mu(D)={r.mu_D:<4} "
                     f"mu(slice)={r.mu_gamma:<3} m(f(D))={r.m_fD}")
    for t, why in table.rejected:
        lines.append(f"  rejected t={exact(t)}: {why}")
    return "\n".join(lines) + "\n"


def finite_determinacy_text(lam, fd):
    if fd.empty:
        return f"lambda = {lam}: D(f) is empty; finitely determined\n"
    if fd.finitely_determined:
        return f"lambda = {lam}: finitely determined, mu(D) = {fd.mu_D}\n"
    return f"lambda = {lam}: NOT finitely determined, repeated factor {fd.witness}\n"
