"""Walk through every stage of the pipeline on the C5 germ (x, y^2, x*y^3 - x^5*y).

Run with ``python3 demos/c5_walkthrough.py``.
"""

from germsing.doublepoint import GermMap, classify_components, double_point_curve, is_finitely_determined
from germsing.polycore import Polynomial
from germsing.puiseux import PlaneCurveGerm
from germsing.sliceinv import choose_generic_line, invariant_profile, source_slice

XY = ("x", "y")
x = Polynomial.var(XY, "x")
y = Polynomial.var(XY, "y")


def show_series(s, terms=4):
    parts = [f"({c})*u^{k}" for k, c in sorted(s.terms.items())[:terms]]
    return " + ".join(parts) if parts else "0"


def main():
    f = GermMap((x, y**2, x * y**3 - x**5 * y), name="C5")
    print(f"germ {f}: class {f.input_class}, corank {f.corank}")

    lam = double_point_curve(f)
    print(f"\ndouble point curve: lambda = {lam}")
    fd = is_finitely_determined(f, lam)
    print(f"finitely determined: {fd.finitely_determined}, mu(D) = {fd.mu_D}")

    curve = PlaneCurveGerm(lam)
    print(f"\n{curve.branch_count} branches, delta = {curve.delta()}, "
          f"2*delta - r + 1 = {curve.milnor_from_branches()}")
    dp = classify_components(f, lam)
    for i, c in enumerate(dp.components):
        b = c.branch
        img = c.image
        print(f"  branch {i}: x = {show_series(b.x)}, y = {show_series(b.y)}")
        print(f"    {c.kind:<14} partner={c.partner} image degree={img.primitive_degree} "
              f"image multiplicity={img.image_multiplicity} image tangent={[str(v) for v in img.tangent_direction]}")
    print(f"r_i = {dp.r_i}, r_f = {dp.r_f}, m(f(D)) = {dp.image_multiplicity_total}")

    line = choose_generic_line(f, dp, seed=0)
    print(f"\ngeneric line {line.coefficients}: passed {line.certificate}, rejected {line.rejected}")
    print(f"slice preimage: {source_slice(f, line)}")

    report = invariant_profile(f, seed=0, with_e_d=True)
    print(f"\nmu(W) = {report.mu_W} by colength, {report.mu_W_formula} by the decomposition "
          f"mu(D) + mu(slice) + 4 m(f(D)) - 1 = {report.mu_D} + {report.mu_gamma} + 4*{report.m_fD} - 1")
    print(f"e_D = {report.e_D}")
    for c in report.checks:
        print(f"  {c.name:<22} {c.status:<15} {c.lhs} {c.relation} {c.rhs}")


if __name__ == "__main__":
    main()
