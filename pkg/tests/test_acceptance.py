"""Acceptance criteria, one test per criterion.

Each test records PASS or FAIL; the summary prints one line per criterion at
the end of the pytest run.  ``python3 tests/test_acceptance.py`` runs the
same checks without pytest and prints the same lines.
"""

import io
import time
from contextlib import contextmanager
from pathlib import Path

from germsing.cli import main
from germsing.doublepoint import FOLD, IDENTIFICATION, classify_components, double_point_curve, is_finitely_determined
from germsing.family import EQUISINGULAR_AT_SAMPLES, NOT_EQUISINGULAR, UnfoldingFamily, whitney_verdict
from germsing.germfile import load_germ_file
from germsing.localalg import intersection_multiplicity, milnor_number
from germsing.polycore import exact_div, substitute_series
from germsing.puiseux import PlaneCurveGerm, tangent_directions
from germsing.sliceinv import NOT_APPLICABLE, PASS, W_curve

from conftest import ACCEPTANCE, DOUBLE_FOLDS, FD_GERMS, SEEDS, fixture_path, germ, profile, x, y

GOLDEN = Path(__file__).parent / "golden" / "c5_report.json"
INVARIANTS = ("mu_D", "mu_gamma", "mu_W", "m_D", "m_gamma", "m_fD", "i_D_gamma", "r_i", "r_f")


@contextmanager
def criterion(n, title):
    detail = []
    try:
        yield detail
    except BaseException:
        ACCEPTANCE[n] = (title, False, "; ".join(detail))
        print(f"criterion {n}: FAIL  {title}")
        raise
    ACCEPTANCE[n] = (title, True, "; ".join(detail))
    print(f"criterion {n}: PASS  {title}")


def unit_multiple(p, q):
    r = exact_div(p, q)
    return r.is_constant() and r.constant_term() != 0


def test_criterion_1_c5_golden():
    with criterion(1, "C5 double point curve, branches, classification and images") as detail:
        start = time.perf_counter()
        f = germ("c5")
        lam = double_point_curve(f)
        assert unit_multiple(lam, x * y**2 - x**5)
        dp = classify_components(f, lam)
        equations = {"x^2 - y": x**2 - y, "x^2 + y": x**2 + y, "x": x}
        found = {}
        for i, c in enumerate(dp.components):
            b = c.branch
            (name,) = [n for n, e in equations.items()
                       if substitute_series(e, {"x": b.x, "y": b.y}).is_zero()]
            found[name] = i
        assert set(found) == set(equations)
        fold = dp.components[found["x"]]
        assert fold.kind == FOLD
        first, second = dp.components[found["x^2 - y"]], dp.components[found["x^2 + y"]]
        assert first.kind == second.kind == IDENTIFICATION
        assert first.partner == found["x^2 + y"] and second.partner == found["x^2 - y"]
        assert (dp.r_i, dp.r_f, dp.image_multiplicity_total) == (2, 1, 2)
        # image branches V(X, Z) and V(Y - X^4, Z)
        X, Y, Z = fold.image.parametrization
        assert X.is_zero() and Z.is_zero() and not Y.is_zero()
        for c in (first, second):
            X, Y, Z = c.image.parametrization
            assert Z.is_zero() and (Y - X**4).is_zero()
        elapsed = time.perf_counter() - start
        detail.append(f"{elapsed:.2f} s")
        assert elapsed < 1.0


def test_criterion_2_identity_suite():
    with criterion(2, "LEMMA_A and LEMMA_C exact on every corpus germ for 3 seeds") as detail:
        corank1 = [n for n in FD_GERMS if n not in DOUBLE_FOLDS]
        assert len(FD_GERMS) >= 8 and len(DOUBLE_FOLDS) >= 2 and len(corank1) >= 6
        runs = 0
        for name in FD_GERMS:
            for seed in SEEDS:
                r = profile(name, seed)
                checks = r.identity_checks
                assert checks["LEMMA_A"].status == PASS, (name, seed)
                assert checks["LEMMA_C"].status == PASS, (name, seed)
                assert r.i_D_gamma == 2 * r.m_fD
                assert r.mu_W == r.mu_D + r.mu_gamma + 4 * r.m_fD - 1
                runs += 1
        detail.append(f"{len(FD_GERMS)} germs x {len(SEEDS)} seeds")


def test_criterion_3_oracle_equivalence():
    with criterion(3, "colength and Puiseux oracles agree on D, slice and W") as detail:
        curves = 0
        for name in FD_GERMS:
            f = germ(name)
            r = profile(name, 0)
            lam, g = r.lam, r.gamma
            W = W_curve(f, lam, r.line)
            for c in (lam, g, W):
                assert PlaneCurveGerm(c).milnor_from_branches() == milnor_number(c), (name, str(c))
                curves += 1
            assert PlaneCurveGerm(lam).intersection_with(g) == intersection_multiplicity(lam, g), name
            assert PlaneCurveGerm(g).intersection_with(lam) == r.i_D_gamma, name
        detail.append(f"{curves} curves")


def test_criterion_4_finite_determinacy():
    with criterion(4, "finite determinacy boundary"):
        fd = is_finitely_determined(germ("c5"))
        assert fd.finitely_determined and fd.mu_D == 6
        bad = is_finitely_determined(germ("not_fd"))
        assert not bad.finitely_determined
        assert unit_multiple(bad.witness, y**2)
        imm = is_finitely_determined(germ("immersion"))
        assert imm.empty and double_point_curve(germ("immersion")).constant_term()


def test_criterion_5_unfolding_verdicts():
    with criterion(5, "unfolding verdicts for C5 families") as detail:
        start = time.perf_counter()
        trivial = load_germ_file(fixture_path("c5_trivial"))
        v = whitney_verdict(UnfoldingFamily(trivial.components), 3, 0)
        assert v.verdict == EQUISINGULAR_AT_SAMPLES
        assert set(v.mu_W_values().values()) == {13}
        deform = load_germ_file(fixture_path("c5_deform"))
        w = whitney_verdict(UnfoldingFamily(deform.components), 3, 0)
        elapsed = time.perf_counter() - start
        assert w.verdict == NOT_EQUISINGULAR
        assert len(w.samples) == 4 and not w.semicontinuity_violations
        for s in w.samples:
            d = s.decomposition()
            expected = (13, 6) if s.t == 0 else (11, 4)
            assert (d["mu_W"], d["mu_D"]) == expected, s.t
            assert d["m_fD"] == 2 and d["mu_gamma"] == 0
        detail.append(f"{elapsed:.2f} s")
        assert elapsed < 10.0


def test_criterion_6_multiplicity_relations():
    with criterion(6, "multiplicity inequality and corollaries") as detail:
        transversal = 0
        for name in FD_GERMS:
            r = profile(name, 0)
            checks = r.identity_checks
            assert r.m_D * r.m_gamma <= 2 * r.m_fD and checks["LEMMA_B"].status == PASS
            if name in DOUBLE_FOLDS:
                assert r.m_D == r.m_fD and checks["COR_DOUBLE_FOLD"].status == PASS
            # a direction v of D(f) is tangent to the slice iff the slice's lowest form vanishes on v
            cone = r.gamma.lowest_form()
            disjoint = all(cone.evaluate(dict(zip(cone.gens, v))) != 0 for v in tangent_directions(r.lam))
            if disjoint:
                transversal += 1
                assert checks["COR_TRANSVERSAL"].status == PASS
                assert 2 * r.m_fD == r.m_D * r.m_gamma
            else:
                assert checks["COR_TRANSVERSAL"].status == NOT_APPLICABLE
        detail.append(f"transversal case on {transversal} germs")


def test_criterion_7_seed_invariance():
    with criterion(7, "invariants identical across 3 seeds, certificate recorded"):
        for name in FD_GERMS:
            values = set()
            for seed in SEEDS:
                r = profile(name, seed)
                values.add(tuple(getattr(r, k) for k in INVARIANTS))
                assert r.line.certificate == ["tangent_cone_avoidance", "squarefree", "coprime_to_lambda",
                                              "order", "lowest_form_squarefree"]
            assert len(values) == 1, name


def _without_seed(text):
    return "".join(line for line in text.splitlines(keepends=True) if not line.startswith('  "seed":'))


def test_criterion_8_cli_contract(tmp_path):
    with criterion(8, "CLI golden JSON for C5 and parse-error exit code"):
        # the golden report was produced with seed 0; other seeds certify other lines
        for argv in ([], ["--seed", "0"], ["--json"]):
            out, err = io.StringIO(), io.StringIO()
            assert main(["analyze", str(fixture_path("c5"))] + argv, out=out, err=err) == 0
            assert _without_seed(out.getvalue()) == GOLDEN.read_text()
        bad = tmp_path / "bad.germ"
        bad.write_text("germ\nvars x y\nf1 = x\nf2 = y^2\nf3 = x*exp(y)\n")
        out, err = io.StringIO(), io.StringIO()
        assert main(["analyze", str(bad)], out=out, err=err) == 2
        assert "line 5, column 8" in err.getvalue()


if __name__ == "__main__":
    import tempfile

    for n, test in enumerate([test_criterion_1_c5_golden, test_criterion_2_identity_suite,
                              test_criterion_3_oracle_equivalence, test_criterion_4_finite_determinacy,
                              test_criterion_5_unfolding_verdicts, test_criterion_6_multiplicity_relations,
                              test_criterion_7_seed_invariance], start=1):
        try:
            test()
        except AssertionError:
            pass
    with tempfile.TemporaryDirectory() as d:
        try:
            test_criterion_8_cli_contract(Path(d))
        except AssertionError:
            pass
