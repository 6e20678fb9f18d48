from functools import lru_cache

from germsing.doublepoint import GermMap
from germsing.germfile import bundled_fixtures, load_germ_file
from germsing.polycore import Polynomial
from germsing.sliceinv import invariant_profile

XY = ("x", "y")
x = Polynomial.var(XY, "x")
y = Polynomial.var(XY, "y")

# finitely determined germs with a nonempty double point curve
FD_GERMS = ("b2", "c3", "c5", "crosscap", "df1", "df2", "f4", "h2", "s1", "s2", "s3")
DOUBLE_FOLDS = ("df1", "df2")
SEEDS = (0, 1, 2)


def poly(text):
    """Parse a polynomial in x, y through the germ file reader."""
    from germsing.germfile import parse_germ_text

    spec = parse_germ_text(f"germ\nvars x y\nf1 = {text}\nf2 = 0\nf3 = 0\n")
    return spec.components[0]


def fixture_path(name):
    (path,) = [p for p in bundled_fixtures() if p.stem == name]
    return path


@lru_cache(maxsize=None)
def germ(name):
    spec = load_germ_file(fixture_path(name))
    return GermMap(spec.components, name=name)


@lru_cache(maxsize=None)
def profile(name, seed=0, branch_checks=False):
    return invariant_profile(germ(name), seed, strict=False, branch_checks=branch_checks)


# acceptance criterion number -> (title, passed, detail); filled by test_acceptance
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        title, passed, detail = ACCEPTANCE[n]
        line = f"criterion {n}: {'PASS' if passed else 'FAIL'}  {title}"
        terminalreporter.write_line(line + (f"  ({detail})" if detail else ""))
