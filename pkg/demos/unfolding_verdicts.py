"""Sampled equisingularity verdicts for two unfoldings of C5.

The trivial unfolding keeps mu(W) at 13.  Adding t*x^3*y drops mu(D) from 6
to 4 for t != 0, so mu(W) jumps from 13 to 11 and the family is not
Whitney equisingular.

Run with ``python3 demos/unfolding_verdicts.py``.
"""

from germsing.family import UnfoldingFamily, whitney_verdict
from germsing.germfile import parse_germ_text
from germsing.report import verdict_text

FAMILIES = {
    "trivial": "x*y^3 - x^5*y",
    "deformed": "x*y^3 - x^5*y + t*x^3*y",
}


def main():
    for name, f3 in FAMILIES.items():
        spec = parse_germ_text(f"unfolding\nvars x y t\nf1 = x\nf2 = y^2\nf3 = {f3}\n")
        table = whitney_verdict(UnfoldingFamily(spec.components, name=name), sample_count=3, seed=0)
        print(f"== {name}: f3 = {f3}")
        print(verdict_text(table))


if __name__ == "__main__":
    main()
