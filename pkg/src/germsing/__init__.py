"""Double point curves, slice invariants and sampled Whitney-equisingularity
verdicts for polynomial map germs (C^2, 0) -> (C^3, 0)."""

from .doublepoint import GermMap, double_point_curve, is_finitely_determined
from .family import UnfoldingFamily, whitney_verdict
from .sliceinv import invariant_profile

__version__ = "0.1.0"

__all__ = ["GermMap", "double_point_curve", "is_finitely_determined", "UnfoldingFamily",
           "whitney_verdict", "invariant_profile", "__version__"]
