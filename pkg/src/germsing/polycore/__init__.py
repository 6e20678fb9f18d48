"""Exact polynomial and series kernel."""

from .numberfield import NFElement, NumberField, field_of
from .polynomial import (
    Polynomial,
    VariableMismatch,
    divides,
    exact_div,
    gcd,
    gcd_list,
    prem,
    primitive,
    resultant,
    squarefree_part,
)
from .series import TruncatedSeries, TruncationError, inverse_unit, reversion, root_of_unit_series, substitute_series

__all__ = [
    "NFElement", "NumberField", "field_of", "Polynomial", "VariableMismatch", "divides",
    "exact_div", "gcd", "gcd_list", "prem", "primitive", "resultant", "squarefree_part",
    "TruncatedSeries", "TruncationError", "inverse_unit", "reversion", "root_of_unit_series", "substitute_series",
]
