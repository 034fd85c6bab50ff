"""Truncated multivariate formal power series and the Weierstrass-system operations."""

from .roots import hensel_root_series, implicit_solve
from .series import FormalSeries, divide_by_unit, first_discrepancy, format_terms, variables
from .weierstrass import (
    DEFAULT_SHEAR_BOUND,
    NOT_REGULAR,
    REGULAR,
    UNDETERMINED,
    DivisionResult,
    PreparedForm,
    RegularityReport,
    RegularizeResult,
    divide_by_monic,
    divide_via_preparation,
    regularity,
    regularize,
    substitute,
    substitute_by_division,
    tau_shear,
    weierstrass_divide,
    weierstrass_prepare,
)


def series_invert(f):
    return f.inverse()


def series_arith(f, g, op):
    """Ring operation by name: ``add``, ``sub`` or ``mul``."""
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    raise ValueError(f"unknown operation {op!r}")


__all__ = [
    "DEFAULT_SHEAR_BOUND",
    "DivisionResult",
    "FormalSeries",
    "NOT_REGULAR",
    "PreparedForm",
    "REGULAR",
    "RegularityReport",
    "RegularizeResult",
    "UNDETERMINED",
    "divide_by_monic",
    "divide_by_unit",
    "divide_via_preparation",
    "first_discrepancy",
    "format_terms",
    "hensel_root_series",
    "implicit_solve",
    "regularity",
    "regularize",
    "series_arith",
    "series_invert",
    "substitute",
    "substitute_by_division",
    "tau_shear",
    "variables",
    "weierstrass_divide",
    "weierstrass_prepare",
]
