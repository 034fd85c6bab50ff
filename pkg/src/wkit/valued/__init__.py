"""Puiseux series, valuation structures, dominance relations, infinitesimal evaluation."""

from .dominance import (
    TADIC,
    TRIVIAL,
    DominanceVerdict,
    Specialization,
    ValuationTag,
    as_puiseux,
    coarsen_specialize,
    composite,
    dominance_compare,
    preceq,
    valuation,
)
from .evaluate import eval_infinitesimal
from .puiseux import DEFAULT_REL_PREC, LAURENT, LaurentField, PuiseuxSeries


def puiseux_arith(a, b, op):
    """``add``, ``sub``, ``mul``, ``div`` on two series, or ``val`` of the first."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    if op == "val":
        return a.val()
    raise ValueError(f"unknown operation {op!r}")


__all__ = [
    "DEFAULT_REL_PREC",
    "DominanceVerdict",
    "LAURENT",
    "LaurentField",
    "PuiseuxSeries",
    "Specialization",
    "TADIC",
    "TRIVIAL",
    "ValuationTag",
    "as_puiseux",
    "coarsen_specialize",
    "composite",
    "dominance_compare",
    "eval_infinitesimal",
    "preceq",
    "puiseux_arith",
    "valuation",
]
