"""Ground-field arithmetic: rationals, p-adics, the Kochen operator, root lifting."""

from fractions import Fraction as Rational

from .fields import QQ, PAdicField, RationalField
from .gamma import kochen_gamma, wp
from .padic import (
    PAdic,
    newton_lift,
    padic_from_rational,
    padic_kth_root,
    valuation_of_int,
    valuation_of_rational,
)
from .values import INFINITY, format_value, is_infinite

__all__ = [
    "INFINITY",
    "PAdic",
    "PAdicField",
    "QQ",
    "Rational",
    "RationalField",
    "format_value",
    "is_infinite",
    "kochen_gamma",
    "newton_lift",
    "padic_from_rational",
    "padic_kth_root",
    "valuation_of_int",
    "valuation_of_rational",
    "wp",
]
