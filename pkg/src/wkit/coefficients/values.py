"""Value-group elements with a top element.

Finite values are plain Python objects (``Fraction`` for rank-one groups,
tuples for lexicographic products), which already order correctly; the
only addition needed is ``INFINITY``, the value of zero.
"""

from fractions import Fraction
from functools import total_ordering


@total_ordering
class _Infinity:
    __slots__ = ()

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return False

    def __gt__(self, other):
        return other is not self

    def __hash__(self):
        return hash("wkit.INFINITY")

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __repr__(self):
        return "INFINITY"

    def __str__(self):
        return "oo"


INFINITY = _Infinity()


def is_infinite(value):
    return value is INFINITY


def format_value(value):
    if value is INFINITY:
        return "oo"
    if isinstance(value, tuple):
        return "(" + ", ".join(format_value(v) for v in value) + ")"
    return str(value)


def value_to_json(value):
    """JSON-friendly form: ``"oo"``, a rational string, or a list of those."""
    if value is INFINITY:
        return "oo"
    if isinstance(value, tuple):
        return [value_to_json(v) for v in value]
    if isinstance(value, Fraction) and value.denominator == 1:
        return str(value.numerator)
    return str(value)
