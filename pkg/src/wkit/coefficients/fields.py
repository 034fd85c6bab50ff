"""Coefficient-field descriptors used by the generic series code.

A descriptor knows how to coerce rationals into the field, test for zero,
format elements, and extract k-th roots of constants when possible.
"""

from fractions import Fraction
from math import isqrt

from .padic import PAdic, padic_kth_root, valuation_of_rational
from ..errors import NoRoot, WkError


def _int_root(n, k):
    if n < 0:
        if k % 2 == 0:
            return None
        r = _int_root(-n, k)
        return None if r is None else -r
    if k == 2:
        r = isqrt(n)
    else:
        r = round(n ** (1.0 / k)) if n < 1 << 1000 else _int_root_newton(n, k)
        for cand in (r - 1, r, r + 1):
            if cand >= 0 and cand ** k == n:
                return cand
        r = _int_root_newton(n, k)
    return r if r ** k == n else None


def _int_root_newton(n, k):
    if n < 2:
        return n
    x = 1 << ((n.bit_length() + k - 1) // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            return x
        x = y


class RationalField:
    name = "QQ"
    exact = True

    def coerce(self, c):
        return Fraction(c)

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def is_zero(self, c):
        return c == 0

    def kth_root(self, c, k):
        """A rational k-th root of ``c`` (the positive one for even k), or None."""
        c = Fraction(c)
        num = _int_root(c.numerator, k)
        den = _int_root(c.denominator, k)
        if num is None or den is None:
            return None
        return Fraction(num, den)

    def format(self, c):
        return str(c)

    def to_json(self, c):
        return str(c)

    def from_json(self, s):
        return Fraction(s)

    def valuation(self, c, p):
        return valuation_of_rational(c, p)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


QQ = RationalField()


class PAdicField:
    exact = False

    def __init__(self, p, prec):
        self.p = p
        self.prec = prec
        self.name = f"Q{p}"

    def coerce(self, c):
        if isinstance(c, PAdic):
            return c
        return PAdic.from_rational(c, self.p, self.prec)

    @property
    def zero(self):
        return PAdic.zero(self.p)

    @property
    def one(self):
        return PAdic.from_rational(1, self.p, self.prec)

    def is_zero(self, c):
        return c.is_zero

    def kth_root(self, c, k, branch=None):
        try:
            return padic_kth_root(c, k, branch)
        except NoRoot:
            return None
        except WkError:
            raise

    def format(self, c):
        # A small rational with the same digits keeps the text parseable.
        return str(c.simplest_fraction())

    def to_json(self, c):
        return str(c.simplest_fraction())

    def from_json(self, s):
        return self.coerce(Fraction(s))

    def valuation(self, c, p=None):
        return c.valuation

    def __eq__(self, other):
        return isinstance(other, PAdicField) and (other.p, other.prec) == (self.p, self.prec)

    def __hash__(self):
        return hash(("Qp", self.p, self.prec))

    def __repr__(self):
        return f"PAdicField({self.p}, {self.prec})"
