"""The p-adic Kochen operator.

    wp(x)    = x**p - x
    gamma(x) = (1/p) * wp(x) / (wp(x)**2 - 1),   INFINITY when wp(x) = +-1

For every x in Q_p the value lies in Z_p.  The functions here are generic:
any field element supporting ``**``, ``-``, ``*`` and ``/`` works.
"""

from fractions import Fraction
from numbers import Rational

from ..errors import PrecisionExhausted
from .padic import PAdic
from .values import INFINITY


def wp(x, p):
    return x ** p - x


def _is_zero(x):
    if isinstance(x, PAdic):
        if x.is_zero and not x.is_exact_zero:
            raise PrecisionExhausted("cannot decide whether wp(x)**2 - 1 vanishes")
        return x.is_zero
    zero_test = getattr(x, "is_zero", None)
    if zero_test is not None:
        return zero_test() if callable(zero_test) else zero_test
    return x == 0


def kochen_gamma(x, p):
    """gamma_p(x), or INFINITY at the poles wp(x) = +-1.

    Rationals are handled exactly in Q; embed the result afterwards if a
    p-adic value is wanted.
    """
    if isinstance(x, (int, Rational)) and not isinstance(x, PAdic):
        x = Fraction(x)
        w = x ** p - x
        den = w * w - 1
        if den == 0:
            return INFINITY
        return w / (p * den)
    w = wp(x, p)
    den = w * w - 1
    if _is_zero(den):
        return INFINITY
    return w / (den * p)
