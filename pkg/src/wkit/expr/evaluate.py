"""Interpret expression trees in different rings.

A ring descriptor supplies constants, variables and the basic operations;
``gamma``, ``wp``, ``kfrac``, ``sosinv`` and ``inv`` have generic definitions
in terms of those, so every ring computes them by the same formulas.
"""

from fractions import Fraction

from ..coefficients.fields import QQ
from ..coefficients.gamma import kochen_gamma
from ..coefficients.values import is_infinite
from ..errors import (
    GammaPole,
    NotAUnit,
    UnsupportedNode,
    VariableCountMismatch,
    ZeroDenominator,
)
from ..powerseries.series import FormalSeries, divide_by_unit
from . import ast


class Ring:
    """Base descriptor; subclasses override what their elements need."""

    p = None

    def const(self, c):
        raise UnsupportedNode(f"{type(self).__name__} has no constants")

    def param(self):
        if self.p is None:
            raise UnsupportedNode("the prime p is not declared")
        return self.const(Fraction(self.p))

    def var(self, i):
        raise UnsupportedNode(f"X{i} is not available in {type(self).__name__}")

    def tpow(self, q):
        raise UnsupportedNode(f"t is not available in {type(self).__name__}")

    def atom(self, name):
        raise UnsupportedNode(f"unknown series atom {name!r}")

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def pow(self, a, n):
        result = self.const(Fraction(1))
        for _ in range(n):
            result = self.mul(result, a)
        return result

    def div(self, a, b):
        raise UnsupportedNode(f"{type(self).__name__} has no division")

    def is_zero(self, a):
        return a == 0

    def wp(self, a):
        if self.p is None:
            raise UnsupportedNode("wp needs a declared prime p")
        return self.sub(self.pow(a, self.p), a)

    def gamma(self, a):
        w = self.wp(a)
        den = self.sub(self.mul(w, w), self.const(Fraction(1)))
        if self.is_zero(den):
            raise GammaPole("wp(x)**2 - 1 vanishes")
        return self.div(w, self.mul(self.param(), den))

    def kfrac(self, f, g):
        den = self.sub(self.const(Fraction(1)), self.mul(self.param(), g))
        return self.div(f, den)

    def sosinv(self, xs):
        total = self.const(Fraction(1))
        for x in xs:
            total = self.add(total, self.mul(x, x))
        return self.div(self.const(Fraction(1)), total)

    def inv(self, a):
        return self.div(self.const(Fraction(1)), a)


def evaluate(node, ring):
    """Value of ``node`` in ``ring``; shared subtrees are evaluated once."""
    memo = {}

    def ev(n):
        if n in memo:
            return memo[n]
        if isinstance(n, ast.Num):
            out = ring.const(n.value)
        elif isinstance(n, ast.Param):
            out = ring.param()
        elif isinstance(n, ast.Var):
            out = ring.var(n.index)
        elif isinstance(n, ast.TPow):
            out = ring.tpow(n.exponent)
        elif isinstance(n, ast.SeriesAtom):
            out = ring.atom(n.name)
        elif isinstance(n, ast.Add):
            out = ring.add(ev(n.left), ev(n.right))
        elif isinstance(n, ast.Sub):
            out = ring.sub(ev(n.left), ev(n.right))
        elif isinstance(n, ast.Mul):
            out = ring.mul(ev(n.left), ev(n.right))
        elif isinstance(n, ast.Div):
            out = ring.div(ev(n.left), ev(n.right))
        elif isinstance(n, ast.Neg):
            out = ring.neg(ev(n.child))
        elif isinstance(n, ast.Pow):
            out = ring.pow(ev(n.base), n.exponent)
        elif isinstance(n, ast.Gamma):
            out = ring.gamma(ev(n.child))
        elif isinstance(n, ast.Wp):
            out = ring.wp(ev(n.child))
        elif isinstance(n, ast.Inv):
            out = ring.inv(ev(n.child))
        elif isinstance(n, ast.KFrac):
            out = ring.kfrac(ev(n.num), ev(n.g))
        elif isinstance(n, ast.SosInv):
            out = ring.sosinv([ev(c) for c in n.children])
        else:
            raise TypeError(f"not an expression node: {n!r}")
        memo[n] = out
        return out

    return ev(node)


# -- truncated power series -------------------------------------------------------


class SeriesRing(Ring):
    """Truncated series in X1..Xm; division only by units."""

    def __init__(self, nvars, order, field=QQ, p=None, atoms=None):
        self.nvars = nvars
        self.order = order
        self.field = field
        self.p = p
        self.atoms = dict(atoms or {})

    def const(self, c):
        return FormalSeries.constant(c, self.nvars, self.order, self.field)

    def var(self, i):
        if not 1 <= i <= self.nvars:
            raise VariableCountMismatch(f"X{i} is not among X1..X{self.nvars}")
        return FormalSeries.variable(i, self.nvars, self.order, self.field)

    def atom(self, name):
        if name not in self.atoms:
            return super().atom(name)
        return self.atoms[name]

    def pow(self, a, n):
        return a ** n

    def is_zero(self, a):
        # Only an exact zero is a pole; a unit constant term makes it invertible
        return a.is_zero() and a.exact

    def div(self, a, b):
        if b.is_zero():
            raise ZeroDenominator("division by a series that vanishes to the working order")
        if b.exact and set(b.terms) == {(0,) * self.nvars}:
            return a.scale(self.field.one / b.constant_term())
        try:
            return divide_by_unit(a, b)
        except NotAUnit as exc:
            raise ZeroDenominator(f"denominator is not a unit: {exc}") from exc

    def gamma(self, a):
        w = self.wp(a)
        den = w * w - 1
        if self.field.is_zero(den.constant_term()):
            raise GammaPole("wp(x)**2 - 1 has zero constant term")
        return self.div(w, den.scale(self.p))


# -- fractions of truncated series -----------------------------------------------------


class Frac:
    """num / den with both truncated series; no gcd reduction."""

    __slots__ = ("num", "den")

    def __init__(self, num, den):
        self.num = num
        self.den = den

    @property
    def exact(self):
        return self.num.exact and self.den.exact

    def series(self):
        """Expand as a single series (needs a unit denominator)."""
        try:
            return divide_by_unit(self.num, self.den)
        except NotAUnit as exc:
            raise ZeroDenominator("denominator has zero constant term") from exc

    def __iter__(self):
        return iter((self.num, self.den))

    def __repr__(self):
        return f"Frac(({self.num}) / ({self.den}))"


def _is_one(s):
    return s.exact and len(s.terms) == 1 and s.terms.get((0,) * s.nvars) == 1


class FractionRing(Ring):
    """Fractions of truncated series: no inversion ever happens.

    When all inputs are polynomials and ``order`` is at least the degree
    bound from ``DegreeRing``, every numerator and denominator is exact.
    """

    def __init__(self, nvars, order, field=QQ, p=None, atoms=None):
        self.base = SeriesRing(nvars, order, field, p, atoms)
        self.p = p

    @property
    def one_series(self):
        return self.base.const(Fraction(1))

    def _frac(self, s):
        return Frac(s, self.one_series)

    def const(self, c):
        return self._frac(self.base.const(c))

    def var(self, i):
        return self._frac(self.base.var(i))

    def atom(self, name):
        return self._frac(self.base.atom(name))

    def _mul(self, x, y):
        if _is_one(x):
            return y
        if _is_one(y):
            return x
        return x * y

    def add(self, a, b):
        if a.den == b.den:
            return Frac(a.num + b.num, a.den)
        return Frac(self._mul(a.num, b.den) + self._mul(b.num, a.den), self._mul(a.den, b.den))

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def neg(self, a):
        return Frac(-a.num, a.den)

    def mul(self, a, b):
        return Frac(self._mul(a.num, b.num), self._mul(a.den, b.den))

    def pow(self, a, n):
        return Frac(a.num ** n, a.den ** n)

    def div(self, a, b):
        if b.num.is_zero():
            raise ZeroDenominator("denominator vanishes" + ("" if b.num.exact else " to the working order"))
        return Frac(self._mul(a.num, b.den), self._mul(a.den, b.num))

    def is_zero(self, a):
        return a.num.is_zero() and a.num.exact


class DegreeRing(Ring):
    """Upper bounds (deg num, deg den) mirroring FractionRing's formulas."""

    def __init__(self, p=None, atoms=None):
        self.p = p
        self.atoms = dict(atoms or {})
        self.inexact = False

    def const(self, c):
        return (0, 0)

    def var(self, i):
        return (1, 0)

    def atom(self, name):
        s = self.atoms.get(name)
        if s is None:
            return super().atom(name)
        if not s.exact:
            self.inexact = True
        return (max(s.degree(), 0), 0)

    def add(self, a, b):
        return (max(a[0] + b[1], b[0] + a[1]), a[1] + b[1])

    sub = add

    def neg(self, a):
        return a

    def mul(self, a, b):
        return (a[0] + b[0], a[1] + b[1])

    def pow(self, a, n):
        return (a[0] * n, a[1] * n)

    def div(self, a, b):
        return (a[0] + b[1], a[1] + b[0])

    def is_zero(self, a):
        return False


# -- points ---------------------------------------------------------------------------------


class PointRing(Ring):
    """Exact rational value at a rational point."""

    def __init__(self, point, p=None):
        self.point = tuple(Fraction(x) for x in point)
        self.p = p

    def const(self, c):
        return Fraction(c)

    def var(self, i):
        if not 1 <= i <= len(self.point):
            raise VariableCountMismatch(f"X{i} has no coordinate in a {len(self.point)}-point")
        return self.point[i - 1]

    def pow(self, a, n):
        return a ** n

    def div(self, a, b):
        if b == 0:
            raise ZeroDenominator("division by zero at this point")
        return a / b

    def gamma(self, a):
        if self.p is None:
            raise UnsupportedNode("gamma needs a declared prime p")
        value = kochen_gamma(a, self.p)
        if is_infinite(value):
            raise GammaPole(f"gamma has a pole at {a}")
        return value


# -- restricted power series ------------------------------------------------------------------


class TateRing(Ring):
    def __init__(self, nvars, p, prec):
        from ..tate import TateElement

        self.cls = TateElement
        self.nvars = nvars
        self.p = p
        self.prec = prec

    def const(self, c):
        return self.cls.constant(c, self.nvars, self.p, self.prec)

    def var(self, i):
        if not 1 <= i <= self.nvars:
            raise VariableCountMismatch(f"X{i} is not among X1..X{self.nvars}")
        return self.cls.variable(i, self.nvars, self.p, self.prec)

    def pow(self, a, n):
        return a ** n

    def is_zero(self, a):
        return a.is_zero()

    def div(self, a, b):
        if b.is_zero():
            raise ZeroDenominator("division by zero mod p^N")
        try:
            return a / b
        except NotAUnit as exc:
            raise ZeroDenominator(f"denominator is not a unit: {exc}") from exc


# -- Puiseux series ------------------------------------------------------------------------------


class PuiseuxRing(Ring):
    def __init__(self, field=QQ, p=None):
        from ..valued.puiseux import PuiseuxSeries

        self.cls = PuiseuxSeries
        self.field = field
        self.p = p

    def const(self, c):
        return self.cls.constant(c, self.field)

    def tpow(self, q):
        return self.cls.t_power(q, self.field)

    def pow(self, a, n):
        return a ** n

    def is_zero(self, a):
        return a.is_zero()

    def div(self, a, b):
        if b.is_zero() and b.is_exact:
            raise ZeroDenominator("division by the zero series")
        return a / b


def parse_in(src, ring):
    """Parse text and evaluate it in ``ring``."""
    from .parser import parse_expression

    return evaluate(parse_expression(src), ring)
