"""Truncated Puiseux series sum c_q t**q with rational exponents.

``prec`` is the t-order window: terms at exponents >= prec are unknown.
``prec=None`` marks an exact finite sum.  Coefficients come from ``QQ`` or
a ``PAdicField``.
"""

from fractions import Fraction
from math import lcm
from numbers import Rational

from ..coefficients.fields import QQ
from ..coefficients.padic import PAdic
from ..coefficients.values import INFINITY
from ..errors import DivisionByZero, WindowUnderflow

# Relative t-precision used when inverting a series with more than one term.
DEFAULT_REL_PREC = Fraction(12)


def _min_prec(*precs):
    live = [p for p in precs if p is not None]
    return min(live) if live else None


class PuiseuxSeries:
    __slots__ = ("field", "terms", "prec")

    def __init__(self, terms=None, field=QQ, prec=None):
        self.field = field
        self.prec = None if prec is None else Fraction(prec)
        clean = {}
        for q, c in (terms or {}).items():
            q = Fraction(q)
            c = field.coerce(c)
            if field.is_zero(c):
                continue
            if self.prec is not None and q >= self.prec:
                continue
            clean[q] = c
        self.terms = clean

    @classmethod
    def _raw(cls, terms, field, prec):
        obj = cls.__new__(cls)
        obj.field = field
        obj.terms = terms
        obj.prec = prec
        return obj

    @classmethod
    def constant(cls, c, field=QQ, prec=None):
        return cls({0: c}, field, prec)

    @classmethod
    def t_power(cls, q, field=QQ, c=1):
        return cls({Fraction(q): c}, field)

    # -- inspection ----------------------------------------------------------

    @property
    def ramification(self):
        dens = [q.denominator for q in self.terms]
        if self.prec is not None:
            dens.append(self.prec.denominator)
        return lcm(*dens) if dens else 1

    @property
    def is_exact(self):
        return self.prec is None

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def val(self):
        """t-adic valuation: the smallest exponent in the support."""
        if self.terms:
            return min(self.terms)
        if self.prec is None:
            return INFINITY
        raise WindowUnderflow(f"no nonzero term below t^({self.prec})")

    def leading_coefficient(self):
        return self.terms[self.val()]

    def coefficient(self, q):
        return self.terms.get(Fraction(q), self.field.zero)

    def sorted_terms(self):
        return sorted(self.terms.items())

    def truncated_at(self, limit):
        limit = Fraction(limit)
        prec = limit if self.prec is None else min(self.prec, limit)
        return PuiseuxSeries._raw({q: c for q, c in self.terms.items() if q < prec}, self.field, prec)

    # -- arithmetic ------------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, PuiseuxSeries):
            return other
        if isinstance(other, (int, Rational, PAdic)):
            return PuiseuxSeries.constant(other, self.field)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        prec = _min_prec(self.prec, other.prec)
        out = {q: c for q, c in self.terms.items() if prec is None or q < prec}
        for q, c in other.terms.items():
            if prec is not None and q >= prec:
                continue
            if q in out:
                s = out[q] + c
                if self.field.is_zero(s):
                    del out[q]
                else:
                    out[q] = s
            else:
                out[q] = c
        return PuiseuxSeries._raw(out, self.field, prec)

    __radd__ = __add__

    def __neg__(self):
        return PuiseuxSeries._raw({q: -c for q, c in self.terms.items()}, self.field, self.prec)

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def _lowest(self):
        # Lower bound for the valuation, usable even when the window is empty.
        if self.terms:
            return min(self.terms)
        return self.prec

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if (not self.terms and self.prec is None) or (not other.terms and other.prec is None):
            return PuiseuxSeries._raw({}, self.field, None)
        bounds = []
        if self.prec is not None:
            bounds.append(self.prec + other._lowest())
        if other.prec is not None:
            bounds.append(other.prec + self._lowest())
        prec = min(bounds) if bounds else None
        out = {}
        for qa, ca in self.terms.items():
            for qb, cb in other.terms.items():
                q = qa + qb
                if prec is not None and q >= prec:
                    continue
                out[q] = out[q] + ca * cb if q in out else ca * cb
        out = {q: c for q, c in out.items() if not self.field.is_zero(c)}
        return PuiseuxSeries._raw(out, self.field, prec)

    __rmul__ = __mul__

    def inverse(self, rel_prec=None):
        if not self.terms:
            if self.prec is None:
                raise DivisionByZero("inverse of the zero series")
            raise WindowUnderflow("divisor vanishes on its whole window")
        v = self.val()
        c = self.terms[v]
        cinv = self.field.one / c
        if len(self.terms) == 1 and self.prec is None:
            return PuiseuxSeries._raw({-v: cinv}, self.field, None)
        if rel_prec is None:
            rel_prec = self.prec - v if self.prec is not None else DEFAULT_REL_PREC
        # self = c t^v (1 + eps) with val(eps) > 0
        eps = PuiseuxSeries._raw(
            {q - v: x * cinv for q, x in self.terms.items() if q != v},
            self.field,
            None if self.prec is None else self.prec - v,
        ).truncated_at(rel_prec)
        total = PuiseuxSeries._raw({Fraction(0): self.field.one}, self.field, rel_prec)
        power = total
        while power.terms:
            power = (power * -eps).truncated_at(rel_prec)
            total = total + power
        return PuiseuxSeries._raw(
            {q - v: x * cinv for q, x in total.terms.items()}, self.field, total.prec - v
        )

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = PuiseuxSeries.constant(1, self.field)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- comparison --------------------------------------------------------------

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.prec != other.prec or self.terms.keys() != other.terms.keys():
            return False
        return all(self.terms[q] == other.terms[q] for q in self.terms)

    def __hash__(self):
        return hash((frozenset(self.terms), self.prec))

    def agrees_with(self, other, window=None):
        """Coefficients agree below the shared window (and below ``window`` if given)."""
        other = self._coerce(other)
        limit = _min_prec(self.prec, other.prec, None if window is None else Fraction(window))
        diff = self - other
        return all(limit is not None and q >= limit for q in diff.terms)

    # -- text ----------------------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for i, (q, c) in enumerate(self.sorted_terms()):
            text = self.field.format(c)
            neg = text.startswith("-")
            if neg:
                text = text[1:]
            if "/" in text and q != 0:
                text = f"({text})"
            mono = _format_t(q)
            if mono:
                body = mono if text == "1" else f"{text}*{mono}"
            else:
                body = text
            if i == 0:
                parts.append(f"-{body}" if neg else body)
            else:
                parts.append(f" - {body}" if neg else f" + {body}")
        return "".join(parts)

    def __repr__(self):
        tail = "" if self.prec is None else f" + O(t^({self.prec}))"
        return f"PuiseuxSeries({self}{tail})"

    def to_json(self):
        return {
            "terms": [[str(q), self.field.to_json(c)] for q, c in self.sorted_terms()],
            "prec": None if self.prec is None else str(self.prec),
        }


def _format_t(q):
    if q == 0:
        return ""
    if q == 1:
        return "t"
    if q.denominator == 1 and q > 0:
        return f"t^{q.numerator}"
    return f"t^({q})"


class LaurentField:
    """Laurent series over Q in t, as a coefficient field with |t| < 1 and residue field Q."""

    exact = False
    name = "QQ((t))"

    def coerce(self, c):
        if isinstance(c, PuiseuxSeries):
            return c
        return PuiseuxSeries.constant(Fraction(c), QQ)

    @property
    def zero(self):
        return PuiseuxSeries({}, QQ)

    @property
    def one(self):
        return PuiseuxSeries.constant(1, QQ)

    def is_zero(self, c):
        return c.is_zero()

    def kth_root(self, c, k):
        return None

    def format(self, c):
        if len(c.terms) == 1 and 0 in c.terms:
            return str(c.terms[0])
        return f"({c})"

    def to_json(self, c):
        return c.to_json()

    def from_json(self, data):
        return PuiseuxSeries({Fraction(q): Fraction(x) for q, x in data["terms"]}, QQ, data.get("prec"))

    def __eq__(self, other):
        return isinstance(other, LaurentField)

    def __hash__(self):
        return hash("QQ((t))")

    def __repr__(self):
        return "LaurentField()"


LAURENT = LaurentField()
