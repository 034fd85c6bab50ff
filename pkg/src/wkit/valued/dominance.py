"""Valuations on Puiseux series and the dominance relations they induce.

Three valuation structures are supported:

* ``trivial``: v(a) = 0 for every a != 0;
* ``tadic``: the t-order, values in Q;
* ``composite:p``: (t-order d, v_p of the coefficient of t**d), ordered
  lexicographically in Q x Z.  Its d-part is the coarsening, and the leading
  coefficient is the specialization residue.
"""

from dataclasses import dataclass
from fractions import Fraction

from ..coefficients.padic import PAdic, valuation_of_rational
from ..coefficients.values import INFINITY
from ..errors import ZeroInput, ZeroOperandAmbiguity
from .puiseux import PuiseuxSeries


@dataclass(frozen=True)
class ValuationTag:
    kind: str
    p: int = None

    def __post_init__(self):
        if self.kind not in ("trivial", "tadic", "composite"):
            raise ValueError(f"unknown valuation {self.kind!r}")
        if self.kind == "composite" and not self.p:
            raise ValueError("composite valuation needs a prime")

    @classmethod
    def parse(cls, text):
        text = text.strip().lower()
        if text.startswith("composite"):
            _, _, p = text.partition(":")
            if not p:
                raise ValueError("use composite:p")
            return cls("composite", int(p))
        return cls(text)

    def __str__(self):
        return f"composite:{self.p}" if self.kind == "composite" else self.kind


TRIVIAL = ValuationTag("trivial")
TADIC = ValuationTag("tadic")


def composite(p):
    return ValuationTag("composite", p)


def as_puiseux(a, field=None):
    if isinstance(a, PuiseuxSeries):
        return a
    if isinstance(a, PAdic):
        from ..coefficients.fields import PAdicField

        return PuiseuxSeries.constant(a, field or PAdicField(a.p, a.prec or 20))
    from ..coefficients.fields import QQ

    return PuiseuxSeries.constant(Fraction(a), field or QQ)


def _coefficient_valuation(c, p):
    if isinstance(c, PAdic):
        if c.p != p:
            raise ValueError(f"coefficient is {c.p}-adic, valuation asks for p={p}")
        return c.valuation
    return valuation_of_rational(c, p)


def valuation(a, tag):
    """Value of ``a`` in the value group of ``tag`` (INFINITY for 0)."""
    a = as_puiseux(a)
    delta = a.val()
    if delta is INFINITY:
        return INFINITY
    if tag.kind == "trivial":
        return Fraction(0)
    if tag.kind == "tadic":
        return delta
    return (delta, _coefficient_valuation(a.terms[delta], tag.p))


@dataclass(frozen=True)
class DominanceVerdict:
    """a <= b, a < b, a ~= b (same value) and a ~ b (a - b < a)."""

    preceq: bool
    prec: bool
    asymp: bool
    _sim: bool = None

    @property
    def sim(self):
        if self._sim is None:
            raise ZeroOperandAmbiguity("a ~ b is undefined for a = 0")
        return self._sim

    def as_dict(self):
        return {
            "preceq": self.preceq,
            "prec": self.prec,
            "asymp": self.asymp,
            "sim": self._sim,
        }


def dominance_compare(a, b, tag):
    a = as_puiseux(a)
    b = as_puiseux(b, a.field)
    va = valuation(a, tag)
    vb = valuation(b, tag)
    sim = None
    if va is not INFINITY:
        sim = valuation(a - b, tag) > va
    return DominanceVerdict(va >= vb, va > vb, va == vb, sim)


def preceq(a, b, tag):
    return valuation(a, tag) >= valuation(b, tag)


@dataclass(frozen=True)
class Specialization:
    coarse: Fraction
    residue: object
    composite: tuple


def coarsen_specialize(a, p=None):
    """Split the composite value of ``a`` into t-order and residue.

    Returns the coarse value (t-order d), the residue f_d in the coefficient
    field, and the composite value (d, v_p(f_d)).
    """
    a = as_puiseux(a)
    if not a.terms:
        if a.prec is None:
            raise ZeroInput("zero has no residue")
        a.val()
    if p is None:
        p = getattr(a.field, "p", None)
        if p is None:
            raise ValueError("rational coefficients need an explicit prime")
    delta = a.val()
    residue = a.terms[delta]
    return Specialization(delta, residue, (delta, _coefficient_valuation(residue, p)))
