"""Evaluation of formal series at points of the maximal ideal of a Puiseux field."""

from ..errors import NotInfinitesimal, VariableCountMismatch
from .puiseux import PuiseuxSeries


def eval_infinitesimal(f, point):
    """f(a) for a tuple of Puiseux series with positive valuation.

    Terms of f above its truncation order have total degree > order, so they
    are invisible below t-order (order + 1) * min val(a_i); the result window
    is capped there unless ``f`` is an exact polynomial.
    """
    point = tuple(point)
    if len(point) != f.nvars:
        raise VariableCountMismatch(f"need {f.nvars} coordinates, got {len(point)}")
    if not point:
        return PuiseuxSeries.constant(f.constant_term())
    field = point[0].field
    vals = []
    for a in point:
        v = a.val()
        if not v > 0:
            raise NotInfinitesimal(f"coordinate {a} has valuation {v} <= 0")
        vals.append(v)
    limit = None if f.exact else (f.order + 1) * min(vals)

    def cut(x):
        return x if limit is None else x.truncated_at(limit)

    powers = [[PuiseuxSeries.constant(1, field), cut(a)] for a in point]

    def power(i, e):
        table = powers[i]
        while len(table) <= e:
            table.append(cut(table[-1] * table[1]))
        return table[e]

    total = PuiseuxSeries({}, field, limit)
    for alpha, c in f.terms.items():
        mono = PuiseuxSeries.constant(c, field)
        for i, e in enumerate(alpha):
            if e:
                mono = cut(mono * power(i, e))
        total = total + mono
    return cut(total) if limit is not None else total

