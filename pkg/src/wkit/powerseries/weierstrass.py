"""Regularity, shears, Weierstrass division and preparation for truncated series.

All results are exact in the truncated ring: identities such as
``f == q*g + r`` hold modulo total degree ``order``.  As statements about the
true (untruncated) series, q and r are reliable modulo degree ``order - d``
when X_j**d occurs in the lowest-degree part of g (ord g == d).  If g has
terms of degree < d, each division round can lower the total degree, the
truncated inputs no longer determine q to that order, and different
algorithms may return different (equally valid) truncated solutions.
"""

from dataclasses import dataclass

from ..errors import (
    NonInfinitesimalArgument,
    NotRegular,
    RegularizationFailed,
    VariableCountMismatch,
    ZeroInput,
)
from .series import FormalSeries, _add_exp, divide_by_unit

REGULAR = "regular"
NOT_REGULAR = "not-regular"
UNDETERMINED = "undetermined"

DEFAULT_SHEAR_BOUND = 16


@dataclass(frozen=True)
class RegularityReport:
    var: int
    status: str
    order: int = None

    @property
    def is_regular(self):
        return self.status == REGULAR

    def __str__(self):
        if self.status == REGULAR:
            return f"regular in X{self.var} of order {self.order}"
        return f"{self.status} in X{self.var}"


def _resolve_var(f, var):
    j = f.nvars if var is None else var
    if not 1 <= j <= f.nvars:
        raise VariableCountMismatch(f"X{j} is not among X1..X{f.nvars}")
    return j


def regularity(f, var=None):
    """Order of f(0,..,0,X_j,0,..,0), distinguishing NotRegular from Undetermined.

    A pure-X_j part that vanishes up to the truncation order is NotRegular
    only if ``f`` is known to be an exact polynomial.
    """
    j = _resolve_var(f, var)
    idx = j - 1
    orders = [
        a[idx]
        for a in f.terms
        if all(e == 0 for i, e in enumerate(a) if i != idx)
    ]
    if orders:
        return RegularityReport(j, REGULAR, min(orders))
    return RegularityReport(j, NOT_REGULAR if f.exact else UNDETERMINED)


def substitute(f, gs):
    """Truncated composition f(g_1, ..., g_n).

    Every g_i must have zero constant term, so only terms of f of total
    degree <= order contribute and the result is exact modulo degree order.
    """
    if len(gs) != f.nvars:
        raise VariableCountMismatch(f"need {f.nvars} substituted series, got {len(gs)}")
    if not gs:
        raise VariableCountMismatch("nothing to substitute")
    m = gs[0].nvars
    field = gs[0].field
    for g in gs:
        if g.nvars != m:
            raise VariableCountMismatch("substituted series live in different rings")
        if not field.is_zero(g.constant_term()):
            raise NonInfinitesimalArgument("substituted series must vanish at the origin")
    order = min([f.order] + [g.order for g in gs])
    one = FormalSeries.one(m, order, field)
    powers = [[one, g.truncate(order)] for g in gs]

    def power(i, e):
        table = powers[i]
        while len(table) <= e:
            table.append(table[-1] * table[1])
        return table[e]

    result = FormalSeries.zero(m, order, field)
    for alpha, c in f.terms.items():
        if sum(alpha) > order:
            continue
        mono = None
        for i, e in enumerate(alpha):
            if e:
                mono = power(i, e) if mono is None else mono * power(i, e)
        term = one.scale(c) if mono is None else mono.scale(c)
        result = result + term
    exact = f.exact and all(g.exact for g in gs) and _exact_product_possible(f, gs, order)
    return result._like(result.terms, order=order, exact=exact and result.exact)


def _exact_product_possible(f, gs, order):
    # Upper bound on the degree of the composed polynomial.
    top = max((sum(a[i] * max(g.degree(), 0) for i, g in enumerate(gs)) for a in f.terms), default=0)
    return top <= order


def shear_images(nvars, order, d, field, inverse=False):
    """Images of X_1..X_m under the shear X_i -> X_i +- X_m**(d**(m-i))."""
    sign = -1 if inverse else 1
    images = []
    for i in range(1, nvars):
        xi = FormalSeries.variable(i, nvars, order, field)
        alpha = [0] * nvars
        alpha[-1] = d ** (nvars - i)
        images.append(xi + FormalSeries(nvars, order, {tuple(alpha): sign}, field, exact=True))
    images.append(FormalSeries.variable(nvars, nvars, order, field))
    return images


def tau_shear(f, d, inverse=False):
    """Apply the shear X_i -> X_i + X_m**(d**(m-i)) (i < m) or its inverse."""
    if d < 1:
        raise ValueError("shear parameter must be >= 1")
    if f.nvars < 1:
        raise VariableCountMismatch("shear needs at least one variable")
    if f.nvars == 1:
        return f
    return substitute(f, shear_images(f.nvars, f.order, d, f.field, inverse))


@dataclass(frozen=True)
class RegularizeResult:
    d: int
    sheared: tuple
    orders: tuple


def regularize(fs, bound=DEFAULT_SHEAR_BOUND):
    """Smallest d in 1..bound making every tau_d(f_i) regular in the last variable."""
    fs = list(fs)
    if not fs:
        raise ValueError("nothing to regularize")
    for f in fs:
        if f.is_zero():
            raise ZeroInput("cannot regularize the zero series")
    for d in range(1, bound + 1):
        sheared = [tau_shear(f, d) for f in fs]
        reports = [regularity(s) for s in sheared]
        if all(r.is_regular for r in reports):
            return RegularizeResult(d, tuple(sheared), tuple(r.order for r in reports))
    raise RegularizationFailed(f"no shear parameter d <= {bound} works at this truncation order")


@dataclass(frozen=True)
class DivisionResult:
    quotient: FormalSeries
    remainder: FormalSeries
    degree: int
    var: int
    iterations: int = 0

    def __iter__(self):
        return iter((self.quotient, self.remainder))


def _split_at(terms, idx, d):
    """Terms with X_j-exponent < d, and the others shifted down by X_j**d."""
    low, high = {}, {}
    for a, c in terms.items():
        if a[idx] < d:
            low[a] = c
        else:
            b = list(a)
            b[idx] -= d
            high[tuple(b)] = c
    return low, high


def _require_regular(g, var):
    rep = regularity(g, var)
    if not rep.is_regular:
        raise NotRegular(f"divisor is {rep}")
    return rep


def weierstrass_divide(f, g, var=None):
    """Weierstrass division f = q*g + r with deg_{X_j} r < d.

    Writes g = e*(X_j**d + b) with e a unit and b = g_low/e, where g_low
    collects the terms of X_j-degree < d (all in the ideal (X')).  Division
    by the normalized divisor is the fixed point of
    (q', r) = EuclidByLeading(f - q'*b), and Euclid by X_j**d is a mere
    exponent shift.  The update is applied to the correction only: each
    round multiplies by b and so raises the X'-adic order, hence at most
    order+1 rounds.  Finally q = q'/e.
    """
    if f.nvars != g.nvars:
        raise VariableCountMismatch("dividend and divisor have different variable counts")
    rep = _require_regular(g, var)
    j, d = rep.var, rep.order
    idx = j - 1
    order = min(f.order, g.order)
    f = f.truncate(order)
    low, high = _split_at(g.terms, idx, d)
    e = g._like(high, order=order, exact=False)
    b = divide_by_unit(g._like(low, order=order, exact=False), e)

    q_norm = FormalSeries.zero(f.nvars, order, f.field)
    r = FormalSeries.zero(f.nvars, order, f.field)
    h = f
    rounds = 0
    while h.terms:
        rounds += 1
        r_terms, h_high = _split_at(h.terms, idx, d)
        step = h._like(h_high, exact=False)
        r = r + h._like(r_terms, exact=False)
        q_norm = q_norm + step
        h = -(step * b)
    q = divide_by_unit(q_norm, e)
    r = r._like(r.terms, exact=False)
    exact = f.exact and g.exact and _is_exact_division(f, g, q, r)
    return DivisionResult(q._like(q.terms, exact=exact), r._like(r.terms, exact=exact), d, j, rounds)


def _is_exact_division(f, g, q, r):
    # Polynomial inputs with a polynomial quotient that never touched the
    # truncation boundary divide exactly.
    if q.degree() + g.degree() > f.order:
        return False
    return (q * g + r) == f


def divide_by_monic(f, w, var=None):
    """Euclidean division of f by a polynomial w monic in X_j, coefficients truncated."""
    j = f.nvars if var is None else var
    idx = j - 1
    d = w.degree_in(j)
    lead = [0] * f.nvars
    lead[idx] = d
    if w.coefficient(tuple(lead)) != 1:
        raise NotRegular("divisor is not monic in the division variable")
    order = min(f.order, w.order)
    field = f.field
    rest = [(a, c) for a, c in w.terms.items() if a != tuple(lead)]
    rem = {a: c for a, c in f.terms.items() if sum(a) <= order}
    quo = {}
    while True:
        pending = [a for a in rem if a[idx] >= d]
        if not pending:
            break
        top = max(a[idx] for a in pending)
        for a in [a for a in pending if a[idx] == top]:
            c = rem.pop(a)
            shift = list(a)
            shift[idx] -= d
            shift = tuple(shift)
            quo[shift] = quo.get(shift, field.zero) + c
            for b, cb in rest:
                key = _add_exp(shift, b)
                if sum(key) > order:
                    continue
                val = rem.get(key, field.zero) - c * cb
                if field.is_zero(val):
                    rem.pop(key, None)
                else:
                    rem[key] = val
    quo = {a: c for a, c in quo.items() if not field.is_zero(c)}
    return (
        FormalSeries._raw(f.nvars, order, quo, field, False),
        FormalSeries._raw(f.nvars, order, rem, field, False),
    )


@dataclass(frozen=True)
class PreparedForm:
    unit: FormalSeries
    wpoly: FormalSeries
    degree: int
    var: int

    def coefficients(self):
        """[w_1, ..., w_d] with w = X_j**d + w_1 X_j**(d-1) + ... + w_d."""
        idx = self.var - 1
        out = []
        for i in range(1, self.degree + 1):
            level = {}
            for a, c in self.wpoly.terms.items():
                if a[idx] == self.degree - i:
                    b = list(a)
                    b[idx] = 0
                    level[tuple(b)] = c
            out.append(self.wpoly._like(level))
        return out

    def __iter__(self):
        return iter((self.unit, self.wpoly))


def weierstrass_prepare(g, var=None):
    """g = u * w with u a unit and w monic of degree d in X_j, lower coefficients in (X')."""
    rep = _require_regular(g, var)
    j, d = rep.var, rep.order
    alpha = [0] * g.nvars
    alpha[j - 1] = d
    xd = FormalSeries(g.nvars, g.order, {tuple(alpha): 1}, g.field, exact=True)
    q, r = weierstrass_divide(xd, g, j)
    w = xd - r
    u = q.inverse()
    return PreparedForm(u, w._like(w.terms, exact=False), d, j)


def divide_via_preparation(f, g, var=None):
    """Second, independent division path: prepare g = u*w, divide f by monic w, q = Q/u."""
    prep = weierstrass_prepare(g, var)
    big_q, r = divide_by_monic(f, prep.wpoly, prep.var)
    q = divide_by_unit(big_q, prep.unit)
    return DivisionResult(q, r, prep.degree, prep.var)


def substitute_by_division(f, gs):
    """f(g(X)) computed by repeated Weierstrass division by Y_i - g_i(X).

    Used as an independent check on ``substitute``: the final remainder no
    longer involves any Y_i and equals the composition.
    """
    n = f.nvars
    if len(gs) != n:
        raise VariableCountMismatch(f"need {n} substituted series, got {len(gs)}")
    m = gs[0].nvars
    order = min([f.order] + [g.order for g in gs])
    field = f.field
    total = m + n
    lifted = FormalSeries(
        total, order, {(0,) * m + a: c for a, c in f.terms.items()}, field, exact=f.exact
    )
    for i in range(n, 0, -1):
        g = gs[i - 1]
        if not field.is_zero(g.constant_term()):
            raise NonInfinitesimalArgument("substituted series must vanish at the origin")
        yi = [0] * total
        yi[m + i - 1] = 1
        divisor = FormalSeries(total, order, {tuple(yi): 1}, field, exact=True) - FormalSeries(
            total, order, {a + (0,) * n: c for a, c in g.terms.items()}, field, exact=g.exact
        )
        lifted = weierstrass_divide(lifted, divisor, m + i).remainder
    terms = {a[:m]: c for a, c in lifted.terms.items()}
    return FormalSeries._raw(m, order, terms, field, False)
