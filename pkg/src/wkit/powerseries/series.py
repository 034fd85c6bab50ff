"""Sparse multivariate power series truncated at a total degree.

A ``FormalSeries`` stores the terms of total degree <= ``order`` as a dict
mapping exponent tuples to nonzero coefficients of a pluggable field.  The
``exact`` flag records that the series is a polynomial whose every term is
present, i.e. nothing above ``order`` was ever discarded.
"""

from fractions import Fraction
from math import gcd
from numbers import Rational

from ..coefficients.fields import QQ
from ..errors import NotAUnit, VariableCountMismatch


def _add_exp(a, b):
    return tuple(x + y for x, y in zip(a, b))


def graded_key(alpha):
    """Graded-lex order: total degree first, then X1-heavy terms first."""
    return (sum(alpha), tuple(-e for e in alpha))


class FormalSeries:
    __slots__ = ("nvars", "order", "terms", "field", "exact")

    def __init__(self, nvars, order, terms=None, field=QQ, exact=None):
        self.nvars = nvars
        self.order = order
        self.field = field
        clean = {}
        dropped = False
        if terms:
            for alpha, c in terms.items():
                alpha = tuple(alpha)
                if len(alpha) != nvars:
                    raise VariableCountMismatch(
                        f"exponent {alpha} does not have {nvars} entries"
                    )
                c = field.coerce(c)
                if field.is_zero(c):
                    continue
                if sum(alpha) > order:
                    dropped = True
                    continue
                clean[alpha] = c
        self.terms = clean
        self.exact = (not dropped) if exact is None else (exact and not dropped)

    # -- constructors -------------------------------------------------------

    @classmethod
    def _raw(cls, nvars, order, terms, field, exact):
        obj = cls.__new__(cls)
        obj.nvars = nvars
        obj.order = order
        obj.terms = terms
        obj.field = field
        obj.exact = exact
        return obj

    @classmethod
    def constant(cls, c, nvars, order, field=QQ):
        return cls(nvars, order, {(0,) * nvars: c}, field, exact=True)

    @classmethod
    def zero(cls, nvars, order, field=QQ):
        return cls._raw(nvars, order, {}, field, True)

    @classmethod
    def one(cls, nvars, order, field=QQ):
        return cls.constant(1, nvars, order, field)

    @classmethod
    def variable(cls, i, nvars, order, field=QQ):
        """The coordinate X_i (1-based)."""
        if not 1 <= i <= nvars:
            raise VariableCountMismatch(f"X{i} is not among X1..X{nvars}")
        alpha = tuple(1 if j == i - 1 else 0 for j in range(nvars))
        return cls(nvars, order, {alpha: 1}, field, exact=True)

    @classmethod
    def monomial(cls, alpha, c=1, order=None, field=QQ):
        alpha = tuple(alpha)
        return cls(len(alpha), sum(alpha) if order is None else order, {alpha: c}, field, exact=True)

    def _like(self, terms, order=None, exact=None):
        return FormalSeries._raw(
            self.nvars,
            self.order if order is None else order,
            terms,
            self.field,
            self.exact if exact is None else exact,
        )

    # -- inspection ------------------------------------------------------------

    def coefficient(self, alpha):
        return self.terms.get(tuple(alpha), self.field.zero)

    def constant_term(self):
        return self.coefficient((0,) * self.nvars)

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def valuation_order(self):
        """Lowest total degree with a nonzero term (None for the zero series)."""
        if not self.terms:
            return None
        return min(sum(a) for a in self.terms)

    def degree(self):
        if not self.terms:
            return -1
        return max(sum(a) for a in self.terms)

    def degree_in(self, j):
        """Largest exponent of X_j (1-based) among stored terms, -1 for zero."""
        if not self.terms:
            return -1
        return max(a[j - 1] for a in self.terms)

    def homogeneous_part(self, k):
        return self._like({a: c for a, c in self.terms.items() if sum(a) == k})

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda item: graded_key(item[0]))

    # -- order management ----------------------------------------------------------

    def truncate(self, order):
        """Drop terms above ``order``; a larger ``order`` only relabels exact series."""
        if order >= self.order:
            if self.exact:
                return self._like(dict(self.terms), order=order)
            return self
        kept = {a: c for a, c in self.terms.items() if sum(a) <= order}
        return self._like(kept, order=order, exact=self.exact and len(kept) == len(self.terms))

    def with_order(self, order):
        return self.truncate(order)

    # -- arithmetic ------------------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, FormalSeries):
            if other.nvars != self.nvars:
                raise VariableCountMismatch(
                    f"series in {self.nvars} and {other.nvars} variables"
                )
            return other
        c = self._scalar(other)
        if c is NotImplemented:
            return c
        return FormalSeries.constant(c, self.nvars, self.order, self.field)

    def _scalar(self, other):
        if isinstance(other, FormalSeries):
            return NotImplemented
        try:
            return self.field.coerce(other)
        except (TypeError, ValueError):
            return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        order = min(self.order, other.order)
        field = self.field
        terms = {a: c for a, c in self.terms.items() if sum(a) <= order}
        exact = self.exact and other.exact
        if len(terms) != len(self.terms):
            exact = False
        for a, c in other.terms.items():
            if sum(a) > order:
                exact = False
                continue
            if a in terms:
                s = terms[a] + c
                if field.is_zero(s):
                    del terms[a]
                else:
                    terms[a] = s
            else:
                terms[a] = c
        return self._like(terms, order=order, exact=exact)

    __radd__ = __add__

    def __neg__(self):
        return self._like({a: -c for a, c in self.terms.items()})

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

    def scale(self, c):
        c = self.field.coerce(c)
        if self.field.is_zero(c):
            return self._like({})
        terms = {}
        for a, x in self.terms.items():
            y = x * c
            if not self.field.is_zero(y):
                terms[a] = y
        return self._like(terms)

    def __mul__(self, other):
        if not isinstance(other, FormalSeries):
            c = self._scalar(other)
            return c if c is NotImplemented else self.scale(c)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        order = min(self.order, other.order)
        terms, dropped = _mul_terms(self.terms, other.terms, order, self.field)
        exact = self.exact and other.exact and not dropped
        return self._like(terms, order=order, exact=exact)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = FormalSeries.one(self.nvars, self.order, self.field)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def inverse(self):
        """Multiplicative inverse modulo degree ``order`` (back-substitution by degree)."""
        c0 = self.constant_term()
        if self.field.is_zero(c0):
            raise NotAUnit("constant term is zero")
        one = FormalSeries.one(self.nvars, self.order, self.field)
        return divide_by_unit(one, self)

    def __truediv__(self, other):
        if not isinstance(other, FormalSeries):
            c = self._scalar(other)
            return c if c is NotImplemented else self.scale(self.field.one / c)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return divide_by_unit(self, other)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other / self

    # -- comparison -------------------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Rational)):
            other = FormalSeries.constant(other, self.nvars, self.order, self.field)
        if not isinstance(other, FormalSeries) or other.nvars != self.nvars:
            return NotImplemented
        if self.order != other.order:
            return False
        if self.terms.keys() != other.terms.keys():
            return False
        return all(self.terms[a] == other.terms[a] for a in self.terms)

    def __hash__(self):
        return hash((self.nvars, self.order, frozenset(self.terms)))

    def agrees_with(self, other, order=None):
        """True when the two series coincide modulo degree ``order`` (default: common order)."""
        if order is None:
            order = min(self.order, other.order)
        return first_discrepancy(self, other, order) is None

    # -- evaluation ----------------------------------------------------------------

    def evaluate(self, point):
        """Sum of c * point**alpha over the stored terms (exact for polynomial points)."""
        if len(point) != self.nvars:
            raise VariableCountMismatch(f"point has {len(point)} coordinates, need {self.nvars}")
        total = 0
        powers = [dict() for _ in point]
        for alpha, c in self.terms.items():
            mono = c
            for i, e in enumerate(alpha):
                if e:
                    cache = powers[i]
                    if e not in cache:
                        cache[e] = point[i] ** e
                    mono = mono * cache[e]
            total = total + mono
        return total

    # -- text forms --------------------------------------------------------------------

    def __str__(self):
        return format_terms(self.sorted_terms(), self.field.format, self.nvars)

    def __repr__(self):
        flag = "exact" if self.exact else "truncated"
        return f"FormalSeries({self.nvars} vars, order {self.order}, {flag}: {self})"

    def to_json(self):
        return {
            "nvars": self.nvars,
            "order": self.order,
            "terms": [list(a) + [self.field.to_json(c)] for a, c in self.sorted_terms()],
        }

    @classmethod
    def from_json(cls, data, field=QQ, exact=False):
        terms = {tuple(t[:-1]): field.from_json(t[-1]) for t in data["terms"]}
        return cls(data["nvars"], data["order"], terms, field, exact=exact)


# -- kernels ---------------------------------------------------------------------
#
# Exponent tuples are packed into single integers in base 2*order + 2, so
# that adding the exponents of two factors (each of total degree <= order)
# is one integer addition without carries.  Over QQ the coefficients are
# scaled to integers by a common denominator and the inner loops run on
# Python ints; a Fraction is only built once per output term.


def _packer(nvars, order):
    base = 2 * order + 2
    weights = [base ** i for i in range(nvars)]

    def pack(alpha):
        return sum(e * w for e, w in zip(alpha, weights))

    def unpack(key):
        out = []
        for _ in range(nvars):
            key, e = divmod(key, base)
            out.append(e)
        return tuple(out)

    return pack, unpack


def _integer_terms(terms):
    """(integer coefficients, common denominator) for Fraction coefficients."""
    den = 1
    for c in terms.values():
        d = c.denominator
        if den % d:
            den = den * d // gcd(den, d)
    return {a: c.numerator * (den // c.denominator) for a, c in terms.items()}, den


def _by_degree(terms, pack):
    """{degree: [(packed exponent, coefficient)]} sorted by degree."""
    out = {}
    for a, c in terms.items():
        out.setdefault(sum(a), []).append((pack(a), c))
    return dict(sorted(out.items()))


def _mul_terms(ta, tb, order, field):
    """Truncated product of term dicts; also reports whether anything was cut off."""
    if not ta or not tb:
        return {}, False
    if len(ta) > len(tb):
        ta, tb = tb, ta
    nvars = len(next(iter(ta)))
    pack, unpack = _packer(nvars, order)
    rational = field is QQ or field == QQ
    if rational:
        ta, da = _integer_terms(ta)
        tb, db_ = _integer_terms(tb)
    left = _by_degree(ta, pack)
    right = _by_degree(tb, pack)
    rdegs = list(right)
    out = {}
    dropped = False
    get = out.get
    for da_, items in left.items():
        for db in rdegs:
            if da_ + db > order:
                dropped = True
                break
            rows = right[db]
            for ka, ca in items:
                for kb, cb in rows:
                    k = ka + kb
                    prev = get(k)
                    out[k] = ca * cb if prev is None else prev + ca * cb
    if rational:
        scale = da * db_
        return {unpack(k): Fraction(v, scale) for k, v in out.items() if v}, dropped
    return {unpack(k): v for k, v in out.items() if not field.is_zero(v)}, dropped


def divide_by_unit(num, den):
    """``num / den`` for a unit ``den``, solving q*den = num degree by degree.

    Each homogeneous component of q costs one pass over the (usually sparse)
    terms of ``den``, so dense quotients by sparse units stay cheap.
    """
    if num.nvars != den.nvars:
        raise VariableCountMismatch("series in different numbers of variables")
    field = num.field
    c0 = den.constant_term()
    if field.is_zero(c0):
        raise NotAUnit("divisor has zero constant term")
    order = min(num.order, den.order)
    pack, unpack = _packer(num.nvars, order)
    zero = (0,) * num.nvars
    rational = field is QQ or field == QQ
    if rational:
        num_terms, ln = _integer_terms({a: c for a, c in num.terms.items() if sum(a) <= order})
        den_terms, ld = _integer_terms(den.terms)
        c0 = den_terms[zero]
    else:
        num_terms = {a: c for a, c in num.terms.items() if sum(a) <= order}
        den_terms = den.terms
        inv0 = field.one / c0
    rest = [(d, items) for d, items in _by_degree(den_terms, pack).items() if d > 0]
    by_deg = _by_degree(num_terms, pack)
    q_by_deg = {}
    out = {}
    for k in range(order + 1):
        # Over QQ the level-k quotient is stored as S_k = c0**(k+1) * q_k (integers).
        if rational:
            c0k = c0 ** k
            acc = {key: c * c0k for key, c in by_deg.get(k, ())}
        else:
            acc = dict(by_deg.get(k, ()))
        for db, items in rest:
            if db > k:
                break
            prev = q_by_deg.get(k - db)
            if not prev:
                continue
            if rational:
                factor = c0 ** (db - 1)
                for kb, cb in items:
                    cb *= factor
                    for ka, ca in prev:
                        key = ka + kb
                        acc[key] = acc.get(key, 0) - ca * cb
            else:
                for kb, cb in items:
                    for ka, ca in prev:
                        key = ka + kb
                        acc[key] = acc[key] - ca * cb if key in acc else -(ca * cb)
        if rational:
            level = [(key, c) for key, c in acc.items() if c]
            if level:
                scale = c0 ** (k + 1) * ln
                for key, c in level:
                    out[unpack(key)] = Fraction(c * ld, scale)
        else:
            level = [(key, c * inv0) for key, c in acc.items() if not field.is_zero(c)]
            for key, c in level:
                out[unpack(key)] = c
        if level:
            q_by_deg[k] = level
    return FormalSeries._raw(num.nvars, order, out, field, False)


def first_discrepancy(f, g, order):
    """Lowest total degree <= order where f and g differ, or None."""
    keys = set(f.terms) | set(g.terms)
    bad = [
        sum(a)
        for a in keys
        if sum(a) <= order and not f.field.is_zero(f.coefficient(a) - g.coefficient(a))
    ]
    return min(bad) if bad else None


def _format_monomial(alpha):
    parts = []
    for i, e in enumerate(alpha):
        if e == 1:
            parts.append(f"X{i + 1}")
        elif e > 1:
            parts.append(f"X{i + 1}^{e}")
    return "*".join(parts)


def format_terms(items, fmt=str, nvars=None):
    """Canonical text: ``1 - X1^2 + 2*X1*X2``; rational coefficients print as ``3/2*X1``."""
    if not items:
        return "0"
    out = []
    for idx, (alpha, c) in enumerate(items):
        text = fmt(c)
        negative = text.startswith("-")
        if negative:
            text = text[1:]
        mono = _format_monomial(alpha)
        if mono:
            body = mono if text == "1" else f"{text}*{mono}"
        else:
            body = text
        if idx == 0:
            out.append(f"-{body}" if negative else body)
        else:
            out.append(f" - {body}" if negative else f" + {body}")
    return "".join(out)


def variables(nvars, order, field=QQ):
    """The coordinate series X1..Xm as a tuple."""
    return tuple(FormalSeries.variable(i, nvars, order, field) for i in range(1, nvars + 1))

