"""Restricted power series over Z_p, stored exactly modulo p**N.

Z_p<X> / p**N is the polynomial ring (Z/p**N)[X], so an element is a finite
dict of residues plus a power-of-p ``scale``:

    f = p**scale * sum(residue_alpha * X**alpha),   residues mod p**prec.

``prec`` counts the p-adic digits known relative to ``p**scale``.  Operations
that divide out a common power of p (normalization) lose the same number of
digits, exactly like relative precision for p-adic numbers.
"""

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from .coefficients.padic import PAdic, newton_lift, padic_kth_root, valuation_of_int, valuation_of_rational
from .coefficients.values import INFINITY
from .errors import (
    BudgetExhausted,
    DegreeTooHigh,
    NoRoot,
    NotAOneUnitTimesPower,
    NotAUnit,
    NotRegular,
    OutOfDomain,
    PrecisionExhausted,
    RamifiedIndex,
    VariableCountMismatch,
    ZeroInput,
)
from .powerseries.series import _add_exp, format_terms, graded_key


# -- polynomials over Z/p**n ---------------------------------------------------


def _reduce(terms, mod):
    out = {}
    for a, c in terms.items():
        c %= mod
        if c:
            out[a] = c
    return out


def _padd(x, y, mod):
    out = dict(x)
    for a, c in y.items():
        s = (out.get(a, 0) + c) % mod
        if s:
            out[a] = s
        else:
            out.pop(a, None)
    return out


def _pscale(x, c, mod):
    return _reduce({a: v * c for a, v in x.items()}, mod)


def _pmul(x, y, mod):
    out = {}
    for a, ca in x.items():
        for b, cb in y.items():
            k = _add_exp(a, b)
            out[k] = out.get(k, 0) + ca * cb
    return _reduce(out, mod)


def _ppow(x, n, nvars, mod):
    result = {(0,) * nvars: 1 % mod}
    base = x
    while n:
        if n & 1:
            result = _pmul(result, base, mod)
        n >>= 1
        if n:
            base = _pmul(base, base, mod)
    return _reduce(result, mod)


def _content(terms, p):
    """Smallest p-adic valuation among the residues (INFINITY when empty)."""
    if not terms:
        return INFINITY
    return min(valuation_of_int(c, p) for c in terms.values())


def _unit_inverse(terms, nvars, p, n):
    """Inverse in (Z/p**n)[X] of a polynomial whose reduction is a nonzero constant."""
    mod = p ** n
    zero = (0,) * nvars
    c0 = terms.get(zero, 0)
    if c0 % p == 0 or any(c % p for a, c in terms.items() if a != zero):
        raise NotAUnit("reduction is not a nonzero constant")
    c0inv = pow(c0, -1, mod)
    # x = c0 (1 + h) with h = 0 mod p; 1/(1+h) = sum (-h)^i, h^n = 0 mod p^n
    h = _pscale({a: c for a, c in terms.items() if a != zero}, c0inv, mod)
    h = _padd(h, {zero: (c0 * c0inv - 1) % mod}, mod)
    total = {zero: 1}
    power = {zero: 1}
    neg_h = _pscale(h, -1, mod)
    for _ in range(n):
        power = _pmul(power, neg_h, mod)
        if not power:
            break
        total = _padd(total, power, mod)
    return _pscale(total, c0inv, mod)


def _poly_substitute(terms, images, nvars, mod):
    """Compose a polynomial with polynomial images of each variable."""
    cache = {}
    out = {}
    for alpha, c in terms.items():
        mono = {(0,) * nvars: 1}
        for i, e in enumerate(alpha):
            if e:
                key = (i, e)
                if key not in cache:
                    cache[key] = _ppow(images[i], e, nvars, mod)
                mono = _pmul(mono, cache[key], mod)
        out = _padd(out, _pscale(mono, c, mod), mod)
    return out


# -- elements ------------------------------------------------------------------------


class TateElement:
    __slots__ = ("nvars", "p", "prec", "terms", "scale")

    def __init__(self, nvars, p, prec, terms=None, scale=0):
        if prec < 1:
            raise PrecisionExhausted("Tate element needs at least one p-adic digit")
        self.nvars = nvars
        self.p = p
        self.prec = prec
        self.scale = scale
        mod = p ** prec
        clean = {}
        for a, c in (terms or {}).items():
            a = tuple(a)
            if len(a) != nvars:
                raise VariableCountMismatch(f"exponent {a} does not have {nvars} entries")
            c = int(c) % mod
            if c:
                clean[a] = c
        self.terms = clean

    @classmethod
    def _raw(cls, nvars, p, prec, terms, scale):
        obj = cls.__new__(cls)
        obj.nvars = nvars
        obj.p = p
        obj.prec = prec
        obj.terms = terms
        obj.scale = scale
        return obj

    @classmethod
    def from_rational_terms(cls, terms, p, prec, nvars=None):
        """Exact rational coefficients; the common power of p moves into the scale."""
        terms = {tuple(a): Fraction(c) for a, c in terms.items() if Fraction(c) != 0}
        if nvars is None:
            nvars = len(next(iter(terms))) if terms else 1
        if not terms:
            return cls(nvars, p, prec)
        s = min(valuation_of_rational(c, p) for c in terms.values())
        mod = p ** prec
        res = {}
        for a, c in terms.items():
            c = c / Fraction(p) ** s
            res[a] = c.numerator * pow(c.denominator, -1, mod) % mod
        return cls(nvars, p, prec, res, s)

    @classmethod
    def from_series(cls, f, p, prec):
        """Embed an exact polynomial FormalSeries with rational coefficients."""
        return cls.from_rational_terms(dict(f.terms), p, prec, f.nvars)

    @classmethod
    def constant(cls, c, nvars, p, prec):
        return cls.from_rational_terms({(0,) * nvars: c}, p, prec, nvars)

    @classmethod
    def variable(cls, i, nvars, p, prec):
        alpha = tuple(1 if j == i - 1 else 0 for j in range(nvars))
        return cls(nvars, p, prec, {alpha: 1})

    def _like(self, terms, prec=None, scale=None):
        return TateElement._raw(
            self.nvars,
            self.p,
            self.prec if prec is None else prec,
            terms,
            self.scale if scale is None else scale,
        )

    # -- norms and normalization ---------------------------------------------------

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def gauss_norm(self):
        """Valuation of the Gauss norm max |f_alpha|: scale + min v_p(residue)."""
        c = _content(self.terms, self.p)
        return INFINITY if c is INFINITY else self.scale + c

    def normalized(self):
        """Same element with a unit residue present; costs the removed digits."""
        c = _content(self.terms, self.p)
        if c is INFINITY or c == 0:
            return self
        q = self.p ** c
        return self._like(
            {a: v // q for a, v in self.terms.items()}, prec=self.prec - c, scale=self.scale + c
        )

    def reduction(self):
        """Residues mod p of the normalized integral part."""
        g = self.normalized()
        return {a: c % self.p for a, c in g.terms.items() if c % self.p}

    def is_unit(self):
        red = self.reduction()
        return bool(red) and set(red) == {(0,) * self.nvars}

    def constant_term(self):
        return self.terms.get((0,) * self.nvars, 0)

    def degree(self):
        return max((sum(a) for a in self.terms), default=-1)

    # -- arithmetic ---------------------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, TateElement):
            if (other.nvars, other.p) != (self.nvars, self.p):
                raise VariableCountMismatch("Tate elements over different rings")
            return other
        if isinstance(other, (int, Rational)):
            return TateElement.constant(other, self.nvars, self.p, self.prec)
        if isinstance(other, PAdic):
            if other.val is None:
                return TateElement(self.nvars, self.p, self.prec)
            return TateElement(self.nvars, self.p, other.prec, {(0,) * self.nvars: other.unit}, other.val)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other.terms and other.scale + other.prec >= self.scale + self.prec:
            return self
        if not self.terms and self.scale + self.prec >= other.scale + other.prec:
            return other
        s = min(self.scale, other.scale)
        absp = min(self.scale + self.prec, other.scale + other.prec)
        n = absp - s
        if n < 1:
            raise PrecisionExhausted("sum has no known digits")
        mod = self.p ** n
        x = _reduce({a: c * self.p ** (self.scale - s) for a, c in self.terms.items()}, mod)
        y = _reduce({a: c * self.p ** (other.scale - s) for a, c in other.terms.items()}, mod)
        return self._like(_padd(x, y, mod), prec=n, scale=s)

    __radd__ = __add__

    def __neg__(self):
        mod = self.p ** self.prec
        return self._like({a: -c % mod for a, c in self.terms.items()})

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

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = min(self.prec, other.prec)
        return self._like(_pmul(self.terms, other.terms, self.p ** n), prec=n, scale=self.scale + other.scale)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        return self._like(_ppow(self.terms, n, self.nvars, self.p ** self.prec), scale=self.scale * n)

    def inverse(self):
        g = self.normalized()
        if not g.is_unit():
            raise NotAUnit("only elements with constant nonzero reduction are invertible")
        return g._like(_unit_inverse(g.terms, g.nvars, g.p, g.prec), scale=-g.scale)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self):
        return hash((self.nvars, self.p, self.scale, frozenset(self.terms.items())))

    # -- text -----------------------------------------------------------------------------

    def balanced(self):
        """Residues in the symmetric range (-p**N/2, p**N/2]."""
        mod = self.p ** self.prec
        return {a: c - mod if 2 * c > mod else c for a, c in self.terms.items()}

    def __str__(self):
        body = format_terms(
            sorted(self.balanced().items(), key=lambda item: graded_key(item[0])), str, self.nvars
        )
        return f"{self.p}^{self.scale} * ({body}) (mod {self.p}^{self.prec})"

    __repr__ = __str__

    def to_json(self):
        return {
            "nvars": self.nvars,
            "p": self.p,
            "prec": self.prec,
            "scale": self.scale,
            "terms": [
                list(a) + [str(c)]
                for a, c in sorted(self.terms.items(), key=lambda item: graded_key(item[0]))
            ],
        }

    @classmethod
    def from_json(cls, data):
        terms = {tuple(t[:-1]): int(t[-1]) for t in data["terms"]}
        return cls(data["nvars"], data["p"], data["prec"], terms, data.get("scale", 0))


def gauss_norm(f):
    return f.gauss_norm()


# -- regularity and shears ---------------------------------------------------------------


@dataclass(frozen=True)
class TateRegularity:
    degree: int
    normalizer: int
    var: int

    def __str__(self):
        return f"regular in X{self.var} of degree {self.degree} (normalizer p^{self.normalizer})"


def tate_regularity(f, var=None):
    """Degree d such that the normalized reduction is monic of degree d in X_j."""
    if f.is_zero():
        raise ZeroInput("zero has no regularity degree")
    j = f.nvars if var is None else var
    idx = j - 1
    red = f.reduction()
    d = max(a[idx] for a in red)
    top = [a for a in red if a[idx] == d]
    if len(top) != 1 or any(e for i, e in enumerate(top[0]) if i != idx):
        raise NotRegular(f"reduction is not monic in X{j}")
    return TateRegularity(d, -f.gauss_norm(), j)


def tate_shear(f, d, inverse=False):
    """The automorphism X_i -> X_i + X_m**(d**(m-i)) (or its inverse).

    The forward shear requires a nonzero reduction of total degree < d;
    the result is then regular in X_m of degree < d**m.
    """
    if d < 2:
        raise ValueError("shear parameter must be >= 2")
    m = f.nvars
    if not inverse:
        red = f.reduction()
        if not red:
            raise ZeroInput("reduction vanishes")
        deg = max(sum(a) for a in red)
        if deg >= d:
            raise DegreeTooHigh(f"reduction has degree {deg} >= {d}")
    sign = -1 if inverse else 1
    images = []
    for i in range(1, m + 1):
        xi = tuple(1 if k == i - 1 else 0 for k in range(m))
        img = {xi: 1}
        if i < m:
            alpha = [0] * m
            alpha[-1] = d ** (m - i)
            img[tuple(alpha)] = sign
        images.append(img)
    mod = f.p ** f.prec
    return f._like(_poly_substitute(f.terms, images, m, mod))


# -- Weierstrass division ---------------------------------------------------------------------


def _split_var(terms, idx):
    """Group terms by X_j-exponent: {k: {alpha with X_j removed: c}}."""
    out = {}
    for a, c in terms.items():
        b = list(a)
        k = b[idx]
        b[idx] = 0
        out.setdefault(k, {})[tuple(b)] = c
    return out


def _shift_var(terms, idx, k):
    out = {}
    for a, c in terms.items():
        b = list(a)
        b[idx] += k
        out[tuple(b)] = c
    return out


def _euclid_monic(f, lead_inv, g_trunc, idx, d, mod):
    """Division by the polynomial g_trunc (degree d in X_j, unit leading coefficient)."""
    rem = dict(f)
    quo = {}
    while True:
        highs = [a for a in rem if a[idx] >= d]
        if not highs:
            return quo, rem
        top = max(a[idx] for a in highs)
        level = {}
        for a in [a for a in highs if a[idx] == top]:
            b = list(a)
            b[idx] = 0
            level[tuple(b)] = rem[a]
        coeff = _pmul(level, lead_inv, mod)
        step = _shift_var(coeff, idx, top - d)
        quo = _padd(quo, step, mod)
        rem = _padd(rem, _pscale(_pmul(step, g_trunc, mod), -1, mod), mod)


@dataclass(frozen=True)
class TateDivision:
    quotient: TateElement
    remainder: TateElement
    degree: int
    rounds: int

    def __iter__(self):
        return iter((self.quotient, self.remainder))


def tate_divide(f, g, var=None):
    """Weierstrass division f = q*g + r, exact modulo p**N.

    Euclidean division by the part of g of X_j-degree <= d (whose leading
    coefficient is a unit) leaves a defect divisible by p; repeating on the
    defect gains one digit per round, so N rounds finish the job.
    """
    if (f.nvars, f.p) != (g.nvars, g.p):
        raise VariableCountMismatch("Tate elements over different rings")
    reg = tate_regularity(g, var)
    j, d = reg.var, reg.degree
    idx = j - 1
    gn = g.normalized()
    p = g.p
    n = min(f.prec, gn.prec)
    mod = p ** n
    G = _reduce(gn.terms, mod)
    by_deg = _split_var(G, idx)
    lead_inv = _unit_inverse(by_deg[d], g.nvars, p, n)
    g_trunc = {a: c for a, c in G.items() if a[idx] <= d}
    g_high = {a: c for a, c in G.items() if a[idx] > d}
    defect = _reduce(f.terms, mod)
    Q, R = {}, {}
    rounds = 0
    while defect:
        rounds += 1
        if rounds > n + 1:
            raise PrecisionExhausted("division did not converge")
        q_i, r_i = _euclid_monic(defect, lead_inv, g_trunc, idx, d, mod)
        Q = _padd(Q, q_i, mod)
        R = _padd(R, r_i, mod)
        defect = _pscale(_pmul(q_i, g_high, mod), -1, mod)
    q = TateElement._raw(f.nvars, p, n, Q, f.scale - gn.scale)
    r = TateElement._raw(f.nvars, p, n, R, f.scale)
    return TateDivision(q, r, d, rounds)


@dataclass(frozen=True)
class TatePrepared:
    unit: TateElement
    wpoly: TateElement
    degree: int

    def __iter__(self):
        return iter((self.unit, self.wpoly))


def tate_prepare(g, var=None):
    """g = u * w with u a unit and w monic of degree d in X_j (divide X_j**d by g)."""
    reg = tate_regularity(g, var)
    j, d = reg.var, reg.degree
    gn = g.normalized()
    alpha = [0] * g.nvars
    alpha[j - 1] = d
    xd = TateElement(g.nvars, g.p, gn.prec, {tuple(alpha): 1})
    q, r = tate_divide(xd, gn, j)
    w = xd - r
    # q carries the scale -s of the normalized divisor, so u = 1/q carries +s
    u = q.inverse()
    return TatePrepared(u, w, d)


# -- evaluation and roots ---------------------------------------------------------------------


def _point_residue(a, p, n):
    """(residue mod p**n, absolute precision) of a point coordinate in Z_p."""
    if isinstance(a, PAdic):
        if a.p != p:
            raise ValueError("point over a different prime")
        if a.val is None:
            return 0, n if a.prec is None else min(n, a.prec)
        if a.val < 0:
            raise OutOfDomain(f"|{a}| > 1")
        return a.residue(n), min(n, a.abs_prec)
    a = Fraction(a)
    if a != 0 and valuation_of_rational(a, p) < 0:
        raise OutOfDomain(f"|{a}|_{p} > 1")
    mod = p ** n
    return a.numerator * pow(a.denominator, -1, mod) % mod, n


def tate_eval(f, point):
    """f(a) for a in Z_p^m, as a PAdic known modulo p**(scale + N)."""
    point = tuple(point)
    if len(point) != f.nvars:
        raise VariableCountMismatch(f"need {f.nvars} coordinates, got {len(point)}")
    n = f.prec
    residues = []
    for a in point:
        r, k = _point_residue(a, f.p, f.prec)
        residues.append(r)
        n = min(n, k)
    mod = f.p ** n
    total = 0
    for alpha, c in f.terms.items():
        term = c
        for r, e in zip(residues, alpha):
            if e:
                term = term * pow(r, e, mod) % mod
        total += term
    return PAdic.from_parts(f.p, n, f.scale, total % mod)


def tate_kth_root(f, k):
    """g with g**k == f mod p**N, for f in c**k (1 + pZ_p<X>) and p not dividing k."""
    p = f.p
    if k < 1:
        raise ValueError("k must be positive")
    if k % p == 0:
        raise RamifiedIndex(f"p={p} divides k={k}")
    fn = f.normalized()
    if not fn.is_unit():
        raise NotAOneUnitTimesPower("reduction is not a nonzero constant")
    if fn.scale % k:
        raise NotAOneUnitTimesPower(f"scale {fn.scale} is not divisible by {k}")
    n = fn.prec
    mod = p ** n
    try:
        c = padic_kth_root(PAdic(p, n, 0, fn.constant_term() % mod), k)
    except NoRoot as exc:
        raise NotAOneUnitTimesPower(str(exc)) from exc
    ck_inv = pow(pow(c.unit, k, mod), -1, mod)
    h = fn._like(_pscale(fn.terms, ck_inv, mod), scale=0)
    one = TateElement(f.nvars, p, n, {(0,) * f.nvars: 1})
    steps = max(1, (n - 1).bit_length() + 1)
    z = newton_lift(lambda z: z ** k - h, lambda z: (z ** (k - 1)) * k, one, steps)
    if z ** k != h:
        raise NotAOneUnitTimesPower("Newton iteration did not converge")
    return z._like(_pscale(z.terms, c.unit, mod), scale=fn.scale // k)


def is_tate_unit(f):
    return f.normalized().is_unit()


# -- maximum principle ----------------------------------------------------------------------------


@dataclass(frozen=True)
class ProbeResult:
    witness: tuple
    norm: Fraction
    value: object
    probes: int


def max_principle_probe(f, budget=None):
    """Find a with |f(a)| = |f| for a polynomial over the Laurent field Q((t)).

    The residue field Q is infinite, so some a in {0, .., deg}^m has
    nonzero reduction f(a) mod t; the grid bound (deg + 1)**m is the
    guaranteed budget.
    """
    from .valued.puiseux import PuiseuxSeries

    if f.is_zero():
        raise ZeroInput("the zero polynomial has no witness")
    coeffs = {a: c if isinstance(c, PuiseuxSeries) else PuiseuxSeries.constant(c) for a, c in f.terms.items()}
    norm = min(c.val() for c in coeffs.values())
    reduced = {a: c.coefficient(norm) for a, c in coeffs.items()}
    reduced = {a: c for a, c in reduced.items() if c != 0}
    deg = max(sum(a) for a in reduced)
    m = f.nvars
    bound = (deg + 1) ** m
    budget = bound if budget is None else budget
    for count, a in enumerate(itertools.product(range(deg + 1), repeat=m), start=1):
        if count > budget:
            break
        val = sum(
            (c * _monomial_value(alpha, a) for alpha, c in reduced.items()), Fraction(0)
        )
        if val != 0:
            value = sum(
                (c * _monomial_value(alpha, a) for alpha, c in coeffs.items()),
                PuiseuxSeries({}, coeffs[next(iter(coeffs))].field),
            )
            return ProbeResult(a, norm, value, count)
    raise BudgetExhausted(f"no witness within {budget} probes (guarantee needs {bound})")


def _monomial_value(alpha, a):
    out = Fraction(1)
    for x, e in zip(a, alpha):
        if e:
            out *= Fraction(x) ** e
    return out


def sampled_norm(f, samples, seed=0):
    """Smallest valuation of f(a) over random a in Z_p^m, i.e. the sampled max |f(a)|."""
    rng = random.Random(seed)
    mod = f.p ** f.prec
    best = INFINITY
    for _ in range(samples):
        a = [rng.randrange(mod) for _ in range(f.nvars)]
        v = tate_eval(f, a).valuation
        if v < best:
            best = v
    return best
