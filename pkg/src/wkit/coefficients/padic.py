"""Finite-precision p-adic numbers.

A nonzero element is stored as ``p**val * unit`` where ``unit`` is a residue
mod ``p**prec`` coprime to ``p`` (capped relative precision).  Zero is either
exact (``prec is None``) or known only modulo ``p**prec`` (absolute), which is
what full cancellation in a subtraction produces.
"""

from fractions import Fraction
from math import gcd, isqrt
from numbers import Rational

from ..errors import BadBranch, DivisionByZero, NoRoot, PrecisionExhausted, RamifiedIndex
from .values import INFINITY

# Relative precision used when an exact zero meets a rational operand.
DEFAULT_PREC = 20


def valuation_of_int(n, p):
    if n == 0:
        return INFINITY
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def valuation_of_rational(q, p):
    q = Fraction(q)
    if q == 0:
        return INFINITY
    return valuation_of_int(q.numerator, p) - valuation_of_int(q.denominator, p)


class PAdic:
    __slots__ = ("p", "prec", "val", "unit")

    def __init__(self, p, prec, val, unit):
        # Trusted constructor; use from_rational / zero / from_parts elsewhere.
        self.p = p
        self.prec = prec
        self.val = val
        self.unit = unit

    # -- construction -----------------------------------------------------

    @classmethod
    def zero(cls, p, abs_prec=None):
        return cls(p, abs_prec, None, 0)

    @classmethod
    def from_parts(cls, p, prec, val, unit):
        """Normalize ``p**val * unit`` with ``unit`` an arbitrary integer known mod p**prec."""
        if prec <= 0:
            raise PrecisionExhausted("no p-adic digits left")
        mod = p ** prec
        unit %= mod
        if unit == 0:
            return cls.zero(p, val + prec)
        shift = valuation_of_int(unit, p)
        unit //= p ** shift
        val += shift
        prec -= shift
        return cls(p, prec, val, unit % p ** prec)

    @classmethod
    def from_rational(cls, q, p, prec):
        q = Fraction(q)
        if q == 0:
            return cls.zero(p)
        num, den = q.numerator, q.denominator
        vn = valuation_of_int(num, p)
        vd = valuation_of_int(den, p)
        num //= p ** vn
        den //= p ** vd
        mod = p ** prec
        return cls(p, prec, vn - vd, num * pow(den, -1, mod) % mod)

    def _coerce(self, other):
        if isinstance(other, PAdic):
            if other.p != self.p:
                raise ValueError(f"mixed primes {self.p} and {other.p}")
            return other
        if isinstance(other, (int, Rational)):
            return PAdic.from_rational(other, self.p, self._working_prec())
        return NotImplemented

    def _working_prec(self):
        if self.val is None:
            return max(self.prec, 1) if self.prec is not None else DEFAULT_PREC
        return self.prec

    # -- basic properties ---------------------------------------------------

    @property
    def is_zero(self):
        return self.val is None

    @property
    def is_exact_zero(self):
        return self.val is None and self.prec is None

    @property
    def valuation(self):
        return INFINITY if self.val is None else self.val

    @property
    def abs_prec(self):
        """Absolute precision: the element is known modulo p**abs_prec (None if exact)."""
        if self.val is None:
            return self.prec
        return self.val + self.prec

    def residue(self, n):
        """Integer representative in [0, p**n) of an element of valuation >= 0."""
        if self.val is None:
            return 0
        if self.val < 0:
            raise ValueError("element is not p-integral")
        return self.unit * self.p ** self.val % self.p ** n

    def to_fraction(self):
        """The rational representative p**val * unit (unit taken in [0, p**prec))."""
        if self.val is None:
            return Fraction(0)
        return Fraction(self.unit) * Fraction(self.p) ** self.val

    def simplest_fraction(self):
        """Small rational a/b with the same digits (rational reconstruction of the unit)."""
        if self.val is None:
            return Fraction(0)
        return rational_reconstruction(self.unit, self.p ** self.prec) * Fraction(self.p) ** self.val

    def with_prec(self, prec):
        if self.val is None:
            return self
        prec = min(prec, self.prec)
        return PAdic(self.p, prec, self.val, self.unit % self.p ** prec)

    # -- arithmetic -------------------------------------------------------------

    def __neg__(self):
        if self.val is None:
            return self
        return PAdic(self.p, self.prec, self.val, -self.unit % self.p ** self.prec)

    def __pos__(self):
        return self

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self, other
        if a.is_exact_zero:
            return b
        if b.is_exact_zero:
            return a
        p = a.p
        absp = min(x.abs_prec for x in (a, b))
        if a.val is None or b.val is None:
            live = b if a.val is None else a
            if live.val is None or live.val >= absp:
                return PAdic.zero(p, absp)
            return PAdic.from_parts(p, absp - live.val, live.val, live.unit)
        vmin = min(a.val, b.val)
        if absp <= vmin:
            return PAdic.zero(p, absp)
        s = a.unit * p ** (a.val - vmin) + b.unit * p ** (b.val - vmin)
        return PAdic.from_parts(p, absp - vmin, vmin, s)

    __radd__ = __add__

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
        a, b = self, other
        p = a.p
        if a.is_exact_zero or b.is_exact_zero:
            return PAdic.zero(p)
        if a.val is None or b.val is None:
            z, x = (a, b) if a.val is None else (b, a)
            return PAdic.zero(p, z.prec + (0 if x.val is None else x.val))
        prec = min(a.prec, b.prec)
        return PAdic(p, prec, a.val + b.val, a.unit * b.unit % p ** prec)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_exact_zero:
            raise DivisionByZero("inverse of exact p-adic zero")
        if self.val is None:
            raise PrecisionExhausted("divisor vanishes to the working precision")
        mod = self.p ** self.prec
        return PAdic(self.p, self.prec, -self.val, pow(self.unit, -1, mod))

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        inv = other.inverse()
        if self.val is None:
            if self.prec is None:
                return self
            return PAdic.zero(self.p, self.prec - other.val)
        return self * inv

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other / self

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = PAdic.from_rational(1, self.p, self._working_prec())
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- comparison ---------------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, PAdic) and other.p != self.p:
            return False
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return (self - other).is_zero

    def __hash__(self):
        return hash((self.p, self.val, self.unit if self.val is not None else 0))

    def __bool__(self):
        return not self.is_zero

    def __repr__(self):
        if self.val is None:
            return f"PAdic.zero({self.p}, abs_prec={self.prec})"
        return f"PAdic(p={self.p}, prec={self.prec}, val={self.val}, unit={self.unit})"

    def __str__(self):
        """``value + O(p^n)`` with the simplest fraction having these digits."""
        tail = "" if self.abs_prec is None else f" + O({self.p}^{self.abs_prec})"
        return f"{self.simplest_fraction()}{tail}"


def rational_reconstruction(u, mod):
    """a/b with a = u*b (mod mod) and |a|, b <= sqrt(mod/2), or the balanced residue."""
    bound = isqrt(mod // 2)
    r0, r1 = mod, u % mod
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 != 0 and abs(s1) <= bound and gcd(r1, abs(s1)) == 1:
        return Fraction(r1, s1)
    u %= mod
    return Fraction(u - mod if 2 * u > mod else u)


def padic_from_rational(q, p, prec):
    return PAdic.from_rational(q, p, prec)


def newton_lift(poly, dpoly, z, steps, reduce=lambda x: x):
    """Newton iteration ``z <- z - P(z)/P'(z)``.

    ``poly``/``dpoly`` evaluate P and P' at an element, ``reduce`` trims the
    iterate to the working precision.  When P(z) = h*P'(z)**2 with h in the
    maximal ideal, the error squares at every step, so ``steps`` of order
    log2(precision) suffice.
    """
    for _ in range(steps):
        z = reduce(z - poly(z) / dpoly(z))
    return z


def _unit_root_mod_p(u, k, p, branch):
    if branch is not None:
        z0 = branch % p
        if z0 == 0 or (pow(z0, k, p) - u) % p != 0:
            raise BadBranch(f"{branch} is not a simple root of Y^{k} = {u % p} mod {p}")
        return z0
    if u % p == 1:
        return 1
    for z0 in range(1, p):
        if pow(z0, k, p) == u % p:
            return z0
    raise NoRoot(f"{u % p} is not a {k}-th power mod {p}")


def padic_kth_root(a, k, branch=None, p=None, prec=None):
    """A k-th root of ``a`` congruent to ``branch`` mod p.

    ``a`` is a PAdic, or a rational together with ``p`` and ``prec``.  With
    no branch hint the root congruent to 1 is used for 1-units, otherwise the
    smallest residue that works.
    """
    if not isinstance(a, PAdic):
        a = PAdic.from_rational(a, p, prec)
    p = a.p
    if k < 1:
        raise ValueError("k must be positive")
    if k % p == 0:
        raise RamifiedIndex(f"p={p} divides k={k}")
    if a.val is None:
        return a
    if a.val % k:
        raise NoRoot(f"valuation {a.val} is not divisible by {k}")
    n = a.prec
    mod = p ** n
    u = a.unit
    z0 = _unit_root_mod_p(u, k, p, branch)
    steps = max(1, (n - 1).bit_length() + 1)
    root = newton_lift(
        lambda z: pow(z, k, mod) - u,
        lambda z: Fraction(k * pow(z, k - 1, mod)),
        z0,
        steps,
        reduce=lambda z: _mod_fraction(z, mod),
    )
    return PAdic(p, n, a.val // k, root)


def _mod_fraction(z, mod):
    z = Fraction(z)
    return z.numerator * pow(z.denominator, -1, mod) % mod
