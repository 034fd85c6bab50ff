from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from helpers import random_exponent, random_tate, seeded
from wkit.coefficients import INFINITY, PAdic
from wkit.errors import (
    BudgetExhausted,
    DegreeTooHigh,
    NotAOneUnitTimesPower,
    NotRegular,
    OutOfDomain,
    RamifiedIndex,
    ZeroInput,
)
from wkit.powerseries import FormalSeries
from wkit.tate import (
    TateElement,
    gauss_norm,
    is_tate_unit,
    max_principle_probe,
    sampled_norm,
    tate_divide,
    tate_eval,
    tate_kth_root,
    tate_prepare,
    tate_regularity,
    tate_shear,
)
from wkit.valued import LAURENT, PuiseuxSeries


def T(terms, p, prec=10, nvars=None):
    return TateElement.from_rational_terms(terms, p, prec, nvars)


def X(p, prec=10, i=1, m=1):
    return TateElement.variable(i, m, p, prec)


# -- frozen examples ---------------------------------------------------------------


def test_gauss_norm_examples():
    assert gauss_norm(T({(0,): Fraction(1, 2), (1,): 1}, 2)) == -1
    assert gauss_norm(T({(1, 0): 3, (0, 2): 1}, 3)) == 0
    f = T({(1,): 3, (0,): 1}, 3)
    g = T({(1,): 3, (0,): -1}, 3)
    assert gauss_norm(f * g) == 0 == gauss_norm(f) + gauss_norm(g)
    assert gauss_norm(TateElement(2, 5, 4)) is INFINITY


def test_regularity_examples():
    p = 3
    assert tate_regularity(T({(2,): 1, (3,): p}, p)).degree == 2
    reg = tate_regularity(T({(1,): p}, p))
    assert (reg.degree, reg.normalizer) == (1, -1)
    with pytest.raises(NotRegular):
        tate_regularity(T({(1, 1): 1}, p), 2)
    with pytest.raises(ZeroInput):
        tate_regularity(TateElement(1, p, 5))


def test_shear_examples():
    p = 5
    x1 = T({(1, 0): 1}, p)
    s = tate_shear(x1, 2)
    assert s == T({(1, 0): 1, (0, 2): 1}, p)
    assert tate_regularity(s).degree == 2 < 4
    x1x2 = T({(1, 1): 1}, p)
    s = tate_shear(x1x2, 3)
    assert s == T({(1, 1): 1, (0, 4): 1}, p)
    assert tate_regularity(s).degree == 4 < 9
    assert tate_shear(s, 3, inverse=True) == x1x2
    with pytest.raises(DegreeTooHigh):
        tate_shear(x1x2, 2)


def test_divide_examples():
    x = X(2)
    g = x ** 2 - 2
    q, r = tate_divide(x, g)
    assert q.is_zero() and r == x
    q, r = tate_divide(x ** 3, g)
    assert q == x and r == x * 2
    p = 3
    x = X(p)
    q, r = tate_divide(x ** 2, x - p)
    assert q == x + p and r == T({(0,): p * p}, p)


def test_prepare_examples():
    p = 3
    x = X(p)
    g = x ** 2 + x * p + p
    u, w = tate_prepare(g)
    assert u == T({(0,): 1}, p) and w == g
    g = (x * p + 1) * (x - p)
    u, w = tate_prepare(g)
    assert u == x * p + 1 and w == x - p
    x = X(2)
    u, w = tate_prepare(x * 2)
    assert u == T({(0,): 2}, 2) and w == x


def test_eval_examples():
    p = 3
    N = 10
    assert tate_eval(X(p, N) ** 2, [p]) == PAdic.from_rational(p * p, p, N)
    geo = T({(i,): p ** i for i in range(N + 1)}, p, N)
    assert tate_eval(geo, [1]) == PAdic.from_rational(Fraction(1, 1 - p), p, N)
    f = T({(1, 0): 1, (0, 1): 1}, p, N)
    assert tate_eval(f, [1, p]) == PAdic.from_rational(1 + p, p, N)
    with pytest.raises(OutOfDomain):
        tate_eval(f, [Fraction(1, 3), 0])


def test_kth_root_examples():
    one = T({(0,): 1}, 3)
    assert tate_kth_root(one, 2) == one
    f = T({(0,): 1, (1,): 3}, 3)
    g = tate_kth_root(f, 2)
    assert g ** 2 == f
    with pytest.raises(RamifiedIndex):
        tate_kth_root(T({(0,): 1, (1,): 2}, 2), 2)
    with pytest.raises(NotAOneUnitTimesPower):
        tate_kth_root(X(3), 2)


def test_probe_examples():
    x1 = FormalSeries(2, 4, {(1, 0): 1}, LAURENT)
    res = max_principle_probe(x1)
    assert res.witness[0] != 0 and res.norm == 0 and res.value.val() == 0
    t = PuiseuxSeries.t_power(1)
    f = FormalSeries(1, 4, {(0,): t, (1,): 1}, LAURENT)
    res = max_principle_probe(f)
    assert res.witness == (1,) and res.value.val() == 0
    f = FormalSeries(1, 4, {(2,): 1, (1,): -3, (0,): 2}, LAURENT)
    res = max_principle_probe(f)
    assert res.witness in ((0,), (3,)) and res.value.val() == res.norm == 0
    for a in (1, 2):
        assert f.evaluate([PuiseuxSeries.constant(a)]).is_zero()
    with pytest.raises(BudgetExhausted):
        max_principle_probe(FormalSeries(1, 4, {(1,): 1}, LAURENT), budget=1)


def test_max_principle_fails_over_qp():
    # X^p - X vanishes mod p at every point of Z_p, so |f(a)| <= 1/p < 1 = |f|.
    for p in (2, 3, 5):
        f = T({(p,): 1, (1,): -1}, p, 8)
        assert gauss_norm(f) == 0
        assert sampled_norm(f, 200, seed=p) >= 1


# -- properties ------------------------------------------------------------------------


primes = st.sampled_from([2, 3, 5, 7])


@given(st.integers(0, 10**6), primes, st.integers(1, 3))
def test_gauss_norm_multiplicative(seed, p, m):
    rng = seeded(seed)
    f = random_tate(rng, m, p, 8, scale_range=(-2, 2))
    g = random_tate(rng, m, p, 8, scale_range=(-2, 2))
    if f.is_zero() or g.is_zero():
        return
    # content can eat precision; compare only while digits remain
    if gauss_norm(f) - f.scale >= 4 or gauss_norm(g) - g.scale >= 4:
        return
    assert gauss_norm(f * g) == gauss_norm(f) + gauss_norm(g)


def _regular(rng, m, p, prec, d):
    alpha = (0,) * (m - 1) + (d,)
    terms = {alpha: 1 + p * rng.randrange(p ** prec)}
    for _ in range(4):
        a = random_exponent(rng, m, d + 2)
        if a == alpha:
            continue
        c = rng.randrange(p ** prec)
        if a[-1] > d or (a[-1] == d and any(a[:-1])):
            c *= p
        elif any(a[:-1]):
            pass
        terms[a] = terms.get(a, 0) + c
    return TateElement(m, p, prec, terms)


@given(st.integers(0, 10**6), primes, st.integers(1, 3), st.integers(1, 3))
def test_division_identity_and_uniqueness(seed, p, m, d):
    rng = seeded(seed)
    g = _regular(rng, m, p, 6, d)
    f = random_tate(rng, m, p, 6, max_degree=5)
    res = tate_divide(f, g)
    assert res.degree == d
    assert f == res.quotient * g + res.remainder
    assert all(a[-1] < d for a in res.remainder.terms)
    assert res.rounds <= 6 + 1
    h = random_tate(rng, m, p, 6, max_degree=2)
    res2 = tate_divide(f + h * g, g)
    assert res2.quotient == res.quotient + h and res2.remainder == res.remainder


@given(st.integers(0, 10**6), primes, st.integers(1, 3), st.integers(1, 3))
def test_preparation_shape(seed, p, m, d):
    rng = seeded(seed)
    g = _regular(rng, m, p, 6, d)
    u, w = tate_prepare(g)
    assert g == u * w
    assert is_tate_unit(u)
    alpha = (0,) * (m - 1) + (d,)
    assert w.terms[alpha] == 1
    assert all(a[-1] < d for a in w.terms if a != alpha)
    # reduction of w is that of g divided by the scalar reduction of u
    c = u.reduction()[(0,) * m]
    assert w.reduction() == {a: x * pow(c, -1, p) % p for a, x in g.reduction().items()}
    if set(g.reduction()) == {alpha}:
        assert w.reduction() == {alpha: 1}


@given(st.integers(0, 10**6), primes, st.integers(1, 2))
def test_eval_bounded_by_norm(seed, p, m):
    rng = seeded(seed)
    f = random_tate(rng, m, p, 6, scale_range=(-1, 2))
    if f.is_zero():
        return
    a = [rng.randrange(p ** 6) for _ in range(m)]
    assert tate_eval(f, a).valuation >= gauss_norm(f)


@given(st.integers(0, 10**6), st.sampled_from([3, 5, 7]), st.sampled_from([2, 3, 5]), st.integers(1, 2))
def test_kth_root_of_one_units(seed, p, k, m):
    if k % p == 0:
        return
    rng = seeded(seed)
    h = random_tate(rng, m, p, 6)
    f = TateElement(m, p, 6, {(0,) * m: 1}) + h * p
    g = tate_kth_root(f, k)
    assert g ** k == f


@given(st.integers(0, 10**6), primes, st.integers(1, 2))
def test_unit_characterization(seed, p, m):
    rng = seeded(seed)
    f = random_tate(rng, m, p, 6)
    if f.is_zero():
        return
    if is_tate_unit(f):
        assert f * f.inverse() == TateElement(m, p, 6, {(0,) * m: 1})
    else:
        assert set(f.reduction()) != {(0,) * m}


@given(st.integers(0, 10**6), primes, st.integers(2, 3), st.integers(2, 3))
def test_shear_bound_and_round_trip(seed, p, m, d):
    rng = seeded(seed)
    f = random_tate(rng, m, p, 5, max_degree=d - 1)
    if not f.reduction():
        return
    s = tate_shear(f, d)
    assert tate_regularity(s).degree < d ** m
    assert tate_shear(s, d, inverse=True) == f


@given(st.integers(0, 10**6), st.integers(1, 2))
def test_probe_within_grid_bound(seed, m):
    rng = seeded(seed)
    terms = {}
    for _ in range(4):
        a = random_exponent(rng, m, 3)
        terms[a] = PuiseuxSeries({rng.randint(0, 2): rng.randint(1, 5), 3: 1})
    f = FormalSeries(m, 6, terms, LAURENT)
    if f.is_zero():
        return
    res = max_principle_probe(f)
    deg = max(sum(a) for a in f.terms)
    assert res.probes <= (deg + 1) ** m
    assert res.value.val() == res.norm


def test_json_round_trip():
    f = T({(0, 1): Fraction(1, 3), (2, 0): 6}, 3, 7)
    assert TateElement.from_json(f.to_json()) == f
    assert "mod 3^" in str(f)
