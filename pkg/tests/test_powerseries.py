from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from helpers import random_regular, random_series, random_unit, seeded
from wkit.errors import (
    NoConstantRoot,
    NonInfinitesimalArgument,
    NotAUnit,
    NotRegular,
    RegularizationFailed,
    SingularJacobian,
    WrongArity,
)
from wkit.powerseries import (
    NOT_REGULAR,
    REGULAR,
    UNDETERMINED,
    FormalSeries,
    divide_via_preparation,
    first_discrepancy,
    hensel_root_series,
    implicit_solve,
    regularity,
    regularize,
    series_arith,
    series_invert,
    substitute,
    substitute_by_division,
    tau_shear,
    variables,
    weierstrass_divide,
    weierstrass_prepare,
)


def S(text_terms, m, order, exact=True):
    return FormalSeries(m, order, text_terms, exact=exact)


# -- frozen examples --------------------------------------------------------------


def test_arith_examples():
    X1, X2 = variables(2, 6)
    assert str(series_arith(1 + X1, 1 - X1, "mul")) == "1 - X1^2"
    f = 3 * X1 - X2
    assert series_arith(f, FormalSeries.zero(2, 6), "add") == f
    assert str((X1 + X2) ** 2) == "X1^2 + 2*X1*X2 + X2^2"


def test_invert_examples():
    assert series_invert(FormalSeries.constant(2, 1, 3)) == FormalSeries.constant(Fraction(1, 2), 1, 3)
    (X1,) = variables(1, 3)
    assert str(series_invert(1 - X1)) == "1 + X1 + X1^2 + X1^3"
    X1, X2 = variables(2, 2)
    assert str(series_invert(1 + X1 + X2)) == "1 - X1 - X2 + X1^2 + 2*X1*X2 + X2^2"
    with pytest.raises(NotAUnit):
        series_invert(X1)


def test_regularity_examples():
    X1, X2 = variables(2, 6)
    rep = regularity(X1 * X2 + X2 ** 3, 2)
    assert (rep.status, rep.order) == (REGULAR, 3)
    assert regularity(X1, 2).status == NOT_REGULAR
    assert regularity(X1._like(X1.terms, exact=False), 2).status == UNDETERMINED
    rep = regularity(3 + X2, 2)
    assert (rep.status, rep.order) == (REGULAR, 0)


def test_shear_examples():
    X1, X2 = variables(2, 8)
    assert tau_shear(X1, 2) == X1 + X2 ** 2
    assert str(tau_shear(X1 * X2, 2)) == "X1*X2 + X2^3"
    f = X1 ** 2 - 3 * X1 * X2 + 5
    assert tau_shear(tau_shear(f, 2), 2, inverse=True) == f


def test_regularize_examples():
    X1, X2 = variables(2, 6)
    res = regularize([X2])
    assert (res.d, res.orders) == (1, (1,))
    res = regularize([X1])
    assert (res.d, res.orders) == (1, (1,))
    assert res.sheared[0] == X1 + X2
    res = regularize([X1, X2])
    assert (res.d, res.orders) == (1, (1, 1))


def test_regularize_failure():
    X1, X2 = variables(2, 3)
    # tau_1(X1^2 - X1*X2) = (X1 + X2)*X1 vanishes on X1 = 0
    with pytest.raises(RegularizationFailed):
        regularize([X1 ** 2 - X1 * X2], bound=1)


def test_divide_examples():
    X1, X2 = variables(2, 8)
    q, r = weierstrass_divide(X1, X2 - X1)
    assert (q, r) == (FormalSeries.zero(2, 8), X1)
    q, r = weierstrass_divide(X2 ** 2, X2 - X1)
    assert (str(q), str(r)) == ("X1 + X2", "X1^2")
    q, r = weierstrass_divide(X2 ** 3, X2 ** 2 - X1)
    assert (str(q), str(r)) == ("X2", "X1*X2")
    with pytest.raises(NotRegular):
        weierstrass_divide(X2, X1)


def test_prepare_examples():
    X1, X2 = variables(2, 6)
    u, w = weierstrass_prepare(X2)
    assert (u, w) == (FormalSeries.one(2, 6), X2)
    u, w = weierstrass_prepare(2 * X2)
    assert str(u) == "2" and str(w) == "X2"
    u, w = weierstrass_prepare((1 + X1) * X2 + X1)
    assert u == 1 + X1
    assert w == X2 + X1 * series_invert(1 + X1)


def test_substitute_examples():
    X1, X2 = variables(2, 6)
    (Y,) = variables(1, 6)
    assert substitute(Y ** 2, [X1 + X2]) == X1 ** 2 + 2 * X1 * X2 + X2 ** 2
    geo = series_invert(1 - Y)
    assert substitute(geo, [X1]) == series_invert(1 - X1)
    Y1, Y2 = variables(2, 6)
    assert str(substitute(Y1 * Y2, [X1, X1 + X2 ** 2])) == "X1^2 + X1*X2^2"
    with pytest.raises(NonInfinitesimalArgument):
        substitute(Y, [1 + X1])


def test_hensel_examples():
    (X1,) = variables(1, 3)
    one = FormalSeries.one(1, 3)
    assert hensel_root_series(one, 7) == one
    assert str(hensel_root_series(1 + X1, 2)) == "1 + 1/2*X1 - 1/8*X1^2 + 1/16*X1^3"
    assert hensel_root_series(4 * (1 + X1), 2) == 2 * hensel_root_series(1 + X1, 2)
    with pytest.raises(NoConstantRoot):
        hensel_root_series(2 + X1, 2)


def test_ift_examples():
    X1, Y = variables(2, 6)
    (y,) = implicit_solve([Y - X1])
    assert str(y) == "X1"
    (y,) = implicit_solve([Y - X1 - X1 * Y])
    assert str(y) == "X1 + X1^2 + X1^3 + X1^4 + X1^5 + X1^6"
    X1, Y1, Y2 = variables(3, 6)
    y1, y2 = implicit_solve([Y1 - X1, Y2 - Y1 ** 2])
    assert (str(y1), str(y2)) == ("X1", "X1^2")
    with pytest.raises(SingularJacobian):
        implicit_solve([Y1 ** 2 - X1, Y2 - X1])
    with pytest.raises(WrongArity):
        implicit_solve([X1, Y1, Y2, Y1 + Y2])
    with pytest.raises(NonInfinitesimalArgument):
        implicit_solve([Y2 - 1])


def test_json_round_trip():
    X1, X2 = variables(2, 5)
    f = Fraction(3, 2) * X1 - X2 ** 3 + 7
    data = f.to_json()
    assert data["nvars"] == 2 and data["order"] == 5
    assert FormalSeries.from_json(data) == f


def test_text_form_is_graded_lex():
    X1, X2 = variables(2, 5)
    assert str(2 * X1 * X2 + 1 - X1 ** 2) == "1 - X1^2 + 2*X1*X2"
    assert str(X1 / 2) == "1/2*X1"


# -- oracles ---------------------------------------------------------------------------


def _to_sympy(f, syms):
    return sum(sympy.Rational(c.numerator, c.denominator) * sympy.Mul(*[s ** e for s, e in zip(syms, a)]) for a, c in f.terms.items())


def test_division_by_weierstrass_polynomial_matches_euclid():
    """A monic polynomial with infinitesimal lower coefficients: both divisions coincide."""
    rng = seeded(7)
    x1, x2 = sympy.symbols("x1 x2")
    for _ in range(30):
        order = 14
        d = rng.randint(1, 3)
        lower = [random_series(rng, 1, 3, 2, min_degree=1, exact=True) for _ in range(d)]
        X1, X2 = variables(2, order)
        w = X2 ** d
        for i, c in enumerate(lower):
            w = w + FormalSeries(2, order, {(a[0], 0): v for a, v in c.terms.items()}, exact=True) * X2 ** (d - 1 - i)
        f = random_series(rng, 2, order, 5, max_degree=5, exact=True)
        q, r = weierstrass_divide(f, w)
        sq, sr = sympy.div(sympy.Poly(_to_sympy(f, (x1, x2)), x2, x1), sympy.Poly(_to_sympy(w, (x1, x2)), x2, x1))
        reliable = order - d - 5
        assert first_discrepancy(q, S(_terms(sq, (x1, x2)), 2, order), reliable) is None
        assert first_discrepancy(r, S(_terms(sr, (x1, x2)), 2, order), reliable) is None


def _terms(poly, syms):
    expr = sympy.Poly(poly.as_expr(), *syms)
    return {m: Fraction(int(c.p), int(c.q)) for m, c in zip(expr.monoms(), expr.coeffs())}


# -- properties ---------------------------------------------------------------------------


@given(st.integers(0, 10**6), st.sampled_from([1, 2, 3]))
def test_division_identity(seed, m):
    rng = seeded(seed)
    order = 8
    g = random_regular(rng, m, order)
    f = random_series(rng, m, order, 6)
    res = weierstrass_divide(f, g)
    d = res.degree
    assert first_discrepancy(f, res.quotient * g + res.remainder, order) is None
    assert all(a[m - 1] < d for a in res.remainder.terms)
    alt = divide_via_preparation(f, g)
    assert first_discrepancy(res.quotient, alt.quotient, order - d) is None
    assert first_discrepancy(res.remainder, alt.remainder, order - d) is None


@given(st.integers(0, 10**6), st.sampled_from([1, 2, 3]))
def test_preparation_shape(seed, m):
    rng = seeded(seed)
    order = 8
    g = random_regular(rng, m, order)
    prep = weierstrass_prepare(g)
    assert prep.unit.constant_term() != 0
    assert prep.wpoly.degree_in(m) == prep.degree
    assert all(c.constant_term() == 0 for c in prep.coefficients())
    assert first_discrepancy(prep.unit * prep.wpoly, g, order) is None


@given(st.integers(0, 10**6), st.sampled_from([2, 3]), st.integers(1, 4))
def test_shear_round_trip(seed, m, d):
    rng = seeded(seed)
    f = random_series(rng, m, 7, 5)
    assert tau_shear(tau_shear(f, d), d, inverse=True) == f


@given(st.integers(0, 10**6))
def test_regularity_is_additive(seed):
    rng = seeded(seed)
    f1, f2 = random_regular(rng, 2, 8), random_regular(rng, 2, 8)
    d1, d2 = regularity(f1).order, regularity(f2).order
    assert regularity(f1 * f2).order == d1 + d2


@given(st.integers(0, 10**6), st.sampled_from([1, 2, 3, 4, 5]))
def test_hensel_root_power(seed, k):
    rng = seeded(seed)
    f = random_unit(rng, 2, 6)
    f = f / f.constant_term()
    g = hensel_root_series(f, k)
    assert g ** k == f
    assert g.constant_term() == 1


@given(st.integers(0, 10**6))
def test_substitute_matches_division_path(seed):
    rng = seeded(seed)
    order = 5
    f = random_series(rng, 2, order, 4, max_degree=3)
    gs = [random_series(rng, 2, order, 3, max_degree=3, min_degree=1) for _ in range(2)]
    assert first_discrepancy(substitute(f, gs), substitute_by_division(f, gs), order) is None


@given(st.integers(0, 10**6))
def test_ift_solution(seed):
    rng = seeded(seed)
    order = 6
    X1, X2, Y1, Y2 = variables(4, order)
    n1 = random_series(rng, 4, order, 3, max_degree=3, min_degree=2)
    n2 = random_series(rng, 4, order, 3, max_degree=3, min_degree=2)
    fs = [Y1 - 2 * X1 + Y2 + n1, 3 * Y2 - X2 + n2]
    ys = implicit_solve(fs)
    back = [substitute(f, list(variables(2, order)) + list(ys)) for f in fs]
    for b in back:
        assert first_discrepancy(b, FormalSeries.zero(2, order), order) is None


def test_low_order_divisor_only_fixes_truncated_identity():
    """With ord g < d the two division paths may differ, but both satisfy f = qg + r mod D."""
    X1, X2 = variables(2, 8)
    g = X1 + X2 ** 3
    f = X2 ** 7 + X1 * X2 ** 4
    for res in (weierstrass_divide(f, g), divide_via_preparation(f, g)):
        assert first_discrepancy(f, res.quotient * g + res.remainder, 8) is None
        assert all(a[1] < 3 for a in res.remainder.terms)


@given(st.integers(0, 10**6), st.sampled_from([2, 3]))
def test_sheared_divisor_identity(seed, m):
    from helpers import random_sheared

    rng = seeded(seed)
    g = random_sheared(rng, m, 7)
    f = random_series(rng, m, 7, 5)
    res = weierstrass_divide(f, g)
    assert first_discrepancy(f, res.quotient * g + res.remainder, 7) is None
    assert all(a[m - 1] < res.degree for a in res.remainder.terms)
