"""Random instance generators shared by the test modules."""

import random
from fractions import Fraction

from wkit.powerseries import FormalSeries, regularize
from wkit.tate import TateElement


def random_exponent(rng, m, max_degree, min_degree=0):
    total = rng.randint(min_degree, max_degree)
    alpha = [0] * m
    for _ in range(total):
        alpha[rng.randrange(m)] += 1
    return tuple(alpha)


def random_coefficient(rng, height=5, fractions=True):
    c = Fraction(rng.randint(-height, height))
    if fractions and rng.random() < 0.3:
        c /= rng.randint(1, height)
    return c


def random_series(rng, m, order, nterms=5, max_degree=None, min_degree=0, exact=False, nonzero=True):
    max_degree = order if max_degree is None else max_degree
    while True:
        terms = {}
        for _ in range(nterms):
            alpha = random_exponent(rng, m, max_degree, min_degree)
            terms[alpha] = terms.get(alpha, 0) + random_coefficient(rng)
        f = FormalSeries(m, order, terms, exact=exact)
        if f.terms or not nonzero:
            return f


def random_regular(rng, m, order, nterms=5, max_d=4):
    """Random g regular in X_m of degree d with X_m**d in its lowest-degree part.

    For this class the truncated inputs determine the division to order D - d.
    """
    d = rng.randint(1 if m > 1 else 0, max_d)
    alpha = (0,) * (m - 1) + (d,)
    terms = {alpha: Fraction(rng.choice([1, -1, 2, 3, Fraction(1, 2)]))}
    for _ in range(nterms):
        beta = random_exponent(rng, m, min(order, d + 3), d)
        if beta != alpha:
            terms[beta] = terms.get(beta, 0) + random_coefficient(rng)
    return FormalSeries(m, order, terms)


def random_sheared(rng, m, order, nterms=5):
    """A random nonzero series made regular in X_m by the smallest working shear."""
    g = random_series(rng, m, order, nterms, max_degree=4)
    return regularize([g]).sheared[0]


def random_unit(rng, m, order, nterms=4):
    f = random_series(rng, m, order, nterms, max_degree=4, min_degree=1, nonzero=False)
    c = Fraction(rng.choice([1, 2, 3, -1, 1, 1]))
    return f + c


def random_tate(rng, m, p, prec, nterms=4, max_degree=3, scale_range=(0, 0)):
    terms = {}
    for _ in range(nterms):
        terms[random_exponent(rng, m, max_degree)] = rng.randrange(p ** prec)
    return TateElement(m, p, prec, terms, rng.randint(*scale_range))


def seeded(seed):
    return random.Random(seed)
