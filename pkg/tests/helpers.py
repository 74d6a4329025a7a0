"""Seeded generators and grid oracles shared by the test modules."""

import random
from fractions import Fraction

from hypothesis import strategies as st

from tropkern import Monomial, RatFunc, TropPoly
from tropkern.expr import as_ratfunc, normalize, parse

HALF = Fraction(1, 2)


def half_int(rng: random.Random, bound: int) -> Fraction:
    return Fraction(rng.randint(-2 * bound, 2 * bound), 2)


def rand_monomial(rng, n, exp_bound=3, coeff_bound=5) -> Monomial:
    return Monomial(tuple(half_int(rng, exp_bound) for _ in range(n)), half_int(rng, coeff_bound))


def rand_poly(rng, n, k, ghosts=False, **kw) -> TropPoly:
    terms = [(rand_monomial(rng, n, **kw), 2 if ghosts and rng.random() < 0.3 else 1)
             for _ in range(k)]
    return normalize(TropPoly(n, tuple(terms)))


def rand_ratfunc(rng, n=None, max_terms=4, **kw) -> RatFunc:
    n = n or rng.choice((1, 2))
    return RatFunc(rand_poly(rng, n, rng.randint(1, max_terms), **kw),
                   rand_poly(rng, n, rng.randint(1, max_terms), **kw))


def rand_int_ratfunc(rng, n, max_terms=2, exp_bound=2, coeff_bound=2) -> RatFunc:
    """Small integer data: keeps the derived constructions cheap."""
    def poly():
        k = rng.randint(1, max_terms)
        return TropPoly.of([Monomial(tuple(Fraction(rng.randint(-exp_bound, exp_bound))
                                           for _ in range(n)),
                                     Fraction(rng.randint(-coeff_bound, coeff_bound)))
                            for _ in range(k)], n)
    return RatFunc(poly(), poly())


def half_grid(n: int, bound: int = 5) -> list:
    """Axes of the lattice ``{-bound, ..., bound}^n / 2``."""
    return [[Fraction(k, 2) for k in range(-bound, bound + 1)] for _ in range(n)]


def grid_points(axes):
    if len(axes) == 1:
        return [(a,) for a in axes[0]]
    return [(a, b) for a in axes[0] for b in axes[1]]


def rf(text: str, names=("x", "y")) -> RatFunc:
    return as_ratfunc(parse(text, list(names)))


# hypothesis strategies -------------------------------------------------------

halves = st.integers(-10, 10).map(lambda k: Fraction(k, 2))
small_q = st.fractions(min_value=-8, max_value=8, max_denominator=6)


def monomials(n: int, exps=st.integers(-3, 3).map(Fraction)):
    return st.builds(Monomial, st.tuples(*[exps] * n), halves)


def polys(n: int, max_terms: int = 4, ghosts: bool = False):
    mult = st.sampled_from((1, 2)) if ghosts else st.just(1)
    return st.lists(st.tuples(monomials(n), mult), min_size=1, max_size=max_terms).map(
        lambda terms: normalize(TropPoly(n, tuple(terms))))


def ratfuncs(n: int, max_terms: int = 3):
    return st.builds(RatFunc, polys(n, max_terms), polys(n, max_terms))
