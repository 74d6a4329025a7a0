from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from helpers import grid_points, half_grid, polys, ratfuncs, rf
from tropkern import (Monomial, ParseError, RatFunc, TropPoly, evaluate, format_expr, normalize,
                      parse, prune, to_affine_forms)
from tropkern.expr import grid_values

XY = ["x", "y"]


def m(*exps, c=0):
    return Monomial(tuple(F(e) for e in exps), F(c))


def test_parse_polynomial():
    p = parse("x + y + {0}", XY)
    assert isinstance(p, TropPoly)
    assert len(p.terms) == 3 and all(mult == 1 for _, mult in p.terms)


def test_parse_fraction():
    f = parse("x / (y + {0})", XY)
    assert isinstance(f, RatFunc)
    assert f.num == TropPoly.of([m(1, 0)], 2)
    assert f.den == TropPoly.of([m(0, 1), m(0, 0)], 2)


def test_parse_ghost():
    p = parse("x + x", ["x"])
    assert p.terms == ((m(1), 2),)


def test_parse_operators():
    f = rf("abs(x)", ["x"])
    assert [evaluate(f, (v,)).value for v in (-3, 0, F(5, 2))] == [3, 0, F(5, 2)]
    g = rf("min(x, {1})", ["x"])
    assert [evaluate(g, (v,)).value for v in (-3, 1, 4)] == [-3, 1, 1]
    h = parse("x^(3/2)*{-1}", ["x"])
    assert h.terms == ((m(F(3, 2), c=-1), 1),)


@pytest.mark.parametrize("text, pos", [("x + ", 4), ("x * (y", 6), ("{1/0}", None), ("x $ y", 2)])
def test_syntax_errors(text, pos):
    with pytest.raises(ParseError) as exc:
        parse(text, XY)
    if pos is not None:
        assert exc.value.pos == pos


def test_unknown_variable():
    with pytest.raises(ParseError, match="unknown variable"):
        parse("x + z", XY)


def test_evaluate_examples():
    line = parse("x + y + {0}", XY)
    r = evaluate(line, (3, 1))
    assert (r.value, r.ghost) == (3, False)
    r = evaluate(line, (2, 2))
    assert (r.value, r.ghost) == (2, True)
    r = evaluate(parse("x + x + {0}", ["x"]), (2,))
    assert (r.value, r.ghost) == (2, True)
    assert not evaluate(rf("x/(x + {0})", ["x"]), (0,)).ghost


def test_evaluate_dimension_mismatch():
    with pytest.raises(ValueError):
        evaluate(parse("x + y", XY), (1,))


def test_normalize_examples():
    both = TropPoly(1, ((m(1), 1), (m(1, c=2), 1)))
    assert normalize(both).terms == ((m(1, c=2), 1),)
    twice = TropPoly(1, ((m(1), 1), (m(1), 1)))
    assert normalize(twice).terms == ((m(1), 2),)
    absorbed = TropPoly(1, ((m(1), 2), (m(1), 1)))
    assert normalize(absorbed).terms == ((m(1), 2),)


def test_to_affine_forms():
    (a, _), (b, _) = sorted(to_affine_forms(parse("x + {0}", ["x"])), reverse=True)
    assert (a.grad, a.const, b.grad, b.const) == ((1,), 0, (0,), 0)
    ((form, mult),) = to_affine_forms(parse("{2}*x^2*y^-1", XY))
    assert (form.grad, form.const, mult) == ((2, -1), 2, 1)
    assert to_affine_forms(parse("x + x", ["x"]))[0][1] == 2


def test_print_round_trip_examples():
    for text in ("x + y + {0}", "x/(y + {0})", "{-1/2}*x^3*y^-2 + x + x"):
        e = parse(text, XY)
        assert parse(format_expr(e, XY), XY) == e


@given(polys(2, 4, ghosts=True))
def test_print_round_trip_poly(p):
    assert parse(format_expr(p, XY), XY) == p


@given(ratfuncs(2))
def test_print_round_trip_ratfunc(f):
    assert parse(format_expr(f, XY), XY) == f


@settings(max_examples=40)
@given(st.lists(st.tuples(st.tuples(st.integers(-2, 2), st.integers(-2, 2)),
                          st.integers(-3, 3), st.sampled_from((1, 2))), min_size=1, max_size=6))
def test_normalize_preserves_evaluation(raw):
    p = TropPoly(2, tuple((m(*e, c=c), k) for e, c, k in raw))
    q = normalize(p)
    for x in grid_points(half_grid(2, 4)):
        assert evaluate(p, x) == evaluate(q, x)


@settings(max_examples=40)
@given(ratfuncs(2))
def test_abs_matches_pointwise(f):
    g = f.abs()
    for x in grid_points(half_grid(2, 3)):
        assert evaluate(g, x).value == abs(evaluate(f, x).value)


@settings(max_examples=30)
@given(polys(2, 4), st.integers(0, 3), st.integers(1, 4))
def test_evaluate_monotone_in_coefficients(p, k, bump):
    k %= len(p.terms)
    (mono, mult) = p.terms[k]
    terms = list(p.terms)
    terms[k] = (Monomial(mono.exps, mono.coeff + bump), mult)
    q = TropPoly(2, tuple(terms))
    for x in grid_points(half_grid(2, 3)):
        assert evaluate(q, x).value >= evaluate(p, x).value


@settings(max_examples=40)
@given(polys(2, 6, ghosts=True))
def test_grid_values_match_evaluate(p):
    axes = half_grid(2, 4)
    gv = grid_values(p, axes)
    for idx, x in zip(np.ndindex(gv.scaled.shape), grid_points(axes)):
        r = evaluate(p, x)
        assert gv[idx] == r.value and bool(gv.ghost[idx]) == r.ghost


@settings(max_examples=60)
@given(polys(2, 8))
def test_prune_keeps_the_function(p):
    q = prune(p)
    assert q.is_tangible()
    assert set(q.monomials) <= set(p.monomials)
    for x in grid_points(half_grid(2, 4)):
        assert evaluate(q, x).value == evaluate(p, x).value


def test_prune_drops_dominated_terms():
    p = parse("x^2 + x + {0}", ["x"])
    assert prune(p) == parse("x^2 + {0}", ["x"])
