import json
import random
from fractions import Fraction as F

import numpy as np
import pytest

from helpers import grid_points, half_grid, rand_int_ratfunc, rand_poly, rf
from tropkern import (Monomial, RatFunc, TropPoly, ci_closure, corner_locus, essential_form,
                      gen_meet, hat, is_corner_integral, is_regular, omega, parse, similar,
                      skel_equal, skeleton, tilde, underline)
from tropkern.cornerint import DegenerateInput
from tropkern.expr import grid_values

XY = ["x", "y"]
X = ["x"]
LINE = parse("x + y + {0}", XY)


def test_hat_of_binomial_is_abs():
    assert similar(hat(parse("x + {0}", X)), rf("abs(x)", X))
    assert skel_equal(skeleton(hat(parse("x + {0}", X))), skeleton(rf("x", X)))


def test_hat_grid_oracle():
    rng = random.Random(51)
    for _ in range(10):
        n = rng.choice((1, 2))
        P = rand_poly(rng, n, rng.randint(2, 4), ghosts=True)
        if sum(m for _, m in P.terms) < 2:
            continue
        h = hat(P)
        axes = half_grid(n, 5 if n == 2 else 40)
        ghost = grid_values(P, axes).ghost
        vals = grid_values(h, axes)
        assert np.array_equal(ghost, vals.scaled == 0)


def test_degenerate_hat():
    single = parse("{2}*x", X)
    with pytest.raises(DegenerateInput):
        hat(single)
    const = hat(single, degenerate="constant")
    assert skeleton(const).is_empty()


def test_tilde_examples():
    assert similar(tilde(LINE), hat(LINE))
    assert skel_equal(skeleton(tilde(LINE)), corner_locus(LINE))
    assert similar(tilde(parse("x + {0}", X)), rf("abs(x)", X))


def test_underline_examples():
    assert underline(rf("{0}/(x + y)")) == LINE
    assert underline(rf("x/(y + {0})")) == LINE
    ghost_x = underline(rf("(x + {0})/(x + y)"))
    assert ghost_x == parse("x + x + y + {0}", XY)
    # different coefficients: the larger one survives as a tangible term
    assert underline(rf("({1}*x)/(x + y)")) == parse("{1}*x + y", XY)


def test_essential_form_examples():
    one = Monomial((F(0), F(0)), F(0))
    x = Monomial((F(1), F(0)), F(0))
    y = Monomial((F(0), F(1)), F(0))
    dup = RatFunc(TropPoly(2, ((x, 1), (x, 1), (one, 1))), TropPoly(2, ((y, 1),)))
    e = essential_form(dup)
    assert e.num.terms == ((x, 1), (one, 1)) and e.den == dup.den
    f = rf("x/(y + {0})")
    assert essential_form(f) == f


def test_essential_form_is_locally_minimal():
    rng = random.Random(52)
    for _ in range(12):
        f = rand_int_ratfunc(rng, rng.choice((1, 2)), 3)
        e = essential_form(f)
        assert skel_equal(skeleton(e), skeleton(f))
        for side in ("num", "den"):
            poly = getattr(e, side)
            if len(poly.terms) < 2:
                continue
            for k in range(len(poly.terms)):
                red = TropPoly(e.nvars, poly.terms[:k] + poly.terms[k + 1:])
                cand = RatFunc(red, e.den) if side == "num" else RatFunc(e.num, red)
                assert not skel_equal(skeleton(cand), skeleton(e))


def test_is_regular_examples():
    assert is_regular(rf("x/(y + {0})"))
    assert not is_regular(rf("(x + {0})/{0}", X))
    assert is_regular(hat(LINE))
    assert is_regular(hat(parse("x^2 + {1}*x + {0}", X)))


def test_is_corner_integral_examples():
    assert is_corner_integral(rf("x", X))
    rep = is_corner_integral(rf("((x + {1})*x)/(x + {1})", X))
    assert not rep
    (v,) = rep.violations
    assert v.side == "num" and v.witness == (1,)
    assert is_corner_integral(rf("(x + y)*(x + y + {0})/((x + {0})*(y + {0}))"))


def test_ci_report_json():
    rep = is_corner_integral(rf("((x + {1})*x)/(x + {1})", X))
    out = rep.to_json()
    assert out == {"integral": False, "violations": [{"side": "num", "pair": list(rep.violations[0].pair),
                                                      "witness": ["1/1"]}]}
    json.dumps(out)


def test_ci_witnesses_are_exact():
    rng = random.Random(53)
    found = 0
    for _ in range(30):
        f = rand_int_ratfunc(rng, 2, 3)
        for v in is_corner_integral(f).violations:
            own, other = (f.num, f.den) if v.side == "num" else (f.den, f.num)
            i, j = v.pair
            forms = [m.affine() for m in own.monomials]
            x = v.witness
            top = max(a(x) for a in forms)
            assert forms[i](x) == forms[j](x) == top
            assert all(top > m.affine()(x) for m in other.monomials)
            found += 1
    assert found


def test_ci_closure_examples():
    assert similar(ci_closure(rf("x", X)), rf("x", X))
    assert skel_equal(skeleton(ci_closure(rf("{0}/(x + y)"))), corner_locus(LINE))
    b = rf("min(abs(x), {1})", X)
    assert similar(ci_closure(b), b)


def test_ci_closure_skeleton_decomposition():
    """Skel(closure) = Skel(f) ∪ (Cor(num) ∩ {f >= 0}) ∪ (Cor(den) ∩ {f <= 0}) on a grid.

    A corner root of the numerator is added where the denominator fails to
    surpass it, i.e. where ``f >= 0``; symmetrically for the denominator.
    """
    rng = random.Random(54)
    for _ in range(12):
        n = rng.choice((1, 2))
        f = rand_int_ratfunc(rng, n, 2)
        axes = half_grid(n, 5)
        fv = grid_values(f, axes)
        num_ghost = grid_values(f.num, axes).ghost
        den_ghost = grid_values(f.den, axes).ghost
        S = skeleton(ci_closure(f))
        for idx, p in zip(np.ndindex(fv.scaled.shape), grid_points(axes)):
            v = fv.scaled[idx]
            want = v == 0 or (num_ghost[idx] and v >= 0) or (den_ghost[idx] and v <= 0)
            assert S.contains(p) == bool(want), (f, p)


def _ci_generator(f):
    """The hat of the supertropical sum of all monomials of ``f``."""
    P = underline(f)
    return hat(P) if sum(m for _, m in P.terms) >= 2 else None


def test_ci_closure_kernel_is_corner_integral():
    # the closure's kernel has a corner-integral generator: same skeleton,
    # and the same kernel once both are cut down to bounded generators
    rng = random.Random(58)
    for _ in range(8):
        f = rand_int_ratfunc(rng, rng.choice((1, 2)), 2)
        h = _ci_generator(f)
        if h is None:
            continue
        phi = ci_closure(f)
        assert is_corner_integral(h)
        assert skel_equal(skeleton(h), skeleton(phi))
        assert similar(omega(h, 1), omega(phi, 1))


def test_ci_closure_idempotent_on_corner_integral_generator():
    rng = random.Random(55)
    for _ in range(6):
        f = rand_int_ratfunc(rng, rng.choice((1, 2)), 2)
        h = _ci_generator(f)
        if h is None:
            continue
        again = ci_closure(h)
        assert similar(again, h)
        assert skel_equal(skeleton(again), skeleton(ci_closure(f)))


@pytest.mark.xfail(strict=True, reason="the closure formula is not a corner-integral "
                   "presentation, so closing it again can add corner roots")
def test_ci_closure_literal_idempotence_counterexample():
    f = rf("({2}*x)/({-2}*x^2 + {1})", X)
    assert is_corner_integral(f)
    phi = ci_closure(f)
    assert similar(phi, f)
    assert skel_equal(skeleton(ci_closure(phi)), skeleton(phi))


def test_meet_of_corner_integral_is_corner_integral():
    rng = random.Random(56)
    done = 0
    while done < 8:
        n = rng.choice((1, 2))
        f, g = rand_int_ratfunc(rng, n, 2), rand_int_ratfunc(rng, n, 2)
        if not (is_corner_integral(f) and is_corner_integral(g)):
            continue
        assert is_corner_integral(gen_meet(f, g).gen)
        done += 1


def test_abs_preserves_corner_integrality():
    rng = random.Random(57)
    for _ in range(25):
        f = rand_int_ratfunc(rng, rng.choice((1, 2)), 3)
        assert bool(is_corner_integral(f)) == bool(is_corner_integral(f.abs().simplified()))
