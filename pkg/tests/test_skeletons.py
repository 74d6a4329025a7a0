import json
import random
from fractions import Fraction as F

import pytest

from helpers import rand_int_ratfunc, rand_ratfunc, rf
from tropkern import (corner_locus, parse, poly_dim, skel_contains, skel_difference_point,
                      skel_equal, skel_is_empty, skeleton, thicken)
from tropkern.skeletons import to_json

X = ["x"]


def test_skeleton_of_x_is_origin():
    S = skeleton(rf("x", X))
    assert len(S) == 1 and S.contains((0,)) and not S.contains((F(1, 3),))


def test_skeleton_of_x_over_y_plus_one():
    S = skeleton(rf("x/(y + {0})"))
    assert len(S) == 2
    assert all(poly_dim(P) == 1 for P in S.pieces)
    for p in [(0, 0), (3, 3), (0, -2)]:
        assert S.contains(p)
    for p in [(0, 3), (-2, -2), (1, 0)]:
        assert not S.contains(p)


def test_empty_skeleton_with_gamma():
    f = rf("abs(x) + {1}", X)
    assert skeleton(f).is_empty()
    e = skel_is_empty(f)
    assert e and e.gamma == 1
    assert not skel_is_empty(rf("x", X))
    assert not skel_is_empty(rf("min(abs(x), {1})", X))


def test_corner_locus_examples():
    line = corner_locus(parse("x + y + {0}", ["x", "y"]))
    assert len(line) == 3
    for p in [(0, 0), (2, 2), (0, -3), (-1, 0)]:
        assert line.contains(p)
    assert not line.contains((1, 0))
    ghost = corner_locus(parse("x + x", X))
    assert all(ghost.contains((v,)) for v in (-3, 0, F(7, 2)))
    assert corner_locus(parse("{2}*x^3", X)).is_empty()


def test_containment_examples():
    point = skeleton(rf("abs(x) + abs(y)"))
    axis = skeleton(rf("x"))
    assert skel_contains(point, axis)
    assert not skel_contains(axis, point)
    x = skel_difference_point(axis, point)
    assert axis.contains(x) and not point.contains(x)


def test_containment_needs_source():
    S = skeleton(rf("x", X))
    S.source = None
    with pytest.raises(ValueError):
        skel_contains(skeleton(rf("x", X)), S)


def test_skeleton_invariant_under_abs_and_inverse():
    rng = random.Random(31)
    for _ in range(25):
        f = rand_ratfunc(rng, max_terms=3)
        S = skeleton(f)
        assert skel_equal(S, skeleton(f.abs()))
        assert skel_equal(S, skeleton(f.inverse()))


def test_thicken_examples():
    x = rf("x", X)
    band = skeleton(thicken(x, 1, 1))
    assert [band.contains((v,)) for v in (-2, -1, 0, 1, 2)] == [False, True, True, True, False]
    assert skel_equal(skeleton(thicken(x, 0, 0)), skeleton(x))
    assert skel_contains(band, skeleton(thicken(x, 2, 1)))
    assert not skel_contains(skeleton(thicken(x, 2, 1)), band)
    with pytest.raises(ValueError):
        thicken(x, -1, 0)


def test_thicken_monotone_random():
    rng = random.Random(32)
    for _ in range(10):
        f = rand_int_ratfunc(rng, 2, 2)
        a2, b2 = F(rng.randint(0, 3)), F(rng.randint(0, 3))
        a1, b1 = a2 + F(rng.randint(1, 3), 2), b2 + F(rng.randint(1, 3), 2)
        assert skel_contains(skeleton(thicken(f, a2, b2)), skeleton(thicken(f, a1, b1)))


def test_json_shape():
    out = to_json(skeleton(rf("x/(y + {0})")))
    text = json.dumps(out)
    assert out["nvars"] == 2 and len(out["pieces"]) == 2
    assert all(set(p) == {"eq", "ineq"} for p in out["pieces"])
    assert all("/" in v for p in out["pieces"] for row in p["eq"] + p["ineq"] for v in row)
    assert json.loads(text) == out
