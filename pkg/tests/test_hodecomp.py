import random
from fractions import Fraction as F

import pytest

from helpers import rand_int_ratfunc, rf
from tropkern import (Monomial, RatFunc, classify, condeg, hat, ho_decompose, hs_chain, hyperdim,
                      is_regular, is_regular_via_decomp, member, parse, point_kernel, rank,
                      skel_equal, skeleton)
from tropkern.kernels import join_all
from tropkern.skeletons import skel_union

X = ["x"]
XYZ = ["x", "y", "z"]


def mono(*exps, c=0):
    return Monomial(tuple(F(e) for e in exps), F(c))


@pytest.mark.parametrize("text, names, kind", [
    ("x/y", ["x", "y"], "HP"),
    ("abs(x) + abs(y)", ["x", "y"], "HS"),
    ("{0} + x", X, "order"),
    ("abs({0} + x) + abs({0} + y)", ["x", "y"], "region"),
    ("abs(x) + abs({0} + y)", ["x", "y"], "HO"),
    ("x/(y + {0})", ["x", "y"], "general"),
    ("min(abs(x), {1})", X, "general"),
])
def test_classify(text, names, kind):
    assert classify(rf(text, names)) == kind


def test_hs_input_is_one_component():
    (c,) = ho_decompose(rf("abs(x) + abs(y)"))
    assert not c.bounded and not c.order_gens and c.condeg == 2


def test_regularity_via_decomposition():
    assert is_regular_via_decomp(ho_decompose(rf("x/(y + {0})")))
    assert not is_regular_via_decomp(ho_decompose(rf("(x + {0})/{0}", X)))
    assert is_regular_via_decomp(ho_decompose(rf("min(abs(x), {1})", X)))


def test_regularity_agrees_with_cornerint():
    rng = random.Random(61)
    for _ in range(20):
        f = rand_int_ratfunc(rng, rng.choice((1, 2)), 2)
        assert is_regular_via_decomp(ho_decompose(f)) == is_regular(f), f


def test_condeg_examples():
    for n in range(1, 5):
        assert condeg([Monomial.var(n, i) for i in range(n)]) == n
    assert condeg([mono(1), mono(2)]) == 1
    assert condeg([mono(1, 1), mono(1, -1)]) == 2
    with pytest.raises(ValueError):
        condeg([mono(0, 0, c=1)])


def test_hyperdim_examples():
    rep = hyperdim(rf("x/(y + {0})"))
    assert sorted(rep.condegs) == [1, 1, 2]
    assert all(c + d == 2 for c, d in zip(rep.condegs, rep.codims))
    for n in (1, 2, 3):
        rep = hyperdim(point_kernel([F(k) for k in range(n)]).gen)
        assert rep.condegs == [n] and rep.codims == [0]
    rep = hyperdim(rf("{0} + x", X))
    assert rep.condegs == [0] and rep.codims == [1]


def test_hs_chain_examples():
    gens = [mono(*[1 if i == k else 0 for i in range(3)], c=-k) for k in range(3)]
    chain = hs_chain(gens)
    assert len(chain) == 3 and chain[-1] == gens[:1]
    assert len(hs_chain([mono(1), mono(2)])) == 1
    chain = hs_chain([mono(1, 1), mono(0, 1), mono(1, 0)])
    assert len(chain) == 2 and len(chain[0]) == 2
    with pytest.raises(ValueError):
        hs_chain([mono(1), mono(1, c=1)])  # x = 0 and x = -1 never meet


def test_nonbounded_pieces_cover_the_skeleton():
    rng = random.Random(62)
    for _ in range(12):
        f = rand_int_ratfunc(rng, rng.choice((1, 1, 2)), 2)
        live = [c for c in ho_decompose(f) if not c.bounded]
        S = skeleton(f)
        if not live:
            assert S.is_empty()
            continue
        parts = [skeleton(c.generator()) for c in live]
        union = parts[0]
        for p in parts[1:]:
            union = skel_union(union, p)
        assert skel_equal(S, union), f


def test_span_criterion_matches_membership():
    rng = random.Random(63)
    one = None
    for _ in range(40):
        n = rng.randint(1, 3)
        grads = [[rng.randint(-1, 1) for _ in range(n)] for _ in range(rng.randint(1, 2))]
        grads = [g for g in grads if any(g)] or [[1] + [0] * (n - 1)]
        target = [rng.randint(-1, 1) for _ in range(n)]
        if not any(target):
            target[0] = 1
        S = [mono(*g) for g in grads]
        one = mono(*([0] * n), c=1)
        in_span = rank(grads + [target]) == rank(grads)
        assert bool(member(mono(*target), join_all(S + [one]))) == in_span


def test_condeg_independent_of_presentation_order():
    rng = random.Random(64)
    for _ in range(10):
        f = rand_int_ratfunc(rng, 2, 3)
        base = sorted(c.condeg for c in ho_decompose(f) if not c.bounded)
        num = list(f.num.terms)
        den = list(f.den.terms)
        rng.shuffle(num)
        rng.shuffle(den)
        g = RatFunc(type(f.num)(2, tuple(num)), type(f.den)(2, tuple(den)))
        assert sorted(c.condeg for c in ho_decompose(g) if not c.bounded) == base
        for c in ho_decompose(g):
            if c.order_gens and c.hs_gens:
                assert condeg(c.hs_gens) == c.condeg


def test_exchange_property():
    """If z depends on S ∪ {y} but not on S, then y depends on S ∪ {z}."""
    rng = random.Random(65)
    checked = 0
    for _ in range(200):
        n = 3
        s, y, z = [[rng.randint(-1, 1) for _ in range(n)] for _ in range(3)]
        if not (any(s) and any(y) and any(z)):
            continue
        dep = lambda v, rows: rank(rows + [v]) == rank(rows)
        if dep(z, [s, y]) and not dep(z, [s]):
            assert dep(y, [s, z])
            checked += 1
    assert checked > 10


def test_classify_hat_of_tangible_is_never_order_or_region():
    for text in ("x + y", "x + {0}", "x^2 + {1}*x + {0}", "x^3 + x + {-1}"):
        names = ["x", "y"] if "y" in text else X
        assert classify(hat(parse(text, names))) in {"HP", "HS", "HO", "general"}
