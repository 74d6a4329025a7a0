"""Deciding membership in a principal kernel: a yes comes with the power n
such that |g| <= |f|^n, a no comes with a witness point or ray."""

from tropkern import evaluate, member, parse
from tropkern.expr import as_ratfunc


def rat(text, names=("x",)):
    return as_ratfunc(parse(text, list(names)))


f = rat("x")
bounded = rat("min(abs(x), {1})")
for g, k, label in [(bounded, f, "min(|x|, 1) in <x>"), (f, bounded, "x in <min(|x|, 1)>"),
                    (rat("x^3/y", "xy"), rat("abs(x) + abs(y)", "xy"), "x^3/y in <|x| + |y|>")]:
    m = member(g, k)
    if m.member:
        print(f"{label}: yes, n = {m.n}")
        continue
    w = m.witness
    fmt = lambda v: "(" + ", ".join(map(str, v)) + ")"
    print(f"{label}: no, {w.kind} witness at {fmt(w.point)}" + (f" along {fmt(w.ray)}" if w.ray else ""))
    if w.ray:
        for s in (1, 10, 100):
            p = tuple(a + s * r for a, r in zip(w.point, w.ray))
            print(f"   at {fmt(p)}: |g| = {evaluate(g.abs(), p).value}, |f| = {evaluate(k.abs(), p).value}")
