"""HO-decomposition of x/(y + 0) and of a bounded example, with the
convexity degree of each piece."""

from tropkern import classify, ho_decompose, hyperdim, parse
from tropkern.expr import as_ratfunc

NAMES = ["x", "y"]


def show(text, names):
    f = as_ratfunc(parse(text, names))
    print(f"{text}   ({classify(f)})")
    for comp in ho_decompose(f):
        js = comp.to_json(names)
        if comp.bounded:
            print(f"   bounded part, |f| >= {comp.gamma}")
        else:
            print(f"   hs {js['hs']}  orders {js['orders']}  condeg {comp.condeg}")
    rep = hyperdim(f)
    print("   condegs", rep.condegs, "codims", rep.codims)
    print()


show("x/(y + {0})", NAMES)
show("min(abs(x), {1})", ["x"])
show("abs(x) + abs(y)", NAMES)
show("{0} + x", ["x"])
