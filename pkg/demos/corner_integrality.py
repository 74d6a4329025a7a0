"""Corner-integrality: a failing example, its closure, and the regularity
test."""

from tropkern import (ci_closure, format_expr, is_corner_integral, is_regular, parse, similar,
                      skel_equal, skeleton)
from tropkern.expr import as_ratfunc

X = ["x"]

f = as_ratfunc(parse("((x + {1})*x)/(x + {1})", X))
rep = is_corner_integral(f)
print("f =", format_expr(f, X))
print("corner-integral:", rep.integral)
for v in rep.violations:
    print("   corner root outside the skeleton at", ", ".join(map(str, v.witness)))

g = ci_closure(f)
print("\nclosure:", format_expr(g, X))
print("skeleton grows:", not skel_equal(skeleton(g), skeleton(f)))
print("closure similar to f:", similar(g, f))

for text in ("(x + {0})/{0}", "x/(x + {0})"):
    print(f"\n{text} regular:", is_regular(as_ratfunc(parse(text, X))))
