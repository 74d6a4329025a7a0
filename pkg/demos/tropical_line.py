"""The tropical line x + y + 0: its corner locus, the hat map, and a
reduced fraction with the same skeleton.

    python3 demos/tropical_line.py [out.svg]
"""

import sys

from tropkern import (corner_locus, essential_form, format_expr, hat, hat_terms, is_corner_integral,
                      parse, plot_svg, skel_equal, skeleton)

NAMES = ["x", "y"]


def show_form(form, rel):
    terms = " ".join(f"{'+' if c > 0 else '-'} {abs(c) if abs(c) != 1 else ''}{v}"
                     for c, v in zip(form.grad, NAMES) if c)
    const = f" {'+' if form.const > 0 else '-'} {abs(form.const)}" if form.const else ""
    terms = terms[2:] if terms.startswith("+ ") else "-" + terms[2:]
    return f"{terms}{const} {rel} 0"



line = parse("x + y + {0}", NAMES)
locus = corner_locus(line)
print("corner locus of", format_expr(line, NAMES))
for piece in locus.pieces:
    print("  ", ", ".join([show_form(e, "=") for e in piece.eqs]
                          + [show_form(q, ">=") for q in piece.ineqs]))

print("\nsummands of the hat map:")
for t in hat_terms(line):
    print("  ", format_expr(t, NAMES))

h = hat(line)
print("\nskeleton(hat) equals the corner locus:", skel_equal(skeleton(h), locus))
print("hat is corner-integral:", is_corner_integral(h).integral)

reduced = essential_form(h)
print("\nessential form:", format_expr(reduced, NAMES))
print("same skeleton:", skel_equal(skeleton(reduced), locus))

if len(sys.argv) > 1:
    with open(sys.argv[1], "w", encoding="utf-8") as fh:
        fh.write(plot_svg(locus))
    print("wrote", sys.argv[1])
