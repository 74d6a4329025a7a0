"""Render planar SkelSets as SVG.  Geometry stays exact until the final
coordinate formatting."""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .skeletons import SkelSet
from .tropnum import to_q

SIZE = 400
MARGIN = 20
COLORS = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf"]


def _interval(local_forms, lo=None, hi=None):
    """Feasible ``t`` for forms ``a*t + c >= 0``; ``None`` when empty."""
    for f in local_forms:
        a, c = f.grad[0], f.const
        if a > 0:
            b = -c / a
            lo = b if lo is None else max(lo, b)
        elif a < 0:
            b = -c / a
            hi = b if hi is None else min(hi, b)
        elif c < 0:
            return None
    if lo is not None and hi is not None and lo > hi:
        return None
    return lo, hi


def _box_forms(box):
    from .lp import AffineForm
    x0, x1, y0, y1 = box
    return [AffineForm.make([1, 0], -x0), AffineForm.make([-1, 0], x1),
            AffineForm.make([0, 1], -y0), AffineForm.make([0, -1], y1)]


def _polygon(ineqs, box) -> list:
    forms = list(ineqs) + _box_forms(box)
    pts = set()
    for f, g in combinations(forms, 2):
        det = f.grad[0] * g.grad[1] - f.grad[1] * g.grad[0]
        if det == 0:
            continue
        x = (-f.const * g.grad[1] + g.const * f.grad[1]) / det
        y = (-f.grad[0] * g.const + g.grad[0] * f.const) / det
        if all(h((x, y)) >= 0 for h in forms):
            pts.add((x, y))
    if len(pts) < 3:
        return sorted(pts)
    cx = sum(p[0] for p in pts) / len(pts)
    cy = sum(p[1] for p in pts) / len(pts)

    def angle_key(p):
        # exact "diamond angle": monotone in the true angle, values in [0, 4)
        dx, dy = p[0] - cx, p[1] - cy
        if dy >= 0:
            return dy / (dx + dy) if dx >= 0 else 1 - dx / (dy - dx)
        return 2 - dy / (-dx - dy) if dx < 0 else 3 + dx / (dx - dy)

    return sorted(pts, key=angle_key)


def _fmt(v: Fraction) -> str:
    s = f"{float(v):.6f}"
    return "0.000000" if s == "-0.000000" else s


def plot_svg(S: SkelSet, viewport: Sequence = (-5, 5, -5, 5)) -> str:
    """An SVG 1.1 document drawing every piece of a planar SkelSet."""
    if S.nvars != 2:
        raise ValueError("SVG output needs exactly two variables")
    box = tuple(to_q(v) for v in viewport)
    x0, x1, y0, y1 = box
    if not (x0 < x1 and y0 < y1):
        raise ValueError("viewport must satisfy xmin < xmax and ymin < ymax")
    span = SIZE - 2 * MARGIN
    sx, sy = Fraction(span) / (x1 - x0), Fraction(span) / (y1 - y0)

    def px(p):
        return _fmt(MARGIN + (p[0] - x0) * sx), _fmt(MARGIN + (y1 - p[1]) * sy)

    out = ['<?xml version="1.0" encoding="UTF-8"?>',
           f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" '
           f'viewBox="0 0 {SIZE} {SIZE}">',
           '<defs><marker id="arrow" viewBox="0 0 10 10" refX="9" refY="5" markerWidth="6" '
           'markerHeight="6" orient="auto-start-reverse"><path d="M0,0 L10,5 L0,10 z" fill="black"/>'
           '</marker></defs>',
           f'<rect x="{MARGIN}" y="{MARGIN}" width="{span}" height="{span}" fill="white" stroke="#bbbbbb"/>']
    if 0 >= y0 and 0 <= y1:
        a, b = px((x0, Fraction(0))), px((x1, Fraction(0)))
        out.append(f'<line x1="{a[0]}" y1="{a[1]}" x2="{b[0]}" y2="{b[1]}" stroke="#dddddd"/>')
    if 0 >= x0 and 0 <= x1:
        a, b = px((Fraction(0), y0)), px((Fraction(0), y1))
        out.append(f'<line x1="{a[0]}" y1="{a[1]}" x2="{b[0]}" y2="{b[1]}" stroke="#dddddd"/>')
    if S.is_empty():
        out.append(f'<text x="{SIZE // 2}" y="{SIZE // 2}" font-size="32" text-anchor="middle">∅</text>')
    for k, reg in enumerate(S.regions):
        color = COLORS[k % len(COLORS)]
        if reg.dim == 0:
            p = reg.point
            if x0 <= p[0] <= x1 and y0 <= p[1] <= y1:
                c = px(p)
                out.append(f'<circle cx="{c[0]}" cy="{c[1]}" r="4" fill="{color}"/>')
        elif reg.dim == 1:
            own = _interval(reg.local)
            frame = reg.frame
            boxed = _interval([frame.pull(f) for f in _box_forms(box)], *own) if own else None
            if boxed is None or boxed[0] is None or boxed[1] is None:
                continue
            a, b = frame.push((boxed[0],)), frame.push((boxed[1],))
            pa, pb = px(a), px(b)
            marks = ""
            if own[0] is None or own[0] < boxed[0]:
                marks += ' marker-start="url(#arrow)"'
            if own[1] is None or own[1] > boxed[1]:
                marks += ' marker-end="url(#arrow)"'
            out.append(f'<line x1="{pa[0]}" y1="{pa[1]}" x2="{pb[0]}" y2="{pb[1]}" '
                       f'stroke="{color}" stroke-width="2"{marks}/>')
        else:
            poly = _polygon(reg.polyhedron().ineqs, box)
            if len(poly) >= 3:
                pts = " ".join(",".join(px(p)) for p in poly)
                out.append(f'<polygon points="{pts}" fill="{color}" fill-opacity="0.3" stroke="{color}"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
