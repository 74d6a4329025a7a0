"""Exact clipping of polyhedra of dimension one and two.

Most cells met in practice live in a one- or two-dimensional chart, where
halfspace intersection is a short loop over vertices and beats an LP by a
wide margin.  A two-dimensional polyhedron is stored as a cyclic list of
homogeneous points ``(x, y, w)``: ``w = 1`` is an ordinary vertex, ``w = 0``
a direction at infinity.  Unbounded regions are therefore exact, and
consecutive points are never opposite directions (an ordinary point is
inserted between them), so every edge is unambiguous.

Halfplanes are coefficient tuples ``(a, c)`` or ``(a, b, c)`` meaning
``a x + b y + c >= 0``, in the arithmetic of the LP tableau.  Shapes are
always full-dimensional; a clip that loses dimension returns ``None``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import NamedTuple, Optional

from .lp import _NUM, AffineForm, _to_fraction

ZERO = _NUM(0)
ONE = _NUM(1)


class Interval(NamedTuple):
    lo: Optional[object]  # None is -infinity
    hi: Optional[object]  # None is +infinity


def coeffs(form: AffineForm) -> tuple:
    return tuple(_NUM(v) for v in form.grad) + (_NUM(form.const),)


def whole(dim: int):
    if dim == 1:
        return Interval(None, None)
    if dim == 2:
        return [(ONE, ZERO, ZERO), (ZERO, ONE, ZERO), (-ONE, ZERO, ZERO), (ZERO, -ONE, ZERO)]
    raise ValueError("only dimensions one and two are supported")


def _direction(x, y) -> tuple:
    """Primitive integer representative of a direction."""
    den = math.lcm(int(x.denominator), int(y.denominator))
    a, b = int(x * den), int(y * den)
    g = math.gcd(a, b)
    return (_NUM(a // g), _NUM(b // g), ZERO)


def _normal(p: tuple) -> tuple:
    x, y, w = p
    if w:
        return (x / w, y / w, ONE)
    return _direction(x, y)


def clip(shape, h: tuple):
    """``shape ∩ {h >= 0}``; ``None`` when that is not full-dimensional."""
    if isinstance(shape, Interval):
        a, c = h
        if not a:
            return shape if c >= 0 else None
        bound = -c / a
        lo, hi = shape
        if a > 0:
            lo = bound if lo is None or bound > lo else lo
        else:
            hi = bound if hi is None or bound < hi else hi
        if lo is not None and hi is not None and lo >= hi:
            return None
        return Interval(lo, hi)
    a, b, c = h
    if not a and not b:
        return shape if c >= 0 else None
    vals = [a * x + b * y + c * w for x, y, w in shape]
    if all(v >= 0 for v in vals):
        return shape
    if not any(v > 0 for v in vals):
        return None
    out = []
    k = len(shape)
    for i in range(k):
        p, vp = shape[i], vals[i]
        j = i + 1 if i + 1 < k else 0
        vq = vals[j]
        if vp >= 0:
            out.append(p)
        if (vp > 0 and vq < 0) or (vp < 0 and vq > 0):
            q = shape[j]
            s, t = abs(vq), abs(vp)  # positive weights keep w >= 0
            out.append(_normal((s * p[0] + t * q[0], s * p[1] + t * q[1], s * p[2] + t * q[2])))
    dedup = []
    for p in out:
        if not dedup or dedup[-1] != p:
            dedup.append(p)
    if len(dedup) > 1 and dedup[0] == dedup[-1]:
        dedup.pop()
    fixed = []
    for i, p in enumerate(dedup):
        fixed.append(p)
        q = dedup[(i + 1) % len(dedup)]
        if not p[2] and not q[2] and p[0] == -q[0] and p[1] == -q[1]:
            # the edge between them runs along the clipping line
            s = -c / (a * a + b * b)
            fixed.append((s * a, s * b, ONE))
    return fixed


def interior(shape) -> tuple:
    """A point of the interior, as Fractions."""
    if isinstance(shape, Interval):
        lo, hi = shape
        if lo is not None and hi is not None:
            t = (lo + hi) / 2
        elif lo is not None:
            t = lo + 1
        elif hi is not None:
            t = hi - 1
        else:
            t = ZERO
        return (_to_fraction(t),)
    # the sum of the generators of a full-dimensional cone is interior
    sx = sum(p[0] for p in shape)
    sy = sum(p[1] for p in shape)
    sw = sum(p[2] for p in shape)
    if not sw:
        return (Fraction(0), Fraction(0))  # no ordinary vertex: the whole plane
    return (_to_fraction(sx / sw), _to_fraction(sy / sw))


def supports(shape, h: tuple) -> bool:
    """Whether ``h >= 0`` (valid on the shape) is one of its facet inequalities."""
    if isinstance(shape, Interval):
        a, c = h
        if not a:
            return False
        end = shape.lo if a > 0 else shape.hi
        return end is not None and a * end + c == 0
    a, b, c = h
    if not a and not b:
        return False
    zeros = [w for x, y, w in shape if a * x + b * y + c * w == 0]
    return len(zeros) >= 2 and any(zeros)


def generators(shape) -> list:
    """Vertices ``(..., 1)`` and directions ``(..., 0)`` spanning the shape."""
    if isinstance(shape, Interval):
        lo, hi = shape
        out = [(-ONE, ZERO) if lo is None else (lo, ONE),
               (ONE, ZERO) if hi is None else (hi, ONE)]
        if lo is None and hi is None:
            out.append((ZERO, ONE))
        return out
    if not any(p[2] for p in shape):
        # the whole plane: directions alone miss the constant terms
        return list(shape) + [(ZERO, ZERO, ONE)]
    return list(shape)


def value(h: tuple, g: tuple):
    return sum(a * b for a, b in zip(h, g))


def shape_of(dim: int, halfplanes) -> Optional[object]:
    shape = whole(dim)
    for h in halfplanes:
        shape = clip(shape, h)
        if shape is None:
            return None
    return shape


def _walk(dim: int, hs: list, members: list) -> list:
    """Cells ``(index, shape)`` of the maximum of ``hs[members]`` that are
    full-dimensional, found by walking across facets."""
    base = whole(dim)
    at = {i: hs[i][-1] for i in members}
    top = max(at.values())
    queue = [i for i in members if at[i] == top]
    seen = set(queue)
    cells = []
    while queue:
        i = queue.pop()
        hi = hs[i]
        cuts = sorted(((at[i] - at[j], j, tuple(a - b for a, b in zip(hi, hs[j])))
                       for j in members if j != i), key=lambda c: c[0])
        shape = base
        for _, _, d in cuts:
            shape = clip(shape, d)
            if shape is None:
                break
        if shape is None:
            continue
        cells.append((i, shape))
        for _, j, d in cuts:
            if j not in seen and supports(shape, d):
                seen.add(j)
                queue.append(j)
    return cells


def _probe(dim: int) -> list:
    pts = [(ZERO,) * dim]
    for k in range(dim):
        for s in (ONE, -ONE):
            pts.append(tuple(s if i == k else ZERO for i in range(dim)))
    return [p + (ONE,) for p in pts]


def dominant(dim: int, hs: list) -> list:
    """Indices of the affine functions (coefficient tuples, pairwise distinct
    gradients) that are the unique maximum on an open set.

    Works on a growing candidate set: the cells of the candidates' maximum
    are computed exactly, and every other function is compared with the
    winning one at the vertices and directions of each cell (a linear
    function is at most zero on a cell exactly when it is so at those
    generators).  A function that never rises above the candidates'
    maximum never wins strictly; one that does joins the candidates.
    """
    n = len(hs)
    if n <= 1:
        return list(range(n))
    members = set()
    for p in _probe(dim):
        vals = [value(h, p) for h in hs]
        top = max(vals)
        members.update(i for i, v in enumerate(vals) if v == top)
    while True:
        cells = _walk(dim, hs, sorted(members))
        outside = [j for j in range(n) if j not in members]
        extra = set()
        for i, shape in cells:
            hi = hs[i]
            for g in generators(shape):
                vi = value(hi, g)
                best, arg = ZERO, None
                for j in outside:
                    v = value(hs[j], g) - vi
                    if v > best:
                        best, arg = v, j
                if arg is not None:
                    extra.add(arg)
        if not extra:
            return sorted(i for i, _ in cells)
        members = {i for i, _ in cells} | extra


def key(h: tuple) -> tuple:
    """Identify halfplanes that agree up to a positive factor."""
    scale = max(abs(v) for v in h)
    if not scale:
        return h
    return tuple(v / scale for v in h)
