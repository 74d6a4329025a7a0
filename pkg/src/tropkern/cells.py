"""Linearity cells of tropical polynomials and rational functions.

Cells are closed polyhedra on which every polynomial involved is a single
affine form.  Each cell carries a *frame*: a point ``x0`` and a basis ``N``
of the directions of its affine hull, so that follow-up LPs run in local
coordinates with no equality constraints.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from . import planar
from .expr import RatFunc, TropPoly
from .lp import AffineForm, Polyhedron, has_strict_point, lp_optimize, rank, relint

ZERO = Fraction(0)


def nullspace(rows: Sequence[Sequence[Fraction]], n: int) -> list:
    """Basis (list of vectors) of ``{v : row . v = 0 for every row}``."""
    A = [list(r) for r in rows if any(r)]
    pivots = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, len(A)) if A[i][c]), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = 1 / A[r][c]
        A[r] = [v * inv for v in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [ZERO] * n
        v[fc] = Fraction(1)
        for k, pc in enumerate(pivots):
            v[pc] = -A[k][fc]
        basis.append(v)
    return basis


def independent_rows(eqs: Sequence[AffineForm]) -> tuple:
    """A subset of consistent equalities with the same solution set."""
    kept = []
    for e in eqs:
        if e.is_zero():
            continue
        rows = [list(k.grad) + [k.const] for k in kept]
        if rank(rows + [list(e.grad) + [e.const]]) > len(kept):
            kept.append(e)
    return tuple(kept)


@dataclass
class Frame:
    """Affine chart ``t -> x0 + N t`` of a polyhedron's affine hull."""

    x0: tuple
    basis: list  # list of direction vectors (columns of N)
    hull: tuple  # global equalities cutting out the hull

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def is_identity(self) -> bool:
        ident = self.__dict__.get("_ident")
        if ident is None:
            n = len(self.x0)
            ident = (not any(self.x0) and len(self.basis) == n
                     and all(col[i] == (1 if i == k else 0)
                             for k, col in enumerate(self.basis) for i in range(n)))
            self.__dict__["_ident"] = ident
        return ident

    def pull(self, form: AffineForm) -> AffineForm:
        if self.is_identity:
            return form
        grad = tuple(sum((g * v for g, v in zip(form.grad, col) if g), ZERO) for col in self.basis)
        return AffineForm(grad, form(self.x0))

    def push(self, t: Sequence) -> tuple:
        if self.is_identity:
            return tuple(t)
        x = list(self.x0)
        for tk, col in zip(t, self.basis):
            if tk:
                for i, v in enumerate(col):
                    if v:
                        x[i] += tk * v
        return tuple(x)

    def vanishes(self, form: AffineForm) -> bool:
        """Whether ``form`` is identically zero on the hull."""
        return self.pull(form).is_zero()


@dataclass
class Region:
    """A nonempty polyhedron given by a frame and inequalities that are
    simultaneously strict at the local point ``t``."""

    frame: Frame
    local: tuple  # inequalities in local coordinates
    ineqs: tuple  # the same inequalities in global coordinates
    t: tuple  # relative-interior point in local coordinates
    cached_shape: object = field(default=None, repr=False, compare=False)

    @property
    def nvars(self) -> int:
        return len(self.frame.x0)

    @property
    def dim(self) -> int:
        return self.frame.dim

    @property
    def point(self) -> tuple:
        return self.frame.push(self.t)

    def polyhedron(self) -> Polyhedron:
        return Polyhedron(self.nvars, self.frame.hull, self.ineqs)

    def local_polyhedron(self) -> Polyhedron:
        return Polyhedron(self.dim, (), self.local)

    @property
    def shape(self):
        """Exact polygon or interval of the region (local dimension 1 or 2)."""
        if self.cached_shape is None:
            self.cached_shape = planar.shape_of(self.dim, [planar.coeffs(f) for f in self.local])
        return self.cached_shape

    def strict_point(self, forms: Sequence[AffineForm]):
        """A relative-interior point making every global ``form`` positive."""
        local = [self.frame.pull(f) for f in forms]
        if self.dim == 0:
            ok = all(f.const > 0 for f in local)
            return (ok, ()) if ok else (False, None)
        if all(f(self.t) > 0 for f in local):
            return True, self.t
        if self.dim <= 2:
            if any(f.is_zero() for f in local):
                return False, None
            shape = self.shape
            for f in local:
                shape = planar.clip(shape, planar.coeffs(f))
                if shape is None:
                    return False, None
            return True, planar.interior(shape)
        return has_strict_point(Polyhedron(self.dim, (), self.local + tuple(local)), local)

    def restrict(self, ineqs: Sequence[AffineForm], t: tuple) -> "Region":
        local = tuple(self.frame.pull(f) for f in ineqs)
        return Region(self.frame, self.local + local, self.ineqs + tuple(ineqs), t)

    def optimize(self, form: AffineForm, sense: str):
        """LP over the region; returns the outcome in local coordinates."""
        return lp_optimize(self.frame.pull(form), self.local_polyhedron(), sense)

    def contains(self, point: Sequence) -> bool:
        return self.polyhedron().contains(point)


def space_region(nvars: int) -> Region:
    basis = [[Fraction(1) if i == k else ZERO for i in range(nvars)] for k in range(nvars)]
    return Region(Frame((ZERO,) * nvars, basis, ()), (), (), (ZERO,) * nvars)


def _affine_solution(eqs: Sequence[AffineForm], n: int) -> Optional[tuple]:
    """A point where every equality holds, or ``None`` if they conflict."""
    rows = [list(e.grad) + [-e.const] for e in eqs]
    pivots = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    if any(row[-1] for row in rows[r:]):
        return None
    x = [ZERO] * n
    for k, c in enumerate(pivots):
        x[c] = rows[k][-1]
    return tuple(x)


def _region_low(P: Polyhedron) -> Optional[object]:
    """Frame ``P`` by clipping when its explicit equalities leave at most two
    dimensions.  Returns ``None`` for empty, ``False`` when undecided (the
    inequalities hide an implicit equality)."""
    hull = independent_rows(P.eqs)
    x0 = _affine_solution(hull, P.nvars)
    if x0 is None:
        return None
    basis = nullspace([e.grad for e in hull], P.nvars)
    if len(basis) > 2:
        return False
    frame = Frame(x0, basis, hull)
    local = [frame.pull(a) for a in P.ineqs]
    if not basis:
        if all(f.const > 0 for f in local):
            return Region(frame, (), (), ())
        return False if all(f.const >= 0 for f in local) else None
    hs = [planar.coeffs(f) for f in local]
    shape = planar.shape_of(len(basis), hs)
    if shape is None:
        return False
    keep, seen = [], set()
    for h, lf, gf in zip(hs, local, P.ineqs):
        if planar.supports(shape, h):
            k = planar.key(h)
            if k not in seen:
                seen.add(k)
                keep.append((lf, gf))
    return Region(frame, tuple(lf for lf, _ in keep), tuple(gf for _, gf in keep),
                  planar.interior(shape), shape)


def region_of(P: Polyhedron) -> Optional[Region]:
    """Frame a polyhedron; ``None`` when it is empty."""
    fast = _region_low(P)
    if fast is not False:
        return fast
    ri = relint(P)
    if ri.point is None:
        return None
    hull = independent_rows(ri.hull)
    basis = nullspace([e.grad for e in hull], P.nvars)
    frame = Frame(tuple(ri.point), basis, hull)
    ineqs = tuple(a for k, a in enumerate(P.ineqs) if k not in ri.implicit)
    local = tuple(frame.pull(a) for a in ineqs)
    return Region(frame, local, ineqs, (ZERO,) * len(basis))


def subdivide(region: Region, forms: Sequence[AffineForm]) -> list:
    """Cells of ``max(forms)`` inside ``region`` of full relative dimension.

    Returns ``(subregion, active index set)`` pairs; their union is the
    region and the active set is constant on each subregion's relative
    interior.
    """
    if len(forms) == 1:
        return [(region, frozenset((0,)))]
    local = [region.frame.pull(f) for f in forms]
    if 1 <= region.dim <= 2:
        return _subdivide_low(region, forms, local)
    out = []
    covered = set()
    at = [f(region.t) for f in local]
    top = max(at)
    for i in range(len(forms)):
        if i in covered:
            continue
        if at[i] < top and region.dim == 0:
            continue
        diffs = [(j, local[i] - local[j]) for j in range(len(forms)) if j != i]
        tied = [j for j, d in diffs if d.is_zero()]
        open_diffs = [(j, d) for j, d in diffs if not d.is_zero()]
        if any(d.is_constant() and d.const < 0 for _, d in open_diffs):
            continue
        active = frozenset([i] + tied)
        if all(d(region.t) > 0 for _, d in open_diffs):
            t = region.t
        elif region.dim == 0:
            continue
        else:
            ok, t = has_strict_point(Polyhedron(region.dim, (), region.local),
                                     [d for _, d in open_diffs] + list(region.local))
            if not ok:
                continue
            t = tuple(t)
        new = [forms[i] - forms[j] for j, d in open_diffs if not d.is_constant()]
        out.append((region.restrict(new, t), active))
        covered |= active
    return out


def _subdivide_low(region: Region, forms: Sequence[AffineForm], local: list) -> list:
    """``subdivide`` by exact clipping in a one- or two-dimensional chart.

    Cells are found by walking across facets from the forms that win at the
    region's interior point: the cells of a maximum of affine forms cover a
    convex region and are connected through shared facets, and the form
    winning across a facet ties with the current one along it.  Each cell
    keeps only its facet inequalities, so constraint lists stay short under
    repeated refinement.
    """
    base = region.shape
    hs = [planar.coeffs(f) for f in local]
    t0 = tuple(planar.ONE * v for v in region.t) + (planar.ONE,)
    at = [sum(a * b for a, b in zip(h, t0)) for h in hs]
    top = max(at)
    own = [(planar.coeffs(lf), lf, gf) for lf, gf in zip(region.local, region.ineqs)]
    out = []
    covered = set()
    queue = [i for i, v in enumerate(at) if v == top]
    seen_forms = set(queue)
    while queue:
        i = queue.pop(0)
        if i in covered:
            continue
        hi = hs[i]
        tied = []
        cuts = []
        dead = False
        for j in range(len(forms)):
            if j == i:
                continue
            d = tuple(a - b for a, b in zip(hi, hs[j]))
            if not any(d[:-1]):
                if not d[-1]:
                    tied.append(j)
                elif d[-1] < 0:
                    dead = True
                    break
            else:
                cuts.append((at[i] - at[j], j, d))
        if dead:
            continue
        cuts.sort(key=lambda c: c[0])
        shape = base
        for _, _, d in cuts:
            shape = planar.clip(shape, d)
            if shape is None:
                break
        if shape is None:
            continue
        seen = set()
        keep_local, keep_global = [], []
        for h, lf, gf in own:
            if planar.supports(shape, h):
                k = planar.key(h)
                if k not in seen:
                    seen.add(k)
                    keep_local.append(lf)
                    keep_global.append(gf)
        for _, j, d in cuts:
            if not planar.supports(shape, d):
                continue
            if j not in seen_forms:
                seen_forms.add(j)
                queue.append(j)
            k = planar.key(d)
            if k not in seen:
                seen.add(k)
                keep_local.append(local[i] - local[j])
                keep_global.append(forms[i] - forms[j])
        active = frozenset([i] + tied)
        sub = Region(region.frame, tuple(keep_local), tuple(keep_global),
                     planar.interior(shape), shape)
        out.append((sub, active))
        covered |= active
    out.sort(key=lambda c: min(c[1]))
    return out


@dataclass
class Cell:
    region: Polyhedron
    actives: tuple  # one frozenset of monomial indices per polynomial refined
    point: tuple = ()
    frame_region: Optional[Region] = field(default=None, repr=False)

    @property
    def active_num(self) -> frozenset:
        return self.actives[0]

    @property
    def active_den(self) -> frozenset:
        return self.actives[1] if len(self.actives) > 1 else frozenset()

    @property
    def dim(self) -> int:
        return self.frame_region.dim


def refine_regions(polys: Sequence[TropPoly], base: Region) -> list:
    """Joint linearity cells of several polynomials inside ``base``.

    Returns ``(Region, actives)`` pairs, full-dimensional relative to base.
    """
    cells = [(base, ())]
    for p in polys:
        forms = [m.affine() for m in p.monomials]
        nxt = []
        for reg, acts in cells:
            for sub, act in subdivide(reg, forms):
                nxt.append((sub, acts + (act,)))
        cells = nxt
    return cells


def _to_cell(reg: Region, acts: tuple) -> Cell:
    return Cell(reg.polyhedron(), acts, reg.point, reg)


def dominance_cells(p: TropPoly) -> list:
    """One closed cell ``{L_i >= L_j for all j}`` per monomial, deduplicated.

    Cells of monomials that never win strictly are lower dimensional; they
    are included with the active set read at a relative-interior point.
    """
    n = p.nvars
    forms = [m.affine() for m in p.monomials]
    seen = {}
    for i, fi in enumerate(forms):
        P = Polyhedron(n, (), tuple(fi - fj for j, fj in enumerate(forms) if j != i))
        reg = region_of(P)
        if reg is None:
            continue
        x = reg.point
        vals = [f(x) for f in forms]
        top = max(vals)
        key = frozenset(k for k, v in enumerate(vals) if v == top)
        if key not in seen:
            seen[key] = Cell(P, (key,), x, reg)
    return list(seen.values())


def refine(f: RatFunc, g: RatFunc) -> list:
    """Cells on which numerators and denominators of ``f`` and ``g`` are linear.

    ``actives`` holds the active sets of ``(f.num, f.den, g.num, g.den)``.
    """
    f, g = RatFunc.of(f), RatFunc.of(g)
    if f.nvars != g.nvars:
        raise ValueError("dimension mismatch")
    base = space_region(f.nvars)
    return [_to_cell(r, a) for r, a in refine_regions([f.num, f.den, g.num, g.den], base)]


def linearity_cells(f: RatFunc, base: Optional[Region] = None) -> list:
    """``(Region, num active, den active)`` with ``f`` affine on each region."""
    f = RatFunc.of(f)
    base = base or space_region(f.nvars)
    return [(r, a[0], a[1]) for r, a in refine_regions([f.num, f.den], base)]


def form_of(f: RatFunc, num_active, den_active) -> AffineForm:
    i, j = min(num_active), min(den_active)
    return f.num.monomials[i].affine() - f.den.monomials[j].affine()


class IncompatibleCell(ValueError):
    pass


def restrict(f: RatFunc, cell: Cell) -> AffineForm:
    """The affine form of ``f`` valid on the whole cell."""
    f = RatFunc.of(f)
    forms = []
    for poly in (f.num, f.den):
        aff = [m.affine() for m in poly.monomials]
        vals = [a(cell.point) for a in aff]
        i = vals.index(max(vals))
        for k, a in enumerate(aff):
            if k == i:
                continue
            out = lp_optimize(aff[i] - a, cell.region, "min")
            if out.status != "optimal" or out.value < 0:
                raise IncompatibleCell("function is not linear on the given cell")
        forms.append(aff[i])
    return forms[0] - forms[1]
