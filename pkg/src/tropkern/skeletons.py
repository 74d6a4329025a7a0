"""Skeletons (zero sets) of rational functions and corner loci of polynomials.

Both are finite unions of closed rational polyhedra.  A :class:`SkelSet`
remembers the object it came from, which is what makes containment
decidable: a piece of one set lies in another set exactly when the other
set's defining function vanishes (or the polynomial is ghost) on it, and
that is checked cell by cell on affine hulls.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Optional, Sequence, Union

from .cells import (Region, form_of, linearity_cells, refine_regions, region_of, space_region,
                    subdivide)
from .expr import RatFunc, TropPoly
from .lp import AffineForm, Polyhedron
from .tropnum import q_str, to_q

ZERO = Fraction(0)


@dataclass
class SkelSet:
    nvars: int
    regions: list = field(default_factory=list)  # framed pieces (cells.Region)
    source: Optional[Union[RatFunc, TropPoly]] = None
    kind: str = "zero"  # "zero": Skel(source); "ghost": corner locus of source;
    # "union" / "meet": source is a tuple of SkelSets combined that way

    @property
    def pieces(self) -> list:
        return [r.polyhedron() for r in self.regions]

    def is_empty(self) -> bool:
        return not self.regions

    def contains(self, point: Sequence) -> bool:
        point = tuple(to_q(p) for p in point)
        return any(r.contains(point) for r in self.regions)

    def __len__(self) -> int:
        return len(self.regions)


def _maximal(candidates: list) -> list:
    """Keep one region per maximal piece.

    ``candidates`` holds ``(members, key, region)``: ``members`` are the
    monomials defining the piece and ``key`` the active monomials at its
    relative-interior point.  Piece A lies inside piece B whenever B's
    members are all active on A, so pieces with equal keys coincide and a
    piece whose key contains another piece's members is a face of it.
    """
    groups = {}
    for members, key, reg in candidates:
        groups.setdefault(key, (members, reg))
    keep = []
    for key, (members, reg) in groups.items():
        dominated = any(k2 != key and _subset(m2, key) for k2, (m2, _) in groups.items())
        if not dominated:
            keep.append(reg)
    return keep


def _subset(members, key) -> bool:
    return all(set(m) <= k for m, k in zip(members, key))


def _active(forms: Sequence[AffineForm], x) -> frozenset:
    vals = [f(x) for f in forms]
    top = max(vals)
    return frozenset(k for k, v in enumerate(vals) if v == top)


def skeleton(f: Union[RatFunc, TropPoly]) -> SkelSet:
    """``{x : f(x) = 0}`` as a union of polyhedra, one per dominance pair."""
    f = RatFunc.of(f)
    n = f.nvars
    L = [m.affine() for m in f.num.monomials]
    M = [m.affine() for m in f.den.monomials]
    cands = []
    for i, li in enumerate(L):
        dom_num = [li - lk for k, lk in enumerate(L) if k != i]
        for j, mj in enumerate(M):
            dom_den = [mj - ml for l, ml in enumerate(M) if l != j]
            P = Polyhedron(n, (li - mj,), tuple(dom_num + dom_den))
            reg = region_of(P)
            if reg is None:
                continue
            x = reg.point
            cands.append((({i}, {j}), (_active(L, x), _active(M, x)), reg))
    return SkelSet(n, _maximal(cands), f, "zero")


def corner_locus(F: TropPoly) -> SkelSet:
    """Points where the maximum is attained twice or by a ghost term."""
    n = F.nvars
    L = [m.affine() for m in F.monomials]
    cands = []
    for i, li in enumerate(L):
        dom = tuple(li - lk for k, lk in enumerate(L) if k != i)
        pieces = []
        if F.terms[i][1] == 2:
            pieces.append(({i}, ()))
        for j in range(i + 1, len(L)):
            pieces.append(({i, j}, (li - L[j],)))
        for members, eqs in pieces:
            reg = region_of(Polyhedron(n, eqs, dom))
            if reg is None:
                continue
            cands.append(((members,), (_active(L, reg.point),), reg))
    return SkelSet(n, _maximal(cands), F, "ghost")


# ---------------------------------------------------------------------------
# containment


def _leaves(S: SkelSet) -> list:
    if S.kind == "union":
        return [leaf for part in S.source for leaf in _leaves(part)]
    if S.kind == "meet":
        raise ValueError("unions of intersections are not supported as containers")
    return [S]


def _leaf_polys(leaf: SkelSet) -> list:
    src = leaf.source
    return [src] if leaf.kind == "ghost" else [src.num, src.den]


def _uncovered_in_union(region: Region, leaves: list):
    polys = [p for leaf in leaves for p in _leaf_polys(leaf)]
    for sub, acts in refine_regions(polys, region):
        open_forms = []
        covered = False
        k = 0
        for leaf in leaves:
            if leaf.kind == "ghost":
                act = acts[k]
                k += 1
                if len(act) > 1 or leaf.source.terms[min(act)][1] == 2:
                    covered = True
            else:
                form = form_of(leaf.source, acts[k], acts[k + 1])
                k += 2
                if sub.frame.vanishes(form):
                    covered = True
                else:
                    open_forms.append(form)
            if covered:
                break
        if covered:
            continue
        # the relative interior of ``sub`` meets each non-vanishing zero set
        # in a proper hyperplane section, so some sign pattern is realised
        for signs in product((1, -1), repeat=len(open_forms)):
            ok, t = sub.strict_point([f.scale(s) for f, s in zip(open_forms, signs)])
            if ok:
                return sub.frame.push(t)
        raise ArithmeticError("uncovered cell without a witness")  # pragma: no cover
    return None


def _uncovered_in(region: Region, container: SkelSet):
    """A point of ``region`` outside ``container``, or ``None``."""
    if container.kind == "meet":
        for part in container.source:
            x = _uncovered_in(region, part)
            if x is not None:
                return x
        return None
    if container.kind == "union":
        return _uncovered_in_union(region, _leaves(container))
    src = container.source
    if container.kind == "ghost":
        forms = [m.affine() for m in src.monomials]
        for sub, act in subdivide(region, forms):
            if len(act) == 1 and src.terms[min(act)][1] == 1:
                return sub.point
        return None
    if src(region.point) != 0:
        return region.point
    for sub, S, T in linearity_cells(src, region):
        form = form_of(src, S, T)
        if sub.frame.vanishes(form):
            continue
        for sign in (form, -form):
            ok, t = sub.strict_point([sign])
            if ok:
                return sub.frame.push(t)
        raise ArithmeticError("non-vanishing form without a witness")  # pragma: no cover
    return None


def _need_source(S: SkelSet):
    if S.source is None:
        raise ValueError("containment needs a SkelSet that carries its defining object")


def skel_difference_point(A: SkelSet, B: SkelSet) -> Optional[tuple]:
    """A point of ``A`` that is not in ``B``, or ``None`` if ``A ⊆ B``."""
    _need_source(B)
    if A.nvars != B.nvars:
        raise ValueError("dimension mismatch")
    for reg in A.regions:
        x = _uncovered_in(reg, B)
        if x is not None:
            return x
    return None


def skel_union(A: SkelSet, B: SkelSet) -> SkelSet:
    if A.nvars != B.nvars:
        raise ValueError("dimension mismatch")
    return SkelSet(A.nvars, A.regions + B.regions, (A, B), "union")


def skel_intersection(A: SkelSet, B: SkelSet) -> SkelSet:
    """Pairwise intersections of the pieces; kept exact as a container too."""
    if A.nvars != B.nvars:
        raise ValueError("dimension mismatch")
    regions = []
    for ra in A.regions:
        for rb in B.regions:
            reg = region_of(ra.polyhedron().intersect(rb.polyhedron()))
            if reg is not None:
                regions.append(reg)
    return SkelSet(A.nvars, regions, (A, B), "meet")


def skel_contains(A: SkelSet, B: SkelSet) -> bool:
    """Whether ``A ⊆ B`` (``B``'s defining object vanishes on ``A``)."""
    return skel_difference_point(A, B) is None


def skel_equal(A: SkelSet, B: SkelSet) -> bool:
    return skel_contains(A, B) and skel_contains(B, A)


# ---------------------------------------------------------------------------
# ranges, emptiness and thickening


def form_range(region: Region, form: AffineForm):
    """``(inf, sup)`` of an affine form over a region; ``None`` for infinite."""
    lo = region.optimize(form, "min")
    hi = region.optimize(form, "max")
    return (lo.value if lo.status == "optimal" else None,
            hi.value if hi.status == "optimal" else None)


def min_abs(region: Region, form: AffineForm) -> Fraction:
    lo, hi = form_range(region, form)
    if (lo is None or lo <= 0) and (hi is None or hi >= 0):
        return ZERO
    return lo if lo is not None and lo > 0 else -hi


def function_range(f: RatFunc, base: Optional[Region] = None):
    """``(inf, sup)`` of ``f`` over ``base`` (whole space by default)."""
    f = RatFunc.of(f)
    lo_all: Optional[Fraction] = None
    hi_all: Optional[Fraction] = None
    first = True
    unbounded_lo = unbounded_hi = False
    for reg, S, T in linearity_cells(f, base):
        lo, hi = form_range(reg, form_of(f, S, T))
        unbounded_lo |= lo is None
        unbounded_hi |= hi is None
        if lo is not None:
            lo_all = lo if first or lo_all is None else min(lo_all, lo)
        if hi is not None:
            hi_all = hi if first or hi_all is None else max(hi_all, hi)
        first = False
    return (None if unbounded_lo else lo_all, None if unbounded_hi else hi_all)


@dataclass(frozen=True)
class Emptiness:
    empty: bool
    gamma: Optional[Fraction] = None  # least value of |f| when the skeleton is empty

    def __bool__(self) -> bool:
        return self.empty


def skel_is_empty(f: Union[RatFunc, TropPoly]) -> Emptiness:
    """Empty skeleton test with the exact lower bound of ``|f|``."""
    f = RatFunc.of(f)
    gamma = None
    for reg, S, T in linearity_cells(f):
        m = min_abs(reg, form_of(f, S, T))
        if m == 0:
            return Emptiness(False)
        gamma = m if gamma is None else min(gamma, m)
    return Emptiness(True, gamma)


def thicken(f: Union[RatFunc, TropPoly], alpha, beta) -> RatFunc:
    """``max(f - alpha, 0, -f - beta)``, vanishing exactly on ``-beta <= f <= alpha``."""
    alpha, beta = to_q(alpha), to_q(beta)
    if alpha < 0 or beta < 0:
        raise ValueError("thickening parameters must be nonnegative")
    f = RatFunc.of(f)
    one = RatFunc.constant(f.nvars)
    return f.shift(-alpha).oplus(one).oplus(f.inverse().shift(-beta)).simplified()


def skel_in_band(S: SkelSet, f: Union[RatFunc, TropPoly], alpha, beta) -> bool:
    """Whether ``-beta < f < alpha`` holds strictly on every point of ``S``.

    Since the band is open this certifies ``S`` lies in the interior of the
    skeleton of ``thicken(f, alpha, beta)``.
    """
    alpha, beta = to_q(alpha), to_q(beta)
    f = RatFunc.of(f)
    for reg in S.regions:
        for sub, A, B in linearity_cells(f, reg):
            lo, hi = form_range(sub, form_of(f, A, B))
            if lo is None or hi is None or hi >= alpha or lo <= -beta:
                return False
    return True


# ---------------------------------------------------------------------------
# serialisation


def _form_json(form: AffineForm) -> list:
    return [q_str(g) for g in form.grad] + [q_str(form.const)]


def polyhedron_json(P: Polyhedron) -> dict:
    return {"eq": [_form_json(e) for e in P.eqs], "ineq": [_form_json(a) for a in P.ineqs]}


def to_json(S: SkelSet) -> dict:
    return {"nvars": S.nvars, "pieces": [polyhedron_json(P) for P in S.pieces]}
