"""Principal kernels through their generators.

``g`` lies in the kernel generated by ``f`` exactly when ``|g| <= n |f|``
pointwise for some natural ``n`` (log scale).  On each common linearity cell
both functions are affine, so the smallest such ``n`` on a cell is an LP in
``n`` and affine Farkas multipliers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Optional, Sequence, Union

from . import planar
from .cells import Region, form_of, linearity_cells, refine_regions, space_region
from .expr import Monomial, RatFunc, TropPoly
from .lp import (AffineForm, Polyhedron, _to_fraction, feasible_point, has_strict_point,
                 lp_optimize)
from .skeletons import form_range, skel_is_empty, skeleton
from .tropnum import to_q

ZERO = Fraction(0)
ONE = Fraction(1)

Gen = Union["KernelGen", RatFunc, TropPoly, Monomial]


@dataclass(frozen=True)
class KernelGen:
    """The principal kernel generated by ``gen``."""

    gen: RatFunc

    def __post_init__(self):
        object.__setattr__(self, "gen", RatFunc.of(self.gen))

    @property
    def nvars(self) -> int:
        return self.gen.nvars

    def absolute(self) -> RatFunc:
        return self.gen.abs().simplified()


def as_gen(f: Gen) -> KernelGen:
    return f if isinstance(f, KernelGen) else KernelGen(RatFunc.of(f))


def _same_dims(*gens: KernelGen):
    if len({g.nvars for g in gens}) != 1:
        raise ValueError("dimension mismatch between generators")


def gen_meet(f: Gen, g: Gen) -> KernelGen:
    """Generator ``|f| ∧ |g|`` of the intersection of two principal kernels."""
    f, g = as_gen(f), as_gen(g)
    _same_dims(f, g)
    return KernelGen(f.absolute().meet(g.absolute()).simplified())


def gen_join(f: Gen, g: Gen) -> KernelGen:
    """Generator ``|f| + |g|`` of the product of two principal kernels."""
    f, g = as_gen(f), as_gen(g)
    _same_dims(f, g)
    return KernelGen(f.absolute().oplus(g.absolute()).simplified())


def join_all(gens: Sequence[Gen]) -> KernelGen:
    out = as_gen(gens[0])
    out = KernelGen(out.absolute())
    for g in gens[1:]:
        out = gen_join(out, g)
    return out


# ---------------------------------------------------------------------------
# membership


@dataclass(frozen=True)
class Witness:
    """Where no multiple of ``|f|`` bounds ``|g|``.

    ``kind == "point"``: ``|f|(point) = 0 < |g|(point)``.
    ``kind == "ray"``: along ``point + s*ray`` the value ``|f|`` stays fixed
    while ``|g|`` grows linearly.
    """

    kind: str
    point: tuple
    ray: Optional[tuple] = None


@dataclass(frozen=True)
class Membership:
    member: bool
    n: Optional[int] = None  # least integer multiplier when member
    bound: Optional[Fraction] = None  # exact least rational multiplier
    witness: Optional[Witness] = None

    def __bool__(self) -> bool:
        return self.member


def _farkas_min_multiplier(Q: Polyhedron, A: AffineForm, B: AffineForm) -> Optional[Fraction]:
    """Least ``n >= 0`` with ``n A - B >= 0`` on the nonempty polyhedron ``Q``.

    Variables are ``(n, lambda_1.., nu_1.., mu)`` with ``n A - B`` equal to
    ``sum lambda_k q_k + sum nu_e e + mu`` coefficientwise.
    """
    d = Q.nvars
    K, E = len(Q.ineqs), len(Q.eqs)
    nv = 1 + K + E + 1
    eqs = []
    for c in range(d + 1):
        pick = (lambda form: form.grad[c]) if c < d else (lambda form: form.const)
        row = [pick(A)] + [-pick(q) for q in Q.ineqs] + [-pick(e) for e in Q.eqs]
        row.append(-ONE if c == d else ZERO)
        eqs.append(AffineForm(tuple(row), -pick(B)))
    ineqs = [AffineForm.coordinate(nv, 0)]
    ineqs += [AffineForm.coordinate(nv, 1 + k) for k in range(K)]
    ineqs.append(AffineForm.coordinate(nv, nv - 1))
    out = lp_optimize(AffineForm.coordinate(nv, 0), Polyhedron(nv, tuple(eqs), tuple(ineqs)), "min")
    return out.value if out.status == "optimal" else None


def _no_witness(reg: Region, Q: Polyhedron, A: AffineForm, B: AffineForm) -> Witness:
    frame = reg.frame
    ok, t = has_strict_point(Q.add(eqs=[A]), [B])
    if ok:
        return Witness("point", frame.push(t))
    d = Q.nvars
    cone = Polyhedron(d, (AffineForm(A.grad, ZERO),),
                      tuple(AffineForm(q.grad, ZERO) for q in Q.ineqs))
    ok, r = has_strict_point(cone, [AffineForm(B.grad, ZERO)])
    if not ok:  # pragma: no cover - excluded by the linear-fractional argument
        raise ArithmeticError("membership LP infeasible without a witness")
    x0 = frame.push(feasible_point(Q))
    direction = frame.push(r)
    ray = tuple(a - b for a, b in zip(direction, frame.x0))
    return Witness("ray", x0, ray)


def _joint_cells(f: KernelGen, g: KernelGen) -> list:
    F, G = f.gen, g.gen
    return [(reg, form_of(F, acts[0], acts[1]), form_of(G, acts[2], acts[3]))
            for reg, acts in refine_regions([F.num, F.den, G.num, G.den],
                                            space_region(F.nvars))]


def _member_low(reg: Region, a: AffineForm, b: AffineForm):
    """Least ``n`` with ``|b| <= n |a|`` on a one- or two-dimensional cell,
    or a witness that none exists.

    On each full-dimensional sign piece ``Q`` the linear condition
    ``n A - B >= 0`` holds exactly when it holds at the vertices and
    directions at infinity of ``Q``; lower-dimensional pieces lie in the
    closure of the others unless ``a`` or ``b`` vanishes, which the
    constant case of the clip keeps.
    """
    best = ZERO
    ha, hb = planar.coeffs(a), planar.coeffs(b)
    for s, t in product((1, -1), repeat=2):
        A = tuple(v * s for v in ha)
        B = tuple(v * t for v in hb)
        Q = planar.clip(reg.shape, A)
        Q = planar.clip(Q, B) if Q is not None else None
        if Q is None:
            continue
        gens = planar.generators(Q)
        for g in gens:
            va, vb = planar.value(A, g), planar.value(B, g)
            if va:
                q = _to_fraction(vb / va)
                if q > best:
                    best = q
            elif vb > 0:
                return _low_witness(reg, Q, g)
    return best


def _low_witness(reg: Region, Q, g: tuple) -> Witness:
    frame = reg.frame
    if g[-1]:
        t = tuple(_to_fraction(v / g[-1]) for v in g[:-1])
        return Witness("point", frame.push(t))
    x0 = frame.push(planar.interior(Q))
    tip = frame.push(tuple(_to_fraction(v) for v in g[:-1]))
    return Witness("ray", x0, tuple(u - v for u, v in zip(tip, frame.x0)))


def _member_on(cells: list) -> Membership:
    """Membership of the second form's function in the kernel of the first,
    read off the joint linearity cells."""
    best = ZERO
    for reg, fa, fb in cells:
        a, b = reg.frame.pull(fa), reg.frame.pull(fb)
        if b.is_zero():
            continue
        if 1 <= reg.dim <= 2:
            out = _member_low(reg, a, b)
            if isinstance(out, Witness):
                return Membership(False, witness=out)
            best = max(best, out)
            continue
        base = reg.local_polyhedron()
        for s, t in product((1, -1), repeat=2):
            A, B = a.scale(s), b.scale(t)
            if B.is_constant() and B.const <= 0:
                continue
            Q = base.add(ineqs=[A, B])
            if feasible_point(Q) is None:
                continue
            n = _farkas_min_multiplier(Q, A, B)
            if n is None:
                return Membership(False, witness=_no_witness(reg, Q, A, B))
            best = max(best, n)
    return Membership(True, math.ceil(best), best)


def member(g: Gen, f: Gen) -> Membership:
    """Decide ``g ∈ ⟨f⟩``; on success report the least integer ``n``."""
    g, f = as_gen(g), as_gen(f)
    _same_dims(f, g)
    return _member_on(_joint_cells(f, g))


def similar(f: Gen, g: Gen) -> bool:
    f, g = as_gen(f), as_gen(g)
    _same_dims(f, g)
    cells = _joint_cells(f, g)
    return bool(_member_on(cells)) and bool(_member_on([(r, b, a) for r, a, b in cells]))


def orthogonal(f: Gen, g: Gen) -> bool:
    """Whether ``|f| ∧ |g|`` vanishes identically."""
    f, g = as_gen(f), as_gen(g)
    _same_dims(f, g)
    F, G = f.gen, g.gen
    for reg, acts in refine_regions([F.num, F.den, G.num, G.den], space_region(F.nvars)):
        a = form_of(F, acts[0], acts[1])
        b = form_of(G, acts[2], acts[3])
        if not (a.is_zero() or b.is_zero()):
            return False
    return True


# ---------------------------------------------------------------------------
# boundedness


def bounded_above(f: Gen) -> bool:
    """Whether ``|f|`` is bounded above on the whole space."""
    F = as_gen(f).gen
    for reg, S, T in linearity_cells(F):
        lo, hi = form_range(reg, form_of(F, S, T))
        if lo is None or hi is None:
            return False
    return True


def bounded_below(f: Gen) -> bool:
    """Whether ``|f|`` stays above a positive constant (empty skeleton)."""
    return skel_is_empty(as_gen(f).gen).empty


def omega(f: Gen, alpha) -> KernelGen:
    """The bounded generator ``|f| ∧ {alpha}`` with the same skeleton."""
    alpha = to_q(alpha)
    if alpha <= 0:
        raise ValueError("omega needs alpha > 0; alpha = 0 gives the trivial kernel")
    f = as_gen(f)
    return KernelGen(f.absolute().meet(RatFunc.constant(f.nvars, alpha)).simplified())


def point_kernel(a: Sequence) -> KernelGen:
    """Generator ``⊕ |x_i - a_i|`` whose skeleton is the single point ``a``."""
    a = [to_q(v) for v in a]
    n = len(a)
    terms = []
    for i, ai in enumerate(a):
        terms.append(Monomial.var(n, i, -ai))
        terms.append(Monomial.var(n, i, -ai).inverse())
    return KernelGen(RatFunc.of(TropPoly.of(terms, n)))


def min_abs_coordinate(n: int) -> RatFunc:
    """``|x_1| ∧ ... ∧ |x_n|`` as a rational function."""
    out = None
    for i in range(n):
        xi = RatFunc.of(Monomial.var(n, i)).abs()
        out = xi if out is None else out.meet(xi)
    return out.simplified()


def skeleton_coordinate_radius(f: Gen) -> Optional[Fraction]:
    """``sup`` over the skeleton of ``min_i |x_i|``; ``None`` when infinite."""
    S = skeleton(as_gen(f).gen)
    n = S.nvars
    best = ZERO
    for reg in S.regions:
        for signs in product((1, -1), repeat=n):
            orth = [AffineForm.coordinate(n, i).scale(s) for i, s in enumerate(signs)]
            # maximise t subject to t <= s_i x_i inside the piece and orthant
            local = [reg.frame.pull(o) for o in orth]
            d = reg.dim
            P = Polyhedron(d + 1, (),
                           tuple(q.extend(1) for q in reg.local)
                           + tuple(o.extend(1) for o in local)
                           + tuple(AffineForm(o.grad + (-ONE,), o.const) for o in local))
            out = lp_optimize(AffineForm.coordinate(d + 1, d), P, "max")
            if out.status == "unbounded":
                return None
            if out.status == "optimal":
                best = max(best, out.value)
    return best


class NotBoundedAbove(ValueError):
    pass


def unbounded_copy(f: Gen) -> KernelGen:
    """An unbounded generator with the same skeleton whose kernel contains ``f``.

    ``f' = max(0, min_i |x_i| - beta) ⊕ |f|`` where ``beta`` bounds
    ``min_i |x_i|`` on the skeleton.  Raises when ``f`` is not bounded above
    or no finite ``beta`` exists (a skeleton reaching infinity along every
    coordinate at once, like a diagonal line).
    """
    f = as_gen(f)
    if not bounded_above(f):
        raise NotBoundedAbove("unbounded_copy needs a generator bounded from above")
    beta = skeleton_coordinate_radius(f)
    if beta is None:
        raise ValueError("the skeleton is unbounded in all coordinates at once; "
                         "no min-of-coordinates cutoff preserves it")
    n = f.nvars
    cut = min_abs_coordinate(n).shift(-beta).oplus(RatFunc.constant(n))
    return KernelGen(cut.oplus(f.absolute()).simplified())
