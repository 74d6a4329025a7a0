"""HO-decomposition, classification, convexity degree and HS-chains.

Every point ``a`` of the skeleton of ``f = h/g`` has a tie pattern: the
numerator monomials ``H_a`` and denominator monomials ``G_a`` attaining the
maxima.  The pattern gives hyperplane relations ``h'/g' = 1`` and order
relations ``h''/h' <= 1``, ``g''/g' <= 1``.  Patterns are constant on the
relative interiors of the faces of the skeleton, so walking the faces
yields finitely many components.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .cells import form_of, linearity_cells, region_of
from .expr import Monomial, RatFunc, TropPoly, format_monomial, default_names
from .kernels import join_all, similar
from .lp import AffineForm, Polyhedron, lp_optimize, poly_dim, rank
from .skeletons import min_abs, skel_contains, skeleton, SkelSet
from .tropnum import q_str

ZERO = Fraction(0)


@dataclass
class HOComponent:
    hs_gens: list  # HP monomials m, relation m = 1
    order_gens: list  # monomials o, relation 1 + o = 1, i.e. o <= 1
    bounded: bool = False
    piece: Optional[Polyhedron] = None
    gamma: Optional[Fraction] = None  # bounded parts: least value of |f| there
    cells: list = field(default_factory=list)  # bounded parts: the cells covered

    @property
    def condeg(self) -> int:
        return condeg(self.hs_gens) if self.hs_gens else 0

    def generator(self) -> RatFunc:
        """A generator of this component's kernel."""
        gens = [RatFunc.of(m) for m in self.hs_gens]
        gens += [RatFunc.of(o).oplus(RatFunc.constant(o.nvars)) for o in self.order_gens]
        return join_all(gens).gen

    def to_json(self, names: Sequence[str]) -> dict:
        out = {"hs": [format_monomial(m, names) for m in self.hs_gens],
               "orders": [format_monomial(o, names) for o in self.order_gens],
               "bounded": self.bounded}
        if self.bounded:
            out["gamma"] = q_str(self.gamma)
        else:
            out["condeg"] = self.condeg
        return out


def _monomial_basis(monos: list) -> list:
    """Greedy subset whose exponent vectors are a basis of their span."""
    basis = []
    for m in monos:
        if not m.is_hp():
            continue
        if rank([list(b.exps) for b in basis] + [list(m.exps)]) > len(basis):
            basis.append(m)
    return basis


def _order_key(o: Monomial):
    """Half-space ``o <= 0`` normalised so positive multiples compare equal."""
    lead = next(abs(e) for e in o.exps if e)
    return tuple(e / lead for e in o.exps), o.coeff / lead


def _pattern_region(f: RatFunc, S: frozenset, T: frozenset):
    n = f.nvars
    L = [m.affine() for m in f.num.monomials]
    M = [m.affine() for m in f.den.monomials]
    s0, t0 = min(S), min(T)
    eqs = [L[s0] - L[s] for s in S if s != s0] + [M[t0] - M[t] for t in T if t != t0]
    eqs.append(L[s0] - M[t0])
    ineqs = [(("num", k), L[s0] - L[k]) for k in range(len(L)) if k not in S]
    ineqs += [(("den", k), M[t0] - M[k]) for k in range(len(M)) if k not in T]
    return eqs, ineqs


def _pattern_at(f: RatFunc, x) -> tuple:
    def act(poly):
        vals = [m(x) for m in poly.monomials]
        top = max(vals)
        return frozenset(k for k, v in enumerate(vals) if v == top)
    return act(f.num), act(f.den)


def tie_patterns(f: RatFunc) -> list:
    """All tie patterns realised on the skeleton, each with a relative-interior point."""
    f = RatFunc.of(f)
    S0 = skeleton(f)
    seen = {}
    queue = deque()
    for reg in S0.regions:
        pat = _pattern_at(f, reg.point)
        if pat not in seen:
            seen[pat] = reg.point
            queue.append(pat)
    n = f.nvars
    while queue:
        S, T = queue.popleft()
        eqs, ineqs = _pattern_region(f, S, T)
        for k, (_, a) in enumerate(ineqs):
            rest = tuple(b for j, (_, b) in enumerate(ineqs) if j != k)
            reg = region_of(Polyhedron(n, tuple(eqs) + (a,), rest))
            if reg is None:
                continue
            pat = _pattern_at(f, reg.point)
            if pat not in seen:
                seen[pat] = reg.point
                queue.append(pat)
    return [(S, T, x) for (S, T), x in seen.items()]


def _component(f: RatFunc, S: frozenset, T: frozenset) -> HOComponent:
    num, den = f.num.monomials, f.den.monomials
    hs_all = [num[s] / den[t] for s in sorted(S) for t in sorted(T)]
    hs = _monomial_basis(hs_all)
    h1, g1 = num[min(S)], den[min(T)]
    orders = [num[k] / h1 for k in range(len(num)) if k not in S]
    orders += [den[k] / g1 for k in range(len(den)) if k not in T]
    kept, keys = [], set()
    for o in orders:
        if o.is_constant():
            continue  # a constant <= 0 imposes nothing
        key = _order_key(o)
        if key not in keys:
            keys.add(key)
            kept.append(o)
    piece = Polyhedron(f.nvars, tuple(m.affine() for m in hs),
                       tuple(-o.affine() for o in kept))
    return HOComponent(hs, kept, False, piece)


def _subspace_key(comp: HOComponent):
    """Canonical reduced row echelon form of the hs equalities."""
    rows = [list(m.exps) + [m.coeff] for m in comp.hs_gens]
    A = [r[:] for r in rows]
    r = 0
    ncols = len(A[0]) if A else 0
    for c in range(ncols):
        p = next((i for i in range(r, len(A)) if A[i][c]), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = 1 / A[r][c]
        A[r] = [v * inv for v in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c]:
                fct = A[i][c]
                A[i] = [a - fct * b for a, b in zip(A[i], A[r])]
        r += 1
    return tuple(tuple(row) for row in A[:r])


def _dedup_key(comp: HOComponent):
    return _subspace_key(comp), frozenset(_order_key(o) for o in comp.order_gens)


def _sort_key(comp: HOComponent, names):
    js = comp.to_json(names)
    return (comp.bounded, comp.condeg, js["hs"], js["orders"])


def bounded_parts(f: RatFunc) -> list:
    """Linearity cells where ``|f|`` stays positive, merged by affine form."""
    groups = {}
    for reg, S, T in linearity_cells(f):
        form = form_of(f, S, T)
        gam = min_abs(reg, form)
        if gam > 0:
            g = groups.setdefault(form, [None, []])
            g[0] = gam if g[0] is None else min(g[0], gam)
            g[1].append(reg.polyhedron())
    return [HOComponent([], [], True, None, gam, cells) for gam, cells in groups.values()]


def _inside(P: Polyhedron, R: Polyhedron) -> bool:
    """``P ⊆ R`` for a nonempty ``P`` and an ``R`` cut out by inequalities."""
    for q in R.ineqs:
        out = lp_optimize(q, P, "min")
        if out.status != "optimal" or out.value < 0:
            return False
    return True


def _drop_region_faces(comps: list, n: int) -> list:
    """Remove components lying inside a full-dimensional region component.

    Where the skeleton has interior, the boundary faces are not separate
    linear fragments: ``⟨𝟙 ⊕ x⟩`` is one order component, not an order
    component plus the point ``x = 0``.
    """
    regions = [c for c in comps if not c.hs_gens and poly_dim(c.piece) == n]
    return [c for c in comps
            if not any(r is not c and _inside(c.piece, r.piece) for r in regions)]


def ho_decompose(f) -> list:
    """Components of the HO-decomposition of ``⟨f⟩``.

    Non-bounded components come from the tie patterns on the skeleton, one
    per distinct (hyperplane span, half-space set); bounded components are
    the cells on which ``f`` never vanishes, merged by their affine form.
    """
    f = RatFunc.of(f).simplified()
    names = default_names(f.nvars)
    comps = {}
    for S, T, _ in tie_patterns(f):
        c = _component(f, S, T)
        comps.setdefault(_dedup_key(c), c)
    out = sorted(_drop_region_faces(list(comps.values()), f.nvars),
                 key=lambda c: _sort_key(c, names))
    bnd = sorted(bounded_parts(f), key=lambda c: c.gamma)
    return out + bnd


def is_regular_via_decomp(components: Sequence[HOComponent]) -> bool:
    return not any(not c.bounded and not c.hs_gens for c in components)


def condeg(gens: Sequence[Monomial]) -> int:
    """Rank of the exponent vectors of hyperplane fractions."""
    gens = list(gens)
    for m in gens:
        if not isinstance(m, Monomial) or not m.is_hp():
            raise ValueError("condeg needs nonconstant monomials (hyperplane fractions)")
    if not gens:
        return 0
    return rank([list(m.exps) for m in gens])


@dataclass
class HdimReport:
    nvars: int
    condegs: list
    codims: list
    components: list = field(default_factory=list)

    def to_json(self, names: Sequence[str] = None) -> dict:
        names = names or default_names(self.nvars)
        return {"nvars": self.nvars, "condeg": self.condegs, "codim": self.codims,
                "components": [c.to_json(names) for c in self.components]}


def hyperdim(f) -> HdimReport:
    f = RatFunc.of(f)
    comps = [c for c in ho_decompose(f) if not c.bounded]
    cds = [c.condeg for c in comps]
    return HdimReport(f.nvars, cds, [f.nvars - c for c in cds], comps)


def hs_chain(gens: Sequence[Monomial]) -> list:
    """A strictly descending chain of HS-kernels from a rank basis of ``gens``.

    Element ``k`` of the result lists the generators of the ``k``-th kernel;
    the chain ends above the trivial kernel.
    """
    gens = list(gens)
    condeg(gens)  # validates
    grads = [list(m.exps) for m in gens]
    full = [list(m.exps) + [m.coeff] for m in gens]
    if rank(full) != rank(grads):
        raise ValueError("the generators have no common skeleton point")
    basis = _monomial_basis(gens)
    return [basis[:k] for k in range(len(basis), 0, -1)]


# ---------------------------------------------------------------------------
# classification


def _maximal_components(comps: list) -> list:
    pieces = [(c, _piece_skel(c)) for c in comps]
    out = []
    for c, sk in pieces:
        inside = any(d is not c and skel_contains(sk, dk) and not skel_contains(dk, sk)
                     for d, dk in pieces)
        if not inside:
            out.append(c)
    return out


def _piece_skel(c: HOComponent) -> SkelSet:
    gen = c.generator()
    return skeleton(gen)


def classify(f) -> str:
    """One of ``HP``, ``HS``, ``order``, ``region``, ``HO`` or ``general``.

    The candidate generator is read off the single maximal component of the
    decomposition and confirmed by a similarity check.
    """
    f = RatFunc.of(f)
    comps = ho_decompose(f)
    if any(c.bounded for c in comps):
        return "general"
    top = _maximal_components(comps)
    if len(top) != 1:
        return "general"
    c = top[0]
    if not c.hs_gens and not c.order_gens:
        return "general"
    if not similar(f, c.generator()):
        return "general"
    if not c.order_gens:
        return "HP" if len(c.hs_gens) == 1 else "HS"
    if not c.hs_gens:
        return "order" if len(c.order_gens) == 1 else "region"
    return "HO"
