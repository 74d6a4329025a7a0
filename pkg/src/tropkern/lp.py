"""Exact rational linear programming and H-polyhedra.

Every geometric predicate in the package reduces to linear programs over
``Fraction`` data.  The solver works on the dual of the user problem, which
is already in standard form with one row per variable: for a problem with
``n`` variables and ``m`` constraints the tableau is ``n x (m + n)``, which is
tiny for the low-dimensional problems tropical geometry produces.

Primal problem (free variables)::

    max c.x + c0   subject to   a_i.x + b_i >= 0  (i in ineqs),  = 0 (eqs)

Dual standard form::

    min b.y   subject to   sum_i y_i a_i = -c,   y_i >= 0 (ineqs), free (eqs)

Optimal primal points are recovered from the simplex multipliers, rays of
unboundedness from phase-one multipliers and Farkas certificates from
unbounded dual directions.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, NamedTuple, Optional, Sequence

try:  # gmpy2 is several times faster for tableau arithmetic
    from gmpy2 import mpq as _mpq
except ImportError:  # pragma: no cover - exercised only without gmpy2
    _mpq = None

from .tropnum import to_q

ZERO = Fraction(0)
ONE = Fraction(1)


class AffineForm(NamedTuple):
    """The affine function ``x -> grad . x + const``."""

    grad: tuple
    const: Fraction

    @staticmethod
    def make(grad: Iterable, const=0) -> "AffineForm":
        return AffineForm(tuple(to_q(g) for g in grad), to_q(const))

    @staticmethod
    def constant(nvars: int, const) -> "AffineForm":
        return AffineForm((ZERO,) * nvars, to_q(const))

    @staticmethod
    def coordinate(nvars: int, i: int) -> "AffineForm":
        return AffineForm(tuple(ONE if k == i else ZERO for k in range(nvars)), ZERO)

    @property
    def nvars(self) -> int:
        return len(self.grad)

    def __call__(self, point: Sequence) -> Fraction:
        return sum((g * p for g, p in zip(self.grad, point) if g), self.const)

    def __neg__(self) -> "AffineForm":
        return AffineForm(tuple(-g for g in self.grad), -self.const)

    def __sub__(self, other: "AffineForm") -> "AffineForm":
        return AffineForm(tuple(a - b for a, b in zip(self.grad, other.grad)),
                          self.const - other.const)

    def plus(self, other: "AffineForm") -> "AffineForm":
        return AffineForm(tuple(a + b for a, b in zip(self.grad, other.grad)),
                          self.const + other.const)

    def scale(self, k) -> "AffineForm":
        k = to_q(k)
        return AffineForm(tuple(g * k for g in self.grad), self.const * k)

    def shift(self, c) -> "AffineForm":
        return AffineForm(self.grad, self.const + to_q(c))

    def is_constant(self) -> bool:
        return not any(self.grad)

    def is_zero(self) -> bool:
        return not self.const and not any(self.grad)

    def extend(self, extra: int) -> "AffineForm":
        """Embed into a space with ``extra`` trailing variables."""
        return AffineForm(self.grad + (ZERO,) * extra, self.const)


@dataclass(frozen=True)
class Polyhedron:
    """``{x : e(x) = 0 for e in eqs, a(x) >= 0 for a in ineqs}``."""

    nvars: int
    eqs: tuple = ()
    ineqs: tuple = ()

    def __post_init__(self):
        for f in self.eqs + self.ineqs:
            if len(f.grad) != self.nvars:
                raise ValueError("constraint dimension does not match nvars")

    @staticmethod
    def space(nvars: int) -> "Polyhedron":
        return Polyhedron(nvars)

    def contains(self, point: Sequence) -> bool:
        return all(e(point) == 0 for e in self.eqs) and all(a(point) >= 0 for a in self.ineqs)

    def intersect(self, other: "Polyhedron") -> "Polyhedron":
        if other.nvars != self.nvars:
            raise ValueError("dimension mismatch")
        return Polyhedron(self.nvars, self.eqs + other.eqs, self.ineqs + other.ineqs)

    def add(self, eqs: Iterable[AffineForm] = (), ineqs: Iterable[AffineForm] = ()) -> "Polyhedron":
        return Polyhedron(self.nvars, self.eqs + tuple(eqs), self.ineqs + tuple(ineqs))

    def constraints(self) -> list:
        """All constraints as ``(form, is_equality)`` pairs."""
        return [(e, True) for e in self.eqs] + [(a, False) for a in self.ineqs]


@dataclass
class LPOutcome:
    status: str  # "optimal" | "unbounded" | "infeasible"
    value: Optional[Fraction] = None
    witness: Optional[tuple] = None  # optimal point, or feasible point when unbounded
    ray: Optional[tuple] = None  # improving recession direction when unbounded
    certificate: Optional[tuple] = None  # Farkas multipliers (eqs first, then ineqs)
    duals: Optional[tuple] = None  # optimal multipliers (eqs first, then ineqs)

    @property
    def feasible(self) -> bool:
        return self.status != "infeasible"


# ---------------------------------------------------------------------------
# standard-form simplex


def _pivot_rule() -> str:
    rule = os.environ.get("TROP_LP_PIVOT", "bland").strip().lower()
    return rule if rule in ("bland", "dantzig") else "bland"



class _StdResult(NamedTuple):
    status: str  # "infeasible" | "unbounded" | "optimal"
    y: Optional[list]
    pi: Optional[list]  # multipliers of the equality rows, original row signs
    direction: Optional[list]


def _solve_std(M: list, rhs: list, cost: list, num) -> _StdResult:
    """min cost.y s.t. M y = rhs, y >= 0 with exact two-phase simplex.

    ``num`` converts Fractions into the arithmetic type used for the tableau.
    Returned vectors use the same arithmetic type.
    """
    r = len(rhs)
    m = len(cost)
    zero = num(0)
    one = num(1)
    signs = [(-1 if rhs[k] < 0 else 1) for k in range(r)]
    width = m + r + 1
    T = []
    for k in range(r):
        s = signs[k]
        if s > 0:
            row = [num(v) if v else zero for v in M[k]]
            row += [one if t == k else zero for t in range(r)]
            row.append(num(rhs[k]))
        else:
            row = [-num(v) if v else zero for v in M[k]]
            row += [one if t == k else zero for t in range(r)]
            row.append(-num(rhs[k]))
        T.append(row)
    basis = [m + k for k in range(r)]
    bland = _pivot_rule() == "bland"

    def pivot(pr: int, pc: int, obj: list):
        prow = T[pr]
        pv = prow[pc]
        if pv != one:
            inv = one / pv
            for j in range(width):
                if prow[j]:
                    prow[j] *= inv
        nz = [j for j in range(width) if prow[j]]
        for i in range(r):
            if i != pr:
                row = T[i]
                f = row[pc]
                if f:
                    for j in nz:
                        row[j] -= f * prow[j]
        f = obj[pc]
        if f:
            for j in nz:
                obj[j] -= f * prow[j]
        basis[pr] = pc

    def run(obj: list, allowed: int) -> Optional[int]:
        """Iterate until optimal; return an unbounded entering column or None."""
        while True:
            enter = -1
            if bland:
                for j in range(allowed):
                    if obj[j] < 0:
                        enter = j
                        break
            else:
                best = zero
                for j in range(allowed):
                    if obj[j] < best:
                        best = obj[j]
                        enter = j
            if enter < 0:
                return None
            leave = -1
            best_ratio = None
            for i in range(r):
                a = T[i][enter]
                if a > 0:
                    ratio = T[i][-1] / a
                    if (best_ratio is None or ratio < best_ratio
                            or (ratio == best_ratio and basis[i] < basis[leave])):
                        best_ratio = ratio
                        leave = i
            if leave < 0:
                return enter
            pivot(leave, enter, obj)

    # phase one: minimise the sum of artificials
    obj = [zero] * width
    for k in range(r):
        for j in range(m):
            if T[k][j]:
                obj[j] -= T[k][j]
        obj[-1] -= T[k][-1]
    run(obj, m)
    if obj[-1] != 0:  # optimum of the phase-one problem is -obj[-1] > 0
        pi = [zero] * r
        for k in range(r):
            if basis[k] >= m:
                row = T[k]
                for t in range(r):
                    if row[m + t]:
                        pi[t] += row[m + t]
        return _StdResult("infeasible", None, [pi[t] * signs[t] for t in range(r)], None)
    # drive artificials out of the basis where possible
    for k in range(r):
        if basis[k] >= m:
            for j in range(m):
                if T[k][j]:
                    pivot(k, j, obj)
                    break
    # phase two
    obj = [zero] * width
    for j in range(m):
        obj[j] = num(cost[j]) if cost[j] else zero
    for k in range(r):
        b = basis[k]
        cb = obj[b] if b < m else zero
        if cb:
            row = T[k]
            for j in range(width):
                if row[j]:
                    obj[j] -= cb * row[j]
    enter = run(obj, m)
    if enter is not None:
        d = [zero] * m
        d[enter] = one
        for k in range(r):
            if basis[k] < m:
                d[basis[k]] = -T[k][enter]
        return _StdResult("unbounded", None, None, d)
    y = [zero] * m
    for k in range(r):
        if basis[k] < m:
            y[basis[k]] = T[k][-1]
    pi = [zero] * r
    for k in range(r):
        b = basis[k]
        if b < m and cost[b]:
            cb = num(cost[b])
            row = T[k]
            for t in range(r):
                if row[m + t]:
                    pi[t] += cb * row[m + t]
    return _StdResult("optimal", y, [pi[t] * signs[t] for t in range(r)], None)


def _to_fraction(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    return Fraction(int(v.numerator), int(v.denominator))


_NUM = _mpq if _mpq is not None else Fraction


class _Rows:
    """Constraints of a polyhedron converted once to tableau arithmetic."""

    __slots__ = ("n", "E", "grads", "consts")

    def __init__(self, P: Polyhedron):
        self.n = P.nvars
        self.E = len(P.eqs)
        forms = P.eqs + P.ineqs
        self.grads = [tuple(_NUM(g) for g in f.grad) for f in forms]
        self.consts = [_NUM(f.const) for f in forms]

    def value(self, k: int, x) -> object:
        return sum((g * v for g, v in zip(self.grads[k], x) if g), self.consts[k])

    def slope(self, k: int, r) -> object:
        return sum((g * v for g, v in zip(self.grads[k], r) if g), _NUM(0))


def _solve_rows(rows: _Rows, grad_c: tuple, use: list):
    """Dual standard form over the constraint indices ``use`` (eqs first)."""
    cols = []
    for k in use:
        cols.append((k, 1))
        if k < rows.E:
            cols.append((k, -1))
    M = [[rows.grads[k][i] if s > 0 else -rows.grads[k][i] for (k, s) in cols]
         for i in range(rows.n)]
    cost = [rows.consts[k] if s > 0 else -rows.consts[k] for (k, s) in cols]
    rhs = [-g for g in grad_c]
    return _solve_std(M, rhs, cost, _ident), cols


def _ident(v):
    return v


def _combine(vec, cols, count) -> tuple:
    out = [ZERO] * count
    for v, (i, s) in zip(vec, cols):
        if v:
            out[i] += _to_fraction(v) * s
    return tuple(out)


def _lp_rows(rows: _Rows, grad_c: tuple, use: list, count: int):
    """Solve over a subset of rows.  Returns ``(status, x, ray, cert, duals)``
    with ``x`` and ``ray`` in tableau arithmetic and multipliers as Fractions
    over all ``count`` constraints."""
    res, cols = _solve_rows(rows, grad_c, use)
    if res.status == "optimal":
        return "optimal", [-p for p in res.pi], None, None, _combine(res.y, cols, count)
    if res.status == "unbounded":
        return "infeasible", None, None, _combine(res.direction, cols, count), None
    feas, fcols = _solve_rows(rows, (_NUM(0),) * rows.n, use)
    if feas.status == "unbounded":
        return "infeasible", None, None, _combine(feas.direction, fcols, count), None
    return "unbounded", [-p for p in feas.pi], [-s for s in res.pi], None, None


_GEN_MIN_ROWS = 40


def _lp_generate(rows: _Rows, grad_c: tuple):
    """Constraint generation: solve on a growing subset of the inequalities.

    A relaxation's infeasibility certificate is one for the full problem;
    an optimum or ray of a relaxation that every row accepts is one for the
    full problem as well.
    """
    total = len(rows.grads)
    E, n = rows.E, rows.n
    if total - E <= _GEN_MIN_ROWS:
        return _lp_rows(rows, grad_c, list(range(total)), total)
    use = list(range(E)) + list(range(E, min(total, E + 2 * n + 2)))
    used = set(use)
    chunk = n + 1
    while True:
        status, x, ray, cert, duals = _lp_rows(rows, grad_c, use, total)
        if status == "infeasible":
            return status, x, ray, cert, duals
        bad = []
        for k in range(E, total):
            if k in used:
                continue
            v = rows.value(k, x)
            if v < 0:
                bad.append((v, k))
            elif ray is not None:
                w = rows.slope(k, ray)
                if w < 0:
                    bad.append((w, k))
        if not bad:
            return status, x, ray, cert, duals
        bad.sort()
        for _, k in bad[:chunk]:
            used.add(k)
            use.append(k)


def lp_optimize(objective: AffineForm, P: Polyhedron, sense: str = "max") -> LPOutcome:
    """Optimise an affine objective over ``P`` exactly.

    Multipliers (certificates and duals) list equalities first, then
    inequalities, in the order of ``P``.
    """
    if sense not in ("max", "min"):
        raise ValueError("sense must be 'max' or 'min'")
    if len(objective.grad) != P.nvars:
        raise ValueError("objective dimension does not match polyhedron")
    obj = objective if sense == "max" else -objective
    if P.nvars == 0:
        forms = P.constraints()
        for idx, (f, is_eq) in enumerate(forms):
            if (is_eq and f.const != 0) or (not is_eq and f.const < 0):
                cert = [ZERO] * len(forms)
                cert[idx] = ONE if f.const < 0 else -ONE
                return LPOutcome("infeasible", certificate=tuple(cert))
        return LPOutcome("optimal", value=objective.const, witness=(),
                         duals=(ZERO,) * len(forms))
    rows = _Rows(P)
    status, x, ray, cert, duals = _lp_generate(rows, tuple(_NUM(g) for g in obj.grad))
    if status == "infeasible":
        return LPOutcome("infeasible", certificate=cert)
    x = tuple(_to_fraction(v) for v in x)
    if status == "optimal":
        return LPOutcome("optimal", value=objective(x), witness=x, duals=duals)
    return LPOutcome("unbounded", witness=x, ray=tuple(_to_fraction(v) for v in ray))


def feasible_point(P: Polyhedron) -> Optional[tuple]:
    """Some point of ``P`` or ``None`` when ``P`` is empty."""
    out = lp_optimize(AffineForm((ZERO,) * P.nvars, ZERO), P)
    return out.witness if out.feasible else None


def is_empty(P: Polyhedron) -> bool:
    return feasible_point(P) is None


def verify_certificate(P: Polyhedron, cert: Sequence) -> bool:
    """Check a Farkas certificate: the combination is the constant ``< 0``."""
    forms = P.constraints()
    if len(cert) != len(forms):
        return False
    total_grad = [ZERO] * P.nvars
    total_const = ZERO
    for lam, (f, is_eq) in zip(cert, forms):
        if not is_eq and lam < 0:
            return False
        if lam:
            for k, g in enumerate(f.grad):
                total_grad[k] += lam * g
            total_const += lam * f.const
    return not any(total_grad) and total_const < 0


# ---------------------------------------------------------------------------
# strict points, relative interiors and dimension


def _gap_problem(P: Polyhedron, strict: Sequence[AffineForm], cap=ONE):
    n = P.nvars
    eqs = tuple(e.extend(1) for e in P.eqs)
    ineqs = [a.extend(1) for a in P.ineqs]
    for s in strict:
        ineqs.append(AffineForm(s.grad + (-ONE,), s.const))
    ineqs.append(AffineForm((ZERO,) * n + (-ONE,), cap))
    Q = Polyhedron(n + 1, eqs, tuple(ineqs))
    delta = AffineForm((ZERO,) * n + (ONE,), ZERO)
    return Q, delta


def has_strict_point(P: Polyhedron, strict: Sequence[AffineForm] = ()):
    """Return ``(True, x)`` if some ``x`` in ``P`` makes every form positive.

    The gap ``delta`` is capped at 1 so the LP is always bounded.
    """
    strict = list(strict)
    Q, delta = _gap_problem(P, strict)
    out = lp_optimize(delta, Q, "max")
    if out.status == "optimal" and out.value > 0:
        return True, out.witness[:-1]
    return False, None


@dataclass
class RelInt:
    point: Optional[tuple]
    hull: tuple = ()  # equalities (explicit plus implicit) spanning the affine hull
    implicit: frozenset = field(default_factory=frozenset)  # indices into P.ineqs
    dim: int = -1


def relint(P: Polyhedron) -> RelInt:
    """A relative-interior point, the affine hull and the dimension of ``P``."""
    eqs = list(P.eqs)
    live = list(range(len(P.ineqs)))
    implicit = set()
    while True:
        cur = Polyhedron(P.nvars, tuple(eqs), tuple(P.ineqs[i] for i in live))
        if not live:
            point = feasible_point(cur)
            break
        # one shared gap for every remaining inequality
        Q, delta = _gap_problem(Polyhedron(P.nvars, tuple(eqs)), cur.ineqs)
        out = lp_optimize(delta, Q, "max")
        if out.status == "infeasible":
            return RelInt(None)
        if out.value > 0:
            point = out.witness[:-1]
            break
        duals = out.duals[len(eqs):]
        moved = [live[k] for k in range(len(live)) if duals[k] > 0]
        if not moved:  # cannot happen for a correct dual; keep the loop finite
            raise ArithmeticError("gap LP returned no positive multiplier")
        for i in moved:
            implicit.add(i)
            eqs.append(P.ineqs[i])
        live = [i for i in live if i not in implicit]
    if point is None:
        return RelInt(None)
    hull = tuple(eqs)
    d = P.nvars - rank([list(e.grad) for e in hull])
    return RelInt(point, hull, frozenset(implicit), d)


def poly_dim(P: Polyhedron) -> int:
    return relint(P).dim


# ---------------------------------------------------------------------------
# linear algebra


def _integer_rows(M: Sequence[Sequence]) -> list:
    rows = []
    for row in M:
        qs = [to_q(v) for v in row]
        den = 1
        for q in qs:
            den = lcm(den, q.denominator)
        rows.append([int(q * den) for q in qs])
    return rows


def _primitive(row: list) -> list:
    g = 0
    for v in row:
        g = gcd(g, v)
    return [v // g for v in row] if g > 1 else row


def rank(M: Sequence[Sequence]) -> int:
    """Rank over the rationals by fraction-free integer elimination."""
    A = [_primitive(row) for row in _integer_rows(M) if any(row)]
    if not A:
        return 0
    ncols = len(A[0])
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(A)) if A[i][c]), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        piv = A[r][c]
        for i in range(r + 1, len(A)):
            a = A[i][c]
            if a:
                A[i] = _primitive([piv * A[i][j] - a * A[r][j] for j in range(ncols)])
        r += 1
        if r == len(A):
            break
    return r


def vanishes_on_hull(form: AffineForm, hull: Sequence[AffineForm]) -> bool:
    """Whether ``form`` is identically zero on the nonempty affine set ``hull = 0``."""
    if form.is_zero():
        return True
    rows = [list(e.grad) + [e.const] for e in hull]
    return rank(rows + [list(form.grad) + [form.const]]) == rank(rows)


def in_span(vec: Sequence, rows: Sequence[Sequence]) -> bool:
    rows = [list(r) for r in rows]
    return rank(rows + [list(vec)]) == rank(rows)
