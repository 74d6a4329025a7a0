"""Supertropical polynomials as rational functions, and corner-integrality.

``hat`` and ``tilde`` turn a polynomial into a rational function whose
skeleton is the corner locus; ``underline`` goes back.  A fraction ``h/g``
is corner-integral when every corner root of ``h`` satisfies ``g >= h`` and
every corner root of ``g`` satisfies ``h >= g``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

from .cells import region_of
from .expr import Monomial, RatFunc, TropPoly, normalize, prune
from .kernels import KernelGen, gen_meet
from .lp import AffineForm, Polyhedron, has_strict_point
from .skeletons import skel_equal, skeleton
from .tropnum import q_str


class DegenerateInput(ValueError):
    """Raised for a single tangible monomial, whose corner locus is empty."""


def _summands(F: TropPoly) -> list:
    out = []
    for m, mult in F.terms:
        out.extend([m] * mult)
    return out


def _check_degenerate(F: TropPoly, degenerate: str):
    if len(_summands(F)) >= 2:
        return None
    if degenerate == "constant":
        return RatFunc.constant(F.nvars, 1)
    raise DegenerateInput("a single tangible monomial has no corner roots; "
                          "pass degenerate='constant' for the constant {1}")


def hat_terms(F: TropPoly) -> list:
    """The summands ``f_i / (sum of the other f_j)``, ghosts counted twice."""
    _check_degenerate(F, "raise")
    ms = _summands(F)
    n = F.nvars
    out = []
    for i, m in enumerate(ms):
        rest = TropPoly(n, tuple((o, 1) for k, o in enumerate(ms) if k != i))
        out.append(RatFunc(TropPoly(n, ((m, 1),)), rest).simplified())
    return out


def hat(F: TropPoly, degenerate: str = "raise") -> RatFunc:
    """A rational function vanishing exactly on the corner locus of ``F``."""
    special = _check_degenerate(F, degenerate)
    if special is not None:
        return special
    out = None
    for t in hat_terms(F):
        out = t if out is None else out.oplus(t).simplified()
    return out


def tilde(F: TropPoly, degenerate: str = "raise") -> RatFunc:
    """Meet of the absolute values of the hat summands."""
    special = _check_degenerate(F, degenerate)
    if special is not None:
        return special
    out = None
    seen = []
    for t in hat_terms(F):
        a = t.abs().simplified()
        if a in seen:
            continue
        seen.append(a)
        out = a if out is None else out.meet(a).simplified()
    return out


def underline(f: RatFunc) -> TropPoly:
    """Supertropical sum of all numerator and denominator monomials.

    A monomial occurring in both with the same coefficient becomes a ghost;
    with different coefficients the larger one is kept.
    """
    f = RatFunc.of(f)
    return normalize(TropPoly(f.nvars, f.num.terms + f.den.terms))


def essential_form(f: RatFunc) -> RatFunc:
    """Drop monomials greedily (numerator first, ascending index) while the
    skeleton is unchanged; repeat until nothing can be dropped."""
    f = RatFunc.of(f)
    target = skeleton(f)
    changed = True
    while changed:
        changed = False
        for side in ("num", "den"):
            k = 0
            while k < len(getattr(f, side).terms):
                poly = getattr(f, side)
                if len(poly.terms) < 2:
                    break
                reduced = TropPoly(f.nvars, poly.terms[:k] + poly.terms[k + 1:])
                cand = RatFunc(reduced, f.den) if side == "num" else RatFunc(f.num, reduced)
                if skel_equal(skeleton(cand), target):
                    f = cand
                    changed = True
                else:
                    k += 1
    return f


def _oplus_all(terms: list) -> RatFunc:
    out = None
    for t in terms:
        out = t if out is None else out.oplus(t).simplified()
    return out


def essential_terms(terms: list) -> list:
    """Drop whole summands greedily while the skeleton of the sum is unchanged."""
    terms = list(terms)
    target = skeleton(_oplus_all(terms))
    changed = True
    while changed:
        changed = False
        for k in range(len(terms)):
            if len(terms) < 2:
                break
            rest = terms[:k] + terms[k + 1:]
            if skel_equal(skeleton(_oplus_all(rest)), target):
                terms = rest
                changed = True
                break
    return terms


def is_regular(f: RatFunc) -> bool:
    """False exactly when a monomial shared by numerator and denominator is
    the strict maximum of both somewhere."""
    f = RatFunc.of(f)
    num, den = f.num.monomials, f.den.monomials
    for i, m in enumerate(num):
        if m not in den:
            continue
        j = den.index(m)
        L = m.affine()
        strict = [L - o.affine() for k, o in enumerate(num) if k != i]
        strict += [L - o.affine() for k, o in enumerate(den) if k != j]
        ok, _ = has_strict_point(Polyhedron(f.nvars), strict)
        if ok:
            return False
    return True


@dataclass(frozen=True)
class Violation:
    side: str  # "num" or "den"
    pair: tuple
    witness: tuple


@dataclass
class CIReport:
    integral: bool
    violations: list = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.integral

    def to_json(self) -> dict:
        return {"integral": self.integral,
                "violations": [{"side": v.side, "pair": list(v.pair),
                                "witness": [q_str(c) for c in v.witness]}
                               for v in self.violations]}


def _side_violations(side: str, own: TropPoly, other: TropPoly, first_only: bool) -> list:
    n = own.nvars
    monos = own.monomials
    kept = prune(own).monomials
    idx = [monos.index(m) for m in kept]
    forms = [m.affine() for m in monos]
    rivals = [m.affine() for m in other.monomials]
    out = []
    for a in range(len(idx)):
        for b in range(a + 1, len(idx)):
            i, j = idx[a], idx[b]
            li = forms[i]
            P = Polyhedron(n, (li - forms[j],),
                           tuple(li - forms[k] for k in range(len(forms)) if k not in (i, j)))
            reg = region_of(P)
            if reg is None:
                continue
            ok, t = reg.strict_point([li - r for r in rivals])
            if ok:
                out.append(Violation(side, (i, j), reg.frame.push(t)))
                if first_only:
                    return out
    return out


def is_corner_integral(f: RatFunc, first_only: bool = False) -> CIReport:
    """Check both corner conditions pair by pair with strict-point LPs.

    Monomials that never strictly attain the maximum do not change the
    corner locus, so only the others are paired; indices refer to the
    given presentation.
    """
    f = RatFunc.of(f)
    v = _side_violations("num", f.num, f.den, first_only)
    if not (first_only and v):
        v += _side_violations("den", f.den, f.num, first_only)
    return CIReport(not v, v)


def _abs_order(f: RatFunc) -> RatFunc:
    """``|f + 1|``, i.e. ``max(f, 0)``."""
    return f.oplus(RatFunc.constant(f.nvars)).simplified()


def ci_closure(f: RatFunc) -> RatFunc:
    """``|f| ∧ (|f^-1 + 1| + tilde(h)) ∧ (|f + 1| + tilde(g))``.

    A part with a single (essential) monomial has no corner roots; its term
    is left out, as if it were identically infinite.
    """
    f = RatFunc.of(f)
    out = f.abs().simplified()
    for poly, base in ((f.num, f.inverse()), (f.den, f)):
        p = prune(poly)
        if len(p.terms) < 2:
            continue
        term = _abs_order(base).oplus(tilde(p)).simplified()
        out = out.meet(term).simplified()
    return out
