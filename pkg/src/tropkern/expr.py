"""Laurent monomials, supertropical polynomials and tropical rational functions.

Everything is in logarithmic scale: a monomial ``{c}*x^e`` is the affine
function ``x -> e.x + c`` and a polynomial is the maximum of its monomials.
A term of multiplicity two is a ghost; it makes every point where it attains
the maximum a corner root.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

import numpy as np

from . import planar
from .lp import AffineForm, Polyhedron, has_strict_point
from .tropnum import TropScalar, to_q

ZERO = Fraction(0)


class ParseError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


@dataclass(frozen=True)
class Monomial:
    exps: tuple
    coeff: Fraction = ZERO

    def __post_init__(self):
        object.__setattr__(self, "exps", tuple(to_q(e) for e in self.exps))
        object.__setattr__(self, "coeff", to_q(self.coeff))

    @staticmethod
    def const(nvars: int, c=0) -> "Monomial":
        return Monomial((ZERO,) * nvars, c)

    @staticmethod
    def var(nvars: int, i: int, c=0) -> "Monomial":
        return Monomial(tuple(Fraction(1) if k == i else ZERO for k in range(nvars)), c)

    @property
    def nvars(self) -> int:
        return len(self.exps)

    @property
    def scalar(self) -> TropScalar:
        return TropScalar(self.coeff)

    def affine(self) -> AffineForm:
        return AffineForm(self.exps, self.coeff)

    def __call__(self, point: Sequence) -> Fraction:
        return sum((e * p for e, p in zip(self.exps, point) if e), self.coeff)

    def __mul__(self, other: "Monomial") -> "Monomial":
        return Monomial(tuple(a + b for a, b in zip(self.exps, other.exps)),
                        self.coeff + other.coeff)

    def inverse(self) -> "Monomial":
        return Monomial(tuple(-e for e in self.exps), -self.coeff)

    def __truediv__(self, other: "Monomial") -> "Monomial":
        return self * other.inverse()

    def power(self, q) -> "Monomial":
        q = to_q(q)
        return Monomial(tuple(e * q for e in self.exps), self.coeff * q)

    def is_constant(self) -> bool:
        return not any(self.exps)

    def is_hp(self) -> bool:
        """A hyperplane fraction is a monomial with a nonzero exponent vector."""
        return not self.is_constant()


def _sort_key(m: Monomial):
    return tuple(-e for e in m.exps), -m.coeff


@dataclass(frozen=True)
class EvalResult:
    value: Fraction
    ghost: bool

    @property
    def scalar(self) -> TropScalar:
        return TropScalar(self.value)


@dataclass(frozen=True)
class TropPoly:
    """A supertropical polynomial: terms are ``(Monomial, multiplicity)``."""

    nvars: int
    terms: tuple

    def __post_init__(self):
        if not self.terms:
            raise ValueError("a tropical polynomial needs at least one term")
        for m, mult in self.terms:
            if m.nvars != self.nvars:
                raise ValueError("monomial dimension does not match nvars")
            if mult not in (1, 2):
                raise ValueError("multiplicity must be 1 or 2")

    @staticmethod
    def of(monomials: Iterable[Monomial], nvars: int = None, ghosts: Iterable[Monomial] = ()) -> "TropPoly":
        terms = [(m, 1) for m in monomials] + [(m, 2) for m in ghosts]
        if nvars is None:
            nvars = terms[0][0].nvars
        return normalize(TropPoly(nvars, tuple(terms)))

    @staticmethod
    def constant(nvars: int, c=0) -> "TropPoly":
        return TropPoly(nvars, ((Monomial.const(nvars, c), 1),))

    @property
    def monomials(self) -> list:
        return [m for m, _ in self.terms]

    def is_tangible(self) -> bool:
        return all(mult == 1 for _, mult in self.terms)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def tangible(self) -> "TropPoly":
        """Forget ghost marks (the function is unchanged)."""
        return TropPoly(self.nvars, tuple((m, 1) for m, _ in self.terms))

    def __call__(self, point: Sequence) -> Fraction:
        return max(m(point) for m, _ in self.terms)

    def __add__(self, other: "TropPoly") -> "TropPoly":
        _check_dims(self, other)
        return normalize(TropPoly(self.nvars, self.terms + other.terms))

    def __mul__(self, other: "TropPoly") -> "TropPoly":
        _check_dims(self, other)
        terms = tuple((a * b, max(ma, mb)) for a, ma in self.terms for b, mb in other.terms)
        return normalize(TropPoly(self.nvars, terms))

    def power(self, q) -> "TropPoly":
        """Nonnegative power, computed termwise (Frobenius)."""
        q = to_q(q)
        if q < 0:
            raise ValueError("negative power of a polynomial is a rational function")
        if q == 0:
            return TropPoly.constant(self.nvars)
        return normalize(TropPoly(self.nvars, tuple((m.power(q), mult) for m, mult in self.terms)))

    def scale(self, m: Monomial) -> "TropPoly":
        return TropPoly(self.nvars, tuple((t * m, mult) for t, mult in self.terms))

    def __str__(self) -> str:
        return format_expr(self)


def _check_dims(a, b):
    if a.nvars != b.nvars:
        raise ValueError(f"dimension mismatch: {a.nvars} vs {b.nvars} variables")


def normalize(p: TropPoly) -> TropPoly:
    """Merge equal exponent vectors and sort terms canonically.

    The larger coefficient wins; equal top coefficients occurring twice, or a
    ghost at the top coefficient, give a ghost term.
    """
    groups: dict = {}
    for m, mult in p.terms:
        cur = groups.get(m.exps)
        if cur is None or m.coeff > cur[0]:
            groups[m.exps] = [m.coeff, mult]
        elif m.coeff == cur[0]:
            cur[1] = 2
    terms = [(Monomial(e, c), mult) for e, (c, mult) in groups.items()]
    terms.sort(key=lambda t: _sort_key(t[0]))
    return TropPoly(p.nvars, tuple(terms))


def _tangible(p: TropPoly) -> TropPoly:
    return normalize(p).tangible()


@dataclass(frozen=True)
class RatFunc:
    """A tropical rational function ``num / den`` with tangible parts."""

    num: TropPoly
    den: TropPoly

    def __post_init__(self):
        _check_dims(self.num, self.den)
        object.__setattr__(self, "num", _tangible(self.num))
        object.__setattr__(self, "den", _tangible(self.den))

    @property
    def nvars(self) -> int:
        return self.num.nvars

    @staticmethod
    def of(x: Union["RatFunc", TropPoly, Monomial]) -> "RatFunc":
        if isinstance(x, RatFunc):
            return x
        if isinstance(x, Monomial):
            x = TropPoly(x.nvars, ((x, 1),))
        return RatFunc(x, TropPoly.constant(x.nvars))

    @staticmethod
    def constant(nvars: int, c=0) -> "RatFunc":
        return RatFunc.of(TropPoly.constant(nvars, c))

    def __call__(self, point: Sequence) -> Fraction:
        return self.num(point) - self.den(point)

    def inverse(self) -> "RatFunc":
        return RatFunc(self.den, self.num)

    def __mul__(self, other: "RatFunc") -> "RatFunc":
        other = RatFunc.of(other)
        return RatFunc(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: "RatFunc") -> "RatFunc":
        return self * RatFunc.of(other).inverse()

    def oplus(self, other: "RatFunc") -> "RatFunc":
        other = RatFunc.of(other)
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    def meet(self, other: "RatFunc") -> "RatFunc":
        """Pointwise minimum ``f g / (f + g)``."""
        other = RatFunc.of(other)
        return RatFunc(self.num * other.num, self.num * other.den + other.num * self.den)

    def power(self, q) -> "RatFunc":
        q = to_q(q)
        if q < 0:
            return self.inverse().power(-q)
        return RatFunc(self.num.power(q), self.den.power(q))

    def abs(self) -> "RatFunc":
        """``|f| = f + f^-1``, written with Frobenius powers as (h^2 + g^2)/(h g)."""
        return RatFunc(self.num.power(2) + self.den.power(2), self.num * self.den)

    def shift(self, c) -> "RatFunc":
        """Multiply by the constant ``{c}``."""
        return RatFunc(self.num.scale(Monomial.const(self.nvars, c)), self.den)

    def is_constant(self) -> bool:
        return all(m.is_constant() for m in self.num.monomials + self.den.monomials)

    def simplified(self) -> "RatFunc":
        """Same function with redundant monomials dropped from both parts."""
        num, den = prune(self.num), prune(self.den)
        if den.is_monomial() and not _is_unit(den.monomials[0]):
            m = den.monomials[0].inverse()
            num, den = num.scale(m), TropPoly.constant(self.nvars)
        return RatFunc(num, den)

    def __str__(self) -> str:
        return format_expr(self)


def _is_unit(m: Monomial) -> bool:
    return m.coeff == 0 and m.is_constant()


# ---------------------------------------------------------------------------
# evaluation


def evaluate(f: Union[TropPoly, RatFunc], point: Sequence) -> EvalResult:
    if len(point) != f.nvars:
        raise ValueError(f"point has {len(point)} coordinates, expected {f.nvars}")
    point = tuple(to_q(p) for p in point)
    if isinstance(f, RatFunc):
        return EvalResult(f(point), False)
    best = None
    ghost = False
    for m, mult in f.terms:
        v = m(point)
        if best is None or v > best:
            best, ghost = v, mult == 2
        elif v == best:
            ghost = True
    return EvalResult(best, ghost)


class GridValues:
    """Exact values on a product grid: ``value = scaled / scale``."""

    def __init__(self, scaled: np.ndarray, scale: int, ghost: np.ndarray = None):
        self.scaled = scaled
        self.scale = scale
        self.ghost = ghost

    def __getitem__(self, idx) -> Fraction:
        return Fraction(int(self.scaled[idx]), self.scale)


def _lcm_denominators(values) -> int:
    out = 1
    for v in values:
        out = math.lcm(out, Fraction(v).denominator)
    return out


def _max_planes(terms: list, axes: list, D: int):
    """Integer maxima (and tie/ghost masks) of ``D * monomial`` over the grid."""
    ints = [[int(Fraction(a) * D) for a in ax] for ax in axes]
    bound = D * (1 + sum(max(abs(Fraction(a)) for a in ax) for ax in axes if ax))
    bound *= 1 + max((abs(e) for m, _ in terms for e in m.exps), default=0)
    bound += max(abs(m.coeff) for m, _ in terms) * D * D
    dtype = np.int64 if bound < 2 ** 61 else object
    grids = np.meshgrid(*[np.array(v, dtype=dtype) for v in ints], indexing="ij")
    shape = tuple(len(v) for v in ints)
    best = ghost = None
    for m, mult in terms:
        # D*(e.x + c) = sum (D e_k)(D x_k)/D + D c; D e_k is an integer
        val = np.full(shape, int(m.coeff * D * D), dtype=dtype)
        for e, g in zip(m.exps, grids):
            if e:
                val = val + int(e * D) * g
        if best is None:
            best, ghost = val, np.full(shape, mult == 2)
        else:
            tie = val == best
            up = val > best
            ghost = np.where(up, mult == 2, np.where(tie, True, ghost))
            best = np.maximum(best, val)
    return best, ghost


def grid_values(f: Union[TropPoly, RatFunc], axes: Sequence[Sequence]) -> GridValues:
    """Exact evaluation on the product grid ``axes[0] x axes[1] x ...``.

    Values are computed with integer arrays after scaling by a common
    denominator, so the comparison with zero (and the ghost flag of a
    polynomial) is exact.
    """
    if len(axes) != f.nvars:
        raise ValueError(f"expected {f.nvars} axes")
    polys = [f.num, f.den] if isinstance(f, RatFunc) else [f]
    D = _lcm_denominators([a for ax in axes for a in ax]
                          + [e for p in polys for m in p.monomials for e in m.exps]
                          + [m.coeff for p in polys for m in p.monomials])
    if isinstance(f, RatFunc):
        num, _ = _max_planes(list(f.num.terms), axes, D)
        den, _ = _max_planes(list(f.den.terms), axes, D)
        return GridValues(num - den, D * D)
    best, ghost = _max_planes(list(f.terms), axes, D)
    return GridValues(best, D * D, ghost)


def to_affine_forms(p: TropPoly) -> list:
    return [(m.affine(), mult) for m, mult in p.terms]


# ---------------------------------------------------------------------------
# pruning of monomials that never attain the maximum strictly


def _sample_points(nvars: int, count: int = 24) -> list:
    rng = random.Random(20240611 + nvars)
    pts = [tuple(Fraction(0) for _ in range(nvars))]
    for _ in range(count):
        scale = rng.choice((1, 4, 16))
        pts.append(tuple(Fraction(rng.randint(-8, 8) * scale, 4) for _ in range(nvars)))
    return pts


def strictly_dominates_somewhere(p_forms: Sequence[AffineForm], i: int, others: Sequence[int]):
    """Whether form ``i`` exceeds every form in ``others`` at some point."""
    if not others:
        return True, None
    n = len(p_forms[i].grad)
    # variables (x, t): t >= L_j for every other j, and L_i - t > 0
    ineqs = tuple(AffineForm(tuple(-g for g in p_forms[j].grad) + (Fraction(1),), -p_forms[j].const)
                  for j in others)
    Li = p_forms[i]
    strict = AffineForm(Li.grad + (Fraction(-1),), Li.const)
    ok, wit = has_strict_point(Polyhedron(n + 1, (), ineqs), [strict])
    return ok, (wit[:-1] if ok else None)


def prune(p: TropPoly) -> TropPoly:
    """Tangible polynomial with the same function and no redundant monomial.

    A monomial is kept exactly when it is the unique maximum somewhere.
    """
    p = _tangible(p)
    if len(p.terms) <= 2:
        return p
    monos = p.monomials
    forms = [m.affine() for m in monos]
    if 1 <= p.nvars <= 2:
        # exponents are distinct, so a monomial wins strictly somewhere
        # exactly when its closed dominance cell is full-dimensional
        alive = planar.dominant(p.nvars, [planar.coeffs(f) for f in forms])
        return TropPoly(p.nvars, tuple((monos[k], 1) for k in alive))
    keep = set()
    for pt in _sample_points(p.nvars):
        vals = [f(pt) for f in forms]
        top = max(vals)
        winners = [k for k, v in enumerate(vals) if v == top]
        if len(winners) == 1:
            keep.add(winners[0])
    alive = list(range(len(monos)))
    for i in range(len(monos)):
        if i in keep:
            continue
        others = [j for j in alive if j != i]
        ok, _ = strictly_dominates_somewhere(forms, i, others)
        if not ok:
            alive.remove(i)
    return TropPoly(p.nvars, tuple((monos[k], 1) for k in alive))


# ---------------------------------------------------------------------------
# printing


def _fmt_q(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_monomial(m: Monomial, names: Sequence[str]) -> str:
    parts = []
    if m.coeff != 0 or m.is_constant():
        parts.append("{" + _fmt_q(m.coeff) + "}")
    for name, e in zip(names, m.exps):
        if e == 0:
            continue
        if e == 1:
            parts.append(name)
        elif e.denominator == 1:
            parts.append(f"{name}^{e.numerator}")
        else:
            parts.append(f"{name}^({_fmt_q(e)})")
    return "*".join(parts)


def default_names(nvars: int) -> list:
    if nvars <= 3:
        return ["x", "y", "z"][:nvars]
    return [f"x{i + 1}" for i in range(nvars)]


def format_expr(f, names: Sequence[str] = None) -> str:
    if isinstance(f, Monomial):
        return format_monomial(f, names or default_names(f.nvars))
    names = names or default_names(f.nvars)
    if isinstance(f, TropPoly):
        out = []
        for m, mult in f.terms:
            out.extend([format_monomial(m, names)] * mult)
        return " + ".join(out)
    return f"({format_expr(f.num, names)})/({format_expr(f.den, names)})"


# ---------------------------------------------------------------------------
# parsing


class _Parser:
    def __init__(self, text: str, names: Sequence[str]):
        self.text = text
        self.names = list(names)
        self.n = len(self.names)
        self.pos = 0

    def error(self, msg, pos=None):
        raise ParseError(msg, self.pos if pos is None else pos)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            self.error(f"expected '{ch}'")
        self.pos += 1

    def parse(self):
        if not self.text.strip():
            self.error("empty expression", 0)
        value = self.expr()
        if self.peek():
            self.error(f"unexpected '{self.peek()}'")
        return value

    def expr(self):
        value = self.term()
        while self.peek() == "+":
            self.pos += 1
            value = _oplus(value, self.term())
        return value

    def term(self):
        value = self.factor()
        while self.peek() in ("*", "/"):
            op = self.text[self.pos]
            self.pos += 1
            rhs = self.factor()
            value = _times(value, rhs) if op == "*" else _divide(value, rhs)
        return value

    def factor(self):
        value = self.atom()
        while self.peek() == "^":
            self.pos += 1
            value = _power(value, self.exponent())
        return value

    def integer(self) -> int:
        self.skip()
        start = self.pos
        if self.pos < len(self.text) and self.text[self.pos] in "+-":
            self.pos += 1
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        token = self.text[start:self.pos]
        if not token.lstrip("+-"):
            self.error("expected an integer", start)
        return int(token)

    def rational(self) -> Fraction:
        p = self.integer()
        if self.peek() == "/":
            self.pos += 1
            q = self.integer()
            if q == 0:
                self.error("zero denominator in rational")
            return Fraction(p, q)
        return Fraction(p)

    def exponent(self) -> Fraction:
        if self.peek() == "(":
            self.pos += 1
            q = self.rational()
            self.expect(")")
            return q
        return Fraction(self.integer())

    def atom(self):
        ch = self.peek()
        start = self.pos
        if ch == "(":
            self.pos += 1
            value = self.expr()
            self.expect(")")
            return value
        if ch == "{":
            self.pos += 1
            c = self.rational()
            self.expect("}")
            return TropPoly.constant(self.n, c)
        if ch.isalpha() or ch == "_":
            while self.pos < len(self.text) and (self.text[self.pos].isalnum() or self.text[self.pos] == "_"):
                self.pos += 1
            name = self.text[start:self.pos]
            if name in ("abs", "min") and self.peek() == "(":
                self.pos += 1
                a = self.expr()
                if name == "abs":
                    self.expect(")")
                    return RatFunc.of(a).abs()
                self.expect(",")
                b = self.expr()
                self.expect(")")
                return RatFunc.of(a).meet(RatFunc.of(b))
            if name not in self.names:
                self.error(f"unknown variable '{name}'", start)
            return TropPoly(self.n, ((Monomial.var(self.n, self.names.index(name)), 1),))
        if not ch:
            self.error("unexpected end of input")
        self.error(f"unexpected '{ch}'")


def _oplus(a, b):
    if isinstance(a, TropPoly) and isinstance(b, TropPoly):
        return a + b
    return RatFunc.of(a).oplus(RatFunc.of(b))


def _times(a, b):
    if isinstance(a, TropPoly) and isinstance(b, TropPoly):
        return a * b
    return RatFunc.of(a) * RatFunc.of(b)


def _divide(a, b):
    return RatFunc.of(a) / RatFunc.of(b)


def _power(a, q: Fraction):
    if isinstance(a, TropPoly):
        if q >= 0:
            return a.power(q)
        if a.is_monomial():
            m, mult = a.terms[0]
            return TropPoly(a.nvars, ((m.power(q), mult),))
    return RatFunc.of(a).power(q)


def parse(text: str, names: Sequence[str]) -> Union[TropPoly, RatFunc]:
    """Parse an expression over the given ordered variable names."""
    names = list(names)
    if not names:
        raise ValueError("at least one variable is required")
    if len(set(names)) != len(names):
        raise ValueError("duplicate variable names")
    return _Parser(text, names).parse()


def as_ratfunc(f) -> RatFunc:
    return RatFunc.of(f)
