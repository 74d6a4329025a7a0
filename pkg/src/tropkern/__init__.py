"""Exact computational tropical algebra: tropical rational functions, their
skeletons and corner loci, principal kernels, corner-integrality and
HO-decompositions."""

from .tropnum import TropScalar, add, mul, meet
from .tropnum import abs as tabs
from .expr import (EvalResult, Monomial, ParseError, RatFunc, TropPoly, evaluate,
                   format_expr, grid_values, normalize, parse, prune, to_affine_forms)
from .lp import (AffineForm, LPOutcome, Polyhedron, has_strict_point, lp_optimize,
                 poly_dim, rank, relint)
from .cells import Cell, dominance_cells, refine, restrict
from .skeletons import (SkelSet, corner_locus, skel_contains, skel_difference_point,
                        skel_equal, skel_intersection, skel_is_empty, skel_union, skeleton,
                        thicken)
from .kernels import (KernelGen, bounded_above, bounded_below, gen_join, gen_meet, member,
                      omega, orthogonal, point_kernel, similar, unbounded_copy)
from .svg import plot_svg
from .cornerint import (CIReport, ci_closure, essential_form, essential_terms, hat, hat_terms,
                        is_corner_integral, is_regular, tilde, underline)
from .hodecomp import (HdimReport, HOComponent, classify, condeg, ho_decompose, hs_chain,
                       hyperdim, is_regular_via_decomp)

__version__ = "0.1.0"
