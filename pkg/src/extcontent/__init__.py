"""Exact and floating-point multilinear algebra for k-dimensional content.

Computes contents of linear maps and parallelepipeds, compound matrices of
minors, and checks det(AᵗA) = Σ_I det(A_I)² with two independent paths.
"""
from .content import (
    Content,
    ContentReport,
    adjoint_content_check,
    content,
    multiplicativity_check,
    projection_contents,
    pythagorean_check,
)
from .errors import DomainError, HypothesisError, ModeMismatchError, ParseError
from .exterior import CompoundMatrix, Multivector, apply, basis_vector, compound, mv_inner, wedge
from .geometry import (
    ImmersionSpec,
    Parallelepiped,
    Simplex,
    de_gua_check,
    immersion_content,
    parallelepiped_content,
    shape_spec,
    simplex_content,
)
from .matrix import (
    GramMatrix,
    Matrix,
    Mode,
    determinant,
    gram,
    mat_mul,
    minor_det,
    parse_matrix,
    row_minor,
    transpose,
)
from .subsets import SubsetIndex, binomial, k_subsets, rank, unrank

__version__ = "0.1.0"
