"""Content of linear maps and the identity det(AᵗA) = Σ_I det(A_I)².

The content c(A) is |det| of A restricted from ker(A)^⊥ onto im(A), in
orthonormal bases.  For full column rank it is √det(AᵗA).  For rank r it is
the product of the nonzero singular values, computed here as the square root
of Σ det(A[I, J])² over all r-subsets I of rows and J of columns.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .errors import DomainError, HypothesisError
from .exterior import compound
from .matrix import (
    Matrix,
    Mode,
    Scalar,
    determinant,
    exact_rank,
    format_scalar,
    gram,
    mat_mul,
    minor_dets,
    transpose,
)
from .subsets import SubsetIndex, k_subsets

FLOAT_REL_TOL = 1e-10
_EPS = 2.0 ** -52


def _sqrt(x: Scalar) -> float:
    if isinstance(x, Fraction):
        if x <= 0:
            return 0.0
        # exact integer square root when possible, float otherwise
        p, q = x.numerator, x.denominator
        rp, rq = math.isqrt(p), math.isqrt(q)
        if rp * rp == p and rq * rq == q:
            return rp / rq
        return math.sqrt(x)
    return math.sqrt(x) if x > 0 else 0.0


def numerical_rank(a: Matrix) -> int:
    """Rank from pivoted elimination on the Gram matrix.

    A pivot counts when it exceeds max(n, k)·2⁻⁵²·(largest pivot).
    """
    n, k = a.shape
    if k == 0 or n == 0:
        return 0
    g = gram(a.to_float() if a.mode is Mode.EXACT else a).to_lists()
    m = len(g)
    idx = list(range(m))
    rank = 0
    tol = None
    for step in range(m):
        p = max(range(step, m), key=lambda i: g[idx[i]][idx[i]])
        idx[step], idx[p] = idx[p], idx[step]
        piv = g[idx[step]][idx[step]]
        if tol is None:
            if piv <= 0.0:
                return 0
            tol = max(n, k) * _EPS * piv
        if piv <= tol:
            break
        rank += 1
        pr = g[idx[step]]
        for ii in range(step + 1, m):
            row = g[idx[ii]]
            f = row[idx[step]] / piv
            if f != 0.0:
                for jj in range(step + 1, m):
                    row[idx[jj]] -= f * pr[idx[jj]]
    return rank


def matrix_rank(a: Matrix) -> int:
    return exact_rank(a) if a.mode is Mode.EXACT else numerical_rank(a)


@dataclass(frozen=True)
class Content:
    """c(A) as a float plus the exact (or float) value of c(A)²."""

    value: float
    squared: Scalar
    rank: int
    degenerate: bool = False

    def __float__(self) -> float:
        return self.value


def content(a: Matrix) -> Content:
    """Content of ``a`` for any shape and rank.

    The zero map (rank 0) gets content 1 by the empty-product convention and
    is flagged ``degenerate``.
    """
    n, k = a.shape
    r = matrix_rank(a)
    if r == 0:
        one = 1.0 if a.mode is Mode.FLOAT else Fraction(1)
        return Content(1.0, one, 0, degenerate=True)
    if r == k:
        sq = determinant(gram(a))
    elif r == n:
        sq = determinant(gram(transpose(a)))
    else:
        sq = sum_of_squares(compound(a, r).matrix.entries, a.mode)
    if a.mode is Mode.FLOAT and sq < 0.0:
        sq = 0.0
    return Content(_sqrt(sq), sq, r)


def sum_of_squares(values, mode: Mode) -> Scalar:
    # fixed (lex) summation order
    s = 0.0 if mode is Mode.FLOAT else Fraction(0)
    for v in values:
        s += v * v
    return s


@dataclass(frozen=True)
class ContentReport:
    """Both sides of det(AᵗA) = Σ_I det(A_I)² for one matrix."""

    mode: Mode
    rows: int
    cols: int
    gram_det: Scalar
    minor_sq_sum: Scalar
    minors: dict = field(repr=False)
    residual: Scalar
    content: float

    @property
    def relative_residual(self) -> float:
        scale = max(abs(float(self.gram_det)), abs(float(self.minor_sq_sum)))
        if scale == 0.0:
            return 0.0 if self.residual == 0 else math.inf
        return abs(float(self.residual)) / scale

    def verified(self, rel_tol: float = FLOAT_REL_TOL) -> bool:
        if self.mode is Mode.EXACT:
            return self.residual == 0
        return self.relative_residual <= rel_tol

    def to_dict(self) -> dict:
        return {
            "mode": self.mode.value,
            "rows": self.rows,
            "cols": self.cols,
            "gram_det": format_scalar(self.gram_det),
            "minor_sq_sum": format_scalar(self.minor_sq_sum),
            "residual": format_scalar(self.residual),
            "relative_residual": self.relative_residual,
            "content": self.content,
            "verified": self.verified(),
            "minors": [
                {"subset": str(s), "minor": format_scalar(v)} for s, v in self.minors.items()
            ],
        }

    def to_text(self) -> str:
        lines = [
            f"mode: {self.mode.value}",
            f"shape: {self.rows}x{self.cols}",
            f"gram_det: {format_scalar(self.gram_det)}",
            f"minor_sq_sum: {format_scalar(self.minor_sq_sum)}",
            f"residual: {format_scalar(self.residual)}",
            f"relative_residual: {self.relative_residual:.17g}",
            f"content: {self.content:.17g}",
            f"verified: {'yes' if self.verified() else 'no'}",
            "minors:",
        ]
        lines += [f"  {s} {format_scalar(v)}" for s, v in self.minors.items()]
        return "\n".join(lines)


def _require_tall(a: Matrix) -> None:
    n, k = a.shape
    if k > n:
        raise DomainError(
            f"{n}x{k} matrix has more columns than rows: there are no {k}-subsets of {n} rows"
        )


def _row_minors(a: Matrix) -> dict:
    n, k = a.shape
    subsets = k_subsets(n, k)
    grid = minor_dets(a, subsets, k_subsets(k, k))
    return {s: line[0] for s, line in zip(subsets, grid)}


def pythagorean_check(a: Matrix) -> ContentReport:
    """Evaluate det(AᵗA) by elimination and Σ det(A_I)² by enumeration."""
    _require_tall(a)
    gram_det = determinant(gram(a))
    minors = _row_minors(a)
    sq = sum_of_squares(minors.values(), a.mode)
    return ContentReport(
        mode=a.mode,
        rows=a.rows,
        cols=a.cols,
        gram_det=gram_det,
        minor_sq_sum=sq,
        minors=minors,
        residual=gram_det - sq,
        content=_sqrt(gram_det),
    )


def projection_contents(a: Matrix) -> dict[SubsetIndex, tuple[Scalar, Scalar]]:
    """Signed and unsigned content of the projection onto each coordinate k-plane."""
    _require_tall(a)
    return {s: (m, abs(m)) for s, m in _row_minors(a).items()}


@dataclass(frozen=True)
class MultiplicativityResult:
    composite: float
    product: float
    relative_gap: float
    composite_sq: Scalar
    product_sq: Scalar


def multiplicativity_check(l: Matrix, e: Matrix) -> MultiplicativityResult:
    """Compare c(M∘L) with c(M)·c(L) for M = E·Lᵗ.

    With L (n x k) and E (p x k) both of full column rank, ker M = (im L)^⊥,
    which is the hypothesis under which content is multiplicative.
    """
    n, k = l.shape
    if e.cols != k:
        raise DomainError(f"E must have {k} columns to compose with Lᵗ, got {e.cols}")
    if k > n or matrix_rank(l) != k:
        raise HypothesisError("L does not have full column rank")
    if e.cols > e.rows or matrix_rank(e) != e.cols:
        raise HypothesisError("E does not have full column rank")
    m = mat_mul(e, transpose(l))
    cm, cl, cml = content(m), content(l), content(mat_mul(m, l))
    product = cm.value * cl.value
    gap = abs(cml.value - product) / cml.value if cml.value else abs(product)
    return MultiplicativityResult(cml.value, product, gap, cml.squared, cm.squared * cl.squared)


def adjoint_content_check(a: Matrix) -> tuple[Content, Content]:
    """c(A) and c(Aᵗ), each computed on its own."""
    return content(a), content(transpose(a))


def gram_eigen_content_sq(a: Matrix, rank: Optional[int] = None) -> float:
    """Product of the nonzero eigenvalues of AᵗA in floating point (numpy)."""
    import numpy as np

    if a.cols == 0 or a.rows == 0:
        return 1.0
    arr = np.array(a.to_float().to_lists(), dtype=float)
    w = np.sort(np.linalg.eigvalsh(arr.T @ arr))[::-1]
    r = numerical_rank(a) if rank is None else rank
    return float(np.prod(w[:r])) if r else 1.0
