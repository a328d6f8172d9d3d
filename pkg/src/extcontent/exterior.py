"""Fixed-grade exterior powers: decomposable wedges and compound matrices.

A grade-i multivector in Λᵢ(ℝⁿ) is stored by its coordinates over the basis
e_I, |I| = i, in lexicographic order of I.  The basis is orthonormal.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DomainError, ModeMismatchError
from .matrix import (
    Matrix,
    Mode,
    Scalar,
    format_matrix,
    format_scalar,
    minor_dets,
)
from .subsets import SubsetIndex, binomial, k_subsets


@dataclass(frozen=True)
class Multivector:
    grade: int
    ambient: int
    coords: tuple
    mode: Mode = Mode.EXACT

    def __post_init__(self) -> None:
        expected = binomial(self.ambient, self.grade)
        if len(self.coords) != expected:
            raise DomainError(
                f"grade {self.grade} in dimension {self.ambient} needs {expected} coordinates, "
                f"got {len(self.coords)}"
            )
        kind = float if self.mode is Mode.FLOAT else Fraction
        if any(type(c) is not kind for c in self.coords):
            raise ModeMismatchError(f"coordinates do not match mode {self.mode.value}")

    def basis(self) -> list[SubsetIndex]:
        return k_subsets(self.ambient, self.grade)

    def items(self) -> list[tuple[SubsetIndex, Scalar]]:
        return list(zip(self.basis(), self.coords))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def __neg__(self) -> "Multivector":
        return Multivector(self.grade, self.ambient, tuple(-c for c in self.coords), self.mode)

    def __add__(self, other: "Multivector") -> "Multivector":
        _check_compatible(self, other)
        return Multivector(self.grade, self.ambient,
                           tuple(a + b for a, b in zip(self.coords, other.coords)), self.mode)

    def scale(self, s: Scalar) -> "Multivector":
        return Multivector(self.grade, self.ambient, tuple(s * c for c in self.coords), self.mode)

    def __str__(self) -> str:
        return format_multivector(self)


def _check_compatible(x: Multivector, y: Multivector) -> None:
    if x.mode is not y.mode:
        raise ModeMismatchError("multivectors of different modes")
    if (x.grade, x.ambient) != (y.grade, y.ambient):
        raise DomainError(
            f"grade/dimension mismatch: Λ{x.grade}(R^{x.ambient}) vs Λ{y.grade}(R^{y.ambient})"
        )


def basis_vector(subset: SubsetIndex, mode: Mode = Mode.EXACT) -> Multivector:
    """e_I."""
    size = binomial(subset.n, subset.k)
    one, zero = (1.0, 0.0) if mode is Mode.FLOAT else (Fraction(1), Fraction(0))
    coords = tuple(one if r == subset.rank else zero for r in range(size))
    return Multivector(subset.k, subset.n, coords, mode)


def zero_multivector(grade: int, ambient: int, mode: Mode = Mode.EXACT) -> Multivector:
    z = 0.0 if mode is Mode.FLOAT else Fraction(0)
    return Multivector(grade, ambient, (z,) * binomial(ambient, grade), mode)


def wedge(columns: Sequence[Sequence] | Matrix, mode: Mode | None = None) -> Multivector:
    """v₁ ∧ ... ∧ v_k; the e_I coordinate is det(A_I) for A = [v₁ ... v_k]."""
    if isinstance(columns, Matrix):
        a = columns
    else:
        if not columns:
            raise DomainError("wedge of no vectors needs an ambient dimension; pass a Matrix")
        a = Matrix.from_columns(columns, mode)
    n, k = a.shape
    if k > n:
        raise DomainError(f"wedge of {k} vectors in R^{n} (k > n)")
    rows = k_subsets(n, k)
    full = k_subsets(k, k)
    dets = minor_dets(a, rows, full)
    return Multivector(k, n, tuple(line[0] for line in dets), a.mode)


@dataclass(frozen=True)
class CompoundMatrix:
    """The matrix of Λᵢ(A): entry (rank I, rank J) is the minor M_IJ."""

    base_rows: int
    base_cols: int
    grade: int
    matrix: Matrix

    @property
    def row_subsets(self) -> list[SubsetIndex]:
        return k_subsets(self.base_rows, self.grade)

    @property
    def col_subsets(self) -> list[SubsetIndex]:
        return k_subsets(self.base_cols, self.grade)

    @property
    def mode(self) -> Mode:
        return self.matrix.mode

    def entry(self, rows: SubsetIndex, cols: SubsetIndex) -> Scalar:
        return self.matrix[rows.rank, cols.rank]

    def header(self) -> str:
        return f"# compound n={self.base_rows} k={self.base_cols} i={self.grade}"

    def __str__(self) -> str:
        return format_compound(self)


def compound(a: Matrix, grade: int) -> CompoundMatrix:
    n, k = a.shape
    if not 0 <= grade <= min(n, k):
        raise DomainError(f"grade {grade} outside 0..{min(n, k)} for a {n}x{k} matrix")
    rsets = k_subsets(n, grade)
    csets = k_subsets(k, grade)
    grid = minor_dets(a, rsets, csets)
    m = Matrix(len(rsets), len(csets), tuple(x for line in grid for x in line), a.mode)
    return CompoundMatrix(n, k, grade, m)


def apply(c: CompoundMatrix, x: Multivector) -> Multivector:
    """Λᵢ(A)(x) as a coordinate computation."""
    if c.mode is not x.mode:
        raise ModeMismatchError("compound matrix and multivector have different modes")
    if x.grade != c.grade or x.ambient != c.base_cols:
        raise DomainError(
            f"Λ{c.grade} of a map from R^{c.base_cols} cannot act on Λ{x.grade}(R^{x.ambient})"
        )
    m = c.matrix
    zero = 0.0 if x.mode is Mode.FLOAT else Fraction(0)
    out = []
    for i in range(m.rows):
        s = zero
        for a, b in zip(m.row(i), x.coords):
            s += a * b
        out.append(s)
    return Multivector(c.grade, c.base_rows, tuple(out), x.mode)


def mv_inner(x: Multivector, y: Multivector) -> Scalar:
    """Inner product in which the e_I are orthonormal."""
    _check_compatible(x, y)
    s = 0.0 if x.mode is Mode.FLOAT else Fraction(0)
    for a, b in zip(x.coords, y.coords):
        s += a * b
    return s


def format_multivector(x: Multivector) -> str:
    return "\n".join(f"{s} {format_scalar(v)}" for s, v in x.items())


def format_compound(c: CompoundMatrix) -> str:
    order = " ".join(str(s) for s in c.row_subsets)
    lines = [c.header(), f"# rows {order}", f"# cols {' '.join(str(s) for s in c.col_subsets)}"]
    body = format_matrix(c.matrix)
    if body:
        lines.append(body)
    return "\n".join(lines)
