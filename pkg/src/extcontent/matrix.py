"""Dense matrices over exact rationals or IEEE doubles.

Exact scalars are :class:`fractions.Fraction` (always in lowest terms with a
positive denominator); float scalars are finite Python floats.  A matrix
carries a single :class:`Mode` and operations refuse to mix modes.
"""
from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence, Union

from . import kernels
from .errors import DomainError, ModeMismatchError, ParseError
from .subsets import SubsetIndex

Scalar = Union[Fraction, float]


class Mode(str, enum.Enum):
    EXACT = "exact"
    FLOAT = "float"


def scalar_mode(x: Scalar) -> Mode:
    return Mode.FLOAT if isinstance(x, float) else Mode.EXACT


def make_scalar(x, mode: Mode) -> Scalar:
    """Coerce ``x`` into ``mode``.  Floats are never silently made exact."""
    if mode is Mode.EXACT:
        if isinstance(x, bool) or not isinstance(x, (Rational, str)):
            raise ModeMismatchError(f"cannot use {x!r} as an exact scalar")
        return Fraction(x)
    value = float(x)
    if not math.isfinite(value):
        raise DomainError(f"non-finite float {value!r} is not a valid scalar")
    return value


def parse_scalar(token: str, mode: Mode | None = None) -> Scalar:
    """Parse an integer, ``p/q`` or decimal literal.

    Decimals become exact ratios in exact mode (``0.25`` -> 1/4).
    """
    tok = token.strip()
    if mode is not Mode.FLOAT:
        try:
            return Fraction(tok)
        except ZeroDivisionError:
            raise ParseError(f"zero denominator in {tok!r}") from None
        except ValueError:
            if mode is Mode.EXACT:
                raise ParseError(f"not an exact literal: {tok!r}") from None
    if "/" in tok:
        num, _, den = tok.partition("/")
        try:
            q = float(den)
            p = float(num)
        except ValueError:
            raise ParseError(f"not a number: {tok!r}") from None
        if q == 0:
            raise ParseError(f"zero denominator in {tok!r}")
        value = p / q
    else:
        try:
            value = float(tok)
        except ValueError:
            raise ParseError(f"not a number: {tok!r}") from None
    if not math.isfinite(value):
        raise ParseError(f"non-finite value {tok!r}")
    return value


def format_scalar(x: Scalar) -> str:
    if isinstance(x, float):
        return f"{x:.17g}"
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True, eq=False)
class Matrix:
    rows: int
    cols: int
    entries: tuple
    mode: Mode = Mode.EXACT

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise DomainError(f"negative dimensions {self.rows}x{self.cols}")
        if len(self.entries) != self.rows * self.cols:
            raise DomainError(
                f"{len(self.entries)} entries for a {self.rows}x{self.cols} matrix"
            )
        expected = float if self.mode is Mode.FLOAT else Fraction
        for x in self.entries:
            if type(x) is not expected:
                raise ModeMismatchError(f"entry {x!r} does not match mode {self.mode.value}")
            if expected is float and not math.isfinite(x):
                raise DomainError(f"non-finite entry {x!r}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], mode: Mode | None = None, cols: int | None = None) -> "Matrix":
        rows = [list(r) for r in rows]
        n = len(rows)
        k = len(rows[0]) if rows else (cols or 0)
        if cols is not None and rows and cols != k:
            raise DomainError(f"rows have {k} entries, expected {cols}")
        for r in rows:
            if len(r) != k:
                raise DomainError("ragged rows")
        flat = [x for r in rows for x in r]
        if mode is None:
            mode = infer_mode(flat)
        return cls(n, k, tuple(make_scalar(x, mode) for x in flat), mode)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], mode: Mode | None = None, rows: int | None = None) -> "Matrix":
        k = len(columns)
        n = len(columns[0]) if columns else (rows or 0)
        for c in columns:
            if len(c) != n:
                raise DomainError("columns must all have the same length")
        return cls.from_rows([[columns[j][i] for j in range(k)] for i in range(n)], mode, cols=k)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij: tuple[int, int]) -> Scalar:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> tuple:
        return self.entries[j::self.cols] if self.cols else ()

    def to_lists(self) -> list[list]:
        return [list(self.row(i)) for i in range(self.rows)]

    def to_float(self) -> "Matrix":
        return Matrix(self.rows, self.cols, tuple(float(x) for x in self.entries), Mode.FLOAT)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.shape, self.mode, self.entries) == (other.shape, other.mode, other.entries)

    def __hash__(self) -> int:
        return hash((self.shape, self.mode, self.entries))

    def __matmul__(self, other: "Matrix") -> "Matrix":
        return mat_mul(self, other)

    def __str__(self) -> str:
        return format_matrix(self)


class GramMatrix(Matrix):
    """A symmetric k x k matrix of column inner products, built by :func:`gram`."""


def infer_mode(values: Iterable) -> Mode:
    has_float = has_exact = False
    for x in values:
        if isinstance(x, float):
            has_float = True
        elif isinstance(x, (Rational, str)) and not isinstance(x, bool):
            has_exact = True
        else:
            raise DomainError(f"unsupported scalar {x!r}")
    if has_float and has_exact:
        # ints mixed with floats are fine; Fractions with floats are not
        for x in values:
            if isinstance(x, Fraction) and x.denominator != 1:
                raise ModeMismatchError("exact fractions mixed with floats")
        return Mode.FLOAT
    return Mode.FLOAT if has_float else Mode.EXACT


def _zero(mode: Mode) -> Scalar:
    return 0.0 if mode is Mode.FLOAT else Fraction(0)


def _one(mode: Mode) -> Scalar:
    return 1.0 if mode is Mode.FLOAT else Fraction(1)


def _same_mode(*ms: Matrix) -> Mode:
    mode = ms[0].mode
    for m in ms[1:]:
        if m.mode is not mode:
            raise ModeMismatchError(f"cannot combine {mode.value} and {m.mode.value} matrices")
    return mode


def identity(n: int, mode: Mode = Mode.EXACT) -> Matrix:
    z, o = _zero(mode), _one(mode)
    return Matrix(n, n, tuple(o if i == j else z for i in range(n) for j in range(n)), mode)


def diag(values: Sequence, mode: Mode | None = None) -> Matrix:
    n = len(values)
    return Matrix.from_rows([[values[i] if i == j else 0 for j in range(n)] for i in range(n)], mode)


def zeros(n: int, k: int, mode: Mode = Mode.EXACT) -> Matrix:
    return Matrix(n, k, (_zero(mode),) * (n * k), mode)


def transpose(a: Matrix) -> Matrix:
    entries = tuple(a.entries[i * a.cols + j] for j in range(a.cols) for i in range(a.rows))
    return Matrix(a.cols, a.rows, entries, a.mode)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    mode = _same_mode(a, b)
    if a.cols != b.rows:
        raise DomainError(f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    z = _zero(mode)
    bcols = [b.column(j) for j in range(b.cols)]
    out = []
    for i in range(a.rows):
        r = a.row(i)
        for c in bcols:
            s = z
            for x, y in zip(r, c):
                s += x * y
            out.append(s)
    return Matrix(a.rows, b.cols, tuple(out), mode)


def _cleared_rows(a: Matrix) -> tuple[list[list[int]], list[int]]:
    """Integer rows and per-row multipliers with row_i = ints_i / mult_i."""
    ints, mults = [], []
    for i in range(a.rows):
        r = a.row(i)
        d = math.lcm(*(x.denominator for x in r)) if r else 1
        ints.append([x.numerator * (d // x.denominator) for x in r])
        mults.append(d)
    return ints, mults


def determinant(a: Matrix) -> Scalar:
    """Bareiss in exact mode, partial-pivot elimination in float mode.

    The 0x0 determinant is 1.
    """
    if a.rows != a.cols:
        raise DomainError(f"determinant of non-square {a.rows}x{a.cols} matrix")
    if a.mode is Mode.FLOAT:
        return float(kernels.det_float(a.to_lists()))
    ints, mults = _cleared_rows(a)
    return Fraction(kernels.det_int(ints), math.prod(mults))


def det_cofactor(a: Matrix) -> Scalar:
    """Leibniz/cofactor expansion, O(n!).  Reference oracle for small n."""
    if a.rows != a.cols:
        raise DomainError("cofactor determinant needs a square matrix")
    n = a.rows
    if n == 0:
        return _one(a.mode)
    if n == 1:
        return a.entries[0]
    total = _zero(a.mode)
    for j in range(n):
        x = a[0, j]
        if x == 0:
            continue
        sub = Matrix(
            n - 1, n - 1,
            tuple(a[i, c] for i in range(1, n) for c in range(n) if c != j),
            a.mode,
        )
        term = x * det_cofactor(sub)
        total = total + term if j % 2 == 0 else total - term
    return total


def gram(a: Matrix) -> GramMatrix:
    """AᵗA, each off-diagonal entry computed once and mirrored."""
    k = a.cols
    cols = [a.column(j) for j in range(k)]
    z = _zero(a.mode)
    g = [[z] * k for _ in range(k)]
    for i in range(k):
        for j in range(i, k):
            s = z
            for x, y in zip(cols[i], cols[j]):
                s += x * y
            g[i][j] = g[j][i] = s
    return GramMatrix(k, k, tuple(x for r in g for x in r), a.mode)


def _as_indices(s: SubsetIndex | Sequence[int], bound: int, what: str) -> tuple[int, ...]:
    elems = tuple(s.elements) if isinstance(s, SubsetIndex) else tuple(s)
    for e in elems:
        if not 1 <= e <= bound:
            raise DomainError(f"{what} index {e} outside 1..{bound}")
    return tuple(e - 1 for e in elems)


def submatrix(a: Matrix, rows: SubsetIndex | Sequence[int], cols: SubsetIndex | Sequence[int]) -> Matrix:
    """Rows and columns (1-based) taken in the given order."""
    ri = _as_indices(rows, a.rows, "row")
    ci = _as_indices(cols, a.cols, "column")
    return Matrix(len(ri), len(ci), tuple(a[i, j] for i in ri for j in ci), a.mode)


def row_minor(a: Matrix, rows: SubsetIndex | Sequence[int]) -> Matrix:
    """A_I: the rows of ``a`` listed in ``rows``, all columns."""
    return submatrix(a, rows, range(1, a.cols + 1))


def minor_det(a: Matrix, rows: SubsetIndex | Sequence[int], cols: SubsetIndex | Sequence[int]) -> Scalar:
    if len(rows) != len(cols):
        raise DomainError(f"minor needs |I| = |J|, got {len(rows)} and {len(cols)}")
    return determinant(submatrix(a, rows, cols))


def minor_dets(a: Matrix, row_sets: Sequence[SubsetIndex], col_sets: Sequence[SubsetIndex]) -> list[list[Scalar]]:
    """det(A[I, J]) for every I in ``row_sets`` and J in ``col_sets``.

    All sets in a call must share one size.  Evaluation goes through the
    batched kernel; entry [p][q] corresponds to row_sets[p], col_sets[q].
    """
    sizes = {len(s) for s in itertools.chain(row_sets, col_sets)}
    if len(sizes) > 1:
        raise DomainError(f"minor subsets of mixed sizes {sorted(sizes)}")
    ri = [_as_indices(s, a.rows, "row") for s in row_sets]
    ci = [_as_indices(s, a.cols, "column") for s in col_sets]
    if a.mode is Mode.FLOAT:
        return [[float(x) for x in line] for line in kernels.minor_dets_float(a.to_lists(), ri, ci)]
    ints, mults = _cleared_rows(a)
    raw = kernels.minor_dets_int(ints, ri, ci)
    out = []
    for rsub, line in zip(ri, raw):
        den = math.prod(mults[i] for i in rsub)
        out.append([Fraction(x, den) for x in line])
    return out


def leading_principal_minors(a: Matrix) -> list[Scalar]:
    return [determinant(submatrix(a, range(1, m + 1), range(1, m + 1))) for m in range(1, a.rows + 1)]


# -- text format ------------------------------------------------------------

def parse_matrix(text: str, mode: Mode | None = None) -> Matrix:
    """One row per line, whitespace-separated entries; ``#`` starts a comment.

    With ``mode=None`` the matrix is exact when every token parses as an
    integer, ratio or terminating decimal, otherwise float.
    """
    tokens: list[list[tuple[str, int, int]]] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0]
        row = []
        col = 0
        for piece in body.split():
            col = body.index(piece, col)
            row.append((piece, lineno, col + 1))
            col += len(piece)
        if row:
            tokens.append(row)
    if tokens:
        width = len(tokens[0])
        for row in tokens:
            if len(row) != width:
                raise ParseError(f"expected {width} entries, found {len(row)}", row[0][1])

    def parse_all(m: Mode | None) -> list[list[Scalar]]:
        out = []
        for row in tokens:
            vals = []
            for tok, ln, cn in row:
                try:
                    vals.append(parse_scalar(tok, m))
                except ParseError as exc:
                    raise ParseError(str(exc), ln, cn) from None
            out.append(vals)
        return out

    if mode is None:
        values = parse_all(None)
        flat = [x for r in values for x in r]
        mode = Mode.FLOAT if any(isinstance(x, float) for x in flat) else Mode.EXACT
        if mode is Mode.FLOAT:
            values = parse_all(Mode.FLOAT)
    else:
        values = parse_all(mode)
    return Matrix.from_rows(values, mode)


def format_matrix(a: Matrix) -> str:
    lines = []
    for i in range(a.rows):
        lines.append(" ".join(format_scalar(x) for x in a.row(i)))
    return "\n".join(lines)


def exact_rank(a: Matrix) -> int:
    """Rank by fraction-free elimination.  Exact mode only."""
    if a.mode is not Mode.EXACT:
        raise ModeMismatchError("exact_rank needs an exact matrix")
    rows, _ = _cleared_rows(a)
    r = 0
    for c in range(a.cols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r]
        for i in range(r + 1, len(rows)):
            f = rows[i][c]
            if f:
                g = math.gcd(f, p[c])
                mf, mp = p[c] // g, f // g
                rows[i] = [x * mf - y * mp for x, y in zip(rows[i], p)]
        r += 1
    return r
