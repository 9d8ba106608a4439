"""Exact linear algebra over the rationals.

Scalars are ``gmpy2.mpq`` rationals.  Vectors are plain tuples of scalars and are always row
vectors; matrices act on them from the right (``x @ M``).  Subspaces are kept in
reduced row echelon form so that two equal subspaces are equal as Python
values.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from gmpy2 import mpq

from .errors import DimensionMismatch, ParseError, SingularMatrix

Scalar = type(mpq())
Vector = tuple  # tuple[Scalar, ...]

ZERO = mpq(0)
ONE = mpq(1)


def scalar(x) -> Scalar:
    """Coerce ints, Fractions, mpq values and ``"p/q"`` strings to a scalar."""
    if type(x) is Scalar:
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, (int, Fraction)) or type(x).__name__ == "mpz":
        return mpq(x)
    if isinstance(x, str):
        return parse_scalar(x)
    raise TypeError(f"cannot use {x!r} as an exact scalar")


def parse_scalar(text: str) -> Scalar:
    text = text.strip()
    num, sep, den = text.partition("/")
    try:
        if sep:
            if not den.strip().isdigit():
                raise ValueError(text)
            value = mpq(int(num), int(den))
        else:
            value = mpq(int(num))
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"not a rational number: {text!r}") from None
    return value


def format_scalar(x) -> str:
    x = scalar(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def vector(values: Iterable) -> Vector:
    return tuple(scalar(v) for v in values)


def zero_vector(n: int) -> Vector:
    return (ZERO,) * n


def unit_vector(n: int, i: int) -> Vector:
    return tuple(ONE if j == i else ZERO for j in range(n))


def is_zero(x: Sequence) -> bool:
    return not any(x)


def vadd(x: Vector, y: Vector) -> Vector:
    _check_len(x, len(y))
    return tuple(a + b for a, b in zip(x, y))


def vsub(x: Vector, y: Vector) -> Vector:
    _check_len(x, len(y))
    return tuple(a - b for a, b in zip(x, y))


def vscale(c, x: Vector) -> Vector:
    return tuple(c * a for a in x)


def dot(x: Sequence, y: Sequence) -> Scalar:
    _check_len(x, len(y))
    return sum((a * b for a, b in zip(x, y)), ZERO)


def _check_len(x, n):
    if len(x) != n:
        raise DimensionMismatch(f"expected a vector of length {n}, got {len(x)}")


@dataclass(frozen=True)
class Matrix:
    """Immutable dense matrix with explicit shape (so 0-row/0-column matrices
    keep their other dimension)."""

    rows: int
    cols: int
    entries: tuple  # tuple of row tuples

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise DimensionMismatch(f"entries do not form a {self.rows}x{self.cols} matrix")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable], cols: int | None = None) -> "Matrix":
        data = tuple(vector(r) for r in rows)
        if cols is None:
            if not data:
                raise DimensionMismatch("column count needed for an empty matrix")
            cols = len(data[0])
        for r in data:
            if len(r) != cols:
                raise DimensionMismatch(f"row of length {len(r)} in a matrix with {cols} columns")
        return cls(len(data), cols, data)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, tuple(unit_vector(n, i) for i in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols, tuple(zero_vector(cols) for _ in range(rows)))

    @classmethod
    def column(cls, values: Iterable) -> "Matrix":
        return cls.from_rows(((v,) for v in values), cols=1)

    @property
    def shape(self):
        return (self.rows, self.cols)

    @property
    def is_square(self):
        return self.rows == self.cols

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int) -> Vector:
        return self.entries[i]

    def col(self, j: int) -> Vector:
        return tuple(r[j] for r in self.entries)

    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows, tuple(zip(*self.entries)) if self.rows else
                      tuple(() for _ in range(self.cols)))

    T = property(transpose)

    def take_rows(self, n: int) -> "Matrix":
        return Matrix(n, self.cols, self.entries[:n])

    def take_cols(self, n: int) -> "Matrix":
        return Matrix(self.rows, n, tuple(r[:n] for r in self.entries))

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
            ocols = other.transpose().entries
            return Matrix(self.rows, other.cols,
                          tuple(tuple(sum((a * b for a, b in zip(r, c)), ZERO) for c in ocols)
                                for r in self.entries))
        return NotImplemented

    def apply_right(self, x: Sequence) -> Vector:
        """Column action ``M x`` for a vector given as a tuple."""
        _check_len(x, self.cols)
        return tuple(sum((a * b for a, b in zip(r, x)), ZERO) for r in self.entries)

    def __rmatmul__(self, x):
        # row vector times matrix
        if isinstance(x, tuple):
            return vecmat(x, self)
        return NotImplemented

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise DimensionMismatch(f"cannot add {self.shape} and {other.shape}")
        return Matrix(self.rows, self.cols, tuple(tuple(a + b for a, b in zip(r, s))
                                                  for r, s in zip(self.entries, other.entries)))

    def __neg__(self) -> "Matrix":
        return Matrix(self.rows, self.cols, tuple(tuple(-a for a in r) for r in self.entries))

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def scale(self, c) -> "Matrix":
        c = scalar(c)
        return Matrix(self.rows, self.cols, tuple(tuple(c * a for a in r) for r in self.entries))

    def __pow__(self, n: int) -> "Matrix":
        if not self.is_square or n < 0:
            raise ValueError("only non-negative powers of square matrices")
        out, base = Matrix.identity(self.rows), self
        while n:
            if n & 1:
                out = out @ base
            base = base @ base
            n >>= 1
        return out

    def tolist(self):
        return [list(r) for r in self.entries]

    def __repr__(self):
        body = "; ".join(" ".join(format_scalar(a) for a in r) for r in self.entries)
        return f"Matrix({self.rows}x{self.cols}: [{body}])"


def vecmat(x: Sequence, m: Matrix) -> Vector:
    """Row vector times matrix."""
    _check_len(x, m.rows)
    out = [ZERO] * m.cols
    for a, r in zip(x, m.entries):
        if a:
            for j, b in enumerate(r):
                if b:
                    out[j] += a * b
    return tuple(out)


def block_diag(*blocks: Matrix) -> Matrix:
    n = sum(b.rows for b in blocks)
    m = sum(b.cols for b in blocks)
    rows = []
    off = 0
    for b in blocks:
        for r in b.entries:
            rows.append(zero_vector(off) + r + zero_vector(m - off - b.cols))
        off += b.cols
    return Matrix(n, m, tuple(rows))


def rref(m: Matrix):
    """Reduced row echelon form.  Returns ``(R, rank, pivots)``."""
    rows, pivots = _rref_rows([list(r) for r in m.entries], m.cols)
    rank = len(pivots)
    full = [tuple(r) for r in rows] + [zero_vector(m.cols)] * (m.rows - rank)
    return Matrix(m.rows, m.cols, tuple(full)), rank, tuple(pivots)


def _rref_rows(rows: list, ncols: int):
    """Gauss-Jordan on a list of mutable rows; returns the nonzero RREF rows."""
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r][c]
        if piv != 1:
            rows[r] = [a / piv for a in rows[r]]
        prow = rows[r]
        for i in range(nrows):
            if i != r:
                f = rows[i][c]
                if f:
                    rows[i] = [a - f * b for a, b in zip(rows[i], prow)]
        pivots.append(c)
        r += 1
    return rows[:r], pivots


@dataclass(frozen=True)
class Subspace:
    """A vector subspace of ``Q^ambient_dim`` given by its RREF basis."""

    ambient_dim: int
    basis: tuple
    pivots: tuple

    @property
    def dim(self) -> int:
        return len(self.basis)

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n, (), ())

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, tuple(unit_vector(n, i) for i in range(n)), tuple(range(n)))

    def reduce(self, x: Sequence) -> Vector:
        """Residual of ``x`` after eliminating the pivot columns."""
        _check_len(x, self.ambient_dim)
        x = list(x)
        for b, p in zip(self.basis, self.pivots):
            f = x[p]
            if f:
                x = [a - f * c for a, c in zip(x, b)]
        return tuple(x)

    def __contains__(self, x) -> bool:
        return is_zero(self.reduce(x))

    def coordinates(self, x: Sequence) -> Vector:
        """Coefficients of ``x`` on the basis rows; ``x`` must lie in the subspace."""
        if x not in self:
            raise ValueError("vector is not in the subspace")
        return tuple(x[p] for p in self.pivots)

    def issubset(self, other: "Subspace") -> bool:
        if self.ambient_dim != other.ambient_dim:
            raise DimensionMismatch("subspaces live in different ambient spaces")
        return self.dim <= other.dim and all(b in other for b in self.basis)

    def __le__(self, other):
        return self.issubset(other)

    def join(self, other: "Subspace") -> "Subspace":
        return span(self.basis + other.basis, self.ambient_dim)

    def with_vectors(self, vectors: Iterable[Sequence]) -> "Subspace":
        return span(self.basis + tuple(vectors), self.ambient_dim)

    def image(self, m: Matrix) -> "Subspace":
        if m.rows != self.ambient_dim:
            raise DimensionMismatch("matrix rows must match the ambient dimension")
        return span((vecmat(b, m) for b in self.basis), m.cols)

    def basis_matrix(self) -> Matrix:
        return Matrix(self.dim, self.ambient_dim, self.basis)

    def __repr__(self):
        rows = ", ".join("(" + ",".join(format_scalar(a) for a in b) + ")" for b in self.basis)
        return f"Subspace(dim={self.dim}/{self.ambient_dim}: {rows})"


def span(vectors: Iterable[Sequence], ambient_dim: int) -> Subspace:
    rows = []
    for v in vectors:
        if len(v) != ambient_dim:
            raise DimensionMismatch(f"vector of length {len(v)} in ambient dimension {ambient_dim}")
        rows.append([scalar(a) for a in v])
    basis, pivots = _rref_rows(rows, ambient_dim)
    return Subspace(ambient_dim, tuple(tuple(r) for r in basis), tuple(pivots))


def member_of(x: Sequence, s: Subspace) -> bool:
    return x in s


def complete_basis(s: Subspace) -> Matrix:
    """Invertible matrix whose first ``dim(s)`` rows are the basis of ``s``;
    the remaining rows are unit vectors at the non-pivot columns, ascending."""
    n = s.ambient_dim
    piv = set(s.pivots)
    extra = tuple(unit_vector(n, j) for j in range(n) if j not in piv)
    return Matrix(n, n, s.basis + extra)


def image(m: Matrix) -> Subspace:
    """Row space of ``m``, i.e. ``{x m}`` for row vectors ``x``."""
    return span(m.entries, m.cols)


def kernel(m: Matrix) -> Subspace:
    """Left kernel ``{x : x m = 0}``."""
    mt = m.transpose()
    rows, pivots = _rref_rows([list(r) for r in mt.entries], mt.cols)
    n = m.rows
    free = [j for j in range(n) if j not in set(pivots)]
    vecs = []
    for f in free:
        x = [ZERO] * n
        x[f] = ONE
        for r, p in zip(rows, pivots):
            x[p] = -r[f]
        vecs.append(x)
    return span(vecs, n)


def invert(m: Matrix) -> Matrix:
    if not m.is_square:
        raise SingularMatrix(f"cannot invert a {m.rows}x{m.cols} matrix")
    n = m.rows
    aug = [list(r) + list(unit_vector(n, i)) for i, r in enumerate(m.entries)]
    rows, pivots = _rref_rows(aug, 2 * n)
    if len(pivots) < n or (n and pivots[n - 1] >= n):
        raise SingularMatrix("matrix is singular")
    return Matrix(n, n, tuple(tuple(r[n:]) for r in rows))


def rank(m: Matrix) -> int:
    return rref(m)[1]


def affine_span(points: Sequence[Sequence], ambient_dim: int):
    """Smallest affine subspace containing ``points`` as ``(p, V)``; ``None`` if empty."""
    points = list(points)
    if not points:
        return None
    p0 = vector(points[0])
    direction = span((vsub(vector(q), p0) for q in points[1:]), ambient_dim)
    return p0, direction
