"""Exact sparse linear algebra: vectors, matrices, 3-index tensors, RREF,
kernels and quotient spaces.

Everything is stored sparsely (maps from index tuples to nonzero scalars) and
all arithmetic is exact in the container's :class:`~hopfalgebroids.fields.FieldSpec`.
Zero entries are never stored, so two containers are equal iff their entry
maps are equal.

Index flattening is row-major everywhere: a pair (i, j) over dimensions
(d0, d1) flattens to ``i * d1 + j``, and longer tuples fold left to right.
Every tensor-product basis in this package uses this one convention, which is
what lets structure-constant tensors of product algebras be compared entry
for entry.

Row reduction produces the *reduced* row echelon form, which is unique for a
given row space; the output is therefore bit-identical for equal inputs
independent of processing order (pivots end up leftmost-column, topmost-row).
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Iterable, Iterator

from .fields import FieldSpec, Scalar


class SingularMatrix(Exception):
    """Raised when inverting a non-invertible matrix."""


def flatten_index(indices: tuple[int, ...], dims: tuple[int, ...]) -> int:
    """Row-major flattening of a multi-index."""
    flat = 0
    for i, d in zip(indices, dims):
        flat = flat * d + i
    return flat


def unflatten_index(flat: int, dims: tuple[int, ...]) -> tuple[int, ...]:
    """Inverse of :func:`flatten_index`."""
    out = []
    for d in reversed(dims):
        flat, r = divmod(flat, d)
        out.append(r)
    return tuple(reversed(out))


def _clean(data: dict) -> dict:
    return {k: v for k, v in data.items() if v != 0}


class Vec:
    """Sparse vector of length n over a fixed field."""

    __slots__ = ("n", "data", "field")

    def __init__(self, n: int, data: dict[int, Scalar], field: FieldSpec):
        self.n = n
        self.data = _clean(data)
        self.field = field

    @staticmethod
    def zeros(n: int, field: FieldSpec) -> "Vec":
        return Vec(n, {}, field)

    @staticmethod
    def basis(n: int, i: int, field: FieldSpec) -> "Vec":
        if not 0 <= i < n:
            raise IndexError(f"basis index {i} out of range for dimension {n}")
        return Vec(n, {i: field.one}, field)

    @staticmethod
    def from_list(values, field: FieldSpec) -> "Vec":
        data = {i: field.of(v) for i, v in enumerate(values)}
        return Vec(len(values), data, field)

    def get(self, i: int) -> Scalar:
        return self.data.get(i, self.field.zero)

    def items(self) -> list[tuple[int, Scalar]]:
        return sorted(self.data.items())

    def is_zero(self) -> bool:
        return not self.data

    def to_list(self) -> list[Scalar]:
        z = self.field.zero
        return [self.data.get(i, z) for i in range(self.n)]

    def __add__(self, other: "Vec") -> "Vec":
        if self.n != other.n:
            raise ValueError("vector length mismatch")
        data = dict(self.data)
        for i, v in other.data.items():
            s = data.get(i)
            s = v if s is None else s + v
            if s == 0:
                data.pop(i, None)
            else:
                data[i] = s
        return Vec(self.n, data, self.field)

    def __sub__(self, other: "Vec") -> "Vec":
        return self + (-other)

    def __neg__(self) -> "Vec":
        return Vec(self.n, {i: -v for i, v in self.data.items()}, self.field)

    def scaled(self, c: Scalar) -> "Vec":
        if c == 0:
            return Vec.zeros(self.n, self.field)
        return Vec(self.n, {i: c * v for i, v in self.data.items()}, self.field)

    def kron(self, other: "Vec") -> "Vec":
        """Tensor product, flattened row-major."""
        data = {}
        for i, v in self.data.items():
            for j, w in other.data.items():
                data[i * other.n + j] = v * w
        return Vec(self.n * other.n, data, self.field)

    def __eq__(self, other):
        if not isinstance(other, Vec):
            return NotImplemented
        return self.n == other.n and self.data == other.data

    def __hash__(self):
        return hash((self.n, tuple(sorted(self.data))))

    def __repr__(self):
        entries = ", ".join(f"{i}: {v}" for i, v in self.items())
        return f"Vec({self.n}, {{{entries}}})"


class Matrix:
    """Sparse matrix, stored as a map row -> (col -> scalar)."""

    __slots__ = ("nrows", "ncols", "rows", "field")

    def __init__(self, nrows: int, ncols: int, rows: dict[int, dict[int, Scalar]],
                 field: FieldSpec):
        self.nrows = nrows
        self.ncols = ncols
        self.rows = {i: r for i, r in ((i, _clean(r)) for i, r in rows.items()) if r}
        self.field = field

    @staticmethod
    def zeros(nrows: int, ncols: int, field: FieldSpec) -> "Matrix":
        return Matrix(nrows, ncols, {}, field)

    @staticmethod
    def identity(n: int, field: FieldSpec) -> "Matrix":
        one = field.one
        return Matrix(n, n, {i: {i: one} for i in range(n)}, field)

    @staticmethod
    def from_entries(nrows: int, ncols: int, entries: dict[tuple[int, int], Scalar],
                     field: FieldSpec) -> "Matrix":
        rows: dict[int, dict[int, Scalar]] = {}
        for (i, j), v in entries.items():
            rows.setdefault(i, {})[j] = v
        return Matrix(nrows, ncols, rows, field)

    @staticmethod
    def from_rows(values, field: FieldSpec) -> "Matrix":
        """Build from a dense list of row lists (entries coerced into the field)."""
        nrows = len(values)
        ncols = len(values[0]) if nrows else 0
        rows: dict[int, dict[int, Scalar]] = {}
        for i, row in enumerate(values):
            if len(row) != ncols:
                raise ValueError("ragged rows")
            rows[i] = {j: field.of(v) for j, v in enumerate(row)}
        return Matrix(nrows, ncols, rows, field)

    @staticmethod
    def from_columns(cols: Iterable[Vec], field: FieldSpec, nrows: int) -> "Matrix":
        rows: dict[int, dict[int, Scalar]] = {}
        ncols = 0
        for j, col in enumerate(cols):
            ncols = j + 1
            if col.n != nrows:
                raise ValueError("column length mismatch")
            for i, v in col.data.items():
                rows.setdefault(i, {})[j] = v
        return Matrix(nrows, ncols, rows, field)

    def get(self, i: int, j: int) -> Scalar:
        return self.rows.get(i, {}).get(j, self.field.zero)

    def entries(self) -> Iterator[tuple[int, int, Scalar]]:
        for i in sorted(self.rows):
            row = self.rows[i]
            for j in sorted(row):
                yield i, j, row[j]

    def nnz(self) -> int:
        return sum(len(r) for r in self.rows.values())

    def column(self, j: int) -> Vec:
        data = {}
        for i, row in self.rows.items():
            v = row.get(j)
            if v is not None:
                data[i] = v
        return Vec(self.nrows, data, self.field)

    def row_vec(self, i: int) -> Vec:
        return Vec(self.ncols, dict(self.rows.get(i, {})), self.field)

    def apply(self, v: Vec) -> Vec:
        """Matrix-vector product (self @ v)."""
        if v.n != self.ncols:
            raise ValueError(f"dimension mismatch: {self.nrows}x{self.ncols} @ {v.n}")
        data: dict[int, Scalar] = {}
        for i, row in self.rows.items():
            acc = None
            for j, c in row.items():
                w = v.data.get(j)
                if w is not None:
                    acc = c * w if acc is None else acc + c * w
            if acc is not None and acc != 0:
                data[i] = acc
        return Vec(self.nrows, data, self.field)

    def __matmul__(self, other):
        if isinstance(other, Vec):
            return self.apply(other)
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.ncols != other.nrows:
            raise ValueError(
                f"dimension mismatch: {self.nrows}x{self.ncols} @ {other.nrows}x{other.ncols}"
            )
        rows: dict[int, dict[int, Scalar]] = {}
        for i, row in self.rows.items():
            acc: dict[int, Scalar] = {}
            for k, c in row.items():
                brow = other.rows.get(k)
                if not brow:
                    continue
                for j, w in brow.items():
                    s = acc.get(j)
                    s = c * w if s is None else s + c * w
                    if s == 0:
                        acc.pop(j, None)
                    else:
                        acc[j] = s
            if acc:
                rows[i] = acc
        return Matrix(self.nrows, other.ncols, rows, self.field)

    def __add__(self, other: "Matrix") -> "Matrix":
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("shape mismatch")
        rows = {i: dict(r) for i, r in self.rows.items()}
        for i, r in other.rows.items():
            tgt = rows.setdefault(i, {})
            for j, v in r.items():
                s = tgt.get(j)
                s = v if s is None else s + v
                if s == 0:
                    tgt.pop(j, None)
                else:
                    tgt[j] = s
        return Matrix(self.nrows, self.ncols, rows, self.field)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + other.scaled(-self.field.one)

    def scaled(self, c: Scalar) -> "Matrix":
        if c == 0:
            return Matrix.zeros(self.nrows, self.ncols, self.field)
        return Matrix(self.nrows, self.ncols,
                      {i: {j: c * v for j, v in r.items()} for i, r in self.rows.items()},
                      self.field)

    def transpose(self) -> "Matrix":
        rows: dict[int, dict[int, Scalar]] = {}
        for i, r in self.rows.items():
            for j, v in r.items():
                rows.setdefault(j, {})[i] = v
        return Matrix(self.ncols, self.nrows, rows, self.field)

    def kron(self, other: "Matrix") -> "Matrix":
        """Kronecker product with row-major index pairing: (i, k) -> i*other.nrows + k."""
        rows: dict[int, dict[int, Scalar]] = {}
        for i, r in self.rows.items():
            for k, s in other.rows.items():
                out = rows.setdefault(i * other.nrows + k, {})
                for j, v in r.items():
                    for l, w in s.items():
                        out[j * other.ncols + l] = v * w
        return Matrix(self.nrows * other.nrows, self.ncols * other.ncols, rows, self.field)

    def is_zero(self) -> bool:
        return not self.rows

    def to_dense(self) -> list[list[Scalar]]:
        z = self.field.zero
        return [[self.get(i, j) for j in range(self.ncols)] for i in range(self.nrows)]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.nrows, self.ncols) == (other.nrows, other.ncols) and self.rows == other.rows

    def __hash__(self):
        return hash((self.nrows, self.ncols, len(self.rows)))

    def __repr__(self):
        return f"Matrix({self.nrows}x{self.ncols}, nnz={self.nnz()})"


class Tensor3:
    """Sparse 3-index tensor of shape (d0, d1, d2).

    The canonical use is as structure constants: ``t[i][j][k]`` is the
    coefficient of basis element k in the product (or coproduct, or action)
    of basis elements i and j. Entries are grouped by the leading index pair,
    which is the access pattern of every bilinear expansion.
    """

    __slots__ = ("d0", "d1", "d2", "pairs", "field")

    def __init__(self, d0: int, d1: int, d2: int,
                 pairs: dict[tuple[int, int], dict[int, Scalar]], field: FieldSpec):
        self.d0 = d0
        self.d1 = d1
        self.d2 = d2
        self.pairs = {ij: r for ij, r in ((ij, _clean(r)) for ij, r in pairs.items()) if r}
        self.field = field

    @staticmethod
    def from_entries(d0: int, d1: int, d2: int,
                     entries: dict[tuple[int, int, int], Scalar],
                     field: FieldSpec) -> "Tensor3":
        pairs: dict[tuple[int, int], dict[int, Scalar]] = {}
        for (i, j, k), v in entries.items():
            pairs.setdefault((i, j), {})[k] = v
        return Tensor3(d0, d1, d2, pairs, field)

    @property
    def dims(self) -> tuple[int, int, int]:
        return (self.d0, self.d1, self.d2)

    def row(self, i: int, j: int) -> dict[int, Scalar]:
        return self.pairs.get((i, j), {})

    def get(self, i: int, j: int, k: int) -> Scalar:
        return self.pairs.get((i, j), {}).get(k, self.field.zero)

    def entries(self) -> Iterator[tuple[int, int, int, Scalar]]:
        for (i, j) in sorted(self.pairs):
            row = self.pairs[(i, j)]
            for k in sorted(row):
                yield i, j, k, row[k]

    def nnz(self) -> int:
        return sum(len(r) for r in self.pairs.values())

    def as_matrix_01_2(self) -> Matrix:
        """Flatten to a (d0*d1) x d2 matrix: rows indexed by the leading pair."""
        rows = {i * self.d1 + j: dict(r) for (i, j), r in self.pairs.items()}
        return Matrix(self.d0 * self.d1, self.d2, rows, self.field)

    def as_matrix_0_12(self) -> Matrix:
        """Flatten to a d0 x (d1*d2) matrix: columns indexed by the trailing pair."""
        rows: dict[int, dict[int, Scalar]] = {}
        for (i, j), r in self.pairs.items():
            tgt = rows.setdefault(i, {})
            for k, v in r.items():
                tgt[j * self.d2 + k] = v
        return Matrix(self.d0, self.d1 * self.d2, rows, self.field)

    def as_matrix_1_02(self) -> Matrix:
        """Flatten to a d1 x (d0*d2) matrix (middle index as row)."""
        rows: dict[int, dict[int, Scalar]] = {}
        for (i, j), r in self.pairs.items():
            tgt = rows.setdefault(j, {})
            for k, v in r.items():
                tgt[i * self.d2 + k] = v
        return Matrix(self.d1, self.d0 * self.d2, rows, self.field)

    def __eq__(self, other):
        if not isinstance(other, Tensor3):
            return NotImplemented
        return self.dims == other.dims and self.pairs == other.pairs

    def __hash__(self):
        return hash((self.dims, len(self.pairs)))

    def __repr__(self):
        return f"Tensor3({self.d0}x{self.d1}x{self.d2}, nnz={self.nnz()})"


# ---------------------------------------------------------------------------
# Row reduction

def _reduce_against(pivots: dict[int, dict[int, Scalar]], row: dict[int, Scalar]):
    """Reduce a row in place against current pivot rows; return (lead_col, row) or None."""
    while row:
        c = min(row)
        piv = pivots.get(c)
        if piv is None:
            return c, row
        coef = row[c]
        for j, v in piv.items():
            s = row.get(j)
            s = -coef * v if s is None else s - coef * v
            if s == 0:
                row.pop(j, None)
            else:
                row[j] = s
    return None


def rref_rows(rows: Iterable[dict[int, Scalar]], field: FieldSpec) -> dict[int, dict[int, Scalar]]:
    """Reduced row echelon form of a set of sparse rows.

    Returns a map pivot_column -> row, with each row normalized to a leading 1
    and fully reduced against every other pivot. The result depends only on
    the row space (RREF is unique), so it is deterministic.
    """
    pivots: dict[int, dict[int, Scalar]] = {}
    for r in rows:
        hit = _reduce_against(pivots, dict(r))
        if hit is None:
            continue
        c, row = hit
        lead = row[c]
        if lead != field.one:
            inv = field.one / lead
            row = {j: inv * v for j, v in row.items()}
        pivots[c] = row
    # Back-substitute in descending pivot order: by the time column c is
    # processed, pivots[c] holds entries only at c and free columns, so the
    # other pivot entries are never disturbed.
    for c in sorted(pivots, reverse=True):
        prow = pivots[c]
        for c2, row2 in pivots.items():
            if c2 == c:
                continue
            coef = row2.get(c)
            if coef is None:
                continue
            for j, v in prow.items():
                s = row2.get(j)
                s = -coef * v if s is None else s - coef * v
                if s == 0:
                    row2.pop(j, None)
                else:
                    row2[j] = s
    return pivots


def rref_matrix(m: Matrix) -> Matrix:
    """RREF of a matrix, rows ordered by pivot column."""
    pivots = rref_rows((m.rows[i] for i in sorted(m.rows)), m.field)
    rows = {r: dict(pivots[c]) for r, c in enumerate(sorted(pivots))}
    return Matrix(m.nrows, m.ncols, rows, m.field)


def rref_kernel(m: Matrix) -> tuple[int, list[Vec]]:
    """Rank and a canonical basis of the kernel {v : m @ v = 0}.

    Kernel vectors are indexed by the free columns in increasing order; each
    has a 1 at its free column and the negated pivot-row entries above it.
    """
    field = m.field
    pivots = rref_rows((m.rows[i] for i in sorted(m.rows)), field)
    rank = len(pivots)
    kernel: list[Vec] = []
    pivot_cols = set(pivots)
    for f in range(m.ncols):
        if f in pivot_cols:
            continue
        data = {f: field.one}
        for c, row in pivots.items():
            v = row.get(f)
            if v is not None:
                data[c] = -v
        kernel.append(Vec(m.ncols, data, field))
    return rank, kernel


def rank_of_rows(rows: Iterable[dict[int, Scalar]], field: FieldSpec) -> int:
    return len(rref_rows(rows, field))


def matrix_inverse(m: Matrix) -> Matrix:
    """Exact inverse; raises :class:`SingularMatrix` if none exists."""
    if m.nrows != m.ncols:
        raise SingularMatrix(f"not square: {m.nrows}x{m.ncols}")
    n = m.nrows
    field = m.field
    # Augmented rows [M | I]; full reduction leaves the inverse on the right.
    augmented = []
    for i in range(n):
        row = dict(m.rows.get(i, {}))
        row[n + i] = field.one
        augmented.append(row)
    pivots = rref_rows(augmented, field)
    if sorted(c for c in pivots if c < n) != list(range(n)):
        raise SingularMatrix("matrix is singular")
    rows: dict[int, dict[int, Scalar]] = {}
    for c, row in pivots.items():
        if c < n:
            rows[c] = {j - n: v for j, v in row.items() if j >= n}
    return Matrix(n, n, rows, field)


def tensor_of_maps(f: Matrix, g: Matrix) -> Matrix:
    """Kronecker product of two linear maps, row-major index pairing."""
    return f.kron(g)


# ---------------------------------------------------------------------------
# Quotient spaces

@dataclass(frozen=True)
class QuotientSpace:
    """A quotient of k^ambient_dim by the span of ``relations``.

    ``proj`` maps ambient coordinates onto quotient coordinates and kills
    exactly the span of the relations; ``section`` picks the free-column
    representative of each quotient basis vector, so proj @ section = id.
    """

    ambient_dim: int
    relations: tuple[Vec, ...]
    proj: Matrix
    section: Matrix

    @property
    def quot_dim(self) -> int:
        return self.proj.nrows

    def project(self, v: Vec) -> Vec:
        return self.proj.apply(v)

    def lift(self, q: Vec) -> Vec:
        return self.section.apply(q)

    def kills(self, v: Vec) -> bool:
        """True iff v lies in the span of the relations."""
        return self.proj.apply(v).is_zero()


def build_quotient(ambient_dim: int, relations: list[Vec], field: FieldSpec) -> QuotientSpace:
    """Quotient-space data for k^ambient / span(relations).

    Pivot columns of the relations' RREF are eliminated coordinates; the free
    columns index the quotient basis. For a pivot row r with pivot column c,
    e_c = -sum_f r[f] e_f modulo the relations, which is what ``proj`` encodes.
    """
    for r in relations:
        if r.n != ambient_dim:
            raise ValueError(f"relation of length {r.n} in ambient dimension {ambient_dim}")
    pivots = rref_rows((r.data for r in relations), field)
    pivot_cols = set(pivots)
    free_cols = [c for c in range(ambient_dim) if c not in pivot_cols]
    pos = {c: q for q, c in enumerate(free_cols)}
    proj_rows: dict[int, dict[int, Scalar]] = {q: {c: field.one} for c, q in pos.items()}
    for c, row in pivots.items():
        for f, v in row.items():
            if f != c:
                proj_rows.setdefault(pos[f], {})[c] = -v
    proj = Matrix(len(free_cols), ambient_dim, proj_rows, field)
    section_rows = {c: {q: field.one} for c, q in pos.items()}
    section = Matrix(ambient_dim, len(free_cols), section_rows, field)
    return QuotientSpace(ambient_dim, tuple(relations), proj, section)
