"""Dense exact linear algebra over Q(zeta_24).

Matrices are immutable row-major tuples of :class:`CycNum`.  Gaussian
elimination picks, among the admissible rows, the pivot with the smallest
coefficient footprint; on the mostly-rational matrices that arise here this
keeps intermediate growth negligible.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .field import ONE, ZERO, CycNum, Scalar, cyc


class SingularMatrixError(ArithmeticError):
    pass


class ShapeError(ValueError):
    pass


Vector = tuple  # tuple[CycNum, ...]


def vec(values: Iterable[Scalar]) -> Vector:
    return tuple(cyc(v) for v in values)


def is_zero_vector(v: Sequence[CycNum]) -> bool:
    return all(x.is_zero() for x in v)


class ExactMatrix:
    """Immutable dense matrix over Q(zeta_24)."""

    __slots__ = ("rows", "cols", "entries", "_hash")

    def __init__(self, rows: int, cols: int, entries: Iterable[Scalar]):
        entries = tuple(cyc(e) for e in entries)
        if len(entries) != rows * cols:
            raise ShapeError(f"expected {rows * cols} entries, got {len(entries)}")
        self.rows = rows
        self.cols = cols
        self.entries = entries
        self._hash = None

    # -- constructors ---------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Scalar]]) -> "ExactMatrix":
        rows = [list(r) for r in rows]
        if not rows:
            return cls(0, 0, ())
        ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise ShapeError("ragged rows")
        return cls(len(rows), ncols, (x for r in rows for x in r))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[Scalar]], nrows: int | None = None) -> "ExactMatrix":
        if not columns:
            return cls(nrows or 0, 0, ())
        return cls.from_rows(list(zip(*columns)))

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls(n, n, (ONE if i == j else ZERO for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "ExactMatrix":
        return cls(rows, cols, (ZERO,) * (rows * cols))

    @classmethod
    def diag(cls, values: Sequence[Scalar]) -> "ExactMatrix":
        n = len(values)
        vals = [cyc(v) for v in values]
        return cls(n, n, (vals[i] if i == j else ZERO for i in range(n) for j in range(n)))

    @classmethod
    def scalar(cls, n: int, s: Scalar) -> "ExactMatrix":
        return cls.diag([s] * n)

    # -- access ---------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij: tuple[int, int]) -> CycNum:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Vector:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def column(self, j: int) -> Vector:
        return self.entries[j :: self.cols]

    def to_rows(self) -> list[list[CycNum]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_zero(self) -> bool:
        return all(e.is_zero() for e in self.entries)

    def is_identity(self) -> bool:
        return self.is_square() and self == ExactMatrix.identity(self.rows)

    def is_scalar(self) -> bool:
        if not self.is_square():
            return False
        d = self[0, 0] if self.rows else ZERO
        return self == ExactMatrix.scalar(self.rows, d)

    def trace(self) -> CycNum:
        t = ZERO
        for i in range(min(self.rows, self.cols)):
            t = t + self[i, i]
        return t

    # -- arithmetic -----------------------------------------------------

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        _same_shape(self, other)
        return ExactMatrix(self.rows, self.cols, (a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        _same_shape(self, other)
        return ExactMatrix(self.rows, self.cols, (a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> "ExactMatrix":
        return ExactMatrix(self.rows, self.cols, (-a for a in self.entries))

    def scale(self, s: Scalar) -> "ExactMatrix":
        s = cyc(s)
        return ExactMatrix(self.rows, self.cols, (s * a for a in self.entries))

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        return matmul(self, other)

    def apply(self, v: Sequence[CycNum]) -> Vector:
        if len(v) != self.cols:
            raise ShapeError(f"vector of length {len(v)} for {self.shape} matrix")
        nz = [(j, x) for j, x in enumerate(v) if not x.is_zero()]
        out = []
        for i in range(self.rows):
            base = i * self.cols
            acc = ZERO
            for j, x in nz:
                a = self.entries[base + j]
                if not a.is_zero():
                    acc = acc + a * x
            out.append(acc)
        return tuple(out)

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(self.cols, self.rows, (self[i, j] for j in range(self.cols) for i in range(self.rows)))

    @property
    def T(self) -> "ExactMatrix":
        return self.transpose()

    def __pow__(self, e: int) -> "ExactMatrix":
        if not self.is_square():
            raise ShapeError("power of a non-square matrix")
        if e < 0:
            return inverse(self) ** (-e)
        result, base = ExactMatrix.identity(self.rows), self
        while e:
            if e & 1:
                result = result @ base
            base = base @ base
            e >>= 1
        return result

    def inverse(self) -> "ExactMatrix":
        return inverse(self)

    # -- comparison / serialization ---------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self.entries))
        return self._hash

    def key(self) -> str:
        """Canonical serialization used for exact deduplication."""
        return f"{self.rows}x{self.cols}:" + ";".join(e.key() for e in self.entries)

    def to_json(self) -> list[list[list[str]]]:
        return [[e.to_json() for e in self.row(i)] for i in range(self.rows)]

    def __repr__(self) -> str:
        body = "; ".join(", ".join(str(e) for e in self.row(i)) for i in range(self.rows))
        return f"ExactMatrix[{body}]"


def _same_shape(a: ExactMatrix, b: ExactMatrix) -> None:
    if a.shape != b.shape:
        raise ShapeError(f"shape mismatch {a.shape} vs {b.shape}")


def matmul(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    if a.cols != b.rows:
        raise ShapeError(f"cannot multiply {a.shape} by {b.shape}")
    n, m, p = a.rows, a.cols, b.cols
    be = b.entries
    # sparse rows of b, reused for every row of a
    b_rows = [[(j, be[k * p + j]) for j in range(p) if not be[k * p + j].is_zero()] for k in range(m)]
    out = []
    ae = a.entries
    for i in range(n):
        acc = [ZERO] * p
        for k in range(m):
            x = ae[i * m + k]
            if x.is_zero():
                continue
            for j, y in b_rows[k]:
                acc[j] = acc[j] + x * y
        out.extend(acc)
    return ExactMatrix(n, p, out)


def kron(*mats: ExactMatrix) -> ExactMatrix:
    """Kronecker product; the last factor varies fastest."""
    if not mats:
        return ExactMatrix.identity(1)
    result = mats[0]
    for b in mats[1:]:
        a = result
        rows, cols = a.rows * b.rows, a.cols * b.cols
        entries = [ZERO] * (rows * cols)
        for i in range(a.rows):
            for j in range(a.cols):
                x = a[i, j]
                if x.is_zero():
                    continue
                for k in range(b.rows):
                    for l in range(b.cols):
                        y = b[k, l]
                        if not y.is_zero():
                            entries[(i * b.rows + k) * cols + j * b.cols + l] = x * y
        result = ExactMatrix(rows, cols, entries)
    return result


def block_diag(*mats: ExactMatrix) -> ExactMatrix:
    rows = sum(m.rows for m in mats)
    cols = sum(m.cols for m in mats)
    entries = [ZERO] * (rows * cols)
    r0 = c0 = 0
    for m in mats:
        for i in range(m.rows):
            for j in range(m.cols):
                entries[(r0 + i) * cols + c0 + j] = m[i, j]
        r0 += m.rows
        c0 += m.cols
    return ExactMatrix(rows, cols, entries)


def vstack(mats: Sequence[ExactMatrix]) -> ExactMatrix:
    if not mats:
        raise ShapeError("nothing to stack")
    cols = mats[0].cols
    if any(m.cols != cols for m in mats):
        raise ShapeError("column counts differ")
    return ExactMatrix(sum(m.rows for m in mats), cols, (e for m in mats for e in m.entries))


def hstack(mats: Sequence[ExactMatrix]) -> ExactMatrix:
    return vstack([m.transpose() for m in mats]).transpose()


# -- elimination ----------------------------------------------------------


def _rref_rows(rows: list[list[CycNum]], ncols: int) -> tuple[list[list[CycNum]], list[int]]:
    """Reduced row echelon form of a list of rows; returns (nonzero rows, pivots)."""
    rows = [r for r in (list(r) for r in rows) if not is_zero_vector(r)]
    pivots: list[int] = []
    done = 0
    for col in range(ncols):
        if done == len(rows):
            break
        best, best_cost = -1, None
        for r in range(done, len(rows)):
            x = rows[r][col]
            if not x.is_zero():
                cost = x.complexity()
                if best_cost is None or cost < best_cost:
                    best, best_cost = r, cost
        if best < 0:
            continue
        rows[done], rows[best] = rows[best], rows[done]
        prow = rows[done]
        pinv = prow[col].inverse()
        if pinv != ONE:
            prow = [x * pinv if not x.is_zero() else x for x in prow]
            rows[done] = prow
        support = [(j, prow[j]) for j in range(col, ncols) if not prow[j].is_zero()]
        for r in range(len(rows)):
            if r == done:
                continue
            f = rows[r][col]
            if f.is_zero():
                continue
            row = rows[r]
            for j, y in support:
                row[j] = row[j] - f * y
        pivots.append(col)
        done += 1
    return rows[:done], pivots


def rref(m: ExactMatrix) -> tuple[ExactMatrix, list[int]]:
    rows, pivots = _rref_rows(m.to_rows(), m.cols)
    return ExactMatrix(len(rows), m.cols, (x for r in rows for x in r)), pivots


def rank(m: ExactMatrix) -> int:
    # eliminate along the shorter dimension
    if m.rows > m.cols:
        return len(_rref_rows(m.transpose().to_rows(), m.rows)[1])
    return len(_rref_rows(m.to_rows(), m.cols)[1])


def kernel(m: ExactMatrix) -> "Subspace":
    """Basis of {v : m v = 0} as a canonical :class:`Subspace`."""
    rows, pivots = _rref_rows(m.to_rows(), m.cols)
    free = [j for j in range(m.cols) if j not in set(pivots)]
    basis = []
    for f in free:
        v = [ZERO] * m.cols
        v[f] = ONE
        for r, p in zip(rows, pivots):
            if not r[f].is_zero():
                v[p] = -r[f]
        basis.append(tuple(v))
    return Subspace(m.cols, basis)


def stacked_kernel(mats: Sequence[ExactMatrix]) -> "Subspace":
    """Common kernel of several matrices with the same number of columns."""
    if not mats:
        raise ShapeError("nothing to stack")
    cols = mats[0].cols
    rows: list[list[CycNum]] = []
    for m in mats:
        if m.cols != cols:
            raise ShapeError("column counts differ")
        rows.extend(r for r in m.to_rows() if not is_zero_vector(r))
    rows, _ = _rref_rows(rows, cols)
    return kernel(ExactMatrix(len(rows), cols, (x for r in rows for x in r))) if rows else Subspace.full(cols)


def det(m: ExactMatrix) -> CycNum:
    if not m.is_square():
        raise ShapeError("determinant of a non-square matrix")
    n = m.rows
    if n == 0:
        return ONE
    if n == 1:
        return m[0, 0]
    if n == 2:
        return m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    if n == 3:
        return (
            m[0, 0] * (m[1, 1] * m[2, 2] - m[1, 2] * m[2, 1])
            - m[0, 1] * (m[1, 0] * m[2, 2] - m[1, 2] * m[2, 0])
            + m[0, 2] * (m[1, 0] * m[2, 1] - m[1, 1] * m[2, 0])
        )
    rows = m.to_rows()
    d = ONE
    for col in range(n):
        piv = next((r for r in range(col, n) if not rows[r][col].is_zero()), None)
        if piv is None:
            return ZERO
        if piv != col:
            rows[col], rows[piv] = rows[piv], rows[col]
            d = -d
        p = rows[col][col]
        d = d * p
        pinv = p.inverse()
        for r in range(col + 1, n):
            f = rows[r][col]
            if f.is_zero():
                continue
            f = f * pinv
            rows[r] = [a - f * b for a, b in zip(rows[r], rows[col])]
    return d


def inverse(m: ExactMatrix) -> ExactMatrix:
    if not m.is_square():
        raise ShapeError("inverse of a non-square matrix")
    n = m.rows
    if n == 2:
        d = det(m)
        if d.is_zero():
            raise SingularMatrixError("matrix is singular")
        di = d.inverse()
        return ExactMatrix(2, 2, (m[1, 1] * di, -m[0, 1] * di, -m[1, 0] * di, m[0, 0] * di))
    aug = [list(m.row(i)) + [ONE if i == j else ZERO for j in range(n)] for i in range(n)]
    rows, pivots = _rref_rows(aug, 2 * n)
    if len(pivots) < n or pivots[n - 1] != n - 1:
        raise SingularMatrixError("matrix is singular")
    return ExactMatrix(n, n, (x for r in rows for x in r[n:]))


def eigenspace(m: ExactMatrix, mu: Scalar) -> "Subspace":
    return kernel(m - ExactMatrix.scalar(m.rows, mu))


def solve(m: ExactMatrix, b: Sequence[CycNum]) -> tuple[Vector | None, "Subspace"]:
    """One particular solution of m x = b (or None) plus the homogeneous kernel."""
    if len(b) != m.rows:
        raise ShapeError("right-hand side length mismatch")
    aug = [list(m.row(i)) + [cyc(b[i])] for i in range(m.rows)]
    rows, pivots = _rref_rows(aug, m.cols + 1)
    hom = kernel(m)
    if pivots and pivots[-1] == m.cols:
        return None, hom
    x = [ZERO] * m.cols
    for r, p in zip(rows, pivots):
        x[p] = r[m.cols]
    return tuple(x), hom


class Subspace:
    """Linear subspace of K^n stored by its reduced row echelon basis."""

    __slots__ = ("ambient_dim", "basis", "pivots")

    def __init__(self, ambient_dim: int, vectors: Iterable[Sequence[Scalar]] = ()):
        vectors = [list(vec(v)) for v in vectors]
        for v in vectors:
            if len(v) != ambient_dim:
                raise ShapeError(f"vector of length {len(v)} in K^{ambient_dim}")
        rows, pivots = _rref_rows(vectors, ambient_dim)
        self.ambient_dim = ambient_dim
        self.basis: tuple[Vector, ...] = tuple(tuple(r) for r in rows)
        self.pivots: tuple[int, ...] = tuple(pivots)

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, ExactMatrix.identity(n).to_rows())

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n, ())

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self) -> int:
        return self.dim

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self.basis))

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"

    def coordinates(self, v: Sequence[CycNum]) -> Vector | None:
        """Coordinates of v in the echelon basis, or None if v is not in the span."""
        coords = tuple(v[p] for p in self.pivots)
        recon = [ZERO] * self.ambient_dim
        for c, b in zip(coords, self.basis):
            if c.is_zero():
                continue
            for j, x in enumerate(b):
                if not x.is_zero():
                    recon[j] = recon[j] + c * x
        return coords if tuple(recon) == tuple(v) else None

    def __contains__(self, v: Sequence[CycNum]) -> bool:
        return self.coordinates(vec(v)) is not None

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(b in self for b in other.basis)

    def sum(self, other: "Subspace") -> "Subspace":
        return Subspace(self.ambient_dim, list(self.basis) + list(other.basis))

    def intersection(self, other: "Subspace") -> "Subspace":
        n = self.ambient_dim
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(n)
        # solve sum a_i s_i - sum b_j t_j = 0
        cols = list(self.basis) + [tuple(-x for x in t) for t in other.basis]
        k = kernel(ExactMatrix.from_columns(cols))
        out = []
        for w in k.basis:
            v = [ZERO] * n
            for a, s in zip(w[: self.dim], self.basis):
                if not a.is_zero():
                    v = [x + a * y for x, y in zip(v, s)]
            out.append(v)
        return Subspace(n, out)

    def is_invariant(self, m: ExactMatrix) -> bool:
        return all(m.apply(b) in self for b in self.basis)

    def restrict(self, m: ExactMatrix) -> ExactMatrix:
        """Matrix of m restricted to this (m-invariant) subspace, in the echelon basis."""
        cols = []
        for b in self.basis:
            c = self.coordinates(m.apply(b))
            if c is None:
                raise ValueError("subspace is not invariant under the matrix")
            cols.append(c)
        return ExactMatrix.from_columns(cols) if cols else ExactMatrix.zeros(0, 0)

    def as_matrix(self) -> ExactMatrix:
        """Basis vectors as columns."""
        return ExactMatrix.from_columns(self.basis) if self.basis else ExactMatrix.zeros(self.ambient_dim, 0)

    def to_json(self) -> dict:
        return {"ambient_dim": self.ambient_dim, "dim": self.dim, "basis": [[x.to_json() for x in b] for b in self.basis]}
