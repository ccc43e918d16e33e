"""Dense exact linear algebra over Q and F_p.

Matrices are immutable tuples of rows.  Over Q the elimination runs on
Python fractions; over F_p it is handed to the compiled kernels in
:mod:`leibhol._kernels`.  Every subspace is stored by its reduced row
echelon basis, so two equal subspaces compare equal structurally.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from .fields import Field, FieldError, RawScalar


class DimensionError(ValueError):
    """Shapes or ambient dimensions that do not fit together."""


def _check_field(a: Field, b: Field):
    if a != b:
        raise FieldError(f"field mismatch: {a} vs {b}")


@dataclass(frozen=True)
class Matrix:
    field: Field
    rows: int
    cols: int
    entries: tuple  # tuple of row tuples

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise DimensionError("entry count does not match shape")

    @classmethod
    def from_rows(cls, field: Field, rows: Iterable[Sequence], cols: int | None = None) -> "Matrix":
        data = tuple(tuple(field(x) for x in r) for r in rows)
        if cols is None:
            cols = len(data[0]) if data else 0
        return cls(field, len(data), cols, data)

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> "Matrix":
        z = field.zero
        return cls(field, rows, cols, tuple((z,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        z, o = field.zero, field.one
        return cls(field, n, n, tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)))

    @classmethod
    def from_columns(cls, field: Field, columns: Sequence[Sequence], rows: int | None = None) -> "Matrix":
        cols = [tuple(field(x) for x in c) for c in columns]
        if rows is None:
            rows = len(cols[0]) if cols else 0
        return cls(field, rows, len(cols), tuple(tuple(c[i] for c in cols) for i in range(rows)))

    @classmethod
    def unit(cls, field: Field, n: int, i: int, j: int) -> "Matrix":
        """Elementary n x n matrix with a one at (i, j), 0-based."""
        z, o = field.zero, field.one
        return cls(field, n, n, tuple(tuple(o if (a, b) == (i, j) else z for b in range(n)) for a in range(n)))

    # access -----------------------------------------------------------

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int) -> tuple:
        return self.entries[i]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.entries)

    def flat(self) -> tuple:
        """Row-major vectorisation."""
        return tuple(x for r in self.entries for x in r)

    @classmethod
    def from_flat(cls, field: Field, n: int, m: int, values: Sequence) -> "Matrix":
        return cls(field, n, m, tuple(tuple(values[i * m: (i + 1) * m]) for i in range(n)))

    @property
    def T(self) -> "Matrix":
        return Matrix(self.field, self.cols, self.rows,
                      tuple(tuple(r[j] for r in self.entries) for j in range(self.cols)))

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.entries for x in r)

    # arithmetic ------------------------------------------------------

    def __add__(self, other: "Matrix") -> "Matrix":
        _check_field(self.field, other.field)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionError("shape mismatch in addition")
        nf = self.field.norm
        return Matrix(self.field, self.rows, self.cols,
                      tuple(tuple(nf(a + b) for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)))

    def __neg__(self) -> "Matrix":
        return self.scale(-1)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def scale(self, c) -> "Matrix":
        c = self.field(c)
        nf = self.field.norm
        return Matrix(self.field, self.rows, self.cols, tuple(tuple(nf(c * x) for x in r) for r in self.entries))

    def __matmul__(self, other: "Matrix") -> "Matrix":
        _check_field(self.field, other.field)
        if self.cols != other.rows:
            raise DimensionError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        nf = self.field.norm
        zero = self.field.zero
        ocols = other.T.entries
        out = []
        for r in self.entries:
            row = []
            for c in ocols:
                s = zero
                for a, b in zip(r, c):
                    if a and b:
                        s += a * b
                row.append(nf(s))
            out.append(tuple(row))
        return Matrix(self.field, self.rows, other.cols, tuple(out))

    def apply(self, v: Sequence) -> tuple:
        """Matrix times a coordinate column."""
        if len(v) != self.cols:
            raise DimensionError("vector length does not match matrix")
        nf = self.field.norm
        zero = self.field.zero
        out = []
        for r in self.entries:
            s = zero
            for a, b in zip(r, v):
                if a and b:
                    s += a * b
            out.append(nf(s))
        return tuple(out)

    def commutator(self, other: "Matrix") -> "Matrix":
        return self @ other - other @ self

    def rank(self) -> int:
        return rref(self)[1]

    def inverse(self) -> "Matrix":
        if self.rows != self.cols:
            raise DimensionError("only square matrices are invertible")
        n = self.rows
        aug = Matrix(self.field, n, 2 * n, tuple(r + e for r, e in zip(self.entries, Matrix.identity(self.field, n).entries)))
        red, rank, piv = rref(aug)
        if rank < n or list(piv[:n]) != list(range(n)):
            raise ZeroDivisionError("matrix is singular")
        return Matrix(self.field, n, n, tuple(r[n:] for r in red.entries))

    def is_invertible(self) -> bool:
        return self.rows == self.cols and self.rank() == self.rows

    def to_strings(self) -> list:
        return [[str(x) for x in r] for r in self.entries]


# ---------------------------------------------------------------------------
# row reduction


def _rref_rational(field: Field, rows: Sequence[Sequence], ncols: int):
    """Incremental Gauss-Jordan on sparse dict rows; returns (rows, pivots)."""
    basis = []  # list of (pivot, dict row), each reduced against earlier pivots
    for r in rows:
        v = {j: x for j, x in enumerate(r) if x != 0}
        if not v:
            continue
        for pc, prow in basis:
            f = v.get(pc)
            if f is None:
                continue
            for j, x in prow.items():
                y = v.get(j, 0) - f * x
                if y:
                    v[j] = y
                else:
                    v.pop(j, None)
            if not v:
                break
        if not v:
            continue
        lead = min(v)
        inv = 1 / Fraction(v[lead])
        basis.append((lead, {j: x * inv for j, x in v.items()}))
    basis.sort(key=lambda t: t[0])
    # back substitution, bottom-up
    for idx in range(len(basis) - 1, -1, -1):
        pc, prow = basis[idx]
        for up in range(idx):
            _, urow = basis[up]
            f = urow.get(pc)
            if f is None:
                continue
            for j, x in prow.items():
                y = urow.get(j, 0) - f * x
                if y:
                    urow[j] = y
                else:
                    urow.pop(j, None)
    zero = field.zero
    out = []
    for _, prow in basis:
        dense = [zero] * ncols
        for j, x in prow.items():
            dense[j] = x
        out.append(tuple(dense))
    return out, [pc for pc, _ in basis]


def _rref_modp(field: Field, rows: Sequence[Sequence], ncols: int):
    if not rows:
        return [], []
    arr = np.array(rows, dtype=np.int64).reshape(len(rows), ncols)
    red, rank, piv = _kernels.rref_modp(arr, field.p)
    return [tuple(int(x) for x in red[i]) for i in range(rank)], [int(c) for c in piv]


def rref_rows(field: Field, rows: Sequence[Sequence], ncols: int):
    """Nonzero rows of the RREF of ``rows`` and their pivot columns."""
    if field.kind == "Q":
        return _rref_rational(field, rows, ncols)
    return _rref_modp(field, rows, ncols)


def rref(m: Matrix):
    """Reduced row echelon form: ``(matrix, rank, pivot_columns)``; zero rows kept at the bottom."""
    rows, piv = rref_rows(m.field, m.entries, m.cols)
    zero_row = (m.field.zero,) * m.cols
    full = tuple(rows) + (zero_row,) * (m.rows - len(rows))
    return Matrix(m.field, m.rows, m.cols, full), len(rows), tuple(piv)


def _kernel_basis(field: Field, red_rows, piv, ncols: int) -> list:
    free = [c for c in range(ncols) if c not in set(piv)]
    zero, one = field.zero, field.one
    out = []
    for f in free:
        v = [zero] * ncols
        v[f] = one
        for r, pc in zip(red_rows, piv):
            if r[f] != 0:
                v[pc] = field.neg(r[f])
        out.append(v)
    return out


def nullspace_rows(field: Field, rows: Sequence[Sequence], ncols: int) -> "Subspace":
    red, piv = rref_rows(field, rows, ncols)
    return Subspace.span(field, ncols, _kernel_basis(field, red, piv, ncols))


def nullspace(m: Matrix) -> "Subspace":
    """``{v : m v = 0}`` with its canonical basis."""
    return nullspace_rows(m.field, m.entries, m.cols)


def solve(m: Matrix, rhs: Sequence):
    """A solution of ``m v = rhs`` with every free variable zero, or ``None``."""
    if len(rhs) != m.rows:
        raise DimensionError("right-hand side length does not match")
    f = m.field
    b = [f(x) for x in rhs]
    aug = [r + (x,) for r, x in zip(m.entries, b)]
    red, piv = rref_rows(f, aug, m.cols + 1)
    if piv and piv[-1] == m.cols:
        return None
    v = [f.zero] * m.cols
    for r, pc in zip(red, piv):
        v[pc] = r[m.cols]
    return tuple(v)


# ---------------------------------------------------------------------------
# subspaces


@dataclass(frozen=True)
class Subspace:
    """Coordinate subspace of F^n stored by its RREF basis."""

    field: Field
    ambient_dim: int
    basis: tuple  # RREF rows, no zero rows
    pivots: tuple

    @classmethod
    def span(cls, field: Field, n: int, vectors: Iterable[Sequence]) -> "Subspace":
        vecs = [tuple(field(x) for x in v) for v in vectors]
        for v in vecs:
            if len(v) != n:
                raise DimensionError(f"vector of length {len(v)} in ambient dimension {n}")
        rows, piv = rref_rows(field, vecs, n)
        return cls(field, n, tuple(rows), tuple(piv))

    @classmethod
    def zero(cls, field: Field, n: int) -> "Subspace":
        return cls(field, n, (), ())

    @classmethod
    def full(cls, field: Field, n: int) -> "Subspace":
        return cls.span(field, n, Matrix.identity(field, n).entries)

    @classmethod
    def coordinate(cls, field: Field, n: int, indices: Iterable[int]) -> "Subspace":
        """Span of the standard basis vectors with the given 0-based indices."""
        idx = set(indices)
        z, o = field.zero, field.one
        return cls.span(field, n, [[o if k == i else z for k in range(n)] for i in sorted(idx)])

    @property
    def dim(self) -> int:
        return len(self.basis)

    def _compatible(self, other: "Subspace"):
        _check_field(self.field, other.field)
        if self.ambient_dim != other.ambient_dim:
            raise DimensionError("ambient dimension mismatch")

    def coordinates(self, v: Sequence):
        """Coefficients of ``v`` in the canonical basis, or ``None`` if ``v`` is outside."""
        v = tuple(self.field(x) for x in v)
        if len(v) != self.ambient_dim:
            raise DimensionError("vector length does not match ambient dimension")
        coeffs = tuple(v[pc] for pc in self.pivots)
        nf = self.field.norm
        zero = self.field.zero
        for j in range(self.ambient_dim):
            s = zero
            for c, row in zip(coeffs, self.basis):
                if c and row[j]:
                    s += c * row[j]
            if nf(s) != v[j]:
                return None
        return coeffs

    def contains(self, v: Sequence) -> bool:
        return self.coordinates(v) is not None

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def leq(self, other: "Subspace") -> bool:
        self._compatible(other)
        return all(other.contains(b) for b in self.basis)

    __le__ = leq

    def __add__(self, other: "Subspace") -> "Subspace":
        self._compatible(other)
        return Subspace.span(self.field, self.ambient_dim, self.basis + other.basis)

    def __and__(self, other: "Subspace") -> "Subspace":
        self._compatible(other)
        f = self.field
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(f, self.ambient_dim)
        # (lam, mu) with lam.A - mu.B = 0; the intersection is spanned by lam.A
        cols = [tuple(a[j] for a in self.basis) + tuple(f.neg(b[j]) for b in other.basis)
                for j in range(self.ambient_dim)]
        ker = nullspace_rows(f, cols, self.dim + other.dim)
        vecs = []
        for coef in ker.basis:
            lam = coef[: self.dim]
            vecs.append(combine(f, lam, self.basis, self.ambient_dim))
        return Subspace.span(f, self.ambient_dim, vecs)

    def annihilator(self) -> "Subspace":
        """``{a : a . x = 0 for all x in self}``."""
        if self.dim == 0:
            return Subspace.full(self.field, self.ambient_dim)
        return nullspace_rows(self.field, self.basis, self.ambient_dim)

    def as_matrix(self) -> Matrix:
        return Matrix(self.field, self.dim, self.ambient_dim, self.basis)

    def one_based(self) -> list:
        """Basis rows rendered as strings, for reports."""
        return [[str(x) for x in r] for r in self.basis]


def combine(field: Field, coeffs: Sequence, vectors: Sequence[Sequence], n: int) -> tuple:
    """``sum_i coeffs[i] * vectors[i]`` as a coordinate tuple."""
    zero = field.zero
    out = [zero] * n
    for c, v in zip(coeffs, vectors):
        if not c:
            continue
        for j, x in enumerate(v):
            if x:
                out[j] += c * x
    nf = field.norm
    return tuple(nf(x) for x in out)


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    return a + b


def subspace_intersect(a: Subspace, b: Subspace) -> Subspace:
    return a & b


def subspace_contains(a: Subspace, v: Sequence) -> bool:
    return a.contains(v)


def subspace_leq(a: Subspace, b: Subspace) -> bool:
    return a.leq(b)


__all__ = [
    "DimensionError", "Matrix", "Subspace", "rref", "rref_rows", "nullspace", "nullspace_rows",
    "solve", "combine", "subspace_sum", "subspace_intersect", "subspace_contains", "subspace_leq",
    "RawScalar",
]
