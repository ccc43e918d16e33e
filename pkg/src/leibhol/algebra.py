"""Finite-dimensional algebras given by structure constants.

``sc[i][j][k]`` is the coefficient of ``e_k`` in ``[e_i, e_j]`` (0-based
internally).  Construction never requires an identity to hold: the Misra
product of a Lie algebra, for instance, is a legitimate value even though
it is not Leibniz.  Operations that only make sense for right Leibniz
algebras raise :class:`NotLeibnizError` instead.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Mapping, Sequence

import numpy as np

from . import _kernels
from .fields import Field, FieldError
from .linalg import DimensionError, Matrix, Subspace, combine, nullspace_rows


class NotLeibnizError(ValueError):
    """An operation that needs the right Leibniz identity got an algebra without it."""


@dataclass(frozen=True)
class Algebra:
    field: Field
    dim: int
    sc: tuple
    labels: tuple | None = dc_field(default=None, compare=False)

    def __post_init__(self):
        n = self.dim
        if len(self.sc) != n or any(len(r) != n or any(len(v) != n for v in r) for r in self.sc):
            raise DimensionError(f"structure constants must have shape ({n}, {n}, {n})")
        if self.labels is not None and len(self.labels) != n:
            raise DimensionError("one label per basis vector")

    # constructors -----------------------------------------------------

    @classmethod
    def from_tensor(cls, field: Field, tensor, labels=None) -> "Algebra":
        t = tuple(tuple(tuple(field(x) for x in v) for v in row) for row in tensor)
        return cls(field, len(t), t, tuple(labels) if labels is not None else None)

    @classmethod
    def from_brackets(cls, field: Field, dim: int, brackets: Mapping, labels=None) -> "Algebra":
        """Build from ``{(i, j): {k: coeff}}`` with 1-based indices; unlisted brackets are zero."""
        z = field.zero
        t = [[[z] * dim for _ in range(dim)] for _ in range(dim)]
        for (i, j), value in brackets.items():
            for idx in (i, j):
                if not 1 <= idx <= dim:
                    raise DimensionError(f"basis index {idx} outside 1..{dim}")
            items = value.items() if isinstance(value, Mapping) else enumerate(value, start=1)
            for k, c in items:
                if not 1 <= k <= dim:
                    raise DimensionError(f"basis index {k} outside 1..{dim}")
                t[i - 1][j - 1][k - 1] = field.norm(t[i - 1][j - 1][k - 1] + field(c))
        return cls.from_tensor(field, t, labels)

    @classmethod
    def abelian(cls, field: Field, dim: int) -> "Algebra":
        return cls.from_brackets(field, dim, {})

    def to_numpy(self) -> np.ndarray:
        if not self.field.is_finite:
            raise FieldError("integer tensors are only available over F_p")
        return np.array(self.sc, dtype=np.int64).reshape(self.dim, self.dim, self.dim)

    def with_labels(self, labels) -> "Algebra":
        return Algebra(self.field, self.dim, self.sc, tuple(labels))

    def label(self, i: int) -> str:
        return self.labels[i] if self.labels else f"e{i + 1}"

    # evaluation -------------------------------------------------------

    def basis_vector(self, i: int) -> tuple:
        z, o = self.field.zero, self.field.one
        return tuple(o if k == i else z for k in range(self.dim))

    def zero_vector(self) -> tuple:
        return (self.field.zero,) * self.dim

    def bracket(self, x: Sequence, y: Sequence) -> tuple:
        n = self.dim
        if len(x) != n or len(y) != n:
            raise DimensionError(f"vectors must have length {n}")
        f = self.field
        out = [f.zero] * n
        for i, xi in enumerate(x):
            if not xi:
                continue
            row = self.sc[i]
            for j, yj in enumerate(y):
                if not yj:
                    continue
                w = xi * yj
                for k, c in enumerate(row[j]):
                    if c:
                        out[k] += w * c
        return tuple(f.norm(v) for v in out)

    def left_mult(self, x: Sequence) -> Matrix:
        """Matrix of ``Ad_x = [x, -]`` (columns are images of basis vectors)."""
        cols = [self.bracket(x, self.basis_vector(j)) for j in range(self.dim)]
        return Matrix.from_columns(self.field, cols, self.dim)

    def right_mult(self, x: Sequence) -> Matrix:
        """Matrix of ``ad_x = [-, x]``."""
        cols = [self.bracket(self.basis_vector(j), x) for j in range(self.dim)]
        return Matrix.from_columns(self.field, cols, self.dim)

    def nonzero_brackets(self):
        """Yield ``(i, j, vector)`` for nonzero basis products, 0-based."""
        for i in range(self.dim):
            for j in range(self.dim):
                v = self.sc[i][j]
                if any(v):
                    yield i, j, v

    def is_abelian(self) -> bool:
        return not any(True for _ in self.nonzero_brackets())

    def __repr__(self):
        return f"Algebra(dim={self.dim}, field={self.field}, brackets={len(list(self.nonzero_brackets()))})"


def bracket_eval(L: Algebra, x: Sequence, y: Sequence) -> tuple:
    return L.bracket(tuple(L.field(a) for a in x), tuple(L.field(b) for b in y))


# ---------------------------------------------------------------------------
# identities


@dataclass(frozen=True)
class IdentityFlags:
    right_leibniz: bool
    left_leibniz: bool
    symmetric: bool
    antisymmetric: bool
    lie: bool

    def as_dict(self) -> dict:
        return {
            "right_leibniz": self.right_leibniz,
            "left_leibniz": self.left_leibniz,
            "symmetric": self.symmetric,
            "antisymmetric": self.antisymmetric,
            "lie": self.lie,
        }


def _right_leibniz_holds(L: Algebra) -> bool:
    if L.field.is_finite:
        return not _kernels.right_leibniz_defect(L.to_numpy(), L.field.p)
    n, c = L.dim, L.sc
    # products[i][j] = [e_i, e_j]; checks [[e_i,e_j],e_k] = [[e_i,e_k],e_j] + [e_i,[e_j,e_k]]
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for m in range(n):
                    s = 0
                    for l in range(n):
                        s += c[i][j][l] * c[l][k][m] - c[i][k][l] * c[l][j][m] - c[j][k][l] * c[i][l][m]
                    if s:
                        return False
    return True


def opposite(L: Algebra) -> Algebra:
    """``[x, y]^op = [y, x]``."""
    n = L.dim
    sc = tuple(tuple(L.sc[j][i] for j in range(n)) for i in range(n))
    return Algebra(L.field, n, sc, L.labels)


def is_antisymmetric(L: Algebra) -> bool:
    f = L.field
    n = L.dim
    return all(f.norm(L.sc[i][j][k] + L.sc[j][i][k]) == 0
               for i in range(n) for j in range(n) for k in range(n))


def identity_flags(L: Algebra) -> IdentityFlags:
    right = _right_leibniz_holds(L)
    left = _right_leibniz_holds(opposite(L))
    anti = is_antisymmetric(L)
    return IdentityFlags(right, left, right and left, anti, right and anti)


def is_right_leibniz(L: Algebra) -> bool:
    return _right_leibniz_holds(L)


def require_right_leibniz(L: Algebra, what: str = "this operation"):
    if not _right_leibniz_holds(L):
        raise NotLeibnizError(f"{what} needs a right Leibniz algebra")


# ---------------------------------------------------------------------------
# subspaces attached to an algebra


def _full(L: Algebra) -> Subspace:
    return Subspace.full(L.field, L.dim)


def product_subspace(L: Algebra, A: Subspace, B: Subspace) -> Subspace:
    """``span{[a, b] : a in A, b in B}``."""
    vecs = [L.bracket(a, b) for a in A.basis for b in B.basis]
    return Subspace.span(L.field, L.dim, vecs)


def ideal_closure(L: Algebra, S: Subspace) -> Subspace:
    """Smallest two-sided ideal containing ``S``."""
    full = _full(L)
    cur = S
    while True:
        nxt = cur + product_subspace(L, cur, full) + product_subspace(L, full, cur)
        if nxt.dim == cur.dim:
            return cur
        cur = nxt


def is_ideal(L: Algebra, S: Subspace) -> bool:
    full = _full(L)
    return product_subspace(L, S, full).leq(S) and product_subspace(L, full, S).leq(S)


def is_subalgebra(L: Algebra, S: Subspace) -> bool:
    return product_subspace(L, S, S).leq(S)


def derived_subalgebra(L: Algebra) -> Subspace:
    full = _full(L)
    return product_subspace(L, full, full)


def leibniz_kernel(L: Algebra) -> Subspace:
    """Ideal generated by the squares; polarisation gives a finite generating set."""
    require_right_leibniz(L, "the Leibniz kernel")
    n = L.dim
    f = L.field
    gens = []
    for i in range(n):
        gens.append(L.sc[i][i])
        for j in range(i + 1, n):
            gens.append(tuple(f.norm(a + b) for a, b in zip(L.sc[i][j], L.sc[j][i])))
    return ideal_closure(L, Subspace.span(f, n, gens))


@dataclass(frozen=True)
class Centers:
    left: Subspace
    right: Subspace
    center: Subspace
    lie_center: Subspace


def _annihilating(L: Algebra, coeff) -> Subspace:
    # rows: for each (j, k) the linear form x -> sum_i x_i coeff(i, j, k)
    n = L.dim
    f = L.field
    rows = [[f.norm(coeff(i, j, k)) for i in range(n)] for j in range(n) for k in range(n)]
    return nullspace_rows(f, rows, n)


def left_center(L: Algebra) -> Subspace:
    return _annihilating(L, lambda i, j, k: L.sc[i][j][k])


def right_center(L: Algebra) -> Subspace:
    return _annihilating(L, lambda i, j, k: L.sc[j][i][k])


def lie_center(L: Algebra) -> Subspace:
    return _annihilating(L, lambda i, j, k: L.sc[i][j][k] + L.sc[j][i][k])


def centers(L: Algebra) -> Centers:
    left, right = left_center(L), right_center(L)
    return Centers(left, right, left & right, lie_center(L))


# ---------------------------------------------------------------------------
# series


@dataclass(frozen=True)
class SeriesReport:
    kind: str  # "lower_central" or "derived"
    terms: tuple  # Subspaces, starting with L itself, up to the first repeat
    dims: tuple
    terminates: bool  # nilpotent / solvable
    klass: int | None  # n such that term n-1 != 0 and term n == 0

    @property
    def nilpotent(self) -> bool:
        return self.kind == "lower_central" and self.terminates

    @property
    def solvable(self) -> bool:
        return self.kind == "derived" and self.terminates


LOWER_CENTRAL = "lower_central"
DERIVED = "derived"


def series(L: Algebra, kind: str = LOWER_CENTRAL) -> SeriesReport:
    require_right_leibniz(L, "the lower central and derived series")
    if kind not in (LOWER_CENTRAL, DERIVED):
        raise ValueError(f"unknown series kind {kind!r}")
    full = _full(L)
    terms = [full]
    while terms[-1].dim > 0:
        cur = terms[-1]
        nxt = product_subspace(L, cur, full if kind == LOWER_CENTRAL else cur)
        if nxt.dim == cur.dim:
            break
        terms.append(nxt)
    dims = tuple(t.dim for t in terms)
    ends = dims[-1] == 0
    klass = len(dims) - 1 if ends else None
    return SeriesReport(kind, tuple(terms), dims, ends, klass)


# ---------------------------------------------------------------------------
# quotients


def quotient(L: Algebra, S: Subspace) -> tuple[Algebra, Matrix]:
    """``L / S`` for an ideal ``S`` together with the projection matrix.

    The quotient basis is the images of the standard basis vectors at the
    non-pivot columns of ``S``.
    """
    if not is_ideal(L, S):
        raise ValueError("can only quotient by a two-sided ideal")
    f = L.field
    n = L.dim
    keep = [c for c in range(n) if c not in set(S.pivots)]

    def project(v):
        coeffs = [v[pc] for pc in S.pivots]
        r = combine(f, [f.neg(c) for c in coeffs], S.basis, n)
        w = tuple(f.norm(a + b) for a, b in zip(v, r))
        return tuple(w[c] for c in keep)

    m = len(keep)
    sc = tuple(tuple(project(L.sc[keep[a]][keep[b]]) for b in range(m)) for a in range(m))
    proj = Matrix.from_columns(f, [project(L.basis_vector(j)) for j in range(n)], m)
    return Algebra(f, m, sc), proj
