"""Derivations, anti-derivations, biderivations and Lie-derivations.

Operators are n x n matrices acting on coordinate columns: column ``j``
holds the image of ``e_j`` and ``d @ d2`` applies ``d2`` first.  Spaces of
operators live in F^(n*n) through row-major vectorisation; pairs
``(d, D)`` are vectorised as ``d`` followed by ``D``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .algebra import Algebra, lie_center, require_right_leibniz
from .linalg import Matrix, Subspace, nullspace_rows


class NotClosedError(ValueError):
    """A space of operators is not closed under the bracket it was given."""


class InternalConsistencyError(AssertionError):
    """Two independent computations of the same object disagree."""


DER, ADER, DER_LIE, INN = "Der", "ADer", "DerLie", "Inn"
BIDER, INNER_BIDER = "Bider", "InnerBider"


@dataclass(frozen=True)
class OperatorSpace:
    n: int
    role: str
    space: Subspace  # ambient n*n

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def field(self):
        return self.space.field

    def matrices(self) -> list:
        return [Matrix.from_flat(self.field, self.n, self.n, v) for v in self.space.basis]

    def contains(self, d: Matrix) -> bool:
        return self.space.contains(d.flat())

    def __le__(self, other: "OperatorSpace") -> bool:
        return self.space.leq(other.space)

    def coordinates(self, d: Matrix):
        return self.space.coordinates(d.flat())


@dataclass(frozen=True)
class PairSpace:
    n: int
    role: str
    space: Subspace  # ambient 2*n*n

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def field(self):
        return self.space.field

    def pairs(self) -> list:
        nn = self.n * self.n
        f = self.field
        return [(Matrix.from_flat(f, self.n, self.n, v[:nn]), Matrix.from_flat(f, self.n, self.n, v[nn:]))
                for v in self.space.basis]

    def contains(self, d: Matrix, D: Matrix) -> bool:
        return self.space.contains(d.flat() + D.flat())

    def coordinates(self, d: Matrix, D: Matrix):
        return self.space.coordinates(d.flat() + D.flat())


# ---------------------------------------------------------------------------
# linear systems


def _derivation_rows(L: Algebra, offset: int, width: int, anti: bool) -> list:
    """Equations for d (or D) stored at columns offset .. offset + n*n."""
    n, c, f = L.dim, L.sc, L.field
    rows = []
    for i in range(n):
        for j in range(n):
            for k in range(n):
                row = [0] * width
                for l in range(n):
                    if c[i][j][l]:
                        row[offset + k * n + l] += c[i][j][l]
                for a in range(n):
                    if c[a][j][k]:
                        row[offset + a * n + i] -= c[a][j][k]
                    if anti:
                        if c[a][i][k]:
                            row[offset + a * n + j] += c[a][i][k]
                    elif c[i][a][k]:
                        row[offset + a * n + j] -= c[i][a][k]
                if any(row):
                    rows.append([f(x) for x in row])
    return rows


def _compat_rows(L: Algebra) -> list:
    # [e_i, d e_j] = [e_i, D e_j]
    n, c, f = L.dim, L.sc, L.field
    nn = n * n
    rows = []
    for i in range(n):
        for j in range(n):
            for k in range(n):
                row = [0] * (2 * nn)
                for a in range(n):
                    if c[i][a][k]:
                        row[a * n + j] += c[i][a][k]
                        row[nn + a * n + j] -= c[i][a][k]
                if any(row):
                    rows.append([f(x) for x in row])
    return rows


def derivation_space(L: Algebra) -> OperatorSpace:
    nn = L.dim ** 2
    return OperatorSpace(L.dim, DER, nullspace_rows(L.field, _derivation_rows(L, 0, nn, False), nn))


def antiderivation_space(L: Algebra) -> OperatorSpace:
    nn = L.dim ** 2
    return OperatorSpace(L.dim, ADER, nullspace_rows(L.field, _derivation_rows(L, 0, nn, True), nn))


def biderivation_space(L: Algebra) -> PairSpace:
    nn = L.dim ** 2
    rows = _derivation_rows(L, 0, 2 * nn, False) + _derivation_rows(L, nn, 2 * nn, True) + _compat_rows(L)
    return PairSpace(L.dim, BIDER, nullspace_rows(L.field, rows, 2 * nn))


def lie_derivation_space(L: Algebra) -> OperatorSpace:
    """Derivations with image in the Lie-center, cross-checked against Der ∩ ADer."""
    require_right_leibniz(L, "Lie-derivations")
    n, f = L.dim, L.field
    nn = n * n
    zl = lie_center(L)
    rows = _derivation_rows(L, 0, nn, False)
    for a in zl.annihilator().basis:
        for j in range(n):
            row = [f.zero] * nn
            for k in range(n):
                row[k * n + j] = a[k]
            rows.append(row)
    by_image = nullspace_rows(f, rows, nn)
    by_meet = derivation_space(L).space & antiderivation_space(L).space
    if by_image != by_meet:
        raise InternalConsistencyError(
            f"Lie-derivations disagree: image test gives dim {by_image.dim}, Der ∩ ADer gives dim {by_meet.dim}")
    return OperatorSpace(n, DER_LIE, by_image)


def inner_derivations(L: Algebra) -> OperatorSpace:
    """Span of the right multiplications ``ad_x = [-, x]``."""
    require_right_leibniz(L, "inner derivations")
    mats = [L.right_mult(L.basis_vector(i)).flat() for i in range(L.dim)]
    return OperatorSpace(L.dim, INN, Subspace.span(L.field, L.dim ** 2, mats))


def inner_biderivation(L: Algebra, x: Sequence) -> tuple:
    """The pair ``(-ad_x, Ad_x)``."""
    return (-L.right_mult(x), L.left_mult(x))


def inner_biderivations(L: Algebra) -> PairSpace:
    require_right_leibniz(L, "inner biderivations")
    vecs = []
    for i in range(L.dim):
        d, D = inner_biderivation(L, L.basis_vector(i))
        vecs.append(d.flat() + D.flat())
    return PairSpace(L.dim, INNER_BIDER, Subspace.span(L.field, 2 * L.dim ** 2, vecs))


# ---------------------------------------------------------------------------
# brackets on operators


def operator_bracket(d1: Matrix, d2: Matrix) -> Matrix:
    return d1 @ d2 - d2 @ d1


def pair_bracket(p1: tuple, p2: tuple) -> tuple:
    """``[(d, D), (d', D')] = (d d' - d' d, D d' - d' D)``."""
    d, D = p1
    d2, D2 = p2
    return (d @ d2 - d2 @ d, D @ d2 - d2 @ D)


def der_action_on_ader(d: Matrix, D: Matrix) -> Matrix:
    """``d . D = D d - d D``."""
    return D @ d - d @ D


# ---------------------------------------------------------------------------
# direct membership tests (evaluate the identities, no linear solve)


def _pairs(L):
    for i in range(L.dim):
        for j in range(L.dim):
            yield L.basis_vector(i), L.basis_vector(j), L.sc[i][j]


def is_derivation(L: Algebra, d: Matrix) -> bool:
    return all(d.apply(xy) == _add(L, L.bracket(d.apply(x), y), L.bracket(x, d.apply(y)))
               for x, y, xy in _pairs(L))


def is_antiderivation(L: Algebra, D: Matrix) -> bool:
    return all(D.apply(xy) == _add(L, L.bracket(D.apply(x), y), L.bracket(D.apply(y), x), -1)
               for x, y, xy in _pairs(L))


def is_biderivation(L: Algebra, d: Matrix, D: Matrix) -> bool:
    if not (is_derivation(L, d) and is_antiderivation(L, D)):
        return False
    return all(L.bracket(x, d.apply(y)) == L.bracket(x, D.apply(y)) for x, y, _ in _pairs(L))


def _add(L, u, v, sign=1):
    f = L.field
    return tuple(f.norm(a + sign * b) for a, b in zip(u, v))


# ---------------------------------------------------------------------------
# a space of operators as an algebra in its canonical basis


def _matrix_label(m: Matrix, prefix: str = "") -> str | None:
    hits = [(i, j) for i in range(m.rows) for j in range(m.cols) if m[i, j] != 0]
    if len(hits) == 1 and m[hits[0]] == 1 and m.rows < 10:
        i, j = hits[0]
        return f"{prefix}e{i + 1}{j + 1}"
    return None


def space_as_algebra(S) -> Algebra:
    """Structure constants of the bracket of ``S`` in its canonical basis."""
    f = S.field
    if isinstance(S, PairSpace):
        elems = S.pairs()
        prod = pair_bracket
        vec = lambda p: p[0].flat() + p[1].flat()  # noqa: E731
        labels = [f"b{i + 1}" for i in range(len(elems))]
    else:
        elems = S.matrices()
        prod = operator_bracket
        vec = Matrix.flat
        labels = [_matrix_label(m) or f"d{i + 1}" for i, m in enumerate(elems)]
    m = len(elems)
    sc = []
    for a in range(m):
        row = []
        for b in range(m):
            coords = S.space.coordinates(vec(prod(elems[a], elems[b])))
            if coords is None:
                raise NotClosedError(f"{S.role} is not closed under its bracket")
            row.append(coords)
        sc.append(row)
    if len(set(labels)) != len(labels):
        labels = [f"d{i + 1}" for i in range(m)]
    return Algebra.from_tensor(f, sc, labels)
