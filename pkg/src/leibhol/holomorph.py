"""Semidirect products and holomorphs.

All constructions put the basis of ``L`` first and the canonical basis of
the acting space after it.  Generated labels mark the two halves as
``~e1`` (a copy of ``e1``) and ``^e12`` (an acting-space element).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .algebra import Algebra, NotLeibnizError, identity_flags, require_right_leibniz
from .derivations import (
    biderivation_space,
    derivation_space,
    lie_derivation_space,
    space_as_algebra,
)
from .linalg import DimensionError, Matrix, Subspace

LIE, CLASSICAL, MISRA, BIDER = "lie", "classical", "misra", "bider"


class NotLieError(ValueError):
    pass


@dataclass(frozen=True)
class ActionData:
    """Bilinear action of ``acting`` on ``acted``: one ``l_b`` and one ``r_b`` per acting basis vector."""

    acting: Algebra
    acted: Algebra
    l: tuple
    r: tuple

    def __post_init__(self):
        m, n = self.acting.dim, self.acted.dim
        if len(self.l) != m or len(self.r) != m:
            raise DimensionError(f"need {m} left and {m} right action matrices")
        for mat in self.l + self.r:
            if (mat.rows, mat.cols) != (n, n):
                raise DimensionError(f"action matrices must be {n}x{n}")


def semidirect_product(a: ActionData, labels=None) -> Algebra:
    """``[(x,b),(y,b')] = ([x,y] + l_b(y) + r_b'(x), [b,b'])`` on ``L ⊕ B``."""
    L, B = a.acted, a.acting
    if L.field != B.field:
        raise DimensionError("acting and acted algebras must share a field")
    f = L.field
    n, m = L.dim, B.dim
    N = n + m
    z = f.zero
    sc = [[[z] * N for _ in range(N)] for _ in range(N)]
    for i in range(n):
        for j in range(n):
            sc[i][j][:n] = L.sc[i][j]
    for s in range(m):
        for j in range(n):
            sc[n + s][j][:n] = a.l[s].column(j)
            sc[j][n + s][:n] = a.r[s].column(j)
        for t in range(m):
            sc[n + s][n + t][n:] = B.sc[s][t]
    return Algebra.from_tensor(f, sc, labels)


def _hol_labels(L: Algebra, B: Algebra) -> tuple:
    return tuple("~" + L.label(i) for i in range(L.dim)) + tuple("^" + B.label(s) for s in range(B.dim))


@dataclass(frozen=True)
class HolomorphResult:
    algebra: Algebra
    base: Algebra
    acting: Algebra
    space: object  # OperatorSpace or PairSpace supplying the acting basis
    kind: str

    @property
    def dim(self) -> int:
        return self.algebra.dim

    @property
    def n(self) -> int:
        return self.base.dim

    def element(self, x: Sequence = None, op=None) -> tuple:
        """Coordinates of ``(x, op)``; ``op`` is a matrix, a pair of matrices, or None."""
        f = self.base.field
        xs = tuple(f(v) for v in x) if x is not None else self.base.zero_vector()
        if op is None:
            coords = (f.zero,) * self.acting.dim
        else:
            coords = self.space.coordinates(*op) if isinstance(op, tuple) else self.space.coordinates(op)
            if coords is None:
                raise ValueError(f"operator is not in {self.space.role}")
        return xs + tuple(coords)

    def embedded_base(self) -> Subspace:
        """The copy of ``L`` spanned by the first ``n`` coordinates."""
        return Subspace.coordinate(self.base.field, self.dim, range(self.n))


def _operator_action(L, S, l_sign, r_sign):
    mats = S.matrices()
    return (tuple(m.scale(l_sign) for m in mats), tuple(m.scale(r_sign) for m in mats))


def lie_holomorph(L: Algebra) -> HolomorphResult:
    require_right_leibniz(L, "the Lie-holomorph")
    S = lie_derivation_space(L)
    B = space_as_algebra(S)
    l, r = _operator_action(L, S, 1, -1)
    alg = semidirect_product(ActionData(B, L, l, r), _hol_labels(L, B))
    return HolomorphResult(alg, L, B, S, LIE)


def classical_holomorph(L: Algebra) -> HolomorphResult:
    if not identity_flags(L).lie:
        raise NotLieError("the classical holomorph needs a Lie algebra")
    S = derivation_space(L)
    B = space_as_algebra(S)
    l, r = _operator_action(L, S, 1, -1)
    alg = semidirect_product(ActionData(B, L, l, r), _hol_labels(L, B))
    return HolomorphResult(alg, L, B, S, CLASSICAL)


def bider_semidirect(L: Algebra) -> HolomorphResult:
    """``L ⋊ Bider(L)`` with ``l_(d,D) = D`` and ``r_(d,D) = -d``; no identity is promised."""
    require_right_leibniz(L, "the biderivation semidirect product")
    S = biderivation_space(L)
    B = space_as_algebra(S)
    pairs = S.pairs()
    l = tuple(D for _, D in pairs)
    r = tuple(-d for d, _ in pairs)
    alg = semidirect_product(ActionData(B, L, l, r), _hol_labels(L, B))
    return HolomorphResult(alg, L, B, S, BIDER)


def misra_holomorph(L: Algebra) -> HolomorphResult:
    """``[(x,d),(y,d')] = ([x,y] + d(y), [Ad_x,d'] + [d,d'])`` on ``L × Der(L)``.

    Only defined for left Leibniz input; the result is usually not Leibniz.
    """
    if not identity_flags(L).left_leibniz:
        raise NotLeibnizError("the Misra holomorph needs a left Leibniz algebra")
    f = L.field
    S = derivation_space(L)
    B = space_as_algebra(S)
    ders = S.matrices()
    n, m = L.dim, B.dim
    N = n + m
    z = f.zero
    sc = [[[z] * N for _ in range(N)] for _ in range(N)]
    for i in range(n):
        Ad = L.left_mult(L.basis_vector(i))
        for j in range(n):
            sc[i][j][:n] = L.sc[i][j]
        for t, d in enumerate(ders):
            coords = S.coordinates(Ad @ d - d @ Ad)
            if coords is None:
                raise NotLeibnizError("left multiplication is not a derivation")
            sc[i][n + t][n:] = coords
    for s, d in enumerate(ders):
        for j in range(n):
            sc[n + s][j][:n] = d.column(j)
        for t in range(m):
            sc[n + s][n + t][n:] = B.sc[s][t]
    alg = Algebra.from_tensor(f, sc, _hol_labels(L, B))
    return HolomorphResult(alg, L, B, S, MISRA)


def build(L: Algebra, kind: str) -> HolomorphResult:
    try:
        return {LIE: lie_holomorph, CLASSICAL: classical_holomorph,
                MISRA: misra_holomorph, BIDER: bider_semidirect}[kind](L)
    except KeyError:
        raise ValueError(f"unknown holomorph kind {kind!r}") from None


def unit_operator(L: Algebra, i: int, j: int) -> Matrix:
    """``e_ij`` with 1-based indices: sends ``e_j`` to ``e_i``."""
    return Matrix.unit(L.field, L.dim, i - 1, j - 1)
