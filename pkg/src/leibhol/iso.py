"""Homomorphism checks, invariants and isomorphism search.

A linear map is stored as a matrix whose column ``j`` is the image of the
``j``-th source basis vector.  The search works over F_p only: it fixes
images of a well-chosen source basis one vector at a time and rejects a
partial assignment as soon as a bracket or an invariant subspace is
violated.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Sequence

import numpy as np

from . import _kernels
from .algebra import (
    DERIVED,
    LOWER_CENTRAL,
    Algebra,
    centers,
    identity_flags,
    leibniz_kernel,
    require_right_leibniz,
    series,
)
from .derivations import (
    antiderivation_space,
    biderivation_space,
    derivation_space,
    inner_derivations,
    lie_derivation_space,
)
from .linalg import DimensionError, Matrix, Subspace


class FieldNotFiniteError(ValueError):
    """Isomorphism search was requested over Q."""


class SearchLimitError(RuntimeError):
    """The search hit its node budget before deciding."""


# ---------------------------------------------------------------------------
# linear maps


@dataclass(frozen=True)
class LinearMapValue:
    matrix: Matrix

    @property
    def source_dim(self) -> int:
        return self.matrix.cols

    @property
    def target_dim(self) -> int:
        return self.matrix.rows

    @property
    def field(self):
        return self.matrix.field

    @classmethod
    def from_images(cls, fld, images: Sequence[Sequence], target_dim: int | None = None) -> "LinearMapValue":
        return cls(Matrix.from_columns(fld, images, target_dim))

    def __call__(self, v: Sequence) -> tuple:
        return self.matrix.apply(v)

    def image(self, j: int) -> tuple:
        return self.matrix.column(j)


@dataclass(frozen=True)
class HomCheck:
    is_hom: bool
    is_iso: bool
    failures: tuple = ()  # 1-based (i, j) where f[e_i,e_j] != [f e_i, f e_j]

    def __bool__(self):
        return self.is_iso


def _as_matrix(f) -> Matrix:
    return f.matrix if isinstance(f, LinearMapValue) else f


def verify_homomorphism(L: Algebra, M: Algebra, f) -> HomCheck:
    m = _as_matrix(f)
    if L.field != M.field or m.field != L.field:
        raise DimensionError("algebras and map must share a field")
    if (m.rows, m.cols) != (M.dim, L.dim):
        raise DimensionError(f"map must be {M.dim}x{L.dim}")
    imgs = [m.column(j) for j in range(L.dim)]
    bad = []
    for i in range(L.dim):
        for j in range(L.dim):
            if m.apply(L.sc[i][j]) != M.bracket(imgs[i], imgs[j]):
                bad.append((i + 1, j + 1))
    hom = not bad
    return HomCheck(hom, hom and L.dim == M.dim and m.is_invertible(), tuple(bad))


def change_of_basis(L: Algebra, P) -> Algebra:
    """The algebra ``R`` on the same space for which ``P: L -> R`` is an isomorphism."""
    P = _as_matrix(P)
    if (P.rows, P.cols) != (L.dim, L.dim):
        raise DimensionError("change of basis must be square")
    Pinv = P.inverse()  # ZeroDivisionError when singular
    cols = [Pinv.column(a) for a in range(L.dim)]
    sc = tuple(tuple(P.apply(L.bracket(cols[a], cols[b])) for b in range(L.dim)) for a in range(L.dim))
    R = Algebra(L.field, L.dim, sc)
    assert verify_homomorphism(L, R, P).is_iso
    return R


# ---------------------------------------------------------------------------
# invariants


@dataclass(frozen=True)
class Fingerprint:
    dim: int
    flags: tuple
    derived_series: tuple
    lower_central_series: tuple
    left_center: int
    right_center: int
    center: int
    lie_center: int
    leibniz_kernel: int
    der: int
    ader: int
    bider: int
    der_lie: int
    inn: int
    nilpotency_class: int | None
    solvability_class: int | None

    def as_dict(self) -> dict:
        out = dict(self.__dict__)
        out["flags"] = dict(zip(("right_leibniz", "left_leibniz", "symmetric", "antisymmetric", "lie"), self.flags))
        out["derived_series"] = list(self.derived_series)
        out["lower_central_series"] = list(self.lower_central_series)
        return out

    def differences(self, other: "Fingerprint") -> list:
        return [k for k in self.__dict__ if getattr(self, k) != getattr(other, k)]


def fingerprint(L: Algebra, spaces: bool = True) -> Fingerprint:
    """Isomorphism invariants.  ``spaces=False`` skips the derivation-type dimensions (reported as -1)."""
    require_right_leibniz(L, "fingerprints")
    fl = identity_flags(L)
    ds, lc = series(L, DERIVED), series(L, LOWER_CENTRAL)
    c = centers(L)
    if spaces:
        dims = (derivation_space(L).dim, antiderivation_space(L).dim, biderivation_space(L).dim,
                lie_derivation_space(L).dim, inner_derivations(L).dim)
    else:
        dims = (-1,) * 5
    return Fingerprint(
        L.dim,
        (fl.right_leibniz, fl.left_leibniz, fl.symmetric, fl.antisymmetric, fl.lie),
        ds.dims,
        lc.dims,
        c.left.dim,
        c.right.dim,
        c.center.dim,
        c.lie_center.dim,
        leibniz_kernel(L).dim,
        *dims,
        lc.klass,
        ds.klass,
    )


def characteristic_subspaces(L: Algebra) -> list:
    """Named subspaces that every isomorphism carries onto its counterpart."""
    require_right_leibniz(L, "characteristic subspaces")
    out = []
    for kind, tag in ((DERIVED, "derived"), (LOWER_CENTRAL, "lower_central")):
        for k, term in enumerate(series(L, kind).terms[1:], start=1):
            out.append((f"{tag}[{k}]", term))
    c = centers(L)
    out += [("left_center", c.left), ("right_center", c.right), ("center", c.center),
            ("lie_center", c.lie_center), ("leibniz_kernel", leibniz_kernel(L))]
    return out


# ---------------------------------------------------------------------------
# search


@dataclass(frozen=True)
class SearchOutcome:
    status: str  # "found", "none" or "unknown"
    witness: LinearMapValue | None = None
    nodes: int = 0
    reason: str = ""

    @property
    def found(self) -> bool:
        return self.status == "found"


@dataclass
class _Plan:
    vectors: list = dc_field(default_factory=list)  # source basis u_t (tuples)
    kind: list = dc_field(default_factory=list)  # 0 free, 1 derived
    ops: list = dc_field(default_factory=list)  # (a, b) for derived steps
    domains: list = dc_field(default_factory=list)  # Subspace of the target for free steps


def _plan(L: Algebra, chars_L: list, chars_M: list) -> _Plan:
    f, n = L.field, L.dim
    plan = _Plan()
    span = Subspace.zero(f, n)

    def add(v, kind, ops, dom):
        nonlocal span
        plan.vectors.append(v)
        plan.kind.append(kind)
        plan.ops.append(ops)
        plan.domains.append(dom)
        span = span + Subspace.span(f, n, [v])

    by_size = sorted(range(len(chars_L)), key=lambda q: (chars_L[q][1].dim, q))
    while span.dim < n:
        grew = True
        while grew and span.dim < n:
            grew = False
            for a in range(len(plan.vectors)):
                for b in range(len(plan.vectors)):
                    w = L.bracket(plan.vectors[a], plan.vectors[b])
                    if not span.contains(w):
                        add(w, 1, (a, b), None)
                        grew = True
                        break
                if grew:
                    break
        if span.dim == n:
            break
        pick = None
        for q in by_size:
            S = chars_L[q][1]
            if not S.leq(span):
                pick = next(v for v in S.basis if not span.contains(v))
                break
        if pick is None:
            pick = next(v for v in Subspace.full(f, n).basis if not span.contains(v))
        dom = Subspace.full(f, n)
        for (_, SL), (_, SM) in zip(chars_L, chars_M):
            if SL.contains(pick):
                dom = dom & SM
        add(pick, 0, (0, 0), dom)
    return plan


def _kernel_args(L: Algebra, M: Algebra, plan: _Plan, chars_L, chars_M, max_nodes: int):
    f, n, p = L.field, L.dim, L.field.p
    U = Matrix.from_columns(f, plan.vectors, n)
    Uinv = U.inverse()

    def coords(v):
        return [int(x) for x in Uinv.apply(v)]

    def ready(cf, *extra):
        nz = [c for c, w in enumerate(cf) if w]
        return max(nz + list(extra) + [0])

    kind = np.array(plan.kind, dtype=np.int64)
    opa = np.array([a for a, _ in plan.ops], dtype=np.int64)
    opb = np.array([b for _, b in plan.ops], dtype=np.int64)
    dom = np.zeros((n, n, n), dtype=np.int64)
    dom_dim = np.zeros(n, dtype=np.int64)
    for t, D in enumerate(plan.domains):
        if D is not None:
            dom_dim[t] = D.dim
            for b, row in enumerate(D.basis):
                dom[t, b] = [int(x) for x in row]

    derived_defs = {plan.ops[t]: t for t in range(n) if plan.kind[t] == 1}
    ca, cb, ccoef, cready = [], [], [], []
    for a in range(n):
        for b in range(n):
            t = derived_defs.get((a, b))
            cf = coords(L.bracket(plan.vectors[a], plan.vectors[b]))
            if t is not None and cf == [1 if c == t else 0 for c in range(n)]:
                continue
            ca.append(a)
            cb.append(b)
            ccoef.append(cf)
            cready.append(ready(cf, a, b))

    scoef, sann, srows, sready = [], [], [], []
    for (_, SL), (_, SM) in zip(chars_L, chars_M):
        ann = SM.annihilator().basis
        if not ann:
            continue
        for v in SL.basis:
            cf = coords(v)
            scoef.append(cf)
            sann.append([[int(x) for x in r] for r in ann])
            srows.append(len(ann))
            sready.append(ready(cf))
    rmax = max(srows, default=1)
    S = len(scoef)
    sub_ann = np.zeros((S, rmax, n), dtype=np.int64)
    for q, rows in enumerate(sann):
        sub_ann[q, : len(rows)] = rows

    def arr(x, shape):
        return np.array(x, dtype=np.int64).reshape(shape)

    K = len(ca)
    return (
        M.to_numpy(), p, kind, opa, opb, dom, dom_dim,
        arr(ca, (K,)), arr(cb, (K,)), arr(ccoef, (K, n)), arr(cready, (K,)),
        arr(scoef, (S, n)), sub_ann, arr(srows, (S,)), arr(sready, (S,)),
        max_nodes, np.zeros((n, n), dtype=np.int64),
    ), Uinv


def search_isomorphism(L: Algebra, M: Algebra, max_nodes: int | None = None,
                       precheck: bool = True) -> SearchOutcome:
    """Depth-first search for an isomorphism ``L -> M`` over F_p."""
    if L.field != M.field:
        raise DimensionError("algebras must share a field")
    if not L.field.is_finite:
        raise FieldNotFiniteError("isomorphism search needs a finite field; over Q only verification is available")
    if L.dim != M.dim:
        return SearchOutcome("none", reason="dimensions differ")
    if precheck:
        fa, fb = fingerprint(L), fingerprint(M)
        if fa != fb:
            return SearchOutcome("none", reason="fingerprints differ: " + ", ".join(fa.differences(fb)))
    n = L.dim
    if n == 0:
        return SearchOutcome("found", LinearMapValue(Matrix.zeros(L.field, 0, 0)))
    chars_L, chars_M = characteristic_subspaces(L), characteristic_subspaces(M)
    if [s.dim for _, s in chars_L] != [s.dim for _, s in chars_M]:
        return SearchOutcome("none", reason="characteristic subspaces differ")
    plan = _plan(L, chars_L, chars_M)
    args, Uinv = _kernel_args(L, M, plan, chars_L, chars_M, -1 if max_nodes is None else max_nodes)
    status, nodes = _kernels.iso_search(*args)
    if status == 2:
        return SearchOutcome("unknown", nodes=nodes, reason=f"node budget {max_nodes} exhausted")
    if status == 0:
        return SearchOutcome("none", nodes=nodes, reason="search space exhausted")
    img = Matrix.from_columns(L.field, [tuple(int(x) for x in row) for row in args[-1]], n)
    F = img @ Uinv
    check = verify_homomorphism(L, M, F)
    if not check.is_iso:
        raise AssertionError("search produced a map that is not an isomorphism")
    return SearchOutcome("found", LinearMapValue(F), nodes)


def find_isomorphism(L: Algebra, M: Algebra, max_nodes: int | None = None):
    """A verified isomorphism ``L -> M`` or None when none exists."""
    out = search_isomorphism(L, M, max_nodes)
    if out.status == "unknown":
        raise SearchLimitError(out.reason)
    return out.witness
