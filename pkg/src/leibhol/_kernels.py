"""Hot loops over F_p: row reduction, identity defects, isomorphism search.

Every kernel exists twice.  The ``*_loops`` variants are written in the
numba subset and are compiled with ``@njit`` unless the environment
variable ``LEIBHOL_DISABLE_NUMBA`` is set to a non-empty value other than
``0``; the ``*_numpy`` variants are vectorised numpy.  Both return
identical results (enforced by tests), so the switch only affects speed.

All arrays are ``int64``; entries stay in ``[0, p)`` and ``p < 2**31``, so
products fit without overflow.
"""

from __future__ import annotations

import os

import numpy as np

try:
    from numba import njit
except ImportError:  # pragma: no cover - numba is a declared dependency
    njit = None

NUMBA_DISABLED = os.environ.get("LEIBHOL_DISABLE_NUMBA", "") not in ("", "0")
USE_NUMBA = njit is not None and not NUMBA_DISABLED


def _jit(fn):
    if njit is None:
        return fn
    return njit(cache=True)(fn)


# ---------------------------------------------------------------------------
# scalar helpers


def _modinv_py(a, p):
    # extended Euclid; numba has no three-argument pow
    t, new_t = 0, 1
    r, new_r = p, a % p
    while new_r != 0:
        q = r // new_r
        t, new_t = new_t, t - q * new_t
        r, new_r = new_r, r - q * new_r
    if t < 0:
        t += p
    return t


_modinv_jit = _jit(_modinv_py)


# ---------------------------------------------------------------------------
# reduced row echelon form mod p


def _make_rref_loops(modinv):
    def rref_loops(a, p):
        m = a.copy()
        rows, cols = m.shape
        for i in range(rows):
            for j in range(cols):
                m[i, j] = m[i, j] % p
        piv = np.empty(min(rows, cols), dtype=np.int64)
        r = 0
        for c in range(cols):
            if r == rows:
                break
            k = r
            while k < rows and m[k, c] == 0:
                k += 1
            if k == rows:
                continue
            if k != r:
                for j in range(cols):
                    tmp = m[r, j]
                    m[r, j] = m[k, j]
                    m[k, j] = tmp
            inv = modinv(m[r, c], p)
            for j in range(c, cols):
                m[r, j] = m[r, j] * inv % p
            for i in range(rows):
                if i != r and m[i, c] != 0:
                    f = m[i, c]
                    for j in range(c, cols):
                        m[i, j] = (m[i, j] - f * m[r, j]) % p
            piv[r] = c
            r += 1
        return m, r, piv[:r].copy()

    return rref_loops


rref_modp_python = _make_rref_loops(_modinv_py)
rref_modp_numba = _jit(_make_rref_loops(_modinv_jit)) if njit is not None else None


def rref_modp_numpy(a, p):
    m = np.asarray(a, dtype=np.int64) % p
    rows, cols = m.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            m[[r, k]] = m[[k, r]]
        m[r] = m[r] * _modinv_py(int(m[r, c]), p) % p
        col = m[:, c].copy()
        col[r] = 0
        hit = np.nonzero(col)[0]
        if hit.size:
            m[hit] = (m[hit] - np.outer(col[hit], m[r])) % p
        pivots.append(c)
        r += 1
    return m, r, np.array(pivots, dtype=np.int64)


def rref_modp(a, p):
    """RREF of an integer matrix over F_p: ``(reduced, rank, pivot_columns)``."""
    a = np.ascontiguousarray(a, dtype=np.int64)
    if a.shape[0] == 0 or a.shape[1] == 0:
        return a.copy(), 0, np.zeros(0, dtype=np.int64)
    if USE_NUMBA:
        return rref_modp_numba(a, np.int64(p))
    return rref_modp_numpy(a, p)


# ---------------------------------------------------------------------------
# right Leibniz identity defect:  [[x,y],z] - [[x,z],y] - [x,[y,z]]


def _right_leibniz_defect_loops(c, p):
    n = c.shape[0]
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for m in range(n):
                    s = 0
                    for l in range(n):
                        s += c[i, j, l] * c[l, k, m]
                        s -= c[i, k, l] * c[l, j, m]
                        s -= c[j, k, l] * c[i, l, m]
                    if s % p != 0:
                        return True
    return False


right_leibniz_defect_numba = _jit(_right_leibniz_defect_loops) if njit is not None else None


def right_leibniz_defect_numpy(c, p):
    c = np.asarray(c, dtype=np.int64)
    t = np.einsum("ijl,lkm->ijkm", c, c)
    t -= np.einsum("ikl,ljm->ijkm", c, c)
    t -= np.einsum("jkl,ilm->ijkm", c, c)
    return bool(np.any(t % p))


def right_leibniz_defect(c, p):
    """True if the tensor violates the right Leibniz identity mod p."""
    c = np.ascontiguousarray(c, dtype=np.int64)
    if USE_NUMBA:
        return bool(right_leibniz_defect_numba(c, np.int64(p)))
    return right_leibniz_defect_numpy(c, p)


def _filter_leibniz_loops(batch, p):
    out = np.zeros(batch.shape[0], dtype=np.bool_)
    for b in range(batch.shape[0]):
        out[b] = not _right_leibniz_defect_inner(batch[b], p)
    return out


if njit is not None:
    _right_leibniz_defect_inner = right_leibniz_defect_numba
    filter_leibniz_numba = _jit(_filter_leibniz_loops)
else:  # pragma: no cover
    _right_leibniz_defect_inner = _right_leibniz_defect_loops
    filter_leibniz_numba = None


def filter_leibniz_numpy(batch, p):
    batch = np.asarray(batch, dtype=np.int64)
    t = np.einsum("bijl,blkm->bijkm", batch, batch)
    t -= np.einsum("bikl,bljm->bijkm", batch, batch)
    t -= np.einsum("bjkl,bilm->bijkm", batch, batch)
    return ~np.any((t % p).reshape(batch.shape[0], -1), axis=1)


def filter_leibniz(batch, p):
    """Boolean mask of the right Leibniz tensors in a ``(B, n, n, n)`` batch."""
    batch = np.ascontiguousarray(batch, dtype=np.int64)
    if USE_NUMBA:
        return filter_leibniz_numba(batch, np.int64(p))
    return filter_leibniz_numpy(batch, p)


# ---------------------------------------------------------------------------
# isomorphism search
#
# The search assigns images to an ordered basis u_0..u_{n-1} of the source
# algebra.  kind[t] == 0 means u_t is chosen freely from the span of the
# rows dom[t, :dom_dim[t]]; kind[t] == 1 means u_t = [u_opa, u_opb] and its
# image is forced.  A bracket check (a, b, coef) asserts
# [f u_a, f u_b] == sum_c coef[c] f u_c and fires at depth chk_ready.
# A subspace check (coef, ann) asserts ann @ (sum_c coef[c] f u_c) == 0.



def _make_search(jit, modinv):
    def bracket_into(cm, x, y, p, out):
        n = x.shape[0]
        for k in range(n):
            out[k] = 0
        for i in range(n):
            if x[i] == 0:
                continue
            for j in range(n):
                if y[j] == 0:
                    continue
                xy = x[i] * y[j] % p
                for k in range(n):
                    if cm[i, j, k] != 0:
                        out[k] = (out[k] + xy * cm[i, j, k]) % p

    bracket_into = jit(bracket_into)

    def accept(t, img, red, piv, cm, p, chk_a, chk_b, chk_coef, chk_ready,
               sub_coef, sub_ann, sub_rows, sub_ready, tmp, tmp2):
        n = img.shape[1]
        # img[0..t] must stay linearly independent
        for k in range(n):
            tmp[k] = img[t, k]
        for s in range(t):
            f = tmp[piv[s]]
            if f != 0:
                for k in range(n):
                    tmp[k] = (tmp[k] - f * red[s, k]) % p
        lead = -1
        for k in range(n):
            if tmp[k] != 0:
                lead = k
                break
        if lead < 0:
            return False
        inv = modinv(tmp[lead], p)
        for k in range(n):
            red[t, k] = tmp[k] * inv % p
        piv[t] = lead
        for q in range(chk_a.shape[0]):
            if chk_ready[q] != t:
                continue
            bracket_into(cm, img[chk_a[q]], img[chk_b[q]], p, tmp)
            for k in range(n):
                tmp2[k] = 0
            for c in range(t + 1):
                w = chk_coef[q, c]
                if w != 0:
                    for k in range(n):
                        tmp2[k] = (tmp2[k] + w * img[c, k]) % p
            for k in range(n):
                if tmp[k] != tmp2[k]:
                    return False
        for q in range(sub_coef.shape[0]):
            if sub_ready[q] != t:
                continue
            for k in range(n):
                tmp2[k] = 0
            for c in range(t + 1):
                w = sub_coef[q, c]
                if w != 0:
                    for k in range(n):
                        tmp2[k] = (tmp2[k] + w * img[c, k]) % p
            for r in range(sub_rows[q]):
                s = 0
                for k in range(n):
                    s += sub_ann[q, r, k] * tmp2[k]
                if s % p != 0:
                    return False
        return True

    accept = jit(accept)

    def search(cm, p, kind, opa, opb, dom, dom_dim, chk_a, chk_b, chk_coef, chk_ready,
               sub_coef, sub_ann, sub_rows, sub_ready, max_nodes, out):
        n = kind.shape[0]
        img = np.zeros((n, n), dtype=np.int64)
        red = np.zeros((n, n), dtype=np.int64)
        piv = np.zeros(n, dtype=np.int64)
        cnt = np.zeros(n, dtype=np.int64)
        tmp = np.zeros(n, dtype=np.int64)
        tmp2 = np.zeros(n, dtype=np.int64)
        nodes = 0
        t = 0
        while True:
            if t == n:
                for i in range(n):
                    for k in range(n):
                        out[i, k] = img[i, k]
                return 1, nodes
            if t < 0:
                return 0, nodes
            if max_nodes >= 0 and nodes > max_nodes:
                return 2, nodes
            if kind[t] == 1:
                if cnt[t] == 0:
                    cnt[t] = 1
                    nodes += 1
                    bracket_into(cm, img[opa[t]], img[opb[t]], p, tmp2)
                    for k in range(n):
                        img[t, k] = tmp2[k]
                    if accept(t, img, red, piv, cm, p, chk_a, chk_b, chk_coef, chk_ready,
                              sub_coef, sub_ann, sub_rows, sub_ready, tmp, tmp2):
                        t += 1
                        continue
                cnt[t] = 0
                t -= 1
                continue
            d = dom_dim[t]
            total = 1
            for _ in range(d):
                total *= p
            found = False
            while True:
                cnt[t] += 1
                if cnt[t] >= total:
                    break
                nodes += 1
                # base-p digits of cnt[t], most significant first
                for k in range(n):
                    img[t, k] = 0
                rest = cnt[t]
                for b in range(d - 1, -1, -1):
                    digit = rest % p
                    rest //= p
                    if digit != 0:
                        for k in range(n):
                            img[t, k] = (img[t, k] + digit * dom[t, b, k]) % p
                if accept(t, img, red, piv, cm, p, chk_a, chk_b, chk_coef, chk_ready,
                          sub_coef, sub_ann, sub_rows, sub_ready, tmp, tmp2):
                    found = True
                    break
            if found:
                t += 1
            else:
                cnt[t] = 0
                t -= 1

    return jit(search)


iso_search_numba = _make_search(_jit, _modinv_jit) if njit is not None else None


def _lex_coords(d, p):
    """All nonzero coordinate tuples of length d over F_p, in lex order."""
    grid = np.indices((p,) * d, dtype=np.int64).reshape(d, -1).T
    return grid[1:]


def iso_search_numpy(cm, p, kind, opa, opb, dom, dom_dim, chk_a, chk_b, chk_coef, chk_ready,
                     sub_coef, sub_ann, sub_rows, sub_ready, max_nodes, out):
    """Same contract as the compiled search; candidates of a level are vetted in bulk."""
    n = len(kind)
    cm = np.asarray(cm, dtype=np.int64)
    img = np.zeros((n, n), dtype=np.int64)
    red = np.zeros((n, n), dtype=np.int64)
    piv = np.zeros(n, dtype=np.int64)
    nodes = 0
    by_level_chk = [np.nonzero(chk_ready == t)[0] for t in range(n)]
    by_level_sub = [np.nonzero(sub_ready == t)[0] for t in range(n)]

    def bulk_bracket(x, y):
        # x, y: (K, n) -> (K, n)
        return np.einsum("ki,kj,ijm->km", x, y, cm) % p

    def vet(t, cand):
        k = cand.shape[0]
        r = cand.copy()
        for s in range(t):
            r = (r - r[:, piv[s]][:, None] * red[s]) % p
        ok = np.any(r != 0, axis=1)
        for q in by_level_chk[t]:
            a, b = chk_a[q], chk_b[q]
            xa = cand if a == t else np.broadcast_to(img[a], (k, n))
            xb = cand if b == t else np.broadcast_to(img[b], (k, n))
            lhs = bulk_bracket(xa, xb)
            rhs = (img[:t].T @ chk_coef[q, :t])[None, :] + chk_coef[q, t] * cand
            ok &= np.all(lhs == rhs % p, axis=1)
        for q in by_level_sub[t]:
            w = ((img[:t].T @ sub_coef[q, :t])[None, :] + sub_coef[q, t] * cand) % p
            rows = sub_ann[q, : sub_rows[q]]
            ok &= np.all((w @ rows.T) % p == 0, axis=1)
        return ok, r

    def place(t, vec, reduced):
        img[t] = vec
        lead = int(np.nonzero(reduced)[0][0])
        red[t] = reduced * _modinv_py(int(reduced[lead]), p) % p
        piv[t] = lead

    def descend(t):
        nonlocal nodes
        if t == n:
            return 1
        if max_nodes >= 0 and nodes > max_nodes:
            return 2
        if kind[t] == 1:
            cand = bulk_bracket(img[opa[t]][None, :], img[opb[t]][None, :])
        else:
            d = int(dom_dim[t])
            cand = (_lex_coords(d, p) @ dom[t, :d]) % p
        nodes += cand.shape[0]
        ok, reduced = vet(t, cand)
        for i in np.nonzero(ok)[0]:
            place(t, cand[i], reduced[i])
            status = descend(t + 1)
            if status:
                return status
        return 0

    status = descend(0)
    if status == 1:
        out[:, :] = img
    return status, nodes


def iso_search(*args):
    """Depth-first isomorphism search; returns ``(status, nodes)``.

    ``status`` is 1 when a witness was written to ``out``, 0 when the space
    is exhausted and 2 when ``max_nodes`` was exceeded.
    """
    if USE_NUMBA:
        status, nodes = iso_search_numba(*args)
        return int(status), int(nodes)
    return iso_search_numpy(*args)
