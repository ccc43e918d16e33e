import time

import numpy as np
import pytest

from leibhol.fields import GF, QQ
from leibhol.holomorph import lie_holomorph
from leibhol.iso import (
    FieldNotFiniteError,
    LinearMapValue,
    SearchLimitError,
    change_of_basis,
    find_isomorphism,
    fingerprint,
    search_isomorphism,
    verify_homomorphism,
)
from leibhol.linalg import Matrix

from conftest import build, random_leibniz


def _random_invertible(fld, n, rng):
    while True:
        m = Matrix.from_rows(fld, rng.integers(0, fld.p, size=(n, n)).tolist())
        if m.is_invertible():
            return m


def test_identity_is_an_isomorphism():
    L = build("L_6", 2)
    assert verify_homomorphism(L, L, Matrix.identity(QQ, 3)).is_iso


def test_failures_are_reported_one_based():
    L = build("L_4")
    swap = Matrix.from_columns(QQ, [[2, 0, 0], [0, 1, 0], [0, 0, 1]])
    chk = verify_homomorphism(L, L, swap)
    assert not chk.is_hom and (2, 2) in chk.failures and (3, 3) in chk.failures


def test_zero_map_is_a_homomorphism_but_not_bijective():
    L = build("L_7")
    chk = verify_homomorphism(L, L, Matrix.zeros(QQ, 3, 3))
    assert chk.is_hom and not chk.is_iso


def test_l_5_at_one_is_l_4():
    # L_5(1) is L_4 on the nose
    assert build("L_5", 1) == build("L_4")


def test_change_of_basis_preserves_fingerprint():
    rng = np.random.default_rng(3)
    for L in random_leibniz(15, p=5, seed=11):
        P = _random_invertible(L.field, L.dim, rng)
        R = change_of_basis(L, P)
        assert fingerprint(R) == fingerprint(L)


def test_search_recovers_random_basis_changes():
    rng = np.random.default_rng(5)
    for L in random_leibniz(25, p=3, seed=17):
        R = change_of_basis(L, _random_invertible(L.field, L.dim, rng))
        out = search_isomorphism(L, R)
        assert out.found
        assert verify_homomorphism(L, R, out.witness).is_iso


def test_search_on_holomorphs_under_basis_change():
    F3 = GF(3)
    rng = np.random.default_rng(9)
    H = lie_holomorph(build("L_4", None, F3)).algebra
    R = change_of_basis(H, _random_invertible(F3, H.dim, rng))
    w = find_isomorphism(H, R)
    assert w is not None and verify_homomorphism(H, R, w).is_iso


def test_squares_criterion_in_dimension_three():
    # -1 is a square mod 5 but not mod 3; 4 = 2^2 mod 5
    start = time.perf_counter()
    w = find_isomorphism(build("L_4", None, GF(5)), build("L_5", 4, GF(5)))
    assert w is not None
    assert find_isomorphism(build("L_4", None, GF(5)), build("L_5", 2, GF(5))) is None
    assert find_isomorphism(build("L_4", None, GF(3)), build("L_5", 2, GF(3))) is None
    assert time.perf_counter() - start < 30


def test_search_without_precheck_reaches_same_answer():
    F5 = GF(5)
    out = search_isomorphism(build("L_4", None, F5), build("L_5", 2, F5), precheck=False)
    assert out.status == "none" and out.nodes > 0


def test_different_dimensions_are_not_isomorphic():
    assert search_isomorphism(build("L_A", None, GF(3)), build("L_4", None, GF(3))).status == "none"


def test_search_over_q_is_refused():
    with pytest.raises(FieldNotFiniteError):
        search_isomorphism(build("L_4"), build("L_5", 2))


def test_node_budget():
    F5 = GF(5)
    L, M = build("L_4", None, F5), build("L_5", 4, F5)
    assert search_isomorphism(L, M, max_nodes=0).status == "unknown"
    with pytest.raises(SearchLimitError):
        find_isomorphism(L, M, max_nodes=0)


def test_witness_is_deterministic():
    F5 = GF(5)
    a = search_isomorphism(build("L_4", None, F5), build("L_5", 4, F5)).witness
    b = search_isomorphism(build("L_4", None, F5), build("L_5", 4, F5)).witness
    assert a == b


def test_linear_map_value():
    f = LinearMapValue.from_images(QQ, [[1, 0], [1, 1]])
    assert f((1, 1)) == (2, 1)
    assert f.image(1) == (1, 1)
    assert (f.source_dim, f.target_dim) == (2, 2)


def test_fingerprint_separates_l_12_and_l_13_holomorphs():
    a = fingerprint(lie_holomorph(build("L_12")).algebra)
    b = fingerprint(lie_holomorph(build("L_13")).algebra)
    assert a.nilpotency_class is not None and b.nilpotency_class is None
