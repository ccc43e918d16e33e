from fractions import Fraction

import pytest

from leibhol import catalog
from leibhol.algebra import identity_flags
from leibhol.fields import GF, QQ


@pytest.mark.parametrize("name", catalog.names())
def test_every_entry_builds_a_right_leibniz_algebra(name):
    L = catalog.get(name)
    assert L.dim == catalog.entry(name).dim
    assert identity_flags(L).right_leibniz


@pytest.mark.parametrize("name", catalog.THREE_DIM)
def test_three_dimensional_families_are_not_lie(name):
    assert not identity_flags(catalog.get(name)).lie


def test_l_1_table():
    L = catalog.get("L_1")
    nz = {(i + 1, j + 1): v for i, j, v in L.nonzero_brackets()}
    assert nz == {(1, 3): (-2, 0, 0), (2, 2): (1, 0, 0), (2, 3): (0, -1, 0), (3, 2): (0, 1, 0)}


def test_parameters_are_substituted():
    L = catalog.get("L_6", {"alpha": "1/4"})
    assert L.sc[2][2] == (Fraction(1, 4), 0, 0)
    assert catalog.get("L_10", {"alpha": 3}, GF(5)).sc[1][2] == (3, 1, 0)


def test_zero_parameter_is_rejected():
    with pytest.raises(catalog.ConstraintError):
        catalog.get("L_2", {"alpha": 0})


def test_unknown_names_and_parameters():
    with pytest.raises(catalog.CatalogError):
        catalog.get("L_99")
    with pytest.raises(catalog.ConstraintError):
        catalog.get("L_4", {"alpha": 2})


def test_parameter_not_invertible_mod_p():
    with pytest.raises(catalog.ConstraintError):
        catalog.get("L_6", {"alpha": "1/5"}, GF(5))


def test_labels_of_four_dimensional_entries():
    assert catalog.get("d1").labels == ("e1", "e2", "e3", "z")
    assert catalog.get("R5").labels[0] == "x1"


def test_over_finite_field():
    L = catalog.get("L_4", fld=GF(3))
    assert L.field == GF(3)
    assert L.sc[1][1] == (1, 0, 0)
    assert catalog.get("L_4").field == QQ
