"""Exact computations with finite-dimensional right Leibniz algebras."""

from .algebra import (
    Algebra,
    NotLeibnizError,
    centers,
    derived_subalgebra,
    identity_flags,
    is_ideal,
    is_right_leibniz,
    leibniz_kernel,
    lie_center,
    opposite,
    quotient,
    series,
)
from .catalog import get as catalog_algebra
from .derivations import (
    antiderivation_space,
    biderivation_space,
    derivation_space,
    inner_biderivations,
    inner_derivations,
    lie_derivation_space,
    pair_bracket,
)
from .fields import GF, QQ, Field, FieldError
from .holomorph import bider_semidirect, classical_holomorph, lie_holomorph, misra_holomorph, semidirect_product
from .io import emit_algebra, parse_algebra
from .iso import change_of_basis, find_isomorphism, fingerprint, search_isomorphism, verify_homomorphism
from .linalg import Matrix, Subspace

__version__ = "0.1.0"
