"""Named algebras: the two- and three-dimensional non-Lie Leibniz algebras,
the Dieudonné algebra, two four-dimensional algebras used as holomorph
targets, and a few Lie algebras for contrast.

Tables are written with 1-based indices, exactly as the brackets are
usually printed.  Parameters are instantiated per call; the non-square
condition on ``alpha`` for ``L_5`` and ``L_9`` is documented, not enforced.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping

from .algebra import Algebra
from .fields import QQ, Field, FieldError


class CatalogError(KeyError):
    pass


class ConstraintError(ValueError):
    pass


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    dim: int
    table: Callable  # params -> {(i, j): {k: coeff}}
    params: tuple = ()
    nonzero: tuple = ()  # parameters that must not vanish
    labels: tuple | None = None
    note: str = ""
    defaults: Mapping = field(default_factory=dict)

    def build(self, params: Mapping | None = None, fld: Field = QQ) -> Algebra:
        given = dict(self.defaults)
        given.update(params or {})
        unknown = set(given) - set(self.params)
        if unknown:
            raise ConstraintError(f"{self.name} has no parameter(s) {sorted(unknown)}")
        missing = [p for p in self.params if p not in given]
        if missing:
            raise ConstraintError(f"{self.name} needs parameter(s) {missing}")
        values = {}
        for k, v in given.items():
            try:
                values[k] = fld(Fraction(v) if isinstance(v, str) else v)
            except (ValueError, ZeroDivisionError, FieldError) as exc:
                raise ConstraintError(f"parameter {k}={v!r} is not an element of {fld}: {exc}") from exc
        for k in self.nonzero:
            if values[k] == 0:
                raise ConstraintError(f"{self.name} requires {k} != 0")
        return Algebra.from_brackets(fld, self.dim, self.table(values), self.labels)


_ENTRIES = [
    CatalogEntry("L_A", 2, lambda p: {(2, 2): {1: 1}},
                 note="nilpotent symmetric Leibniz algebra"),
    CatalogEntry("L_B", 2, lambda p: {(1, 2): {1: 1}, (2, 2): {1: 1}},
                 note="solvable, not left Leibniz"),
    CatalogEntry("L_1", 3, lambda p: {(1, 3): {1: -2}, (2, 2): {1: 1}, (2, 3): {2: -1}, (3, 2): {2: 1}}),
    CatalogEntry("L_2", 3, lambda p: {(1, 3): {1: p["alpha"]}, (2, 3): {2: -1}, (3, 2): {2: 1}},
                 params=("alpha",), nonzero=("alpha",), defaults={"alpha": 2}),
    CatalogEntry("L_3", 3, lambda p: {(2, 3): {2: -1}, (3, 2): {2: 1}, (3, 3): {1: 1}}),
    CatalogEntry("L_4", 3, lambda p: {(2, 2): {1: 1}, (3, 3): {1: 1}}),
    CatalogEntry("L_5", 3, lambda p: {(2, 2): {1: 1}, (3, 3): {1: p["alpha"]}},
                 params=("alpha",), nonzero=("alpha",), defaults={"alpha": 2},
                 note="alpha should represent a non-trivial square class; not enforced"),
    CatalogEntry("L_6", 3, lambda p: {(2, 2): {1: 1}, (2, 3): {1: 1}, (3, 3): {1: p["alpha"]}},
                 params=("alpha",), nonzero=("alpha",), defaults={"alpha": 2}),
    CatalogEntry("L_7", 3, lambda p: {(2, 3): {1: 1}}),
    CatalogEntry("L_8", 3, lambda p: {(1, 3): {2: 1}, (2, 3): {1: 1}}),
    CatalogEntry("L_9", 3, lambda p: {(1, 3): {2: 1}, (2, 3): {1: p["alpha"]}},
                 params=("alpha",), nonzero=("alpha",), defaults={"alpha": 2},
                 note="alpha should represent a non-trivial square class; not enforced"),
    CatalogEntry("L_10", 3, lambda p: {(1, 3): {2: 1}, (2, 3): {1: p["alpha"], 2: 1}},
                 params=("alpha",), nonzero=("alpha",), defaults={"alpha": 2}),
    CatalogEntry("L_11", 3, lambda p: {(1, 3): {1: 1}, (2, 3): {2: 1}}),
    CatalogEntry("L_12", 3, lambda p: {(1, 3): {2: 1}, (3, 3): {1: 1}}),
    CatalogEntry("L_13", 3, lambda p: {(1, 3): {1: 1, 2: 1}, (3, 3): {1: 1}}),
    CatalogEntry("d1", 4, lambda p: {(1, 3): {4: 1}, (2, 3): {4: 1}, (3, 1): {4: -1}, (3, 2): {4: 1}},
                 labels=("e1", "e2", "e3", "z"), note="Dieudonné algebra, 2-nilpotent, symmetric"),
    CatalogEntry("R5", 4, lambda p: {(1, 1): {3: 1}, (1, 2): {4: 1}, (3, 1): {4: 1}},
                 labels=("x1", "x2", "x3", "x4"), note="four-dimensional nilpotent"),
    CatalogEntry("L39", 4, lambda p: {(1, 4): {2: 1}, (4, 1): {2: -1}, (3, 4): {3: 1}, (4, 4): {2: 1}},
                 labels=("f1", "f2", "f3", "f4"), note="four-dimensional solvable"),
    CatalogEntry("example_3_3", 3, lambda p: {(3, 2): {1: 1}, (2, 3): {1: -1}, (3, 3): {1: -1}},
                 note="symmetric, non-Lie; Der has dim 4, DerLie dim 3"),
    CatalogEntry("lie2", 2, lambda p: {(1, 2): {1: 1}, (2, 1): {1: -1}},
                 note="two-dimensional non-abelian Lie algebra"),
    CatalogEntry("sl2", 3, lambda p: {(1, 2): {2: 2}, (2, 1): {2: -2}, (1, 3): {3: -2}, (3, 1): {3: 2},
                                      (2, 3): {1: 1}, (3, 2): {1: -1}},
                 labels=("h", "e", "f"), note="perfect Lie algebra"),
]

CATALOG = {e.name: e for e in _ENTRIES}

THREE_DIM = ("L_1", "L_2", "L_3", "L_4", "L_5", "L_6", "L_7", "L_8", "L_9", "L_10", "L_11", "L_12", "L_13")


def names() -> list:
    return list(CATALOG)


def entry(name: str) -> CatalogEntry:
    try:
        return CATALOG[name]
    except KeyError:
        raise CatalogError(f"unknown catalog algebra {name!r}") from None


def get(name: str, params: Mapping | None = None, fld: Field = QQ) -> Algebra:
    return entry(name).build(params, fld)
