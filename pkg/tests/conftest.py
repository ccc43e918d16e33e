import sys
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from leibhol import catalog  # noqa: E402
from leibhol._kernels import filter_leibniz_numpy  # noqa: E402
from leibhol.algebra import Algebra  # noqa: E402
from leibhol.fields import GF, QQ  # noqa: E402

# (name, alpha) pairs covering every catalog family at the values the tables single out
SUITE = [("L_A", None), ("L_B", None), ("L_1", None), ("L_2", 2), ("L_2", -1), ("L_3", None), ("L_4", None),
         ("L_5", 2), ("L_6", 2), ("L_6", Fraction(1, 4)), ("L_7", None), ("L_8", None), ("L_9", 2),
         ("L_10", 2), ("L_11", None), ("L_12", None), ("L_13", None), ("d1", None), ("R5", None),
         ("L39", None), ("example_3_3", None)]


def build(name, alpha=None, fld=QQ):
    e = catalog.entry(name)
    return e.build({"alpha": alpha} if e.params and alpha is not None else None, fld)


def suite_algebras(fld=QQ):
    return [(f"{n}({a})" if a is not None else n, build(n, a, fld)) for n, a in SUITE]


def random_leibniz(count, p=3, dims=(2, 3), seed=20240611, density=0.1):
    """``count`` distinct random non-abelian right Leibniz algebras over F_p.

    Sparse random tensors are filtered through the batch Leibniz test, the
    dimensions taking turns batch by batch; dim 2 has few such tensors, so
    dim 3 supplies most of them.  (In dim 1 every one is abelian.)
    """
    rng = np.random.default_rng(seed)
    out, seen = [], set()
    turn = 0
    while len(out) < count:
        n = dims[turn % len(dims)]
        turn += 1
        batch = rng.integers(0, p, size=(500, n, n, n))
        batch *= rng.random(size=batch.shape) < density
        batch = batch[batch.reshape(len(batch), -1).any(axis=1)]
        for t in batch[filter_leibniz_numpy(batch, p)][:8]:
            key = t.tobytes()
            if key not in seen and len(out) < count:
                seen.add(key)
                out.append(Algebra.from_tensor(GF(p), t.tolist()))
    return out


@pytest.fixture(scope="session")
def f3_samples():
    return random_leibniz(120)


@pytest.fixture(scope="session")
def suite():
    return suite_algebras()


# -- acceptance summary -------------------------------------------------------

ACCEPTANCE_LINES = {}


def record_criterion(number, status, detail):
    ACCEPTANCE_LINES[number] = f"criterion {number:>2}: {status:<7} {detail}"


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])
