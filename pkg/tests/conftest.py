import numpy as np
import pytest

from geneo.core import make_function
from geneo.operators import (Compose, Identity, OperatorFamily, TranslateMax, TranslateMin,
                             WeightedShiftSum)
from geneo.persistence import PersistenceDiagram, persistent_betti

# filled by tests/test_acceptance.py, printed at the end of the run
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def standard_family():
    """The five-operator family used by the lower-bound suites."""
    return OperatorFamily((
        Identity(),
        TranslateMax((0, 1, 2)),
        TranslateMin((0, 1)),
        WeightedShiftSum(((0, 0.5), (1, 0.5))),
        Compose((TranslateMax((0, 1)), WeightedShiftSum(((0, 0.5), (2, 0.5))))),
    ), name="standard")


@pytest.fixture
def family():
    return standard_family()


def random_function(rng, n, ties=False):
    if ties:
        return make_function(rng.integers(-3, 4, size=n).astype(float))
    return make_function(rng.uniform(-1.0, 1.0, size=n))


@pytest.fixture
def rng():
    return np.random.default_rng(20161)


def diagram_from_betti(phi):
    """Rebuild the degree-0 diagram from persistent Betti numbers alone.

    Multiplicity of a finite point (b, d) is
    beta(b, d-) - beta(b-, d-) - beta(b, d) + beta(b-, d); essential births
    come from beta(b, top) - beta(b-, top).  Degree 1 is the global max: the
    cycle closes when the last edge enters.
    """
    crit = sorted(set(phi.tolist()))
    eps = min((b - a for a, b in zip(crit, crit[1:])), default=1.0) / 4
    top = crit[-1] + 1.0

    def beta(u, v):
        return persistent_betti(phi, u, v)

    pairs, essential = [], []
    for i, b in enumerate(crit):
        for d in crit[i + 1:]:
            mult = beta(b, d - eps) - beta(b - eps, d - eps) - beta(b, d) + beta(b - eps, d)
            pairs.extend([(b, d)] * mult)
        essential.extend([b] * (beta(b, top) - beta(b - eps, top)))
    return PersistenceDiagram(pairs, essential, [crit[-1]])
