import math
import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from spss.grid import make_grid
from spss.functionals import ModelParams
from spss.minimizer import SolveOptions, minimize
from spss.phase import cached_constants


@pytest.fixture(scope="session")
def desk_grid():
    return make_grid(40.0, 4000)


@pytest.fixture(scope="session")
def grid20():
    return make_grid(20.0, 4000)


@pytest.fixture(scope="session")
def opts():
    return SolveOptions()


@pytest.fixture(scope="session")
def slater_params():
    return ModelParams(alpha=1.0 / 3.0, coupling=10.0, mass=5.0)


@pytest.fixture(scope="session")
def slater_report(slater_params, desk_grid, opts):
    """Converged minimizer at the reference Slater-exponent point."""
    return minimize(slater_params, opts=opts, grid=desk_grid)


@pytest.fixture(scope="session")
def consts_half():
    return cached_constants(0.5)


@pytest.fixture(scope="session")
def consts_06():
    return cached_constants(0.6)


@pytest.fixture(scope="session")
def consts_23():
    return cached_constants(2.0 / 3.0)


@pytest.fixture(scope="session")
def half_threshold(consts_half):
    return 3.0 / (math.sqrt(2.0) * consts_half.c_alpha_hat)


@pytest.fixture(scope="session")
def half_super_params(half_threshold):
    return ModelParams(alpha=0.5, coupling=2.0 * half_threshold, mass=1.0)


@pytest.fixture(scope="session")
def half_super_report(half_super_params, desk_grid, opts):
    return minimize(half_super_params, opts=opts, grid=desk_grid)
