import numpy as np
import pytest
from hypothesis import settings

from dualperron import kernels

settings.register_profile("default", max_examples=200, deadline=None)
settings.load_profile("default")

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


BACKENDS = [pytest.param(kernels.numpy_backend, id="numpy")]
if kernels.numba_backend is not None:
    BACKENDS.append(pytest.param(kernels.numba_backend, id="numba"))


@pytest.fixture(params=BACKENDS)
def backend(request):
    return request.param


def block_embedding(s, d):
    """Real 2n x 2n matrix ``[[S, D], [0, S]]``; a ring isomorphism for dual matrices."""
    n = s.shape[0]
    out = np.zeros((2 * n, 2 * n))
    out[:n, :n] = s
    out[n:, n:] = s
    out[:n, n:] = d
    return out


def block_parts(M):
    n = M.shape[0] // 2
    return M[:n, :n], M[:n, n:]
