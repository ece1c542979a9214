import numpy as np
import pytest

from fdmap.basis import FourierBasis
from fdmap.fdata import BasisDataset, DiscretizedDataset, SamplingGrid
from fdmap.kernels import KernelSpec, build_kernel_matrix


def random_curves(rng, n=8, m=40, uneven=False):
    if uneven:
        t = np.sort(rng.uniform(0, 1, m))
        t[0], t[-1] = 0.0, 1.0
    else:
        t = np.linspace(0, 1, m)
    phase = rng.uniform(0, 2 * np.pi, (n, 1))
    amp = rng.uniform(0.5, 2.0, (n, 1))
    values = amp * np.sin(2 * np.pi * t + phase) + 0.1 * rng.standard_normal((n, m))
    return DiscretizedDataset(SamplingGrid(t), values)


def random_kernel(rng, n=6, family="gaussian", sigma=None):
    ds = random_curves(rng, n)
    sigma = sigma or rng.uniform(0.4, 1.5)
    return build_kernel_matrix(KernelSpec(family, sigma), ds)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def curves(rng):
    return random_curves(rng)


@pytest.fixture
def fourier_data(rng):
    basis = FourierBasis((0.0, 1.0), 5)
    return BasisDataset(basis, rng.standard_normal((10, 5)))


ACCEPTANCE_LINES = []


@pytest.fixture
def acceptance_report():
    """Record one PASS/FAIL line per criterion, then assert it."""
    def report(number, passed, detail):
        line = f"criterion {number}: {'PASS' if passed else 'FAIL'} ({detail})"
        ACCEPTANCE_LINES.append(line)
        print(line)
        assert passed, line
    return report


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1][:-1])):
            terminalreporter.write_line(line)
