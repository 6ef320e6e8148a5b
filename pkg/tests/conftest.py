import numpy as np
import pytest

from porosol.material import PoroelasticMaterial, load_rocks


@pytest.fixture(scope="session")
def rocks():
    return load_rocks()


@pytest.fixture
def soft_rock():
    """A slow-diffusing rock (c of order 1e-7 m^2/s) for transient checks."""
    return PoroelasticMaterial(G=6e9, nu=0.2, nu_u=0.3, B=0.6, kappa=1e-17, name="soft")


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


_ACCEPTANCE: dict[int, str] = {}


@pytest.fixture
def acceptance():
    """Record one pass/fail line per acceptance criterion, shown after the run."""
    def record(number: int, ok: bool, detail: str) -> bool:
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}"
        _ACCEPTANCE[number] = line
        print(line)
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for k in sorted(_ACCEPTANCE):
            terminalreporter.write_line(_ACCEPTANCE[k])
