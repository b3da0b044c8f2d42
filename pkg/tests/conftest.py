import math

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "suite",
    derandomize=True,
    deadline=None,
    max_examples=25,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")

from equichord import ball_profile, disc_body  # noqa: E402


@pytest.fixture(scope="session")
def ball2():
    return ball_profile(2.0, label="ball R=2")


@pytest.fixture(scope="session")
def ball1():
    return ball_profile(1.0, label="ball r=1")


@pytest.fixture(scope="session")
def disc2():
    return disc_body(2.0)


@pytest.fixture(scope="session")
def disc1():
    return disc_body(1.0)


@pytest.fixture(scope="session")
def sqrt3():
    return math.sqrt(3.0)


@pytest.fixture
def criterion_line(request):
    """Emit a line that stays visible under pytest's output capture."""
    reporter = request.config.pluginmanager.get_plugin("terminalreporter")

    def emit(text: str) -> None:
        if reporter is not None:
            reporter.write_line(text)
        else:
            print(text)

    return emit
