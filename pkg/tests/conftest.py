import pytest
from hypothesis import HealthCheck, settings

from gmacdonald.params import MODES, AdmissiblePair

settings.register_profile(
    "exact", deadline=None, max_examples=40,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("exact")


@pytest.fixture(params=MODES)
def mode(request):
    return request.param


@pytest.fixture
def pair_of():
    return AdmissiblePair.of


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])
