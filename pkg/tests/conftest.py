import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from squarecode.field import field_new, subfield_for

settings.register_profile(
    "default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

# (p, s) pairs covering characteristic 2, odd prime fields and odd extensions
SMALL_FIELDS = [(2, 1), (3, 1), (5, 1), (2, 3), (2, 4), (3, 2), (5, 2), (2, 8), (3, 4), (7, 2)]
SUBFIELD_PAIRS = [(2, 4), (2, 3), (3, 2), (4, 2), (2, 6), (3, 3), (4, 3), (9, 2)]


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture(params=SMALL_FIELDS, ids=lambda ps: f"F{ps[0]}^{ps[1]}")
def ctx(request):
    return field_new(*request.param)


@pytest.fixture(params=SUBFIELD_PAIRS, ids=lambda qm: f"F{qm[0]}^{qm[1]}/F{qm[0]}")
def sub(request):
    return subfield_for(*request.param)


def pytest_terminal_summary(terminalreporter):
    from . import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for num in sorted(test_acceptance.RESULTS):
            terminalreporter.write_line(test_acceptance.RESULTS[num])
