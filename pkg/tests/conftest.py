import pytest
from hypothesis import HealthCheck, settings

from monadlab import GF, QQ, Ring

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

# criterion number -> list of (label, passed); filled by tests/test_acceptance.py
ACCEPTANCE: dict = {}


@pytest.fixture
def Rp():
    return Ring(5, GF())


@pytest.fixture
def Rq():
    return Ring(5, QQ)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        parts = ACCEPTANCE[n]
        ok = all(p for _, p in parts)
        labels = "; ".join(l for l, _ in parts)
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  ({labels})")
