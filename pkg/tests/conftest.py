import os
from pathlib import Path

import pytest
from hypothesis import settings

from transcat.classify import CatalogueStore

settings.register_profile("transcat", max_examples=40, deadline=None, derandomize=True)
settings.load_profile("transcat")

# filled by tests/test_acceptance.py: criterion number -> (passed, detail)
ACCEPTANCE: dict[int, tuple[bool, str]] = {}

# time and failures of the non-acceptance tests seen in this session
SUITE = {"seconds": 0.0, "tests": 0, "failed": 0}


def pytest_collection_modifyitems(items):
    # acceptance last, so criterion 9 can see the other suites' timings
    items.sort(key=lambda it: it.nodeid.startswith("tests/test_acceptance.py"))


def pytest_runtest_logreport(report):
    if "test_acceptance.py" in report.nodeid:
        return
    SUITE["seconds"] += report.duration
    if report.when == "call":
        SUITE["tests"] += 1
    if report.failed:
        SUITE["failed"] += 1


@pytest.fixture(scope="session")
def store(tmp_path_factory) -> CatalogueStore:
    """Catalogues shared by the whole run; TRANSCAT_TEST_CACHE keeps them between runs."""
    cache = os.environ.get("TRANSCAT_TEST_CACHE")
    out = Path(cache) if cache else tmp_path_factory.mktemp("catalogues")
    return CatalogueStore(out, seed=1)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {k}: {detail}")
