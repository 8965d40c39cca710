import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

# criterion id -> (title, outcome, detail lines); filled by test_acceptance
ACCEPTANCE: dict[str, list] = {}


@pytest.fixture
def criterion(request):
    """Register the running test as an acceptance criterion.

    Usage: ``report = criterion("A1", "title")`` then ``report("measured ...")``.
    """
    entries = []

    def register(cid, title):
        ACCEPTANCE[request.node.nodeid] = [cid, title, "ERROR", entries]

        def note(line):
            entries.append(str(line))
            print(line)
        return note
    return register


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    entry = ACCEPTANCE.get(item.nodeid)
    if entry is None or rep.when != "call":
        return
    entry[2] = "PASS" if rep.passed else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for cid, title, outcome, notes in sorted(ACCEPTANCE.values()):
        tr.write_line(f"[{outcome}] {cid} {title}")
        for line in notes:
            tr.write_line(f"        {line}")
