import pytest

# Acceptance tests append (number, title, passed, detail) here; the summary
# hook prints one line per criterion at the end of the run.
ACCEPTANCE_RESULTS: list = []


@pytest.fixture
def record_acceptance():
    def record(number: int, title: str, passed: bool, detail: str = ""):
        ACCEPTANCE_RESULTS.append((number, title, passed, detail))

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, passed, detail in sorted(ACCEPTANCE_RESULTS):
        mark = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"[{mark}] {number}. {title}" + (f" ({detail})" if detail else ""))
