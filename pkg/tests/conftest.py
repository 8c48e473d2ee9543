import pytest

_VERDICTS = []


@pytest.fixture
def verdict():
    """Record one PASS/FAIL line per acceptance criterion and return the flag."""

    def record(number, title, ok, detail):
        line = f"{'PASS' if ok else 'FAIL'} criterion {number:>2}: {title} | {detail}"
        _VERDICTS.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if _VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_VERDICTS, key=lambda s: int(s.split("criterion")[1].split(":")[0])):
            terminalreporter.write_line(line)
