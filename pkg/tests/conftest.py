import pytest

_ACCEPTANCE_LINES: list[str] = []


class _Verdict:
    def __init__(self, criterion: str):
        self.criterion = criterion

    def __call__(self, ok: bool, detail: str) -> None:
        line = f"criterion {self.criterion}: {'PASS' if ok else 'FAIL'}  {detail}"
        _ACCEPTANCE_LINES.append(line)
        print(line)
        assert ok, line


@pytest.fixture
def verdict(request):
    """Record and assert one acceptance outcome; the id comes from the ``criterion`` mark."""
    mark = request.node.get_closest_marker("criterion")
    return _Verdict(str(mark.args[0]) if mark else request.node.name)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(id): acceptance criterion number")


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
