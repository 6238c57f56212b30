import pytest

from rootdensity.intpoly import IntPoly

CORPUS_TEXT = ["x^2+1", "x^2+x+2", "x^3-x+3", "x^3+2x+2", "x^4+x+1"]
CORPUS = [IntPoly.parse(s) for s in CORPUS_TEXT]

_criteria = []


def record(number, description, ok, detail=""):
    """Log one acceptance criterion verdict and fail the test if it did not hold."""
    line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {description}"
    if detail:
        line += f" [{detail}]"
    _criteria.append(line)
    print(line)
    assert ok, line


@pytest.fixture(params=CORPUS, ids=CORPUS_TEXT)
def corpus_poly(request):
    return request.param


def pytest_terminal_summary(terminalreporter):
    if _criteria:
        terminalreporter.section("acceptance criteria")
        for line in _criteria:
            terminalreporter.write_line(line)
