import pytest
from hypothesis import settings

from polysep.poly import IntPolynomial

settings.register_profile("default", deadline=None)
settings.load_profile("default")

_ACCEPTANCE = []


def printed_family(d, a):
    """Coefficients of the degree 3, 4, 5 members exactly as displayed in closed form."""
    if d == 3:
        cs = [1, 4 * a**2, 4 * a**4 + 4 * a, 8 * a**3 - 2]
    elif d == 4:
        cs = [1, 8 * a**3, 16 * a**6 + 4 * a**2, 16 * a**5 + 4 * a, 20 * a**4 - 2]
    elif d == 5:
        cs = [1, 20 * a**4, 100 * a**8 + 8 * a**3, 80 * a**7 + 4 * a**2, 56 * a**6 + 4 * a, 56 * a**5 - 2]
    else:
        raise ValueError(d)
    return IntPolynomial(cs)


@pytest.fixture
def acceptance():
    def record(criterion, ok, detail=""):
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {criterion}: {detail}"
        _ACCEPTANCE.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE:
            terminalreporter.write_line(line)
