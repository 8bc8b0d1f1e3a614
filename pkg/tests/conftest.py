import pytest

from approxreg.ideals import IdealHandle
from approxreg.ring import QQ, PolynomialRing, PrimeField


@pytest.fixture
def R2():
    return PolynomialRing(QQ, ("x", "y"))


@pytest.fixture
def R3():
    return PolynomialRing(QQ, ("x", "y", "z"))


@pytest.fixture
def GF3():
    return PrimeField(3)


@pytest.fixture
def ideal():
    def make(ring, *gens):
        return IdealHandle(ring, list(gens))

    return make


# one summary line per acceptance criterion, whatever the capture mode
_CRITERIA = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    number = getattr(item.function, "criterion", None)
    if number is None or rep.when not in ("setup", "call"):
        return
    if rep.when == "call" or rep.failed:
        detail = dict(item.user_properties).get("detail", "")
        _CRITERIA[number] = (item.function.__doc__ or "").strip().splitlines()[0], rep.passed, detail


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        title, passed, detail = _CRITERIA[number]
        line = f"criterion {number:>2} {'PASS' if passed else 'FAIL'}: {title}"
        terminalreporter.write_line(line + (f" [{detail}]" if detail else ""))
