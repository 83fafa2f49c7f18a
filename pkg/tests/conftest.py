import pytest

from .oracles import CAGE_FIXTURES


@pytest.fixture(params=sorted(CAGE_FIXTURES))
def cage(request):
    make, g_girth = CAGE_FIXTURES[request.param]
    return request.param, make(), g_girth


def pytest_terminal_summary(terminalreporter):
    from . import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(test_acceptance.RESULTS):
            terminalreporter.write_line(line)
