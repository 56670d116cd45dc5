import functools

import pytest

from modalg.search import EnumerationTask, enumerate_models


@functools.lru_cache(maxsize=None)
def models(system, size, parameter=None):
    """Canonical models, cached across test modules."""
    return tuple(enumerate_models(EnumerationTask(system, size, parameter)).models)


def models_upto(system, max_size, parameter=None):
    return [m for n in range(1, max_size + 1) for m in models(system, n, parameter)]


_ACCEPTANCE = pytest.StashKey[list]()


@pytest.fixture
def record(request):
    """Append one acceptance line; all lines are repeated in the summary."""
    lines = request.config.stash.setdefault(_ACCEPTANCE, [])

    def add(line):
        print(line)
        lines.append(line)

    return add


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_ACCEPTANCE, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
