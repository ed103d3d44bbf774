import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from snakeladder.board import bundled_board
from snakeladder.chain import absorption_profile, build_chain
from snakeladder.compete import win_matrix


@pytest.fixture(scope="session")
def paper_board():
    return bundled_board("paper-figure2")


@pytest.fixture(scope="session")
def mini10():
    return bundled_board("mini10")


@pytest.fixture(scope="session")
def paper_chain(paper_board):
    return build_chain(paper_board)


@pytest.fixture(scope="session")
def mini_chain(mini10):
    return build_chain(mini10)


@pytest.fixture(scope="session")
def paper_profile(paper_chain):
    return absorption_profile(paper_chain, 1000)


@pytest.fixture(scope="session")
def mini_profile(mini_chain):
    return absorption_profile(mini_chain, 1000)


@pytest.fixture(scope="session")
def paper_win(paper_profile):
    return win_matrix(paper_profile)


@pytest.fixture(scope="session")
def mini_win(mini_profile):
    return win_matrix(mini_profile)


_ACCEPTANCE: list[tuple[str, bool, str]] = []


@pytest.fixture
def criterion():
    """Record one acceptance line and assert it."""

    def check(name: str, ok: bool, detail: str = "") -> None:
        _ACCEPTANCE.append((name, bool(ok), detail))
        print(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}")
        assert ok, f"{name}: {detail}"

    return check


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in _ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}")
