import pytest
from hypothesis import settings

from surfacerep.corpus import standard_corpus
from surfacerep.words import Presentation

settings.register_profile("ci", deadline=None, max_examples=60)
settings.load_profile("ci")

# filled by tests/test_acceptance.py, printed at the end of the session
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


@pytest.fixture(scope="session")
def corpus_11():
    return standard_corpus(Presentation.surface(1, 1))


@pytest.fixture(scope="session")
def corpus_20():
    return standard_corpus(Presentation.surface(2, 0))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, msg = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {msg}")
