from pathlib import Path

import pytest
from hypothesis import settings

from plateau.field import build_field
from plateau.search import parse_corpus

ROOT = Path(__file__).resolve().parent.parent
CORPUS_TXT = ROOT / "corpus" / "witnesses.txt"
SCHEMA = ROOT / "docs" / "report.schema.json"

settings.register_profile("plateau", max_examples=60, deadline=None, derandomize=True)
settings.load_profile("plateau")


@pytest.fixture(scope="session")
def corpus():
    return parse_corpus(CORPUS_TXT.read_text())


@pytest.fixture(scope="session")
def f27():
    return build_field(3, 3)


@pytest.fixture(scope="session")
def f81():
    return build_field(3, 4)


@pytest.fixture(scope="session")
def f243():
    return build_field(3, 5)


@pytest.fixture(scope="session")
def f125():
    return build_field(5, 3)


VERDICTS: list[str] = []


@pytest.fixture
def verdict():
    """Record and print one PASS/FAIL line for an acceptance criterion."""

    def record(number: int, ok: bool, detail: str) -> bool:
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}"
        VERDICTS.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(VERDICTS, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
