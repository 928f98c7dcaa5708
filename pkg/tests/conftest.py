import sys
from pathlib import Path

import pytest

from morsecancel import io
from morsecancel.corpus import generate_corpus

sys.path.insert(0, str(Path(__file__).parent))

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"
CORPUS_SEED = 2024
CORPUS_SIZE = 200

ACCEPTANCE = []  # (number, title, passed, detail)


def fixture_path(*parts) -> Path:
    return FIXTURES.joinpath(*parts)


def load_complex(name):
    return io.complex_from_json(io.load_json(fixture_path(name)))


def load_field(name):
    return io.matching_from_json(io.load_json(fixture_path(name)))


def load_matrix(*parts):
    return io.matrix_from_json(io.load_json(fixture_path(*parts)))


@pytest.fixture(scope="session")
def corpus():
    return generate_corpus(CORPUS_SEED, CORPUS_SIZE)


@pytest.fixture(scope="session")
def small_corpus():
    return generate_corpus(7, 30, max_dim=2, max_vertices=7)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, passed, detail in sorted(ACCEPTANCE):
        status = "PASS" if passed else "FAIL"
        line = f"[{status}] {number}. {title}"
        if detail:
            line += f"  ({detail})"
        terminalreporter.write_line(line)
