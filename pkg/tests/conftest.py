from pathlib import Path

import pytest

DATA = Path(__file__).resolve().parent / "data"
LANGS = ("hi", "mr", "bn", "gu", "or", "ta", "te")
SCRIPT_OF = {"hi": "Devanagari", "mr": "Devanagari", "bn": "Bengali", "gu": "Gujarati",
             "or": "Odia", "ta": "Tamil", "te": "Telugu"}


def read_lines(path):
    return [l for l in Path(path).read_text(encoding="utf-8").splitlines() if l.strip()]


def lexicon(lang):
    return read_lines(DATA / "lexica" / f"{lang}.txt")


def sentences(lang):
    return read_lines(DATA / "sentences" / f"{lang}.txt")


@pytest.fixture(scope="session")
def data_dir():
    return DATA


# lines recorded by test_acceptance.py, echoed at the end of the run
ACCEPTANCE_LINES = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for key in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[key])
