from __future__ import annotations

from pathlib import Path

import pytest

from depcat import finset, interpreter, parser, signature

FIXTURES = Path(__file__).parent / "fixtures"


def load(name: str, prelude: str = ""):
    """Parse a fixture (optionally after a prelude fixture) and validate its signature."""
    text = (FIXTURES / prelude).read_text() if prelude else ""
    src = parser.parse_file(text + (FIXTURES / name).read_text())
    return src, signature.validate_signature(signature.from_source(src))


def equality_pairs(src) -> list:
    return [(c.judgement.ctx, c.judgement.left, c.judgement.right, c.judgement.ty) for c in src.checks()]


def bool_finset_interpreter(sig, limit: int = finset.DEFAULT_LIMIT):
    m = finset.finset_model(limit)
    env = finset.parse_env((FIXTURES / "bool.env").read_text())
    it = interpreter.Interpreter(m, sig, interpreter.finset_structure(m, sig, env.structure))
    it.validate()
    return it


@pytest.fixture(scope="session")
def bool_sig():
    return load("bool.mltt")[1]


CRITERIA: dict[int, str] = {}


@pytest.fixture
def criterion():
    """Record the one-line outcome of an acceptance criterion."""

    def record(n: int, ok: bool, detail: str = ""):
        line = f"CRITERION {n} {'PASS' if ok else 'FAIL'} {detail}".rstrip()
        CRITERIA[n] = line
        print(line)

    return record


def pytest_terminal_summary(terminalreporter):
    if CRITERIA:
        terminalreporter.section("acceptance")
        for n in sorted(CRITERIA):
            terminalreporter.write_line(CRITERIA[n])
