import pytest

from nonolab.boards import CompleteFill, extract_descriptions

# 5x5 fixture board used across modules: one solution, known descriptions.
FIXTURE_ROWS = [
    [0, 0, 1, 0, 0],
    [0, 1, 0, 1, 0],
    [0, 0, 0, 0, 0],
    [0, 1, 1, 0, 0],
    [1, 0, 1, 0, 0],
]


@pytest.fixture
def fixture_fill() -> CompleteFill:
    return CompleteFill.of(FIXTURE_ROWS)


@pytest.fixture
def fixture_puzzle(fixture_fill):
    return extract_descriptions(fixture_fill)
