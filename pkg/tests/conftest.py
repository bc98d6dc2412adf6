import pytest

from seqreflect.corpus import corpus_spec
from seqreflect.dsl import parse_spec


def one(text: str):
    (spec,) = parse_spec(text)
    return spec


@pytest.fixture
def tensor():
    return corpus_spec("Tensor")


@pytest.fixture
def with_():
    return corpus_spec("With")


@pytest.fixture
def par():
    return corpus_spec("Par")


@pytest.fixture
def tonk():
    return corpus_spec("Tonk")


@pytest.fixture
def tensor_plus():
    return corpus_spec("TensorPlus")


# acceptance criteria report one line each at the end of the run
ACCEPTANCE: dict = {}


def record(number: int, title: str, ok: bool, detail: str = "") -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title}" + (f" ({detail})" if detail else "")
    ACCEPTANCE[number] = line
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for number in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[number])
