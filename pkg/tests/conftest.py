import pytest
from hypothesis import settings

from sullivan_inv.corpus import corpus_models

settings.register_profile("default", deadline=None, max_examples=200, derandomize=True)
settings.load_profile("default")

CORPUS = corpus_models()


@pytest.fixture(scope="session")
def corpus():
    return CORPUS


ELLIPTIC = ["s2", "s2xs2", "cp3", "pure_k3", "s3", "mixed_a", "mixed_b", "mixed_c", "heisenberg"]
PURE_HOMOGENEOUS = ["s2", "s2xs2", "cp3", "pure_k3", "s3"]


CRITERIA: list = []


def record(label: str, ok: bool, detail: str = "") -> bool:
    line = f"{label}: {'PASS' if ok else 'FAIL'}" + (f" ({detail})" if detail else "")
    CRITERIA.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if CRITERIA:
        terminalreporter.section("acceptance criteria")
        for line in CRITERIA:
            terminalreporter.write_line(line)
