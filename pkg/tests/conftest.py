from functools import lru_cache
from pathlib import Path

import pytest

from koszulhh.complexes import HochschildComplex, RegularCoefficients
from koszulhh.koszul_dual import koszul_dual
from koszulhh.presentation import confluent_rewriter, load_presentation

PRESENTATIONS = Path(__file__).resolve().parent.parent / "presentations"
CURVED_SUITE = ["heisenberg", "weyl1", "weyl2", "aq", "clifford", "skew"]


def kp(name: str) -> Path:
    return PRESENTATIONS / f"{name}.kp"


@lru_cache(maxsize=None)
def load(name: str):
    return load_presentation(kp(name))


@lru_cache(maxsize=None)
def dual(name: str, degree: int = 4):
    return koszul_dual(load(name), degree)


@lru_cache(maxsize=None)
def regular_complex(name: str, degree: int = 4) -> HochschildComplex:
    p = load(name)
    return HochschildComplex(p, dual(name, degree), RegularCoefficients(p, confluent_rewriter(p)))


@pytest.fixture(scope="session")
def heisenberg_hc():
    return regular_complex("heisenberg")


ACCEPTANCE_LINES: list = []


@pytest.fixture
def criterion():
    """Record one summary line per acceptance criterion."""

    def record(number: int, title: str, ok: bool, detail: str = ""):
        status = "PASS" if ok else "FAIL"
        ACCEPTANCE_LINES.append(f"[{status}] criterion {number}: {title}" + (f" ({detail})" if detail else ""))
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
