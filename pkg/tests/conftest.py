from __future__ import annotations

from importlib import resources
from pathlib import Path

import pytest

from flagqec import build_css, load_code
from flagqec.cyclic import BinaryPolynomial, ClassicalCode

DATA = Path(str(resources.files("flagqec").joinpath("data")))
GOLDEN = Path(__file__).parent / "golden"

H7 = "0,2,3,4"
H30 = "0,2,4,6,10,14,16,22"


def css_from_h(h: str, n: int, name: str):
    c = ClassicalCode.from_check_poly(BinaryPolynomial.parse(h), n).with_distance()
    return build_css(c, c, name)


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA


@pytest.fixture(scope="session")
def steane():
    return load_code(DATA / "steane.code")


@pytest.fixture(scope="session")
def code30():
    """[[30,14,3]] in the labelling used by the shipped logical table."""
    return load_code(DATA / "code30.code")


@pytest.fixture(scope="session")
def code30_literal():
    """[[30,14,3]] with check rows taken from h exactly as written."""
    return css_from_h(H30, 30, "code30-literal")


def pytest_terminal_summary(terminalreporter):
    from helpers import ACCEPTANCE

    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[n])
