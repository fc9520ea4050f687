import pathlib

import pytest

from dlog.core import ground
from dlog.parser import parse_theory

FIXTURES = pathlib.Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def bird_path() -> pathlib.Path:
    return FIXTURES / "bird.dl"


@pytest.fixture(scope="session")
def bird_text(bird_path) -> str:
    return bird_path.read_text()


@pytest.fixture(scope="session")
def bird(bird_text):
    return ground(parse_theory(bird_text))
