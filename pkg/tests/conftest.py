import pathlib

import pytest

from ncdeform.algebra import truncate
from ncdeform.cli import parse_algebra

DATA = pathlib.Path(__file__).parent / "data"

# the corpus used by the structural suites; dw is the two-loop algebra
# with relations (xy + yx, x^2 - y^3)
CORPUS = ["a2", "loop2", "kx2", "kx3", "kx4", "kx5", "comm3", "dw"]


def corpus_text(name: str) -> str:
    return (DATA / f"{name}.alg").read_text()


def corpus_path(name: str) -> str:
    return str(DATA / f"{name}.alg")


@pytest.fixture(scope="session")
def presentations():
    return {name: parse_algebra(corpus_text(name)) for name in CORPUS}


@pytest.fixture(scope="session")
def algebras(presentations):
    return {name: truncate(pres) for name, pres in presentations.items()}
