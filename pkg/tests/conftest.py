import pathlib

import pytest

from pbreduce.datasets import load_iris, load_wdbc

REPO = pathlib.Path(__file__).resolve().parent.parent
DATA = REPO / "data"
RULES = REPO / "rules"


@pytest.fixture(scope="session")
def iris_records():
    return load_iris(DATA / "iris.csv")


@pytest.fixture(scope="session")
def wdbc_records():
    return load_wdbc(DATA / "wdbc.csv")
