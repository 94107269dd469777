import pathlib

import pytest

from s3wgdm.caseio import load_case, load_params
from s3wgdm.linguistic import DHLTScale

DATA = pathlib.Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def sle_case_path():
    return str(DATA / "sle_case.json")


@pytest.fixture(scope="session")
def sle_params_path():
    return str(DATA / "sle_params.json")


@pytest.fixture(scope="session")
def sle_case(sle_case_path):
    return load_case(sle_case_path)


@pytest.fixture(scope="session")
def sle_params(sle_params_path):
    return load_params(sle_params_path)


@pytest.fixture(scope="session")
def scale33():
    return DHLTScale(3, 3)
