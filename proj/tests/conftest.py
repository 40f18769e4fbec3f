import pathlib

import pytest


def pytest_addoption(parser):
    parser.addoption("--cli", required=True, help="path to the moodcast executable")
    parser.addoption("--schemas", required=True, help="directory holding the JSON schemas")


@pytest.fixture(scope="session")
def cli(request):
    return pathlib.Path(request.config.getoption("--cli"))


@pytest.fixture(scope="session")
def schemas(request):
    return pathlib.Path(request.config.getoption("--schemas"))
