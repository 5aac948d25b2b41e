import pytest


def pytest_addoption(parser):
    parser.addoption("--deep", action="store_true", default=False,
                     help="also run the expensive n = 6 acceptance checks")


@pytest.fixture
def deep(request):
    return request.config.getoption("--deep")
