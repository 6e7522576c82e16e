import pytest

from accord import casestudy


@pytest.fixture(scope="session")
def case_matrix():
    return casestudy.performance_matrix()


@pytest.fixture(scope="session")
def ahp_matrix():
    return casestudy.ahp_matrix()


@pytest.fixture()
def store_dir(tmp_path):
    return tmp_path / "sessions"
