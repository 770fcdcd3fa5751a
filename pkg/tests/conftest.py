import pathlib

import pytest

REPO_ROOT = pathlib.Path(__file__).resolve().parent.parent
FIXTURE_DIR = REPO_ROOT / "fixtures"


@pytest.fixture
def fixture_dir() -> pathlib.Path:
    return FIXTURE_DIR
