import json
from pathlib import Path

import pytest

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def goldens():
    return json.loads((FIXTURES / "goldens.json").read_text())
