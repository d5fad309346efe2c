import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from helpers import pathology_doc


@pytest.fixture
def pathology():
    return pathology_doc()
