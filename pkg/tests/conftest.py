import sys
from pathlib import Path

import pytest

HERE = Path(__file__).parent
sys.path.insert(0, str(HERE))

FIGURE1 = ["ACGT", "GCAT", "ACAA", "AAGT", "TCGA", "ACCC",
           "AAGT", "GACT", "ACAC", "CCAT", "GTCT", "TCAG"]


@pytest.fixture
def fixtures_dir():
    return HERE / "fixtures"


@pytest.fixture
def figure1():
    return list(FIGURE1)
