import sys
from pathlib import Path

import numpy as np
import pytest

# 將專案根目錄加入 Python path
sys.path.insert(0, str(Path(__file__).parent.parent))


@pytest.fixture
def rng():
    return np.random.default_rng(2024)
