import numpy as np
import pytest


@pytest.fixture
def ladder():
    """3x2 matrix with hand-checkable prox at lam = 2.1.

    Column 0 dominates (l1 norm 6); at lam = 2.1 the optimum keeps only
    its largest entry, shrunk to 0.9, and leaves column 1 untouched.
    """
    return np.array([[1.0, 0.1], [2.0, 0.2], [3.0, 0.3]])


@pytest.fixture
def ladder_solution():
    return np.array([[0.0, 0.1], [0.0, 0.2], [0.9, 0.3]])
