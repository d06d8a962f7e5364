import numpy as np
import pytest

from levelspectra import from_parent_list

# A 9-vertex tree whose level matrix, characteristic polynomial and spectrum
# are known exactly; used as the golden example throughout the suite.
SAMPLE9_PARENTS = [0, 1, 2, 7, 6, 1, 6, 3, 3]
SAMPLE9_LEVELS = [0, 1, 2, 3, 2, 1, 2, 3, 3]
SAMPLE9_MATRIX = np.array([
    [0, 1, 2, 3, 2, 1, 2, 3, 3],
    [1, 0, 1, 2, 1, 0, 1, 2, 2],
    [2, 1, 0, 1, 0, 1, 0, 1, 1],
    [3, 2, 1, 0, 1, 2, 1, 0, 0],
    [2, 1, 0, 1, 0, 1, 0, 1, 1],
    [1, 0, 1, 2, 1, 0, 1, 2, 2],
    [2, 1, 0, 1, 0, 1, 0, 1, 1],
    [3, 2, 1, 0, 1, 2, 1, 0, 0],
    [3, 2, 1, 0, 1, 2, 1, 0, 0],
], dtype=np.int64)
SAMPLE9_CHARPOLY = (1, 0, -80, -276, -216, 0, 0, 0, 0, 0)
SAMPLE9_SPECTRUM = [10.415812724, 0.0, 0.0, 0.0, 0.0, 0.0,
                    -1.1775860608, -2.6888645876, -6.5493620755]
SAMPLE9_RHO = 10.415812724
SAMPLE9_LI = 44
SAMPLE9_H = 160
SAMPLE9_ROW_SUMS = [17, 10, 7, 10, 7, 10, 7, 10, 10]


@pytest.fixture
def sample9():
    return from_parent_list(SAMPLE9_PARENTS, one_based=True)
