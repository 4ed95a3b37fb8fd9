import os

# keep BLAS single-threaded so the timing checks measure one core
os.environ.setdefault("OMP_NUM_THREADS", "1")
os.environ.setdefault("OPENBLAS_NUM_THREADS", "1")
os.environ.setdefault("MKL_NUM_THREADS", "1")

import pytest

from naxbench.spaces import SPACE_NAMES
from naxbench.store import default_profile, write_space_data


@pytest.fixture(scope="session")
def data_root(tmp_path_factory):
    """One synthetic data root shared by the whole session (seed 7)."""
    root = tmp_path_factory.mktemp("data")
    for name in SPACE_NAMES:
        write_space_data(root, name, default_profile(name), seed=7)
    return root
