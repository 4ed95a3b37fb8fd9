import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from naxbench.rpc import start_background
from naxbench.store import default_profile, write_space_data


@pytest.fixture(scope="session")
def data_root(tmp_path_factory):
    # the client tests only ever open nb201 problems
    root = tmp_path_factory.mktemp("data")
    write_space_data(root, "nb201", default_profile("nb201"), seed=7)
    return root


@pytest.fixture(scope="session")
def server(data_root):
    srv = start_background(data_root=data_root)
    yield srv
    srv.shutdown()
    srv.server_close()
