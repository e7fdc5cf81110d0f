import numpy as np
import pytest

from helpers import make_corpus, make_dataset


@pytest.fixture(scope="session")
def corpus():
    return make_corpus(n=10, h=120, w=160, seed=99)


@pytest.fixture(scope="session")
def dataset_root(tmp_path_factory):
    root = tmp_path_factory.mktemp("dataset")
    make_dataset(root, n=5)
    return root


@pytest.fixture
def gray_image():
    return np.full((48, 64, 3), 128, dtype=np.uint8)
