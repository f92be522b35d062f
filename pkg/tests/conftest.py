import numpy as np
import pytest

from ldpclab.gf2 import SparseBinaryMatrix, systematic_generator
from ldpclab.sim import make_redundant_pool
from ldpclab.redundancy import build_representation_set
from ldpclab.wimax import renormalize, wimax_base_matrix, wimax_parity_check


@pytest.fixture(scope="session")
def wimax576():
    return wimax_parity_check(576)


@pytest.fixture(scope="session")
def wimax576_generator(wimax576):
    return systematic_generator(wimax576)


@pytest.fixture(scope="session")
def wimax_base_z24():
    return renormalize(wimax_base_matrix(), 24)


@pytest.fixture(scope="session")
def wimax576_pool(wimax576):
    return make_redundant_pool(wimax576, "base")


@pytest.fixture(scope="session")
def wimax576_reps(wimax576, wimax576_pool):
    return build_representation_set(wimax576, 15, seed=7, pool=wimax576_pool,
                                    origin="wimax-n576")


@pytest.fixture(scope="session")
def hamming74():
    return SparseBinaryMatrix.from_dense(np.array([
        [1, 0, 1, 0, 1, 0, 1],
        [0, 1, 1, 0, 0, 1, 1],
        [0, 0, 0, 1, 1, 1, 1],
    ], dtype=np.uint8))


@pytest.fixture(scope="session")
def extended_hamming84():
    # Hamming(7,4) plus overall parity column
    dense = np.array([
        [1, 0, 1, 0, 1, 0, 1, 0],
        [0, 1, 1, 0, 0, 1, 1, 0],
        [0, 0, 0, 1, 1, 1, 1, 0],
        [1, 1, 1, 1, 1, 1, 1, 1],
    ], dtype=np.uint8)
    return SparseBinaryMatrix.from_dense(dense)


def enumerate_codewords(gform):
    """All 2^k codewords of a small code, as a (2^k, n) uint8 array."""
    from ldpclab.sim import encode

    k = gform.k
    words = []
    for u in range(1 << k):
        info = np.array([(u >> i) & 1 for i in range(k)], dtype=np.uint8)
        words.append(encode(gform, info))
    return np.array(words, dtype=np.uint8)
