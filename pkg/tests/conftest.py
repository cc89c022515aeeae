import numpy as np
import pytest
from hypothesis import strategies as st


def spin_vector(n: int, rng: np.random.Generator) -> np.ndarray:
    return (rng.integers(0, 2, size=n, dtype=np.int8) * 2 - 1).astype(np.int8)


def spin_arrays(min_n=1, max_n=12):
    """Hypothesis strategy for small spin vectors."""
    return st.integers(min_n, max_n).flatmap(
        lambda n: st.lists(st.sampled_from([-1, 1]), min_size=n, max_size=n)
    ).map(lambda xs: np.array(xs, dtype=np.int8))


def training_sets(min_k=1, max_k=4, min_n=2, max_n=10):
    """Hypothesis strategy for K x N spin matrices."""
    def build(shape):
        k, n = shape
        return st.lists(
            st.lists(st.sampled_from([-1, 1]), min_size=n, max_size=n),
            min_size=k, max_size=k,
        ).map(lambda rows: np.array(rows, dtype=np.int8))

    return st.tuples(st.integers(min_k, max_k), st.integers(min_n, max_n)).flatmap(build)


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
