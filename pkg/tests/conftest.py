import numpy as np
import pytest

from psdorder import sampling


@pytest.fixture
def rng():
    return sampling.rng_from_seed(12345)


def eig_scale(*mats) -> float:
    """max(1, largest |eigenvalue|) over Hermitian operands."""
    vals = [1.0]
    for m in mats:
        a = np.asarray(m)
        if a.size:
            vals.append(float(np.max(np.abs(np.linalg.eigvalsh(0.5 * (a + a.conj().T))))))
    return max(vals)


def min_eig(m) -> float:
    a = np.asarray(m)
    return float(np.linalg.eigvalsh(0.5 * (a + a.conj().T))[0])
