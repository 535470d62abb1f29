import math

import numpy as np
import pytest

from thermalchain import model


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def random_density_matrix(rng, dim):
    a = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    rho = a @ a.conj().T
    return rho / np.trace(rho).real


def random_two_bath_spec(rng, n_qubits):
    """Spec with all bath-relevant transition frequencies positive."""
    min_ratio = math.sqrt(2.0) if n_qubits == 3 else 1.0
    k = rng.uniform(0.1, 2.0)
    eps = min_ratio * k + rng.uniform(0.1, 3.0)
    g1, g2 = rng.uniform(1e-3, 0.1, size=2)
    b1, b2 = rng.uniform(0.2, 20.0, size=2)
    return model.two_bath_chain(n_qubits, eps, k, g1, b1, g2, b2)
