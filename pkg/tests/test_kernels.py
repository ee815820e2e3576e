import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from polyadic import _pykernels, kernels
from polyadic.core import DerivedModular, FiniteTable

compiled = pytest.mark.skipif(kernels.IMPLEMENTATION != "compiled",
                              reason="compiled kernels not built")


def brute_assoc(table, m, n):
    for t in itertools.product(range(m), repeat=2 * n - 1):
        ref = table[(table[t[:n]],) + t[n:]]
        for i in range(1, n):
            val = table[t[:i] + (table[t[i:i + n]],) + t[i + n:]]
            if val != ref:
                return t
    return None


def random_table(seed, m, n):
    rng = np.random.default_rng(seed)
    return FiniteTable(n, m, rng.integers(0, m, size=(m,) * n))


@given(st.integers(0, 10**6), st.integers(2, 3), st.integers(2, 3))
def test_python_assoc_matches_brute_force(seed, m, n):
    sys = random_table(seed, m, n)
    hit = kernels.first_assoc_failure(sys, impl="python")
    want = brute_assoc(sys.table, m, n)
    if want is None:
        assert hit is None
    else:
        assert tuple(int(d) for d in _pykernels.decode(hit[0], m, 2 * n - 1)) == want


@compiled
@given(st.integers(0, 10**6), st.integers(2, 4), st.integers(2, 3))
def test_assoc_parity(seed, m, n):
    sys = random_table(seed, m, n)
    assert kernels.first_assoc_failure(sys) == kernels.first_assoc_failure(sys, impl="python")


@compiled
@given(st.integers(0, 10**6), st.integers(2, 3), st.integers(2, 3))
def test_medial_parity(seed, m, n):
    sys = random_table(seed, m, n)
    assert kernels.first_medial_failure(sys) == kernels.first_medial_failure(sys, impl="python")


@compiled
@given(st.integers(0, 10**6), st.integers(2, 5), st.integers(2, 4))
def test_chain_parity(seed, m, n):
    rng = np.random.default_rng(seed)
    sys = random_table(seed, m, n)
    star = rng.integers(0, m, size=(m, m))
    psi = rng.integers(0, m, size=(n, m))
    b = int(rng.integers(0, m))
    assert (kernels.first_chain_failure(sys, star, psi, b)
            == kernels.first_chain_failure(sys, star, psi, b, impl="python"))


def test_subtraction_witness_both_backends(subtraction3):
    assert kernels.first_assoc_failure(subtraction3, impl="python") == (1, 1)
    assert kernels.first_assoc_failure(subtraction3) == (1, 1)


def test_lazy_path_for_large_derived():
    # 5^9 > table limit forces the lazy evaluator
    sys = DerivedModular(5, 9, 1)
    assert not sys.has_table
    assert kernels.first_chain_failure(sys, np.zeros((5, 5), int), np.zeros((9, 5), int), 0,
                                       impl="python") == 0


def test_decode_round_trip():
    digits = _pykernels.decode(np.arange(27), 3, 3)
    back = digits[0] * 9 + digits[1] * 3 + digits[2]
    assert (back == np.arange(27)).all()
