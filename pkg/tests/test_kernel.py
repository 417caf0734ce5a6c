import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from revstruct import _pykernel, kernel
from revstruct.reach import explore, reachable_coherent
from revstruct.suites import chain, random_coherent_structure

needs_compiled = pytest.mark.skipif(not kernel.COMPILED_AVAILABLE, reason="compiled kernel not built")


def test_fallback_always_available():
    assert kernel.get("python") is _pykernel
    assert kernel.get() is kernel.ACTIVE
    with pytest.raises(ValueError):
        kernel.get("fortran")


@needs_compiled
def test_compiled_selected_by_default():
    import os

    if not os.environ.get("REVSTRUCT_PURE_PYTHON"):
        assert kernel.NAME == "compiled"


def test_buffer_types():
    assert isinstance(kernel.buffer([1, 2], _pykernel), list)


@needs_compiled
@settings(max_examples=150)
@given(st.integers(0, 2**32))
def test_kernels_agree_on_random_pairs(seed):
    rng = random.Random(seed)
    source = random_coherent_structure(rng)
    states = list(explore(source, 10_000))
    target = rng.choice(states)
    py = reachable_coherent(source, target, kernel="python")
    c = reachable_coherent(source, target, kernel="compiled")
    assert py.reachable == c.reachable is True
    assert py.witness == c.witness
    assert c.witness.final == target


@needs_compiled
@pytest.mark.parametrize("n", [5, 64, 257])
def test_kernels_agree_on_chains(n):
    source, target = chain(n)
    py = reachable_coherent(source, target, kernel="python")
    c = reachable_coherent(source, target, kernel="compiled")
    assert py.witness == c.witness and c.stats.explored == py.stats.explored == n // 2 * 2 + 2 * n


def test_phase_contract_python():
    # gate 0: [^a > b] with <a> free, target marker 2
    seq, start, nin, length = [0, 1], [0], [1], [2]
    markers, signals = [0], [1, 0]
    assert _pykernel.backward_phase(seq, start, nin, length, markers, signals) == []
    steps = _pykernel.forward_phase(seq, start, nin, length, markers, signals, [2])
    assert steps == [(0, 0), (0, 1)] and markers == [2] and signals == [0, 1]
    back = _pykernel.backward_phase(seq, start, nin, length, markers, signals)
    assert back == [(0, 2), (0, 1)] and markers == [0] and signals == [1, 0]
