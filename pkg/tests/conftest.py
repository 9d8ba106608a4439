import os
import sys

import pytest
from hypothesis import HealthCheck, settings

from wahull.cra import make_cra
from wahull.wa import WeightedAutomaton

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def alternating():
    """a^n -> 2^n for even n, 0 for odd n."""
    return WeightedAutomaton.build([1, 0], {"a": [[0, 2], [2, 0]]}, [1, 0])


def sum_pow2():
    """a^n -> 2^(n+1) - 1."""
    return WeightedAutomaton.build([1, 2], {"a": [[1, 0], [1, 2]]}, [1, 0])


def two_state_doubler():
    """Two states swapping on every letter, one register doubled each step,
    output the register in state 0 and 0 in state 1."""
    return make_cra("a", [1], {(0, "a"): (1, [[2]]), (1, "a"): (0, [[2]])}, [[1], [0]])


def affine_doubler():
    """X := 2 initially, X := 2X on each letter, output X - 1."""
    return make_cra("a", [2], {(0, "a"): (0, [[2]], [0])}, [([1], -1)], mode="affine")


@pytest.fixture
def alt():
    return alternating()


@pytest.fixture
def sp2():
    return sum_pow2()
