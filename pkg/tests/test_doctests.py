import doctest

import pytest

import riffle.necklaces
import riffle.permutations
import riffle.qpoly


@pytest.mark.parametrize(
    "module", [riffle.permutations, riffle.qpoly, riffle.necklaces]
)
def test_module_doctests(module):
    failures, tested = doctest.testmod(module)
    assert failures == 0
    assert tested > 0
