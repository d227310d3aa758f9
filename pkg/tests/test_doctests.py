"""Run the inline usage examples embedded in module docstrings."""

import doctest

import pytest

import heckespin.koornwinder
import heckespin.matchings
import heckespin.numerics
import heckespin.spinrep
import heckespin.weyl

MODULES = [
    heckespin.numerics,
    heckespin.weyl,
    heckespin.spinrep,
    heckespin.matchings,
    heckespin.koornwinder,
]


@pytest.mark.parametrize("module", MODULES, ids=lambda m: m.__name__)
def test_module_doctests(module):
    result = doctest.testmod(module)
    assert result.failed == 0
