"""
Test configuration and fixtures for orbichern tests.
"""

import random
from fractions import Fraction

import pytest

from orbichern.diagalg import BaseElement, DiagElement, apply_standard
from orbichern.finmodel import ConstrFn, GSet
from orbichern.grp import cyclic_group, symmetric_group, trivial_group
from orbichern.parser import GroupSpecParser
from orbichern.qexact import Series


@pytest.fixture
def parser():
    """Create a GroupSpecParser instance for testing."""
    return GroupSpecParser()


@pytest.fixture
def s3():
    return symmetric_group(3)


@pytest.fixture
def z2():
    return cyclic_group(2)


@pytest.fixture
def z3():
    return cyclic_group(3)


@pytest.fixture
def trivial():
    return trivial_group()


@pytest.fixture
def c():
    """The standard base symbol"""
    return BaseElement.of("c")


@pytest.fixture
def swap2(z2):
    """Z/2 swapping two points"""
    return GSet.natural(z2)


@pytest.fixture
def swap_fixed3(z2):
    """Z/2 swapping two of three points"""
    return GSet.from_generator_images(3, z2, [(1, 0, 2)])


@pytest.fixture
def natural_s3(s3):
    return GSet.natural(s3)


@pytest.fixture
def two_points():
    return GSet.plain(2)


# Common test utilities

def random_series(rng: random.Random, trunc: int, constant: int = 0) -> Series:
    """Small random rational series with a fixed constant term"""
    coeffs = [Fraction(constant)] + [Fraction(rng.randint(-3, 3), rng.randint(1, 4))
                                     for _ in range(trunc)]
    return Series.from_coeffs(coeffs, trunc)


def random_element(rng: random.Random, trunc: int, bases=("c", "d")) -> DiagElement:
    """Random sum of products of generators with zero weight-0 part"""
    total = DiagElement.zero(trunc)
    for _ in range(rng.randint(1, 3)):
        term = DiagElement.unit(trunc)
        for _ in range(rng.randint(1, 2)):
            k = rng.randint(1, trunc)
            term = term.odot(apply_standard({k: rng.randint(-2, 3)}, rng.choice(bases), trunc))
        total = total + term
    return total


def random_function(rng: random.Random, space: GSet, n: int) -> ConstrFn:
    return ConstrFn(space, n, {x: Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for x in space.tuples(n)})
