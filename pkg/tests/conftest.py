import random
from fractions import Fraction

import pytest

from glim.abelian import FinAbGroup, group_new, subgroup_from_generators
from glim.divalg import Bicharacter, DivisionClass
from glim.groupring import GroupRingElem, subgroup_sum
from glim.limits import LimitDescriptor


@pytest.fixture
def klein():
    return group_new([2, 2])


@pytest.fixture
def z4():
    return group_new([4])


@pytest.fixture
def trivial_group():
    return group_new([1])


@pytest.fixture
def klein_full(klein):
    return subgroup_from_generators(
        klein, [klein.element((1, 0)), klein.element((0, 1))]
    )


@pytest.fixture
def pauli(klein_full):
    return DivisionClass(Bicharacter.from_exponents(klein_full, [[0, 1], [1, 0]]))


@pytest.fixture
def x_t(klein_full):
    return subgroup_sum(klein_full)


def const(group: FinAbGroup, n: int) -> GroupRingElem:
    return GroupRingElem.constant(group, n)


def uhf(group: FinAbGroup, n: int, x0: int = 1) -> LimitDescriptor:
    """Constant-label descriptor over a (usually trivial) group."""
    return LimitDescriptor(group, const(group, x0), (), (const(group, n),))


def random_label(rng: random.Random, group: FinAbGroup, max_terms=2, max_mult=3):
    elems = group.elements()
    data = {}
    for _ in range(rng.randint(1, max_terms)):
        g = rng.choice(elems)
        data[g] = data.get(g, 0) + rng.randint(1, max_mult)
    return GroupRingElem.from_dict(group, {g: Fraction(m) for g, m in data.items()})


def random_descriptor(rng: random.Random, group: FinAbGroup) -> LimitDescriptor:
    x0 = random_label(rng, group)
    cycle = tuple(random_label(rng, group) for _ in range(rng.randint(1, 2)))
    prefix = tuple(random_label(rng, group) for _ in range(rng.randint(0, 1)))
    return LimitDescriptor(group, x0, prefix, cycle)
