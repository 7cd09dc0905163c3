import pytest

from glim.abelian import group_new, perp_of_subgroup, subgroup_from_generators
from glim.divalg import (
    Bicharacter,
    DivisionClass,
    bicharacter_from_generator_data,
    brauer_lift,
    brauer_mul,
    brauer_unlift,
    enumerate_division_classes,
    op_class,
    radical,
)
from glim.groupring import GroupRingElem, subgroup_sum


def z44_class(u: int) -> DivisionClass:
    g = group_new([4, 4])
    full = subgroup_from_generators(g, [g.element((1, 0)), g.element((0, 1))])
    return DivisionClass(Bicharacter.from_exponents(full, [[0, u], [-u, 0]]))


def test_radical_examples(klein, klein_full, pauli):
    assert radical(pauli.bichar).order == 1
    triv_bichar = Bicharacter.trivial(klein_full)
    assert radical(triv_bichar).order == 4
    assert radical(z44_class(1).bichar).order == 1


def test_degenerate_bicharacter_is_not_a_class(klein_full):
    with pytest.raises(ValueError):
        DivisionClass(Bicharacter.trivial(klein_full))


def test_alternating_validation(klein_full):
    with pytest.raises(ValueError):
        Bicharacter.from_exponents(klein_full, [[1, 1], [1, 0]])


def test_brauer_lift_examples(klein, klein_full, pauli):
    b = brauer_lift(pauli)
    assert b.radical_dual().order == 1  # nondegenerate on the dual
    triv = DivisionClass.trivial(klein)
    assert all(v % 2 == 0 for row in brauer_lift(triv).matrix for v in row)
    d44 = z44_class(1)
    lift = brauer_lift(d44)
    tperp = perp_of_subgroup(d44.support)
    assert {x.coords for x in lift.radical_dual().elements} == {
        x.coords for x in tperp.elements
    }


def test_lift_unlift_round_trip(klein, pauli):
    for cls in enumerate_division_classes(klein) + enumerate_division_classes(
        group_new([4, 4])
    ):
        sub, bichar = brauer_unlift(brauer_lift(cls))
        assert sub.elements == cls.support.elements
        assert bichar == cls.bichar


def test_radical_of_lift_is_support_perp():
    for factors in [[2, 2], [4, 2], [4, 4], [2, 2, 2]]:
        g = group_new(factors)
        for cls in enumerate_division_classes(g):
            lift = brauer_lift(cls)
            tperp = perp_of_subgroup(cls.support)
            assert {x.coords for x in lift.radical_dual().elements} == {
                x.coords for x in tperp.elements
            }


def test_brauer_mul_pauli_squared(klein, pauli, x_t):
    e_class, y, h = brauer_mul(pauli, pauli)
    assert e_class.is_trivial
    assert y == x_t
    assert h.order == 4


def test_brauer_mul_with_trivial(klein, pauli):
    triv = DivisionClass.trivial(klein)
    e_class, y, _ = brauer_mul(pauli, triv)
    assert e_class.support.elements == pauli.support.elements
    assert e_class.bichar == pauli.bichar
    assert y == GroupRingElem.one(klein)


def test_brauer_mul_dimension_identity():
    for factors in [[2, 2], [4, 4]]:
        g = group_new(factors)
        classes = enumerate_division_classes(g)
        for d1 in classes:
            for d2 in classes:
                e_class, y, _ = brauer_mul(d1, d2)
                assert (
                    int(y.size()) ** 2 * e_class.support.order
                    == d1.support.order * d2.support.order
                )


def test_mul_of_class_with_itself_splits():
    # brauer_mul(D, D) is the class of D (x) D^op: trivial, full multiset
    for factors in [[2, 2], [4, 4]]:
        g = group_new(factors)
        for cls in enumerate_division_classes(g):
            e_class, y, _ = brauer_mul(cls, cls)
            assert e_class.is_trivial
            assert y == subgroup_sum(cls.support)


def test_op_class(klein, pauli):
    assert op_class(pauli).bichar == pauli.bichar  # values are +-1
    d = z44_class(1)
    assert op_class(d).bichar == z44_class(3).bichar
    assert op_class(op_class(d)) == d


def test_class_enumeration_counts():
    assert len(enumerate_division_classes(group_new([2, 2]))) == 2
    assert len(enumerate_division_classes(group_new([4]))) == 1
    assert len(enumerate_division_classes(group_new([4, 4]))) == 4


def test_bicharacter_from_generator_data_redundant_generators(klein):
    # the full Klein group presented with three (dependent) generators
    gens = [klein.element((1, 0)), klein.element((0, 1)), klein.element((1, 1))]
    mat = [[0, 1, 1], [1, 0, 1], [1, 1, 0]]
    bichar = bicharacter_from_generator_data(klein, gens, mat, 2)
    assert bichar.is_nondegenerate


def test_bicharacter_from_generator_data_rejects_inconsistent(klein):
    gens = [klein.element((1, 0)), klein.element((1, 0))]
    mat = [[0, 1], [1, 0]]  # beta(g, g) would have to be both 1 and -1
    with pytest.raises(ValueError):
        bicharacter_from_generator_data(klein, gens, mat, 2)


def test_brauer_equivalent_examples(klein, pauli, x_t):
    from glim.divalg import brauer_equivalent
    from glim.limits import LimitDescriptor, k0_realization

    triv = DivisionClass.trivial(klein)
    two = GroupRingElem.constant(klein, 2)
    a = LimitDescriptor(klein, two, (), (two,))
    a_prime = LimitDescriptor(klein, x_t, (), (x_t,))
    assert brauer_equivalent(pauli, pauli, k0_realization(a), 8).verdict == "yes"
    assert brauer_equivalent(pauli, triv, k0_realization(a), 8).verdict == "no"
    assert brauer_equivalent(pauli, triv, k0_realization(a_prime), 8).verdict == "yes"
