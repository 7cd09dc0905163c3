"""Cross-checks between independent routes to the same answers, on randomized
corpora: shift-invariance, matrix-factor absorption versus cone scaling, and
agreement of the two division-absorption formulations."""

import random

from glim.abelian import group_new
from glim.divalg import enumerate_division_classes
from glim.groupring import subgroup_sum
from glim.limits import (
    LimitDescriptor,
    absorbs,
    iso_elementary,
    iso_general,
    k0_realization,
    scaling_invertible,
    standard_form,
    tensor_elementary,
)

from conftest import random_descriptor, random_label


def test_shifted_descriptors_are_isomorphic():
    rng = random.Random(101)
    for factors in [[2, 2], [4]]:
        g = group_new(factors)
        for _ in range(6):
            d = random_descriptor(rng, g)
            shift = rng.choice(g.elements())
            shifted = LimitDescriptor(
                g, d.x0.translate(shift), d.prefix, d.cycle, None
            )
            r = iso_elementary(d, shifted, 6)
            assert r.verdict == "yes", (d.x0, shift, r.certificate)


def test_matrix_absorption_matches_scaling():
    # tensoring with one elementary factor is invisible exactly when the
    # factor's bar scales the cone onto itself (descriptors with S0 = S)
    rng = random.Random(103)
    checked = 0
    for factors in [[2, 2], [4]]:
        g = group_new(factors)
        while checked < 8:
            d = standard_form(random_descriptor(rng, g))
            k0 = k0_realization(d)
            if frozenset(k0.orbits) != k0.s0:
                continue
            c = random_label(rng, g)
            scaling = scaling_invertible(k0, c, 6)
            iso = iso_elementary(tensor_elementary(d, c), d, 6)
            if scaling.is_certified and iso.is_certified:
                assert scaling.verdict == iso.verdict, (d.x0, c)
                checked += 1


def test_division_absorption_consistent_with_general_iso():
    rng = random.Random(107)
    g = group_new([2, 2])
    classes = enumerate_division_classes(g)
    for _ in range(10):
        d = random_descriptor(rng, g)
        cls = rng.choice(classes)
        absorbed = absorbs(d, cls, 6)
        if not absorbed.is_certified:
            continue
        with_cls = LimitDescriptor(g, d.x0, d.prefix, d.cycle, cls)
        general = iso_general(with_cls, d, 6)
        if absorbed.verdict == "yes":
            assert general.verdict == "yes", (d.x0, cls.support.order)
        elif general.is_certified:
            assert general.verdict == "no", (d.x0, cls.support.order)


def test_iso_no_false_separation_on_equal_presentations():
    # the same limit presented with a merged cycle must compare as isomorphic
    rng = random.Random(109)
    g = group_new([2, 2])
    for _ in range(6):
        d = random_descriptor(rng, g)
        merged_label = d.cycle[0]
        for lbl in d.cycle[1:]:
            merged_label = merged_label * lbl
        merged = LimitDescriptor(g, d.x0, d.prefix, (merged_label,), None)
        assert iso_elementary(d, merged, 6).verdict == "yes"


def test_general_iso_reflexive_with_division_parts():
    rng = random.Random(127)
    g = group_new([2, 2])
    classes = enumerate_division_classes(g)
    for _ in range(6):
        d = random_descriptor(rng, g)
        cls = rng.choice(classes)
        with_cls = LimitDescriptor(g, d.x0, d.prefix, d.cycle, cls)
        assert iso_general(with_cls, with_cls, 4).verdict == "yes"


def test_certificates_replay_on_random_corpus():
    from glim.limits import (
        verify_absorbs_certificate,
        verify_iso_certificate,
        verify_scaling_certificate,
    )

    rng = random.Random(131)
    groups = [group_new(f) for f in ([2, 2], [4], [6])]
    replayed = 0
    for trial in range(30):
        g = groups[trial % len(groups)]
        d1, d2 = random_descriptor(rng, g), random_descriptor(rng, g)
        r = iso_elementary(d1, d2, 4)
        if r.is_certified:
            assert verify_iso_certificate(d1, d2, r.verdict, r.certificate)
            replayed += 1
        cls = rng.choice(enumerate_division_classes(g))
        ra = absorbs(d1, cls, 4)
        if ra.is_certified:
            assert verify_absorbs_certificate(d1, cls, ra.verdict, ra.certificate)
            replayed += 1
        c = random_label(rng, g)
        k = k0_realization(d1)
        rs = scaling_invertible(k, c, 4)
        if rs.is_certified:
            assert verify_scaling_certificate(k, c, rs.verdict, rs.certificate)
            replayed += 1
    assert replayed >= 60


def test_support_multiset_absorption_equivalence():
    # x_T-scaling and the (support, order) split must agree when certified
    rng = random.Random(113)
    g = group_new([2, 2])
    classes = enumerate_division_classes(g)
    for _ in range(12):
        d = random_descriptor(rng, g)
        cls = rng.choice(classes)
        k0 = k0_realization(d)
        x_t = subgroup_sum(cls.support)
        via_multiset = scaling_invertible(k0, x_t, 6)
        via_split = absorbs(d, cls, 6)
        if via_multiset.is_certified and via_split.is_certified:
            assert via_multiset.verdict == via_split.verdict
