import pytest

from so4groups.group import closure, subgroup_tests
from so4groups.quat import make_element, power
from so4groups.series import (
    Family,
    FamilySpec,
    build,
    build_family,
    divisibility_inclusion,
    index2_subgroup_family,
    j_commutation_partition,
    named_elements,
)

from conftest import ODD_M


def test_build_examples():
    assert build_family("g2", 5).order == 80
    G, F = build_family("g1", 3), build_family("f1", 3)
    assert F.order == 24 and subgroup_tests(G, F)["index"] == 2
    Fc = build_family("fc", 3)
    assert Fc.order == 6
    F1 = build_family("f1", 3)
    idx = F1.indices_of(Fc.elements)
    assert all(F1.mul(a, b) == F1.mul(b, a) for a in idx for b in range(F1.order))


@pytest.mark.parametrize("bad", [4, 1, -3, 2])
def test_invalid_m_rejected(bad):
    with pytest.raises(ValueError, match="m must be odd"):
        FamilySpec(Family.G1, bad)


def test_labels():
    assert FamilySpec(Family.G2, 5).label == "G_2(5)"
    assert FamilySpec(Family.FCENTER, 3).label == "F(3)"
    assert FamilySpec(Family.H, 7).label == "H(7)"


def test_j_partition_examples(g13):
    part = j_commutation_partition(g13)
    F = build_family("f1", 3)
    assert set(g13.subset(part["commuting"])) == set(F.elements)
    assert len(part["anticommuting"]) == 24 and not part["other"]
    triv = closure([make_element(named_elements(3)["1"], named_elements(3)["1"])])
    assert j_commutation_partition(triv)["commuting"] == frozenset({0})
    G = build_family("g3", 7)
    part = j_commutation_partition(G)
    assert len(part["commuting"]) == 56
    assert set(G.subset(part["commuting"])) == set(build_family("f3", 7).elements)


def test_divisibility_inclusion_examples():
    assert divisibility_inclusion(1, 3, 9)
    assert divisibility_inclusion(2, 3, 15)
    assert divisibility_inclusion(1, 3, 3)
    assert not divisibility_inclusion(1, 3, 5)
    assert divisibility_inclusion(3, 5, 15)


@pytest.mark.parametrize("m", ODD_M)
def test_f3_equals_f1(m):
    assert set(build_family("f3", m).elements) == set(build_family("f1", m).elements)


@pytest.mark.parametrize("m", (3, 5, 7, 9))
def test_h_generator_contains_left_rotation(m):
    q = named_elements(m)
    H = closure([make_element(q["e_m"], q["i"])])
    assert H.order == 4 * m
    e4m = power(make_element(q["e_m"], q["1"]), 4)
    assert e4m in H


@pytest.mark.parametrize("m", ODD_M)
def test_h_acts_freely(m):
    H = build_family("h", m)
    assert all(f.dim == 0 for f in H.fixed_spaces[1:])


def _coset_involutions(G, F):
    return sum(1 for g, k in zip(G.elements, G.element_orders) if k == 2 and g not in F)


@pytest.mark.parametrize("m", (3, 5, 7, 9, 11))
def test_order_two_censuses(m):
    G1, F1 = build_family("g1", m), build_family("f1", m)
    G2, F2 = build_family("g2", m), build_family("f2", m)
    G3, F3 = build_family("g3", m), build_family("f3", m)
    H = build_family("h", m)
    assert _coset_involutions(G1, F1) == 4 * m
    assert _coset_involutions(F2, H) == 4
    assert _coset_involutions(G2, F2) == 4 * m
    assert _coset_involutions(G3, F3) == 6 * m


def test_index2_family_map():
    assert index2_subgroup_family(Family.G2) is Family.F2
    with pytest.raises(KeyError):
        index2_subgroup_family(Family.H)


def test_build_in_larger_field():
    spec = FamilySpec(Family.G1, 3)
    a, b = build(spec), build(spec, 48)
    assert a.order == b.order and b.field_order == 48
    assert {g.embed(48) for g in a.elements} == set(b.elements)
