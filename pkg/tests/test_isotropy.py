from fractions import Fraction

import numpy as np
import pytest

from so4groups.cyclo import CycloNumber
from so4groups.group import closure, fixed_space_of
from so4groups.isotropy import (
    character_fix_agreement,
    fixed_space_lattice,
    isotropy_subgroups,
    isotropy_types,
    ize_check,
    principal_isotropy,
)
from so4groups.linalg import full_space, rref
from so4groups.quat import identity, make_element
from so4groups.series import build_family, named_elements

from conftest import ODD_M, SERIES, types_of


def float_isotropy(G, samples=3, seed=0):
    """Stabilizers of random points in each element's fixed plane, from float matrices."""
    rng = np.random.default_rng(seed)
    mats = G.float_matrices
    found = set()
    for M in mats:
        _, s, vt = np.linalg.svd(M - np.eye(4))
        null = vt[s < 1e-9]
        if len(null) in (0, 4):
            continue
        for _ in range(samples):
            x = rng.normal(size=len(null)) @ null
            stab = frozenset(g for g, A in enumerate(mats) if np.allclose(A @ x, x, atol=1e-9))
            found.add(stab)
    return found


def plane(N, *rows):
    return rref([[CycloNumber.rational(N, x) for x in r] for r in rows], N)


def test_lattice_examples(g13):
    L = fixed_space_lattice(g13)
    assert sum(1 for W in L if W.dim == 2) == 12
    G3 = build_family("g3", 3)
    assert sum(1 for W in fixed_space_lattice(G3) if W.dim == 2) == 18
    triv = closure([identity(8)])
    assert fixed_space_lattice(triv) == {full_space(8)}
    assert isotropy_subgroups(triv) == {}


@pytest.mark.parametrize("family,m", [("g1", 3), ("g2", 3), ("g3", 3), ("g2", 5), ("f2", 3), ("h", 3)])
def test_isotropy_subgroups_match_float_oracle(family, m):
    G = build_family(family, m)
    exact = set(isotropy_subgroups(G))
    # nontrivial stabilizers of points of fixed planes; generic points have trivial stabilizer
    assert exact == {S for S in float_isotropy(G) if len(S) > 1}


@pytest.mark.parametrize("m", ODD_M)
@pytest.mark.parametrize("family", SERIES)
def test_types_are_order_two_planes_and_orbit_stabilizer(family, m):
    G = build_family(family, m)
    types = types_of(family, m)
    expected = {"g1": 1, "g2": 2, "g3": 3}[family]
    assert len(types) == expected
    for t in types:
        assert t.order == 2 and t.fix_dim == 2
        assert t.class_length * t.normalizer_order == G.order
        assert len(t.conjugates) == t.class_length
    assert len(principal_isotropy(G)) == 1


@pytest.mark.parametrize("m", ODD_M)
def test_normalizer_actions(m):
    (t1,) = types_of("g1", m)
    assert t1.normalizer_image_order == 2 and t1.image_is_minus_identity

    images = sorted((t.normalizer_image_order, t.rotation_angle) for t in types_of("g2", m))
    assert images == [(2, Fraction(1)), (2 * m, Fraction(1, m))]

    for t in types_of("g3", m):
        assert t.normalizer_image_order == 4 and t.normalizer_image_cyclic
        assert t.rotation_angle == Fraction(1, 2)
        assert not t.image_is_minus_identity


def test_fixed_plane_examples():
    N = build_family("g2", 3).field_order
    G2 = build_family("g2", 3)
    q = named_elements(3, N)
    g = G2.index[make_element(q["i"], q["j"])]
    assert G2.fixed_spaces[g] == plane(N, (1, 0, 0, -1), (0, 1, 1, 0))
    G3 = build_family("g3", 3)
    q = named_elements(3, G3.field_order)
    h = G3.index[make_element(q["j"], q["j"])]
    assert G3.fixed_spaces[h] == plane(G3.field_order, (1, 0, 0, 0), (0, 0, 1, 0))


@pytest.mark.parametrize("family,m", [("g1", 3), ("g2", 5), ("g3", 7), ("f1", 3), ("f3", 5)])
def test_character_formula_agrees_with_fixed_spaces(family, m):
    G = build_family(family, m)
    types = isotropy_types(G, with_action=False)
    assert character_fix_agreement(G, types)
    for t in types:
        assert fixed_space_of(G, t.representative) == t.fix


def test_json_of_type(g13):
    (t,) = types_of("g1", 3)
    js = t.to_json(g13)
    assert js["order"] == 2 and js["fix_dim"] == 2 and js["class_length"] == 12
    assert js["rotation_angle_over_pi"] == "1"


def test_ize_examples():
    for family in SERIES:
        assert ize_check(build_family(family, 3))["verdict"]
    q = named_elements(3)
    small = closure([make_element(q["j"], q["j"])])
    verdict = ize_check(small)
    assert not verdict["absolutely_irreducible"] and not verdict["verdict"]
    # F groups fail on absolute irreducibility alone
    assert not ize_check(build_family("f2", 5))["verdict"]
