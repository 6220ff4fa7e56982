from fractions import Fraction

import numpy as np
import pytest

from so4groups.cyclo import CycloNumber
from so4groups.group import closure, fixed_space_of, generated_subgroup
from so4groups.quat import identity, make_element
from so4groups.rep import (
    IntegralityError,
    average_to_int,
    character_report,
    class_function_check,
    commutant_dimension,
    commutant_dimension_linear,
    fix_dimension,
    is_absolutely_irreducible,
)
from so4groups.series import build_family, named_elements

from conftest import ODD_M


def test_commutant_examples():
    assert commutant_dimension(build_family("g1", 5)) == 1
    assert commutant_dimension(build_family("f1", 5)) == 2
    assert commutant_dimension(closure([identity(8)])) == 16


def test_absolute_irreducibility_examples():
    assert is_absolutely_irreducible(build_family("g3", 7))
    assert not is_absolutely_irreducible(build_family("f2", 5))
    assert not is_absolutely_irreducible(closure([identity(8)]))


def test_fix_dimension_examples(g13):
    assert fix_dimension(g13, [0]) == 4
    q = named_elements(3, g13.field_order)
    g = g13.index[make_element(q["j"], q["j e_4"])]
    assert fix_dimension(g13, [0, g]) == 2
    H = build_family("h", 3)
    assert fix_dimension(g13, g13.indices_of(H.elements)) == 0


def test_average_to_int_guards():
    assert average_to_int(CycloNumber.rational(8, 12), 4, "x") == 3
    with pytest.raises(IntegralityError):
        average_to_int(CycloNumber.rational(8, 5), 4, "x")
    with pytest.raises(IntegralityError):
        average_to_int(CycloNumber.from_terms(8, [(1, 1)]), 1, "x")


@pytest.mark.parametrize("family,m", [("g1", 3), ("g2", 5), ("g3", 3), ("f1", 3), ("f2", 5), ("h", 5)])
def test_commutant_character_vs_linear_algebra(family, m):
    G = build_family(family, m)
    assert commutant_dimension(G) == commutant_dimension_linear(G)


def test_commutant_linear_on_trivial_and_single_involution():
    G = closure([identity(8)])
    assert commutant_dimension_linear(G) == 16
    q = named_elements(3)
    G = closure([make_element(q["j"], q["j"])])
    assert commutant_dimension(G) == commutant_dimension_linear(G) == 8


def test_commutant_numeric_oracle():
    # dimension of the fixed space of X -> M X M^-1 averaged over G, in floats
    for family, m in (("g2", 3), ("f3", 5)):
        G = build_family(family, m)
        P = sum(np.kron(M, np.linalg.inv(M).T) for M in G.float_matrices) / G.order
        assert round(np.trace(P)) == commutant_dimension(G)


@pytest.mark.parametrize("family,m", [("g1", 3), ("g3", 5), ("f2", 7)])
def test_character_properties(family, m):
    G = build_family(family, m)
    assert class_function_check(G)
    chi = G.characters
    assert all(chi[g] == chi[G.inverses[g]] for g in range(G.order))
    assert all(c.is_real() for c in chi)
    rep = character_report(G)
    assert sum(r["size"] for r in rep) == G.order


def test_fix_dimension_matches_linear_algebra(g13):
    rng = np.random.default_rng(3)
    for _ in range(25):
        H = generated_subgroup(g13, [int(x) for x in rng.integers(0, g13.order, size=2)])
        assert fix_dimension(g13, H) == fixed_space_of(g13, H).dim


@pytest.mark.parametrize("m", ODD_M)
def test_series_absolutely_irreducible_and_f_not(m):
    for j in (1, 2, 3):
        assert is_absolutely_irreducible(build_family(f"g{j}", m))
        assert not is_absolutely_irreducible(build_family(f"f{j}", m))
