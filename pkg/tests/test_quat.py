from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from so4groups.cyclo import CycloNumber
from so4groups.linalg import det, matmul, rref
from so4groups.quat import (
    Quaternion,
    QuaternionError,
    RotationElement,
    apply,
    compose,
    e_quat,
    element_order,
    fixed_space,
    fixed_space_kernel,
    identity,
    make_element,
    minus_identity,
    power,
    qmul,
    to_matrix,
    trace_char,
)
from so4groups.series import build_family, named_elements

N = 24  # houses e_3, e_6, e_4
Q = named_elements(3, N)


def hamilton(p, q):
    # textbook product on float 4-vectors, written independently of qmul
    a1, b1, c1, d1 = p
    a2, b2, c2, d2 = q
    w = a1 * a2 - (b1 * b2 + c1 * c2 + d1 * d2)
    v1, v2 = np.array([b1, c1, d1]), np.array([b2, c2, d2])
    v = a1 * v2 + a2 * v1 + np.cross(v1, v2)
    return np.array([w, *v])


def el(a, b):
    return make_element(Q[a], Q[b])


def test_qmul_examples():
    assert qmul(Q["i"], Q["j"]) == Q["k"]
    assert qmul(Q["j"], Q["1"]) == Q["j"]
    sq = qmul(Q["e_m"], Q["e_m"])
    assert sq == e_quat(N, 3, 2)
    assert np.allclose(sq.to_float(), [np.cos(2 * np.pi / 3), np.sin(2 * np.pi / 3), 0, 0])


def test_make_element_examples():
    one = Q["1"]
    assert make_element(-one, -one) == identity(N)
    J = make_element(Q["i"], Q["1"])
    assert J.l == Q["i"] and J.r == Q["1"]
    with pytest.raises(QuaternionError):
        make_element(one + one, one)
    with pytest.raises(QuaternionError):
        make_element(Quaternion.basis(8, "1"), one)


def test_compose_examples():
    g = el("e_m", "i")
    p = power(g, 3)
    assert p.l == -Q["1"] or p.l == Q["1"]
    assert p in (make_element(-Q["1"], Q["i"]), make_element(-Q["1"], -Q["i"]))
    assert compose(el("e_m", "1"), el("e_m", "1")) == make_element(e_quat(N, 3, 2), Q["1"])
    assert compose(g, g.inverse()) == identity(N)


def test_apply_examples():
    x = apply(el("1", "j"), Q["1"])
    assert x == Q["j"]
    z = Quaternion.basis(N, "i") + Quaternion.basis(N, "j")
    assert apply(el("i", "j"), z) == z
    assert apply(identity(N), z) == z


def test_to_matrix_examples(g13):
    M = to_matrix(identity(N))
    assert all(M[r][c] == (1 if r == c else 0) for r in range(4) for c in range(4))
    J = to_matrix(make_element(Q["i"], Q["1"]))
    expected = [[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]]
    assert [[int(x.as_rational()) for x in row] for row in J] == expected
    for g in g13.elements:
        assert det(to_matrix(g)) == 1


def test_trace_char_examples():
    assert trace_char(identity(N)) == 4
    assert trace_char(el("i", "j")) == 0
    assert trace_char(el("e_m", "1")) == 2


def test_element_order_examples():
    assert element_order(el("e_m", "i")) == 12
    assert element_order(identity(N)) == 1
    assert element_order(el("j", "j e_4")) == 2


def test_fixed_space_examples():
    S = fixed_space(el("i", "j"))
    z = lambda *xs: [CycloNumber.rational(N, x) for x in xs]
    assert S == rref([z(0, 1, 1, 0), z(1, 0, 0, -1)], N)
    g = el("e_m", "i")
    for r in range(1, 12):
        assert fixed_space(power(g, r)).dim == 0
    assert fixed_space(identity(N)).dim == 4
    assert fixed_space(minus_identity(N)).dim == 0


def test_matrix_anti_homomorphism_on_all_pairs(g13):
    # the left factor acts first, so matrices multiply in reverse order
    mats = g13._matrices
    T = g13.table
    for a in range(g13.order):
        for b in range(g13.order):
            assert mats[T[a, b]] == matmul(mats[b], mats[a])


def test_apply_composition_order(g13):
    x = Quaternion.from_rationals(N, (1, 2, 3, 5))
    for g1 in g13.elements[:10]:
        for g2 in g13.elements[::7]:
            assert apply(compose(g1, g2), x) == apply(g2, apply(g1, x))


@pytest.mark.parametrize("family,m", [("g1", 3), ("g2", 3), ("g3", 5), ("f2", 5)])
def test_trace_char_equals_matrix_trace(family, m):
    G = build_family(family, m)
    for g, M in zip(G.elements, G._matrices):
        assert trace_char(g) == M[0][0] + M[1][1] + M[2][2] + M[3][3]


@pytest.mark.parametrize("family,m", [("g1", 3), ("g2", 5), ("g3", 3)])
def test_fixed_space_dimension_rule_and_kernel_oracle(family, m):
    G = build_family(family, m)
    for g, fix in zip(G.elements, G.fixed_spaces):
        assert fix == fixed_space_kernel(g)
        plus_minus_id = g.is_identity() or g == minus_identity(G.field_order)
        expected = 4 if g.is_identity() else (2 if not plus_minus_id and g.l.x1 == g.r.x1 else 0)
        assert fix.dim == expected


@pytest.mark.parametrize("family,m", [("g1", 3), ("g2", 3), ("g3", 3)])
def test_order_two_fixed_plane_formula(family, m):
    # for an involution [a, b] other than -1: Fix = span{1 + a^-1 b, a + b},
    # except [a, -a] where both vectors vanish and the kernel is used instead
    G = build_family(family, m)
    one = Quaternion.basis(G.field_order, "1")

    for g, k in zip(G.elements, G.element_orders):
        if k != 2 or g == minus_identity(G.field_order):
            continue
        a, b = g.l, g.r
        span = rref([(one + qmul(a.conj(), b)).components, (a + b).components], G.field_order)
        if span.dim == 0:
            assert b == -a
            assert fixed_space(g) == fixed_space_kernel(g) and fixed_space(g).dim == 2
        else:
            assert span == fixed_space(g)


quats = st.lists(st.integers(-4, 4), min_size=4, max_size=4)


@given(quats, quats)
def test_qmul_matches_float_hamilton_product(p, q):
    P, R = Quaternion.from_rationals(N, p), Quaternion.from_rationals(N, q)
    assert np.allclose(qmul(P, R).to_float(), hamilton(p, q))
    assert (qmul(P, R)).norm2() == P.norm2() * R.norm2()


@given(st.sampled_from(range(48)), st.sampled_from(range(48)), quats)
def test_norm_preservation_and_sign_canonical(a, b, x):
    G = build_family("g1", 3)
    g = compose(G.elements[a], G.elements[b])
    X = Quaternion.from_rationals(N, x)
    assert apply(g, X).norm2() == X.norm2()
    assert make_element(-g.l, -g.r) == g
    assert hash(make_element(-g.l, -g.r)) == hash(g)


def test_json_roundtrip():
    g = el("e_2m", "j e_4")
    assert RotationElement.from_json(g.to_json()) == g
    assert Quaternion.from_json(Q["k"].to_json()) == Q["k"]
    with pytest.raises(QuaternionError):
        RotationElement.from_json({"l": Q["1"].to_json()})
