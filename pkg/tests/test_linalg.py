from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from so4groups.cyclo import CycloNumber, root_power
from so4groups.linalg import (
    det,
    full_space,
    identity_matrix,
    intersect,
    kernel,
    matmul,
    rref,
    transpose,
    zero_space,
)
from so4groups.quat import make_element, Quaternion, to_matrix

N = 8


def vec(*xs, order=N):
    return [CycloNumber.rational(order, Fraction(x)) for x in xs]


rational_vectors = st.lists(st.integers(-3, 3), min_size=4, max_size=4)
spans = st.lists(rational_vectors, min_size=0, max_size=3)


def space(rows, order=N):
    return rref([vec(*r, order=order) for r in rows], order)


def sympy_rank(rows):
    return sympy.Matrix(rows).rank() if rows else 0


def test_rref_examples():
    assert rref([], N).dim == 0
    S = rref([vec(1, 0, 0, 0), vec(2, 0, 0, 0)], N)
    assert S.dim == 1 and S.basis == (tuple(vec(1, 0, 0, 0)),)
    # span{i + j, 1 - k}, reduced by hand: rows (1,0,0,-1) and (0,1,1,0)
    S = rref([vec(0, 1, 1, 0), vec(1, 0, 0, -1)], N)
    assert S.basis == (tuple(vec(1, 0, 0, -1)), tuple(vec(0, 1, 1, 0)))
    with pytest.raises(ValueError):
        rref([vec(1, 0, 0)], N)


def test_intersect_examples():
    V = space([[1, 2, 0, 0], [0, 0, 1, 1]])
    assert intersect(V, V) == V
    assert intersect(V, zero_space(N)) == zero_space(N)
    assert intersect(full_space(N), V) == V


def test_kernel_examples():
    assert kernel(identity_matrix(N), N).dim == 0
    zero = [[CycloNumber.zero(N)] * 4 for _ in range(4)]
    assert kernel(zero, N) == full_space(N)
    g = make_element(Quaternion.basis(N, "i"), Quaternion.basis(N, "j"))
    M = to_matrix(g)
    rows = [[M[r][c] - (1 if r == c else 0) for c in range(4)] for r in range(4)]
    assert kernel(rows, N) == space([[0, 1, 1, 0], [1, 0, 0, -1]])


def test_two_coset_planes_of_g13_meet_trivially(g13):
    planes = [f for f in g13.fixed_spaces if f.dim == 2]
    U, W = planes[0], next(p for p in planes if p != planes[0])
    assert intersect(U, W).dim == 0


def test_det_and_transpose():
    z = root_power(8, 1)
    A = [[z, vec(1)[0]], [vec(2)[0], z * z]]
    assert det(A) == z * z * z - 2
    M = [vec(1, 2, 0, 0), vec(0, 1, 3, 0), vec(0, 0, 1, 4), vec(5, 0, 0, 1)]
    assert det(M) == int(sympy.Matrix([[1, 2, 0, 0], [0, 1, 3, 0], [0, 0, 1, 4], [5, 0, 0, 1]]).det())
    assert transpose(transpose(M)) == M
    assert matmul(identity_matrix(N), M) == M


@given(spans)
def test_rref_is_idempotent_and_rank_matches_sympy(rows):
    S = space(rows)
    assert rref(S.basis, N) == S
    assert S.dim == sympy_rank(rows)
    for r in rows:
        assert S.contains(vec(*r))


@given(spans, spans)
def test_grassmann_identity(a, b):
    U, W = space(a), space(b)
    assert intersect(U, W).dim + (U + W).dim == U.dim + W.dim


@given(spans, spans, spans)
def test_intersection_commutative_and_associative(a, b, c):
    U, V, W = space(a), space(b), space(c)
    assert intersect(U, V) == intersect(V, U)
    assert intersect(intersect(U, V), W) == intersect(U, intersect(V, W))
    I = intersect(U, V)
    assert U.contains_subspace(I) and V.contains_subspace(I)


@given(spans)
def test_complement_is_orthogonal(rows):
    S = space(rows)
    C = S.complement()
    assert S.dim + C.dim == 4
    for u in S.basis:
        for w in C.basis:
            assert sum((x * y for x, y in zip(u, w)), CycloNumber.zero(N)).is_zero()


def test_irrational_entries():
    # a plane with sqrt(2) entries: span{(1, sqrt2, 0, 0), (0, 0, 1, sqrt2)}
    N24 = 24
    s2 = root_power(N24, 3) + root_power(N24, -3)
    one, zero = CycloNumber.one(N24), CycloNumber.zero(N24)
    U = rref([[one, s2, zero, zero], [zero, zero, one, s2]], N24)
    W = rref([[s2, 2 * one, zero, zero], [one, s2, one, s2]], N24)
    assert U == W
    assert intersect(U, rref([[one, zero, zero, zero]], N24)).dim == 0
