"""The three series G_j(m), their index-2 subgroups F_j(m), H(m) and F(m)."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

from .group import FiniteRotationGroup, closure, subgroup_tests
from .quat import Quaternion, RotationElement, compose, e_quat, make_element, qmul, to_matrix


class Family(str, Enum):
    G1 = "g1"
    G2 = "g2"
    G3 = "g3"
    F1 = "f1"
    F2 = "f2"
    F3 = "f3"
    H = "h"
    FCENTER = "fc"


@dataclass(frozen=True)
class FamilySpec:
    family: Family
    m: int

    def __post_init__(self):
        if not isinstance(self.m, int) or self.m < 3 or self.m % 2 == 0:
            raise ValueError("m must be odd and >= 3")
        object.__setattr__(self, "family", Family(self.family))

    @property
    def label(self) -> str:
        names = {"fc": "F", "h": "H"}
        f = self.family.value
        return f"{names.get(f, f.upper()[0] + '_' + f[1:])}({self.m})"


def field_order(m: int, need_e8: bool = False) -> int:
    return math.lcm(16 if need_e8 else 8, 4 * m)


def named_elements(m: int, N: int | None = None) -> dict[str, Quaternion]:
    N = N or field_order(m)
    one, i, j, k = (Quaternion.basis(N, b) for b in "1ijk")
    e4 = e_quat(N, 4)
    return {
        "1": one,
        "i": i,
        "j": j,
        "k": k,
        "e_m": e_quat(N, m),
        "e_2m": e_quat(N, 2 * m),
        "e_4": e4,
        "j e_4": qmul(j, e4),
    }


def generators(spec: FamilySpec, N: int | None = None) -> list[RotationElement]:
    q = named_elements(spec.m, N)
    el = lambda a, b: make_element(q[a], q[b])
    h_gen = el("e_m", "i")
    f = spec.family
    if f is Family.G1:
        return [el("e_m", "1"), el("1", "i"), el("1", "j"), el("j", "e_4")]
    if f is Family.G2:
        return [el("e_m", "1"), el("1", "i"), el("e_2m", "j"), el("j", "e_4")]
    if f is Family.G3:
        return [el("e_m", "1"), el("1", "i"), el("j", "1"), el("1", "j")]
    if f in (Family.F1, Family.F3):
        return [h_gen, el("1", "j")]
    if f is Family.F2:
        return [h_gen, el("e_2m", "j")]
    if f is Family.H:
        return [h_gen]
    return [compose(h_gen, h_gen)]


@lru_cache(maxsize=None)
def build(spec: FamilySpec, N: int | None = None) -> FiniteRotationGroup:
    """Closed group for the family; cached, groups are immutable."""
    return closure(generators(spec, N), name=spec.label)


def build_family(family: str, m: int) -> FiniteRotationGroup:
    return build(FamilySpec(Family(family), m))


def index2_subgroup_family(family: Family) -> Family:
    return {Family.G1: Family.F1, Family.G2: Family.F2, Family.G3: Family.F3}[Family(family)]


def j_operator(N: int) -> RotationElement:
    """J = [i, 1]."""
    return make_element(Quaternion.basis(N, "i"), Quaternion.basis(N, "1"))


def j_commutation_partition(G: FiniteRotationGroup) -> dict[str, frozenset]:
    """Split G by M J = J M, M J = -J M, or neither (exact 4x4 matrices)."""
    J = to_matrix(j_operator(G.field_order))
    commuting, anti, other = set(), set(), set()
    for g in range(G.order):
        M = G.matrix(g)
        MJ = [[sum((M[r][t] * J[t][c] for t in range(4)), M[r][0] * 0) for c in range(4)] for r in range(4)]
        JM = [[sum((J[r][t] * M[t][c] for t in range(4)), M[r][0] * 0) for c in range(4)] for r in range(4)]
        if MJ == JM:
            commuting.add(g)
        elif all(MJ[r][c] == -JM[r][c] for r in range(4) for c in range(4)):
            anti.add(g)
        else:
            other.add(g)
    return {"commuting": frozenset(commuting), "anticommuting": frozenset(anti), "other": frozenset(other)}


def divisibility_inclusion(j: int, m: int, m2: int) -> bool:
    """Whether every element of G_j(m) lies in G_j(m2), compared in a common field."""
    fam = Family(f"g{j}")
    N = math.lcm(field_order(m), field_order(m2))
    small = build(FamilySpec(fam, m), N)
    big = build(FamilySpec(fam, m2), N)
    return subgroup_tests(big, small)["is_subgroup"]
