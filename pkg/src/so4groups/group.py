"""Finite groups of SO(4) elements: closure, classes, normalizers, stabilizers.

Elements are indexed in breadth-first discovery order.  Subgroups are
frozensets of indices into the parent's element list.
"""

from __future__ import annotations

import logging
from collections import deque
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .linalg import Subspace, intersect, full_space
from .quat import (
    Quaternion,
    RotationElement,
    apply,
    compose,
    fixed_space,
    identity,
    to_matrix,
    trace_char,
)

log = logging.getLogger(__name__)

DEFAULT_CAP = 100_000
Subgroup = frozenset


class GroupError(ValueError):
    pass


class FiniteRotationGroup:
    """A finite subgroup of SO(4) closed under composition."""

    def __init__(
        self,
        elements: list[RotationElement],
        generators: list[RotationElement],
        gen_table: np.ndarray,
        parent: list[tuple[int, int]],
        name: str = "",
    ):
        self.elements = elements
        self.generators = generators
        self.index = {g: n for n, g in enumerate(elements)}
        self._gen_table = gen_table
        self._parent = parent
        self.name = name

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def field_order(self) -> int:
        return self.elements[0].order

    def __contains__(self, g: RotationElement) -> bool:
        return g in self.index

    def __repr__(self) -> str:
        return f"FiniteRotationGroup({self.name or '?'}, order={self.order})"

    # -- tables derived from the generator action ------------------------

    @cached_property
    def table(self) -> np.ndarray:
        """Cayley table: table[a, b] is the index of elements[a] * elements[b]."""
        n = self.order
        T = np.empty((n, n), dtype=np.int32)
        T[0] = np.arange(n)
        for g in range(1, n):
            s, h = self._parent[g]
            # elements[g] = generators[s] * elements[h]
            T[g] = self._gen_table[s][T[h]]
        return T

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    @cached_property
    def inverses(self) -> np.ndarray:
        return np.argmin(self.table, axis=1).astype(np.int32)  # identity has index 0

    @cached_property
    def element_orders(self) -> list[int]:
        T = self.table
        orders = []
        for g in range(self.order):
            k, h = 1, g
            while h != 0:
                h = T[h, g]
                k += 1
            orders.append(k)
        return orders

    def conjugate(self, h: int, g: int) -> int:
        """Index of h g h^-1."""
        return int(self.table[self.table[h, g], self.inverses[h]])

    def conjugates_of(self, g: int) -> np.ndarray:
        T = self.table
        return T[T[:, g], self.inverses]

    @cached_property
    def conjugacy_classes(self) -> list[list[int]]:
        seen = np.zeros(self.order, dtype=bool)
        classes = []
        for g in range(self.order):
            if not seen[g]:
                cls = sorted({int(x) for x in self.conjugates_of(g)})
                seen[cls] = True
                classes.append(cls)
        return classes

    @cached_property
    def class_of(self) -> list[int]:
        out = [0] * self.order
        for c, members in enumerate(self.conjugacy_classes):
            for g in members:
                out[g] = c
        return out

    # -- exact per-element data --------------------------------------------

    @cached_property
    def characters(self) -> list:
        return [trace_char(g) for g in self.elements]

    @cached_property
    def fixed_spaces(self) -> list[Subspace]:
        return [fixed_space(g) for g in self.elements]

    def matrix(self, g: int) -> list:
        return self._matrices[g]

    @cached_property
    def _matrices(self) -> list:
        return [to_matrix(g) for g in self.elements]

    @cached_property
    def float_matrices(self) -> np.ndarray:
        return np.array([[[float(x) for x in row] for row in M] for M in self._matrices])

    @property
    def all_indices(self) -> Subgroup:
        return frozenset(range(self.order))

    def indices_of(self, elements: Iterable[RotationElement]) -> Subgroup:
        out = set()
        for g in elements:
            if g not in self.index:
                raise GroupError("element is not in the group")
            out.add(self.index[g])
        return frozenset(out)

    def subset(self, H: Iterable[int]) -> list[RotationElement]:
        return [self.elements[h] for h in sorted(H)]


def closure(
    generators: Sequence[RotationElement], cap: int = DEFAULT_CAP, name: str = ""
) -> FiniteRotationGroup:
    """Breadth-first closure of the generators under left multiplication."""
    if cap < 1:
        raise GroupError("cap must be at least 1")
    generators = list(generators)
    if not generators:
        raise GroupError("need at least one generator")
    N = generators[0].order
    if any(g.order != N for g in generators):
        raise GroupError("generators live in different fields")
    e = identity(N)
    elements = [e]
    index = {e: 0}
    parent = [(-1, -1)]
    rows: list[list[int]] = [[] for _ in generators]
    queue = deque([0])
    while queue:
        h = queue.popleft()
        x = elements[h]
        for s, gen in enumerate(generators):
            y = compose(gen, x)
            k = index.get(y)
            if k is None:
                if len(elements) >= cap:
                    raise GroupError(f"closure exceeded cap of {cap} elements")
                k = len(elements)
                index[y] = k
                elements.append(y)
                parent.append((s, h))
                queue.append(k)
            rows[s].append((h, k))
    n = len(elements)
    gen_table = np.empty((len(generators), n), dtype=np.int32)
    for s, pairs in enumerate(rows):
        for h, k in pairs:
            gen_table[s, h] = k
    log.debug("closure %s: %d elements", name, n)
    return FiniteRotationGroup(elements, generators, gen_table, parent, name)


def generated_subgroup(G: FiniteRotationGroup, gens: Iterable[int]) -> Subgroup:
    """Subgroup of G generated by the given element indices (via the table)."""
    T = G.table
    gens = list(gens)
    found = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for h in frontier:
            for s in gens:
                k = int(T[s, h])
                if k not in found:
                    found.add(k)
                    nxt.append(k)
        frontier = nxt
    return frozenset(found)


def is_subgroup(G: FiniteRotationGroup, H: Iterable[int]) -> bool:
    H = frozenset(H)
    if 0 not in H:
        return False
    idx = np.fromiter(H, dtype=np.int64)
    prods = G.table[np.ix_(idx, idx)]
    return bool(np.isin(prods, idx).all())


def conjugate_subgroup(G: FiniteRotationGroup, H: Iterable[int], g: int) -> Subgroup:
    T = G.table
    ginv = G.inverses[g]
    return frozenset(int(T[T[g, h], ginv]) for h in H)


def normalizer(G: FiniteRotationGroup, H: Iterable[int]) -> Subgroup:
    """{g in G : g H g^-1 = H}."""
    H = frozenset(H)
    if not is_subgroup(G, H):
        raise GroupError("H is not a subgroup of G")
    gens = [h for h in H if h != 0]
    out = []
    for g in range(G.order):
        if all(G.conjugate(g, h) in H for h in gens):
            out.append(g)
    return frozenset(out)


def centralizer(G: FiniteRotationGroup, S: Iterable[int]) -> Subgroup:
    S = list(S)
    T = G.table
    return frozenset(g for g in range(G.order) if all(T[g, s] == T[s, g] for s in S))


def center(G: FiniteRotationGroup, H: Iterable[int] | None = None) -> Subgroup:
    """Center of H (default: all of G)."""
    H = G.all_indices if H is None else frozenset(H)
    return frozenset(g for g in centralizer(G, H) if g in H)


def conjugacy_classes(G: FiniteRotationGroup) -> list[list[int]]:
    return G.conjugacy_classes


def pointwise_stabilizer(G: FiniteRotationGroup, W: Subspace) -> Subgroup:
    """{g in G : g w = w for every basis vector w of W}."""
    if W.dim == 0:
        return G.all_indices
    # g fixes W pointwise exactly when W lies in Fix(g)
    out = []
    for g, fix in enumerate(G.fixed_spaces):
        if fix.dim < W.dim:
            continue
        if fix == W or (fix.dim > W.dim and fix.contains_subspace(W)):
            out.append(g)
    return frozenset(out)


def pointwise_stabilizer_direct(G: FiniteRotationGroup, W: Subspace) -> Subgroup:
    """Oracle: {g : apply(g, w) == w for every basis vector w}, by direct action."""
    basis = [Quaternion.from_components(w) for w in W.basis]
    return frozenset(g for g in range(G.order) if all(apply(G.elements[g], w) == w for w in basis))


def fixed_space_of(G: FiniteRotationGroup, H: Iterable[int]) -> Subspace:
    """Intersection of the fixed spaces of the elements of H."""
    out = full_space(G.field_order)
    for h in sorted(H):
        out = intersect(out, G.fixed_spaces[h])
        if out.dim == 0:
            break
    return out


def subgroup_tests(G: FiniteRotationGroup, H) -> dict:
    """Containment, index and normality of H in G.

    H may be an index subset of G or another FiniteRotationGroup (embedded
    into G's field when the orders differ).
    """
    if isinstance(H, FiniteRotationGroup):
        elems = H.elements
        if H.field_order != G.field_order:
            if G.field_order % H.field_order:
                return {"is_subgroup": False, "index": None, "is_normal": False}
            elems = [g.embed(G.field_order) for g in elems]
        if not all(g in G for g in elems):
            return {"is_subgroup": False, "index": None, "is_normal": False}
        idx = G.indices_of(elems)
    else:
        idx = frozenset(H)
    if not is_subgroup(G, idx):
        return {"is_subgroup": False, "index": None, "is_normal": False}
    normal = all(G.conjugate(g, h) in idx for g in range(G.order) for h in idx)
    return {"is_subgroup": True, "index": G.order // len(idx), "is_normal": normal}
