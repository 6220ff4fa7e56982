"""Isotropy subgroups of the natural action, found through the lattice of
fixed-point spaces, and the action of their normalizers on Fix(H)."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .cyclo import CycloError, CycloNumber, cos_pi, mod_image
from .group import (
    FiniteRotationGroup,
    Subgroup,
    conjugate_subgroup,
    fixed_space_of,
    normalizer,
    pointwise_stabilizer,
)
from .linalg import Subspace, full_space, intersect, zero_space
from .quat import Quaternion, apply
from .rep import fix_dimension, is_absolutely_irreducible


def _mod_det(rows: list[list[int]], p: int) -> int:
    rows = [r[:] for r in rows]
    n = len(rows)
    d = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if rows[i][c] % p), None)
        if piv is None:
            return 0
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            d = -d
        d = d * rows[c][c] % p
        inv = pow(rows[c][c], -1, p)
        for i in range(c + 1, n):
            f = rows[i][c] * inv % p
            if f:
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[c])]
    return d % p


def _meets_trivially(U: Subspace, W: Subspace, images: dict) -> bool:
    """True only if U + W = R^4 is certified by a nonzero determinant mod p."""
    if U.dim + W.dim != 4:
        return False
    rows = images.get(U, ()) + images.get(W, ())
    if len(rows) != 4 or any(r is None for row in rows for r in row):
        return False
    from .cyclo import modular_root

    p, _ = modular_root(U.order)
    return _mod_det([list(r) for r in rows], p) != 0


def fixed_space_lattice(G: FiniteRotationGroup) -> set[Subspace]:
    """Fixed spaces of the elements, closed under pairwise intersection.

    The zero subspace is included when some intersection produces it.
    """
    N = G.field_order
    spaces = {fix for fix in G.fixed_spaces if fix.dim > 0}
    images = {
        W: tuple(tuple(mod_image(x) for x in row) for row in W.basis) for W in spaces
    }
    ordered = sorted(spaces, key=_space_key)
    ids = {W: n for n, W in enumerate(ordered)}
    frontier = list(ordered)
    while frontier:
        new = []
        current = list(ordered)
        for U in frontier:
            u = ids[U]
            for W in current:
                # each unordered pair once: pairs inside the frontier are visited from the later one
                if ids[W] >= u or U.dim == 4 or W.dim == 4:
                    continue
                if _meets_trivially(U, W, images):
                    meet = zero_space(N)
                else:
                    meet = intersect(U, W)
                if meet not in ids:
                    ids[meet] = len(ordered)
                    ordered.append(meet)
                    images[meet] = tuple(tuple(mod_image(x) for x in row) for row in meet.basis)
                    new.append(meet)
        frontier = new
    spaces = set(ordered)
    return spaces


def _space_key(W: Subspace):
    return (-W.dim, tuple(tuple((x.nums, x.den) for x in row) for row in W.basis))


@dataclass
class IsotropyType:
    representative: Subgroup
    fix: Subspace
    fix_dim: int
    class_length: int
    normalizer_order: int
    normalizer_image_order: int = 0
    normalizer_image_cyclic: bool = False
    rotation_angle: Fraction | None = None  # minimal rotation, as a multiple of pi
    image_is_minus_identity: bool = False
    conjugates: list[Subgroup] = field(default_factory=list, repr=False)
    normalizer: Subgroup = field(default_factory=frozenset, repr=False)

    @property
    def order(self) -> int:
        return len(self.representative)

    def to_json(self, G: FiniteRotationGroup) -> dict:
        return {
            "representative": sorted(self.representative),
            "representative_elements": [g.to_json() for g in G.subset(self.representative)],
            "order": self.order,
            "fix": self.fix.to_json(),
            "fix_dim": self.fix_dim,
            "class_length": self.class_length,
            "normalizer_order": self.normalizer_order,
            "normalizer_image_order": self.normalizer_image_order,
            "normalizer_image_cyclic": self.normalizer_image_cyclic,
            "rotation_angle_over_pi": None if self.rotation_angle is None else str(self.rotation_angle),
            "image_is_minus_identity": self.image_is_minus_identity,
        }


def isotropy_subgroups(G: FiniteRotationGroup) -> dict[Subgroup, Subspace]:
    """Nontrivial proper isotropy subgroups, keyed to their fixed spaces."""
    found = {}
    for W in fixed_space_lattice(G):
        if W.dim in (0, 4):
            continue
        S = pointwise_stabilizer(G, W)
        if len(S) > 1 and fixed_space_of(G, S) == W:
            found[S] = W
    return found


def principal_isotropy(G: FiniteRotationGroup) -> Subgroup:
    return pointwise_stabilizer(G, full_space(G.field_order))


def isotropy_types(G: FiniteRotationGroup, with_action: bool = True) -> list[IsotropyType]:
    subgroups = isotropy_subgroups(G)
    seen: set[Subgroup] = set()
    types = []
    for H in sorted(subgroups, key=lambda S: (subgroups[S].dim, sorted(S))):
        if H in seen:
            continue
        conj = {conjugate_subgroup(G, H, g) for g in range(G.order)}
        seen |= conj
        norm = normalizer(G, H)
        t = IsotropyType(
            representative=H,
            fix=subgroups[H],
            fix_dim=subgroups[H].dim,
            class_length=len(conj),
            normalizer_order=len(norm),
            conjugates=sorted(conj, key=sorted),
            normalizer=norm,
        )
        if with_action:
            normalizer_action(G, t)
        types.append(t)
    types.sort(key=lambda t: (t.fix_dim, t.class_length, min(x for x in t.representative if x)))
    return types


def _restrict(G: FiniteRotationGroup, g: int, W: Subspace) -> tuple:
    """Matrix of g on W in W's RREF basis; coordinates are read off at the pivots."""
    piv = W.pivots
    cols = []
    for b in W.basis:
        v = apply(G.elements[g], Quaternion.from_components(b)).components
        cols.append(tuple(v[c] for c in piv))
    return tuple(tuple(cols[c][r] for c in range(len(cols))) for r in range(len(piv)))


def _mat_mul(A, B):
    n = len(A)
    return tuple(
        tuple(sum((A[r][t] * B[t][c] for t in range(1, n)), A[r][0] * B[0][c]) for c in range(n)) for r in range(n)
    )


def normalizer_action(G: FiniteRotationGroup, t: IsotropyType) -> dict:
    """Image of N(H) acting on Fix(H); fills in the action fields of t."""
    W = t.fix
    N = G.field_order
    images = {}
    for n in sorted(t.normalizer):
        M = _restrict(G, n, W)
        images.setdefault(M, n)
    mats = list(images)
    k = len(mats)
    one, zero = CycloNumber.one(N), CycloNumber.zero(N)
    ident = tuple(tuple(one if r == c else zero for c in range(W.dim)) for r in range(W.dim))

    def mat_order(M):
        P, n = M, 1
        while P != ident:
            P = _mat_mul(P, M)
            n += 1
        return n

    orders = [mat_order(M) for M in mats]
    cyclic = k in orders
    minus_id = k == 2 and any(
        all(M[r][c] == (-1 if r == c else 0) for r in range(W.dim) for c in range(W.dim)) for M in mats
    )
    angle = None
    if cyclic and W.dim == 2:
        dets = {M[0][0] * M[1][1] - M[0][1] * M[1][0] for M in mats}
        if dets == {one}:
            angle = Fraction(2, k)
            # a generator of a cyclic rotation group of order k has trace 2 cos(2 pi / k) up to Galois
            # conjugation; the minimal rotation itself must occur among the images
            try:
                target = cos_pi(N, 2, k) * 2
                ok = any(M[0][0] + M[1][1] == target for M in mats)
            except CycloError:
                import math

                ok = any(abs(float(M[0][0] + M[1][1]) - 2 * math.cos(2 * math.pi / k)) < 1e-12 for M in mats)
            if not ok:
                angle = None
    t.normalizer_image_order = k
    t.normalizer_image_cyclic = cyclic
    t.rotation_angle = angle
    t.image_is_minus_identity = minus_id
    return {
        "image_order": k,
        "cyclic": cyclic,
        "rotation_angle_over_pi": angle,
        "minus_identity": minus_id,
        "element_orders": sorted(orders),
    }


def ize_check(G: FiniteRotationGroup, types: list[IsotropyType] | None = None) -> dict:
    """Absolutely irreducible with no odd-dimensional fixed space among isotropy types."""
    absirr = is_absolutely_irreducible(G)
    if types is None:
        types = isotropy_types(G, with_action=False)
    dims = [t.fix_dim for t in types]
    principal = principal_isotropy(G)
    dims.append(fixed_space_of(G, principal).dim)
    odd = any(d % 2 for d in dims)
    return {
        "absolutely_irreducible": absirr,
        "has_odd_dim_fix": odd,
        "verdict": absirr and not odd,
        "fix_dims": sorted(set(dims)),
        "principal_isotropy_order": len(principal),
    }


def character_fix_agreement(G: FiniteRotationGroup, types: list[IsotropyType]) -> bool:
    return all(fix_dimension(G, t.representative) == t.fix_dim for t in types)
