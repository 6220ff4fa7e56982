"""Quaternions over real cyclotomic numbers and SO(4) elements [l, r].

The pair [l, r] acts on R^4 = H by x -> conj(l) * x * r.  Products follow
[l1, r1][l2, r2] = [l1 l2, r1 r2], so in a product the left factor is the
one applied first: apply(g1 g2, x) == apply(g2, apply(g1, x)).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .cyclo import CycloNumber, cos_pi, root_power, sin_pi
from .linalg import Subspace, full_space, kernel, matmul, rref, zero_space


class QuaternionError(ValueError):
    pass


@dataclass(frozen=True)
class Quaternion:
    """x1 + i x2 + j x3 + k x4 with real cyclotomic components."""

    x1: CycloNumber
    x2: CycloNumber
    x3: CycloNumber
    x4: CycloNumber

    @property
    def order(self) -> int:
        return self.x1.order

    @property
    def components(self) -> tuple[CycloNumber, CycloNumber, CycloNumber, CycloNumber]:
        return (self.x1, self.x2, self.x3, self.x4)

    @classmethod
    def from_components(cls, comps: Sequence) -> "Quaternion":
        return cls(*comps)

    @classmethod
    def from_rationals(cls, N: int, values: Sequence[Fraction | int]) -> "Quaternion":
        return cls(*(CycloNumber.rational(N, v) for v in values))

    @classmethod
    def basis(cls, N: int, name: str) -> "Quaternion":
        idx = "1ijk".index(name)
        return cls.from_rationals(N, [1 if t == idx else 0 for t in range(4)])

    @classmethod
    def from_complex(cls, z1: CycloNumber, z2: CycloNumber) -> "Quaternion":
        """The quaternion z1 + z2 j for complex cyclotomic z1, z2."""
        N = z1.order
        half = Fraction(1, 2)
        i = root_power(N, N // 4)
        re = lambda z: (z + z.conjugate()) * half
        im = lambda z: (z - z.conjugate()) * (-i) * half
        # (a + b i) j = a j + b k
        return cls(re(z1), im(z1), re(z2), im(z2))

    def to_complex_pair(self) -> tuple[CycloNumber, CycloNumber]:
        i = root_power(self.order, self.order // 4)
        return self.x1 + i * self.x2, self.x3 + i * self.x4

    def __mul__(self, other: "Quaternion") -> "Quaternion":
        return qmul(self, other)

    def __add__(self, other: "Quaternion") -> "Quaternion":
        return Quaternion(*(a + b for a, b in zip(self.components, other.components)))

    def __sub__(self, other: "Quaternion") -> "Quaternion":
        return Quaternion(*(a - b for a, b in zip(self.components, other.components)))

    def __neg__(self) -> "Quaternion":
        return Quaternion(*(-a for a in self.components))

    def scale(self, c) -> "Quaternion":
        return Quaternion(*(a * c for a in self.components))

    def conj(self) -> "Quaternion":
        return Quaternion(self.x1, -self.x2, -self.x3, -self.x4)

    def norm2(self) -> CycloNumber:
        return self.x1 * self.x1 + self.x2 * self.x2 + self.x3 * self.x3 + self.x4 * self.x4

    def is_unit(self) -> bool:
        return self.norm2() == 1

    def is_zero(self) -> bool:
        return all(x.is_zero() for x in self.components)

    @property
    def real(self) -> CycloNumber:
        return self.x1

    def to_float(self) -> list[float]:
        return [float(x) for x in self.components]

    def to_json(self) -> list:
        return [x.to_json() for x in self.components]

    @classmethod
    def from_json(cls, data: list) -> "Quaternion":
        if len(data) != 4:
            raise QuaternionError("a quaternion needs exactly 4 components")
        return cls(*(CycloNumber.from_json(c) for c in data))

    def embed(self, M: int) -> "Quaternion":
        return Quaternion(*(x.embed(M) for x in self.components))


def qmul(p: Quaternion, q: Quaternion) -> Quaternion:
    """Hamilton product."""
    a1, b1, c1, d1 = p.components
    a2, b2, c2, d2 = q.components
    return Quaternion(
        a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
        a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
        a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
        a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
    )


def e_quat(N: int, s: int, power: int = 1) -> Quaternion:
    """e_s^power = cos(pi power/s) + i sin(pi power/s) as a quaternion in Q(zeta_N)."""
    zero = CycloNumber.zero(N)
    return Quaternion(cos_pi(N, power, s), sin_pi(N, power, s), zero, zero)


def _leading_sign(q1: Quaternion, q2: Quaternion) -> int:
    for x in q1.components + q2.components:
        for c in x.nums:
            if c:
                return 1 if c > 0 else -1
    return 0


@dataclass(frozen=True)
class RotationElement:
    """The SO(4) element [l, r], stored with the sign choice making the first
    nonzero numerator of (l, r) positive."""

    l: Quaternion
    r: Quaternion

    @property
    def order(self) -> int:
        return self.l.order

    def __mul__(self, other: "RotationElement") -> "RotationElement":
        return compose(self, other)

    def inverse(self) -> "RotationElement":
        return make_element(self.l.conj(), self.r.conj(), check=False)

    def is_identity(self) -> bool:
        return self.l == self.r and self.l.x1 == 1

    def to_json(self) -> dict:
        return {"l": self.l.to_json(), "r": self.r.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> "RotationElement":
        try:
            l, r = data["l"], data["r"]
        except (KeyError, TypeError) as exc:
            raise QuaternionError(f"rotation element needs 'l' and 'r' fields: {exc}") from None
        return make_element(Quaternion.from_json(l), Quaternion.from_json(r))

    def embed(self, M: int) -> "RotationElement":
        return make_element(self.l.embed(M), self.r.embed(M), check=False)

    def __repr__(self) -> str:
        return f"[{self.l.to_float()}, {self.r.to_float()}]"


def make_element(l: Quaternion, r: Quaternion, check: bool = True) -> RotationElement:
    if check:
        if l.order != r.order:
            raise QuaternionError("l and r live in different fields")
        if not all(x.is_real() for x in l.components + r.components):
            raise QuaternionError("quaternion components must be real")
        if not (l.is_unit() and r.is_unit()):
            raise QuaternionError("l and r must be unit quaternions")
    if _leading_sign(l, r) < 0:
        l, r = -l, -r
    return RotationElement(l, r)


def identity(N: int) -> RotationElement:
    one = Quaternion.basis(N, "1")
    return RotationElement(one, one)


def minus_identity(N: int) -> RotationElement:
    one = Quaternion.basis(N, "1")
    return make_element(one, -one, check=False)


def compose(g1: RotationElement, g2: RotationElement) -> RotationElement:
    return make_element(qmul(g1.l, g2.l), qmul(g1.r, g2.r), check=False)


def power(g: RotationElement, k: int) -> RotationElement:
    if k < 0:
        return power(g.inverse(), -k)
    out = identity(g.order)
    base = g
    while k:
        if k & 1:
            out = compose(out, base)
        base = compose(base, base)
        k >>= 1
    return out


def apply(g: RotationElement, x: Quaternion) -> Quaternion:
    """x -> conj(l) x r."""
    return qmul(qmul(g.l.conj(), x), g.r)


def to_matrix(g: RotationElement) -> list[list[CycloNumber]]:
    """4x4 matrix whose columns are the images of 1, i, j, k."""
    N = g.order
    cols = [apply(g, Quaternion.basis(N, b)).components for b in "1ijk"]
    return [[cols[c][r] for c in range(4)] for r in range(4)]


def trace_char(g: RotationElement) -> CycloNumber:
    """Character of the natural representation: 4 Re(l) Re(r)."""
    return g.l.x1 * g.r.x1 * 4


def element_order(g: RotationElement, cap: int = 10000) -> int:
    h = g
    for n in range(1, cap + 1):
        if h.is_identity():
            return n
        h = compose(h, g)
    raise QuaternionError(f"element order exceeds cap {cap}")


def fixed_space(g: RotationElement) -> Subspace:
    """Plane fixed by a single rotation, R^4 for the identity, 0 otherwise."""
    N = g.order
    if g.is_identity():
        return full_space(N)
    if g.l.x1 != g.r.x1:
        return zero_space(N)
    one = Quaternion.basis(N, "1")
    v1 = g.l - g.r.conj()
    v2 = one - qmul(g.l.conj(), g.r.conj())
    space = rref([v1.components, v2.components], N)
    if space.dim != 2:
        space = fixed_space_kernel(g)
    return space


def fixed_space_kernel(g: RotationElement) -> Subspace:
    """Oracle: kernel of to_matrix(g) - identity."""
    M = to_matrix(g)
    one = CycloNumber.one(g.order)
    rows = [[M[r][c] - (one if r == c else 0) for c in range(4)] for r in range(4)]
    return kernel(rows, g.order)


def matrix_of_product(g1: RotationElement, g2: RotationElement) -> list[list[CycloNumber]]:
    """to_matrix(g1 g2) computed as to_matrix(g2) @ to_matrix(g1)."""
    return matmul(to_matrix(g2), to_matrix(g1))
