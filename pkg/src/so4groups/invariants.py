"""Counting invariant polynomials and equivariant maps by character averages,
and the explicit low-degree invariants in complex coordinates
z1 = x1 + i x2, z2 = x3 + i x4.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Callable, Sequence

from .cyclo import CycloNumber
from .group import FiniteRotationGroup
from .quat import Quaternion, RotationElement, apply, identity, compose, trace_char
from .rep import average_to_int, character_sum

log = logging.getLogger(__name__)

MAX_DEGREE_QUIET = 12


@lru_cache(maxsize=None)
def cycle_types(d: int) -> tuple[tuple[tuple[int, ...], Fraction], ...]:
    """All (i_1..i_d) with sum k i_k = d, paired with 1 / prod(k^i_k i_k!)."""
    out = []

    def rec(k: int, remaining: int, acc: list[int]):
        if k == 0:
            if remaining == 0:
                exps = tuple(reversed(acc))
                weight = 1
                for j, i in enumerate(exps, start=1):
                    weight *= j**i * factorial(i)
                out.append((exps, Fraction(1, weight)))
            return
        for i in range(remaining // k + 1):
            rec(k - 1, remaining - k * i, acc + [i])

    rec(d, d, [])
    return tuple(out)


def chi_d_from_powers(chis: Sequence[CycloNumber], d: int) -> CycloNumber:
    """Symmetrized character from chis[k-1] = chi(g^k), k = 1..d."""
    if d > MAX_DEGREE_QUIET:
        log.warning("degree %d: %d cycle types to sum", d, len(cycle_types(d)))
    N = chis[0].order
    total = CycloNumber.zero(N)
    for exps, weight in cycle_types(d):
        term = CycloNumber.rational(N, weight)
        for k, i in enumerate(exps, start=1):
            if i:
                term = term * chis[k - 1] ** i
        total = total + term
    return total


def chi_d(g: RotationElement, d: int) -> CycloNumber:
    if d < 1:
        raise ValueError("degree must be positive")
    chis = []
    h = g
    for _ in range(d):
        chis.append(trace_char(h))
        h = compose(h, g)
    return chi_d_from_powers(chis, d)


# closed forms for degrees 2-4, kept separate from the general enumeration
def chi_2_closed(c1, c2):
    return (c2 + c1 * c1) * Fraction(1, 2)


def chi_3_closed(c1, c2, c3):
    return c1 * c1 * c1 * Fraction(1, 6) + c1 * c2 * Fraction(1, 2) + c3 * Fraction(1, 3)


def chi_4_closed(c1, c2, c3, c4):
    return (
        c1**4 * Fraction(1, 24)
        + c1 * c3 * Fraction(1, 3)
        + c1 * c1 * c2 * Fraction(1, 4)
        + c2 * c2 * Fraction(1, 8)
        + c4 * Fraction(1, 4)
    )


def _power_characters(G: FiniteRotationGroup, d: int) -> list[tuple[CycloNumber, ...]]:
    T = G.table
    chi = G.characters
    out = []
    for g in range(G.order):
        seq = []
        h = g
        for _ in range(d):
            seq.append(chi[h])
            h = T[h, g]
        out.append(tuple(seq))
    return out


def _chi_d_values(G: FiniteRotationGroup, d: int) -> list[CycloNumber]:
    memo: dict = {}
    values = []
    for seq in _power_characters(G, d):
        if seq not in memo:
            memo[seq] = chi_d_from_powers(seq, d)
        values.append(memo[seq])
    return values


def count_invariants(G: FiniteRotationGroup, d: int) -> int:
    """Dimension of homogeneous degree-d invariant polynomials."""
    if d < 0:
        raise ValueError("degree must be nonnegative")
    if d == 0:
        return 1
    vals = _chi_d_values(G, d)
    return average_to_int(character_sum(vals, G.field_order), G.order, f"c_{d}")


def count_equivariants(G: FiniteRotationGroup, d: int) -> int:
    """Dimension of homogeneous degree-d equivariant polynomial maps."""
    if d < 1:
        raise ValueError("degree must be positive")
    vals = _chi_d_values(G, d)
    chi = G.characters
    return average_to_int(
        character_sum((v * c for v, c in zip(vals, chi)), G.field_order), G.order, f"C_{d}"
    )


@dataclass
class DegreeCountTable:
    group: str
    degrees: list[int]
    c: dict[int, int] = field(default_factory=dict)
    C: dict[int, int] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "group": self.group,
            "degrees": self.degrees,
            "invariants": {str(d): v for d, v in sorted(self.c.items())},
            "equivariants": {str(d): v for d, v in sorted(self.C.items())},
        }


def degree_table(G: FiniteRotationGroup, degrees: Sequence[int] = (1, 2, 3, 4, 6, 8)) -> DegreeCountTable:
    out = DegreeCountTable(G.name, list(degrees))
    for d in degrees:
        out.c[d] = count_invariants(G, d)
        out.C[d] = count_equivariants(G, d)
    return out


# -- explicit invariants -------------------------------------------------


def _parts(x):
    """|z1|^2, |z2|^2, Re(z1 conj z2), Im(z1 conj z2)."""
    x1, x2, x3, x4 = x
    return x1 * x1 + x2 * x2, x3 * x3 + x4 * x4, x1 * x3 + x2 * x4, x2 * x3 - x1 * x4


def I2(x):
    p, q, _, _ = _parts(x)
    return p + q


def I41(x):
    p, q, _, _ = _parts(x)
    return p * q


def I42(x):
    # z1^2 conj(z2)^2 + c.c. = 2 Re(w^2), w = z1 conj(z2)
    _, _, a, b = _parts(x)
    return (a * a - b * b) * 2


def I6(x):
    # (|z1|^2 - |z2|^2) i (w^2 - conj(w)^2) = -4 a b (|z1|^2 - |z2|^2)
    p, q, a, b = _parts(x)
    return (p - q) * a * b * (-4)


INVARIANTS: dict[str, Callable] = {"I2": I2, "I41": I41, "I42": I42, "I6": I6}
DEGREES = {"I2": 2, "I41": 4, "I42": 4, "I6": 6}


def eval_invariant(name: str, x):
    """Value of a named invariant at a Quaternion (exact) or a 4-sequence."""
    if isinstance(x, Quaternion):
        x = x.components
    return INVARIANTS[name](tuple(x))


# generic rational probes for symmetry checks
PROBES: tuple[tuple[int, int, int, int], ...] = (
    (1, 2, 3, 5),
    (2, -1, 4, 1),
    (3, 1, -2, 7),
    (-1, 5, 2, 3),
    (4, 3, 1, -2),
    (1, -3, -5, 2),
    (7, 2, 1, 1),
    (2, 9, -4, 3),
)


def symmetry_defect(
    name: str,
    G: FiniteRotationGroup,
    mode: str = "invariant",
    elements: Sequence[int] | None = None,
) -> CycloNumber:
    """Largest |p(g x) - p(x)| (or |p(g x) + p(x)| in anti mode) over probes.

    Exact; returned as the defect value of largest magnitude, zero when the
    symmetry holds at every probe.
    """
    if mode not in ("invariant", "anti_invariant"):
        raise ValueError("mode must be 'invariant' or 'anti_invariant'")
    N = G.field_order
    p = INVARIANTS[name]
    idx = range(G.order) if elements is None else elements
    worst = CycloNumber.zero(N)
    worst_abs = 0.0
    for probe in PROBES:
        x = Quaternion.from_rationals(N, probe)
        px = p(x.components)
        for g in idx:
            gx = apply(G.elements[g], x)
            pg = p(gx.components)
            defect = pg - px if mode == "invariant" else pg + px
            if not defect.is_zero():
                mag = abs(float(defect))
                if mag > worst_abs:
                    worst, worst_abs = defect, mag
    return worst
