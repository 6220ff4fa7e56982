"""Characters of the natural 4-dimensional representation."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from .cyclo import CycloNumber
from .group import FiniteRotationGroup, Subgroup
from .linalg import _rref_rows


class IntegralityError(ArithmeticError):
    """A character average that should be an integer is not."""


def average_to_int(total: CycloNumber, count: int, what: str) -> int:
    value = total.as_rational()
    if value is None:
        raise IntegralityError(f"{what}: character sum is not rational ({total!r})")
    value = value / count
    if value.denominator != 1 or value < 0:
        raise IntegralityError(f"{what}: expected a nonnegative integer, got {value}")
    return int(value)


def character_sum(values: Iterable[CycloNumber], N: int) -> CycloNumber:
    acc = CycloNumber.zero(N)
    for v in values:
        acc = acc + v
    return acc


def commutant_dimension(G: FiniteRotationGroup) -> int:
    """<chi, chi> = dimension of the space of linear maps commuting with G."""
    chi = G.characters
    return average_to_int(character_sum((c * c for c in chi), G.field_order), G.order, "commutant")


def is_absolutely_irreducible(G: FiniteRotationGroup) -> bool:
    return commutant_dimension(G) == 1


def fix_dimension(G: FiniteRotationGroup, H: Iterable[int]) -> int:
    """dim Fix(H) as the average of the character over H."""
    H = list(H)
    return average_to_int(character_sum((G.characters[h] for h in H), G.field_order), len(H), "fix dimension")


def class_function_check(G: FiniteRotationGroup) -> bool:
    chi = G.characters
    return all(len({chi[g] for g in cls}) == 1 for cls in G.conjugacy_classes)


def commutant_dimension_linear(G: FiniteRotationGroup, elements: Iterable[int] | None = None) -> int:
    """Dimension of {A : A M = M A} by exact linear algebra on 16 unknowns.

    Independent of the character route.  Checking the generators suffices.
    """
    N = G.field_order
    if elements is None:
        elements = [G.index[g] for g in G.generators]
    zero = CycloNumber.zero(N)
    rows = []
    for g in elements:
        M = G.matrix(g)
        # (A M - M A)[r][c] = sum_t A[r][t] M[t][c] - M[r][t] A[t][c]; A[p][q] is unknown 4p+q
        for r in range(4):
            for c in range(4):
                row = [zero] * 16
                for t in range(4):
                    row[4 * r + t] = row[4 * r + t] + M[t][c]
                    row[4 * t + c] = row[4 * t + c] - M[r][t]
                if any(not x.is_zero() for x in row):
                    rows.append(row)
    if not rows:
        return 16
    reduced, _ = _rref_rows(rows, 16)
    return 16 - len(reduced)


def character_report(G: FiniteRotationGroup) -> list[dict]:
    out = []
    for cls in G.conjugacy_classes:
        value = G.characters[cls[0]]
        out.append(
            {
                "representative": cls[0],
                "size": len(cls),
                "value": value.to_json(),
                "value_float": float(value),
            }
        )
    return out
