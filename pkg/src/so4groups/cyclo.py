"""Exact arithmetic in the cyclotomic field Q(zeta_N).

Elements are stored densely in the power basis 1, zeta, ..., zeta^(n-1),
n = deg(Phi_N), as integer numerators over one common positive denominator
with no common factor.  That representation is unique, so equality and
hashing are plain tuple comparisons.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np
from mpmath import iv, mp

_INT64_SAFE = 1 << 62


class CycloError(ValueError):
    """Raised for invalid field orders, order mismatches and division by zero."""


def _polydivmod(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    # exact division by a monic integer polynomial; coefficients low degree first
    num = list(num)
    q = [0] * max(len(num) - len(den) + 1, 1)
    dd = len(den) - 1
    for k in range(len(num) - 1, dd - 1, -1):
        c = num[k]
        if c:
            q[k - dd] = c
            for t in range(dd + 1):
                num[k - dd + t] -= c * den[t]
    return q, num[:dd]


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first."""
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly, rem = _polydivmod(poly, list(cyclotomic_polynomial(d)))
            assert not any(rem)
    return tuple(poly)


class CycloField:
    """Per-order tables: reduction of zeta^k, automorphism matrices, numeric powers."""

    def __init__(self, N: int):
        if N <= 0 or N % 4:
            raise CycloError(f"field order must be a positive multiple of 4, got {N}")
        self.N = N
        phi = cyclotomic_polynomial(N)
        n = len(phi) - 1
        self.degree = n
        # powers[k] = zeta^k in the power basis, k = 0..N-1
        powers = []
        v = [0] * n
        v[0] = 1
        for _ in range(N):
            powers.append(tuple(v))
            top = v[-1]
            v = [0] + v[:-1]
            if top:
                for t in range(n):
                    v[t] -= top * phi[t]
        self.powers = powers
        self.high = np.array(powers[n:2 * n - 1], dtype=np.int64).reshape(n - 1, n)
        self.high_obj = self.high.astype(object)
        self.high_max = int(np.abs(self.high).max()) if n > 1 else 0
        self._auto: dict[int, np.ndarray] = {}
        self._mp_cache: dict[int, tuple] = {}

    def automorphism_matrix(self, a: int) -> np.ndarray:
        """Rows are images of zeta^k under zeta -> zeta^a."""
        a %= self.N
        if a not in self._auto:
            if math.gcd(a, self.N) != 1:
                raise CycloError(f"{a} is not a unit modulo {self.N}")
            self._auto[a] = np.array(
                [self.powers[(a * k) % self.N] for k in range(self.degree)], dtype=object
            )
        return self._auto[a]

    def mp_powers(self, prec: int) -> tuple:
        if prec not in self._mp_cache:
            with mp.workprec(prec + 20):
                self._mp_cache[prec] = tuple(
                    (mp.cospi(mp.mpf(2 * k) / self.N), mp.sinpi(mp.mpf(2 * k) / self.N))
                    for k in range(self.degree)
                )
        return self._mp_cache[prec]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


@lru_cache(maxsize=None)
def modular_root(N: int) -> tuple[int, int]:
    """(p, w): a prime p = 1 mod N and a primitive N-th root of unity w mod p.

    zeta -> w is a ring map from the p-integral part of Q(zeta_N) onto F_p,
    so a nonzero image certifies a nonzero element.
    """
    p = (1 << 61) // N * N + 1
    while not _is_prime(p):
        p += N
    qs = _prime_factors(N)
    for a in range(2, p):
        w = pow(a, (p - 1) // N, p)
        if all(pow(w, N // q, p) != 1 for q in qs):
            return p, w
    raise AssertionError("unreachable")


def mod_image(a: "CycloNumber") -> int | None:
    """Image of a in F_p under modular_root, None if p divides the denominator."""
    p, w = modular_root(a.order)
    if a.den % p == 0:
        return None
    acc, wk = 0, 1
    for c in a.nums:
        if c:
            acc += c * wk
        wk = wk * w % p
    return acc * pow(a.den, -1, p) % p


@lru_cache(maxsize=None)
def field(N: int) -> CycloField:
    return CycloField(N)


def _normalize(nums: Iterable[int], den: int) -> tuple[tuple[int, ...], int]:
    # callers pass Python ints
    nums = tuple(nums)
    if den < 0:
        nums = tuple([-x for x in nums])
        den = -den
    if den != 1:
        g = math.gcd(den, *nums)
        if g > 1:
            nums = tuple([x // g for x in nums])
            den //= g
        if g == den and not any(nums):
            den = 1
    return nums, den


def _absmax(v: Sequence[int]) -> int:
    return max((abs(x) for x in v), default=0)


def _polymul_reduce(F: CycloField, a: Sequence[int], b: Sequence[int]) -> list[int]:
    n = F.degree
    bound = _absmax(a) * _absmax(b) * n
    if bound * (F.high_max * n + 1) < _INT64_SAFE:
        prod = np.convolve(np.array(a, dtype=np.int64), np.array(b, dtype=np.int64))
        out = prod[:n].copy()
        if n > 1:
            out += prod[n:] @ F.high
        return out.tolist()
    prod = np.convolve(np.array(a, dtype=object), np.array(b, dtype=object))
    out = prod[:n].copy()
    if n > 1:
        out = out + prod[n:].dot(F.high_obj)
    return [int(x) for x in out]


@dataclass(frozen=True, eq=False)
class CycloNumber:
    """An element of Q(zeta_N): ``sum(nums[k] * zeta^k) / den``."""

    order: int
    nums: tuple[int, ...]
    den: int = 1

    # -- construction ---------------------------------------------------

    @classmethod
    def from_terms(cls, N: int, terms: Iterable[tuple[int, Fraction | int]]) -> "CycloNumber":
        """Sum of ``c * zeta_N^k`` over (k, c) pairs; k may be any integer."""
        F = field(N)
        acc = [Fraction(0)] * F.degree
        for k, c in terms:
            c = Fraction(c)
            if c:
                for t, p in enumerate(F.powers[k % N]):
                    if p:
                        acc[t] += c * p
        return cls.from_fractions(N, acc)

    @classmethod
    def from_fractions(cls, N: int, coeffs: Sequence[Fraction | int]) -> "CycloNumber":
        F = field(N)
        if len(coeffs) != F.degree:
            raise CycloError(f"expected {F.degree} coefficients for N={N}, got {len(coeffs)}")
        coeffs = [Fraction(c) for c in coeffs]
        den = math.lcm(*(c.denominator for c in coeffs)) if coeffs else 1
        nums, den = _normalize([c.numerator * (den // c.denominator) for c in coeffs], den)
        return cls(N, nums, den)

    @classmethod
    def rational(cls, N: int, value: Fraction | int) -> "CycloNumber":
        value = Fraction(value)
        F = field(N)
        nums = [0] * F.degree
        nums[0] = value.numerator
        return cls(N, tuple(nums), value.denominator) if value else cls.zero(N)

    @classmethod
    def zero(cls, N: int) -> "CycloNumber":
        return cls(N, (0,) * field(N).degree, 1)

    @classmethod
    def one(cls, N: int) -> "CycloNumber":
        return cls.rational(N, 1)

    # -- accessors ------------------------------------------------------

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(x, self.den) for x in self.nums)

    @property
    def field(self) -> CycloField:
        return field(self.order)

    def is_zero(self) -> bool:
        return not any(self.nums)

    def is_rational(self) -> bool:
        return not any(self.nums[1:])

    def as_rational(self) -> Fraction | None:
        if not self.is_rational():
            return None
        return Fraction(self.nums[0], self.den)

    def is_real(self) -> bool:
        return self.conjugate() == self

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, CycloNumber):
            return self.order == other.order and self.den == other.den and self.nums == other.nums
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and Fraction(self.nums[0], self.den) == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.order, self.nums, self.den))

    # -- arithmetic -----------------------------------------------------

    def _coerce(self, other) -> "CycloNumber":
        if isinstance(other, CycloNumber):
            if other.order != self.order:
                raise CycloError(
                    f"order mismatch: {self.order} vs {other.order}; embed into a common order first"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return CycloNumber.rational(self.order, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        if self.den == other.den:
            nums, den = _normalize([a + b for a, b in zip(self.nums, other.nums)], self.den)
        else:
            sd, od = self.den, other.den
            nums, den = _normalize([a * od + b * sd for a, b in zip(self.nums, other.nums)], sd * od)
        return CycloNumber(self.order, nums, den)

    __radd__ = __add__

    def __neg__(self):
        return CycloNumber(self.order, tuple([-x for x in self.nums]), self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.is_zero() or other.is_zero():
            return CycloNumber.zero(self.order)
        if self.is_rational() or other.is_rational():
            r, v = (self, other) if self.is_rational() else (other, self)
            c = r.nums[0]
            nums, den = _normalize([c * x for x in v.nums], r.den * v.den)
            return CycloNumber(self.order, nums, den)
        prod = _polymul_reduce(self.field, self.nums, other.nums)
        nums, den = _normalize(prod, self.den * other.den)
        return CycloNumber(self.order, nums, den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = CycloNumber.one(self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def galois(self, a: int) -> "CycloNumber":
        """Image under the automorphism zeta -> zeta^a (a coprime to N)."""
        if self.is_rational():
            return self
        M = self.field.automorphism_matrix(a)
        nums, den = _normalize([int(x) for x in np.array(self.nums, dtype=object).dot(M)], self.den)
        return CycloNumber(self.order, nums, den)

    def conjugate(self) -> "CycloNumber":
        """Complex conjugation, zeta -> zeta^(N-1)."""
        return self.galois(self.order - 1)

    def inverse(self) -> "CycloNumber":
        """Multiplicative inverse by the extended Euclidean algorithm modulo Phi_N."""
        if self.is_zero():
            raise ZeroDivisionError("division by zero in cyclotomic field")
        if self.is_rational():
            return CycloNumber.rational(self.order, 1 / Fraction(self.nums[0], self.den))
        phi = [Fraction(c) for c in cyclotomic_polynomial(self.order)]
        a = _trim([Fraction(x) for x in self.nums])
        # invariant: s * a == r (mod phi)
        r0, r1 = phi, a
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while len(r1) > 1:
            q, rem = _qpolydivmod(r0, r1)
            r0, r1 = r1, rem
            s0, s1 = s1, _qpolysub(s0, _qpolymul(q, s1))
        c = r1[0]
        coeffs = [x / c for x in s1]
        # s1 may exceed degree n-1 only transiently; reduce via from_terms
        return CycloNumber.from_terms(self.order, enumerate(coeffs)) * CycloNumber.rational(
            self.order, Fraction(self.den)
        )

    # -- numerics -------------------------------------------------------

    def numeric_eval(self, precision_bits: int = 53) -> "ComplexInterval":
        """Certified complex interval containing the value at zeta = exp(2 pi i / N)."""
        if precision_bits < 53:
            raise CycloError("precision_bits must be at least 53")
        saved = iv.prec
        iv.prec = precision_bits
        try:
            if self.is_zero():
                return ComplexInterval(iv.mpf(0), iv.mpf(0))
            re = iv.mpf(0)
            im = iv.mpf(0)
            N = self.order
            for k, c in enumerate(self.nums):
                if c:
                    ang = 2 * k * iv.pi / N
                    re += c * iv.cos(ang)
                    im += c * iv.sin(ang)
            return ComplexInterval(re / self.den, im / self.den)
        finally:
            iv.prec = saved

    def to_complex(self) -> complex:
        """Float value, summed at extended precision so the result is correctly rounded in practice."""
        if self.is_zero():
            return 0j
        pw = self.field.mp_powers(120)
        with mp.workprec(140):
            re = mp.fsum(c * p[0] for c, p in zip(self.nums, pw) if c)
            im = mp.fsum(c * p[1] for c, p in zip(self.nums, pw) if c)
            return complex(float(re / self.den), float(im / self.den))

    def __float__(self) -> float:
        z = self.to_complex()
        if abs(z.imag) > 1e-9 * max(1.0, abs(z.real)):
            raise CycloError("not a real number")
        return z.real

    def sign(self) -> int:
        """Sign of a real element, refining interval precision until zero is excluded."""
        if self.is_zero():
            return 0
        prec = 64
        while True:
            re = self.numeric_eval(prec).re
            if re.a > 0:
                return 1
            if re.b < 0:
                return -1
            prec *= 2

    def embed(self, M: int) -> "CycloNumber":
        """Image in Q(zeta_M) for a multiple M of N, via zeta_N = zeta_M^(M/N)."""
        if M % self.order:
            raise CycloError(f"cannot embed order {self.order} into {M}")
        step = M // self.order
        out = CycloNumber.from_terms(M, ((k * step, Fraction(x, self.den)) for k, x in enumerate(self.nums) if x))
        return out

    # -- (de)serialization ---------------------------------------------

    def to_json(self) -> dict:
        return {
            "N": self.order,
            "terms": [[k, str(x), str(self.den)] for k, x in enumerate(self.nums) if x],
        }

    @classmethod
    def from_json(cls, data: dict) -> "CycloNumber":
        N = int(data["N"])
        terms = []
        for term in data["terms"]:
            k, num, den = term
            terms.append((int(k), Fraction(int(num), int(den))))
        return cls.from_terms(N, terms)

    def __repr__(self) -> str:
        parts = []
        for k, x in enumerate(self.nums):
            if x:
                c = Fraction(x, self.den)
                parts.append(f"{c}" if k == 0 else f"{c}*z^{k}")
        return f"Cyclo{self.order}({' + '.join(parts) or '0'})"


@dataclass(frozen=True)
class ComplexInterval:
    re: object
    im: object

    def contains(self, z: complex) -> bool:
        return z.real in self.re and z.imag in self.im

    @property
    def width(self) -> float:
        return float(max(self.re.delta, self.im.delta))

    @property
    def mid(self) -> complex:
        return complex(float(self.re.mid), float(self.im.mid))


def _trim(p: list[Fraction]) -> list[Fraction]:
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def _qpolydivmod(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    a = list(a)
    db = len(b) - 1
    lead = b[-1]
    q = [Fraction(0)] * max(len(a) - db, 1)
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k]
        if c:
            c = c / lead
            q[k - db] = c
            for t in range(db + 1):
                a[k - db + t] -= c * b[t]
    return _trim(q), _trim(a[:db] or [Fraction(0)])


def _qpolymul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _qpolysub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    n = max(len(a), len(b))
    a = a + [Fraction(0)] * (n - len(a))
    b = b + [Fraction(0)] * (n - len(b))
    return _trim([x - y for x, y in zip(a, b)])


def root_power(N: int, k: int) -> CycloNumber:
    """zeta_N^k in canonical form."""
    F = field(N)
    return CycloNumber(N, F.powers[k % N], 1)


def field_arith(a: CycloNumber, b: CycloNumber, op: str) -> CycloNumber:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def predicates(a: CycloNumber) -> dict:
    return {
        "is_zero": a.is_zero(),
        "is_real": a.is_real(),
        "is_rational": a.is_rational(),
        "as_rational": a.as_rational(),
    }


def cos_pi(N: int, p: int, q: int) -> CycloNumber:
    """cos(pi p / q) in Q(zeta_N); requires 2q | N."""
    if N % (2 * q):
        raise CycloError(f"cos(pi*{p}/{q}) is not in Q(zeta_{N}) by construction")
    k = p * (N // (2 * q))
    return (root_power(N, k) + root_power(N, -k)) * Fraction(1, 2)


def sin_pi(N: int, p: int, q: int) -> CycloNumber:
    """sin(pi p / q) in Q(zeta_N); requires 2q | N (and 4 | N for i)."""
    if N % (2 * q):
        raise CycloError(f"sin(pi*{p}/{q}) is not in Q(zeta_{N}) by construction")
    k = p * (N // (2 * q))
    i = root_power(N, N // 4)
    return (root_power(N, k) - root_power(N, -k)) * (-i) * Fraction(1, 2)
