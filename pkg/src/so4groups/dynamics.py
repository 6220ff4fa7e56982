"""The cubic equivariant vector field in complex coordinates, its
gradient/Hamiltonian split, and the equilibrium branch in a fixed plane.

Coordinates: x = (x1, x2, x3, x4) <-> (z1, z2) = (x1 + i x2, x3 + i x4).
All computations are in double precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .group import FiniteRotationGroup, subgroup_tests
from .series import Family, FamilySpec, j_operator
from .quat import to_matrix

SEED = 20260419


class Coupling(str, Enum):
    HAMILTONIAN = "hamiltonian"
    GRADIENT = "gradient"


class BranchError(ValueError):
    pass


@dataclass(frozen=True)
class CubicCoefficients:
    lam: float
    c1: float
    c2: float
    c3: float
    coupling: Coupling = Coupling.HAMILTONIAN

    @property
    def kappa(self) -> complex:
        """Coefficient of conj(z1) z2^2 in the first equation."""
        return 1j * self.c3 if Coupling(self.coupling) is Coupling.HAMILTONIAN else complex(self.c3)


def to_complex(x) -> tuple[complex, complex]:
    x = np.asarray(x, dtype=float)
    return complex(x[0], x[1]), complex(x[2], x[3])


def to_real(z1: complex, z2: complex) -> np.ndarray:
    return np.array([z1.real, z1.imag, z2.real, z2.imag])


def cubic_field(c: CubicCoefficients, z1: complex, z2: complex) -> tuple[complex, complex]:
    """(dz1/dt, dz2/dt); the second line mirrors the first under z1 <-> z2."""
    a1, a2 = abs(z1) ** 2, abs(z2) ** 2
    k = c.kappa
    f1 = c.lam * z1 + c.c1 * z1 * (a1 + a2) + c.c2 * z1 * a2 + k * z1.conjugate() * z2 * z2
    f2 = c.lam * z2 + c.c1 * z2 * (a1 + a2) + c.c2 * z2 * a1 + k * z1 * z1 * z2.conjugate()
    return f1, f2


def field_real(c: CubicCoefficients, x) -> np.ndarray:
    return to_real(*cubic_field(c, *to_complex(x)))


def field_parts(c: CubicCoefficients, x) -> dict[str, np.ndarray]:
    """The c1, c2 and c3 terms separately (without lambda)."""
    z1, z2 = to_complex(x)
    a1, a2 = abs(z1) ** 2, abs(z2) ** 2
    k = c.kappa
    return {
        "c1": to_real(c.c1 * z1 * (a1 + a2), c.c1 * z2 * (a1 + a2)),
        "c2": to_real(c.c2 * z1 * a2, c.c2 * z2 * a1),
        "c3": to_real(k * z1.conjugate() * z2 * z2, k * z1 * z1 * z2.conjugate()),
    }


def jacobian(c: CubicCoefficients, x) -> np.ndarray:
    """Real 4x4 Jacobian from the Wirtinger derivatives of the field."""
    z1, z2 = to_complex(x)
    a1, a2 = abs(z1) ** 2, abs(z2) ** 2
    k = c.kappa
    c1, c2, lam = c.c1, c.c2, c.lam
    # d/dz and d/dconj(z) of f1, f2 with respect to z1, z2
    d = {
        ("f1", "z1"): lam + c1 * (2 * a1 + a2) + c2 * a2,
        ("f1", "z1b"): c1 * z1 * z1 + k * z2 * z2,
        ("f1", "z2"): (c1 + c2) * z1 * z2.conjugate() + 2 * k * z1.conjugate() * z2,
        ("f1", "z2b"): (c1 + c2) * z1 * z2,
        ("f2", "z2"): lam + c1 * (a1 + 2 * a2) + c2 * a1,
        ("f2", "z2b"): c1 * z2 * z2 + k * z1 * z1,
        ("f2", "z1"): (c1 + c2) * z2 * z1.conjugate() + 2 * k * z1 * z2.conjugate(),
        ("f2", "z1b"): (c1 + c2) * z1 * z2,
    }
    Jm = np.zeros((4, 4))
    for r, f in enumerate(("f1", "f2")):
        for s, z in enumerate(("z1", "z2")):
            dz, dzb = d[(f, z)], d[(f, z + "b")]
            dx = dz + dzb
            dy = 1j * (dz - dzb)
            Jm[2 * r, 2 * s] = dx.real
            Jm[2 * r + 1, 2 * s] = dx.imag
            Jm[2 * r, 2 * s + 1] = dy.real
            Jm[2 * r + 1, 2 * s + 1] = dy.imag
    return Jm


def fd_jacobian(f, x, h: float = 1e-3) -> np.ndarray:
    """Five-point central differences; exact up to rounding for cubic fields."""
    x = np.asarray(x, dtype=float)
    cols = []
    for i in range(len(x)):
        e = np.zeros_like(x)
        e[i] = h
        cols.append((-f(x + 2 * e) + 8 * f(x + e) - 8 * f(x - e) + f(x - 2 * e)) / (12 * h))
    return np.array(cols).T


def sample_states(samples: int = 16, seed: int = SEED) -> np.ndarray:
    return np.random.default_rng(seed).normal(size=(samples, 4))


# -- invariants in real coordinates and their gradients -------------------------


def I42_real(x) -> float:
    z1, z2 = to_complex(x)
    w = z1 * z2.conjugate()
    return 2 * (w * w).real


def grad_I42(x) -> np.ndarray:
    # real gradient = 2 d/dconj(z): (4 conj(z1) z2^2, 4 z1^2 conj(z2))
    z1, z2 = to_complex(x)
    return to_real(4 * z1.conjugate() * z2 * z2, 4 * z1 * z1 * z2.conjugate())


def grad_I2_squared(x) -> np.ndarray:
    z1, z2 = to_complex(x)
    s = abs(z1) ** 2 + abs(z2) ** 2
    return to_real(4 * s * z1, 4 * s * z2)


def grad_I41(x) -> np.ndarray:
    z1, z2 = to_complex(x)
    return to_real(2 * z1 * abs(z2) ** 2, 2 * z2 * abs(z1) ** 2)


def j_matrix_float() -> np.ndarray:
    N = 8
    return np.array([[float(v) for v in row] for row in to_matrix(j_operator(N))])


# -- diagnostics ---------------------------------------------------------------


def equivariance_residual(
    c: CubicCoefficients, G: FiniteRotationGroup, samples: int = 16, seed: int = SEED
) -> dict[str, float]:
    """max |f(M x) - M f(x)| over group matrices and sample states, plus the S^1 residual."""
    if samples < 1:
        raise ValueError("samples must be positive")
    states = sample_states(samples, seed)
    mats = G.float_matrices
    fx = np.array([field_real(c, x) for x in states])
    worst = 0.0
    for M in mats:
        for x, f in zip(states, fx):
            worst = max(worst, float(np.max(np.abs(field_real(c, M @ x) - M @ f))))
    s1 = 0.0
    for k in range(64):
        u = complex(math.cos(2 * math.pi * k / 64), math.sin(2 * math.pi * k / 64))
        for x in states:
            z1, z2 = to_complex(x)
            g1, g2 = cubic_field(c, u * z1, u * z2)
            f1, f2 = cubic_field(c, z1, z2)
            s1 = max(s1, abs(g1 - u * f1), abs(g2 - u * f2))
    return {"group": worst, "s1": s1}


def structure_checks(
    c: CubicCoefficients,
    G: FiniteRotationGroup,
    F: FiniteRotationGroup,
    samples: int = 16,
    seed: int = SEED,
) -> dict:
    """Gradient/Hamiltonian structure of the cubic terms for an index-2 pair F < G."""
    info = subgroup_tests(G, F)
    if not info["is_subgroup"] or info["index"] != 2:
        raise ValueError("F must be an index-2 subgroup of G")
    states = sample_states(samples, seed)
    J = j_matrix_float()
    hamiltonian = Coupling(c.coupling) is Coupling.HAMILTONIAN

    def part(name):
        return lambda x: field_parts(c, x)[name]

    sym = {}
    for name in ("c1", "c2", "c3"):
        worst = 0.0
        for x in states:
            D = fd_jacobian(part(name), x)
            scale = max(1.0, float(np.max(np.abs(D))))
            worst = max(worst, float(np.max(np.abs(D - D.T))) / scale)
        sym[name] = worst
    div = {}
    for name in ("c1", "c2", "c3"):
        div[name] = max(abs(float(np.trace(fd_jacobian(part(name), x)))) for x in states)

    # the c3 term against J grad I42: i conj(z1) z2^2 = -(1/4) J grad I42, J = [i, 1]
    ham = 0.0
    grad = 0.0
    for x in states:
        v = field_parts(c, x)["c3"]
        ham = max(ham, float(np.max(np.abs(v - (-c.c3 / 4) * (J @ grad_I42(x))))))
        grad = max(grad, float(np.max(np.abs(v - (c.c3 / 4) * grad_I42(x)))))
    c1_grad = max(float(np.max(np.abs(field_parts(c, x)["c1"] - c.c1 / 4 * grad_I2_squared(x)))) for x in states)
    c2_grad = max(float(np.max(np.abs(field_parts(c, x)["c2"] - c.c2 / 2 * grad_I41(x)))) for x in states)

    coset = [g for g in range(G.order) if G.elements[g] not in F]
    mats = G.float_matrices
    anti_inv = 0.0
    anti_comm = 0.0
    for g in coset:
        M = mats[g]
        anti_comm = max(anti_comm, float(np.max(np.abs(M @ J + J @ M))))
        for x in states:
            anti_inv = max(anti_inv, abs(I42_real(M @ x) + I42_real(x)))
    return {
        "jacobian_asymmetry": sym,
        "divergence": div,
        "c3_minus_hamiltonian_form": ham,
        "c3_minus_gradient_form": grad,
        "c1_minus_gradient_form": c1_grad,
        "c2_minus_gradient_form": c2_grad,
        "I42_anti_invariance_defect": anti_inv,
        "coset_J_anticommutator": anti_comm,
        "coset_size": len(coset),
        "gradient_parts_symmetric": sym["c1"] < 1e-6 and sym["c2"] < 1e-6,
        "hamiltonian_part_ok": hamiltonian and div["c3"] < 1e-8 and ham < 1e-8,
    }


# -- fixed planes and the bifurcating branch ----------------------------------


def _unit(z: complex) -> complex:
    return z / abs(z)


def fixed_plane_basis(family: FamilySpec) -> np.ndarray:
    """Orthonormal basis (rows) of the fixed plane carrying the branch.

    G1: alpha e_8 + beta conj(e_8) j; G2: alpha (1 + e_2m e_4) + beta (e_2m + conj(e_4)) j,
    the fixed plane of [e_2m j, j e_4]; G3: alpha (1 - i) + beta (1 + i) j.
    """
    fam = Family(family.family)
    m = family.m
    e = lambda s: complex(math.cos(math.pi / s), math.sin(math.pi / s))
    if fam is Family.G1:
        u, w = e(8), e(8).conjugate()
    elif fam is Family.G2:
        u = 1 + e(2 * m) * e(4)
        w = e(2 * m) + e(4).conjugate()
    elif fam is Family.G3:
        u, w = 1 - 1j, 1 + 1j
    else:
        raise BranchError("branch planes are defined for the G-series only")
    u, w = _unit(u), _unit(w)
    return np.array([to_real(u, 0j), to_real(0j, w)])


def default_coupling(family: FamilySpec) -> Coupling:
    return Coupling.GRADIENT if Family(family.family) is Family.G3 else Coupling.HAMILTONIAN


def published_eigenvalues(c: CubicCoefficients) -> tuple[float, float]:
    """The diagonal entries lambda (1 - (c2 + c3)/c1) and -2 lambda as printed."""
    return (c.lam * (1 - (c.c2 + c.c3) / c.c1), -2 * c.lam)


def in_plane_jacobian(c: CubicCoefficients, basis: np.ndarray, x) -> np.ndarray:
    return basis @ jacobian(c, x) @ basis.T


def branch_eigenvalues(c: CubicCoefficients, basis: np.ndarray) -> tuple[float, float]:
    """Closed-form in-plane eigenvalues at alpha = 0, beta^2 = -lambda/c1.

    With z1 = alpha u, z2 = beta w the alpha direction picks up
    beta^2 (c2 + Re(kappa conj(u)^2 w^2)) once lambda + c1 beta^2 = 0;
    the beta direction gives 2 c1 beta^2 = -2 lambda.
    """
    u, _ = to_complex(basis[0])
    _, w = to_complex(basis[1])
    beta2 = -c.lam / c.c1
    along = beta2 * (c.c2 + (c.kappa * u.conjugate() ** 2 * w * w).real)
    return tuple(sorted((along, -2 * c.lam)))


def branch_and_jacobian(c: CubicCoefficients, family: FamilySpec) -> dict:
    """Equilibrium at alpha = 0, beta = sqrt(-lambda/c1) and its in-plane linearisation."""
    if c.c1 == 0 or not math.isfinite(c.c1):
        raise BranchError("need 0 < |c1| < infinity")
    if not c.lam / c.c1 < 0:
        raise BranchError(f"no real branch: lambda/c1 = {c.lam / c.c1} must be negative")
    basis = fixed_plane_basis(family)
    closed = branch_eigenvalues(c, basis)
    scale = max(1.0, abs(c.lam), abs(c.lam / c.c1) * max(abs(c.c2), abs(c.c3)))
    if min(abs(v) for v in closed) < 1e-12 * scale:
        raise BranchError("in-plane linearisation is singular along this branch (c2 +- c3 = 0)")
    beta = math.sqrt(-c.lam / c.c1)
    x = beta * basis[1]
    residual = float(np.max(np.abs(field_real(c, x))))
    Jp = in_plane_jacobian(c, basis, x)
    Jfd = basis @ fd_jacobian(lambda y: field_real(c, y), x) @ basis.T
    eig = np.sort(np.linalg.eigvals(Jp).real)
    return {
        "beta": beta,
        "equilibrium": to_complex(x),
        "equilibrium_real": x,
        "residual": residual,
        "jacobian": Jp,
        "jacobian_fd_defect": float(np.max(np.abs(Jfd - Jp))),
        "jacobian_eigenvalues": (float(eig[0]), float(eig[1])),
        "closed_form_eigenvalues": closed,
        "published_eigenvalues": tuple(sorted(published_eigenvalues(c))),
        "jacobian_plane_defect": float(np.max(np.abs(jacobian(c, x) @ basis.T - basis.T @ Jp))),
    }


def plane_invariance_defect(c: CubicCoefficients, basis: np.ndarray, points: int = 16, seed: int = SEED) -> float:
    """Largest out-of-plane component of the field at points of the plane."""
    rng = np.random.default_rng(seed)
    P = basis.T @ basis
    worst = 0.0
    for ab in rng.normal(size=(points, 2)):
        x = ab @ basis
        f = field_real(c, x)
        worst = max(worst, float(np.max(np.abs(f - P @ f))))
    return worst


def integrate(c: CubicCoefficients, x0, t_end: float, dt: float) -> np.ndarray:
    """Fixed-step RK4; rows are (t, x1, x2, x3, x4)."""
    if dt <= 0 or t_end < 0:
        raise ValueError("need dt > 0 and t_end >= 0")
    steps = int(round(t_end / dt))
    x = np.asarray(x0, dtype=float)
    out = [np.concatenate([[0.0], x])]
    f = lambda y: field_real(c, y)
    for n in range(1, steps + 1):
        k1 = f(x)
        k2 = f(x + dt / 2 * k1)
        k3 = f(x + dt / 2 * k2)
        k4 = f(x + dt * k3)
        x = x + dt / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        out.append(np.concatenate([[n * dt], x]))
    return np.array(out)
