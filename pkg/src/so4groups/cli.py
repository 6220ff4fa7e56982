"""Command-line front end: analyze, tables, check-ize, dynamics.

Exit codes: 0 success, 1 usage or input error, 2 verification mismatch.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from importlib import resources

import numpy as np

from .dynamics import (
    BranchError,
    Coupling,
    CubicCoefficients,
    branch_and_jacobian,
    default_coupling,
    equivariance_residual,
    fixed_plane_basis,
    integrate,
    plane_invariance_defect,
    structure_checks,
)
from .genfile import GeneratorFileError, load_group
from .group import GroupError, subgroup_tests
from .invariants import count_equivariants, count_invariants, degree_table
from .isotropy import isotropy_types, ize_check
from .quat import QuaternionError
from .rep import commutant_dimension
from .series import Family, FamilySpec, build, index2_subgroup_family, j_commutation_partition

SCHEMA_VERSION = 1
THREADS_ENV = "SO4GROUPS_THREADS"

EQUIVARIANCE_TOL = 1e-12
RESIDUAL_TOL = 1e-12
EIGEN_TOL = 1e-9
HAMILTONIAN_TOL = 1e-8


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, default=_jsonable)


def _jsonable(x):
    if isinstance(x, np.ndarray):
        return x.tolist()
    if isinstance(x, (np.floating, np.integer)):
        return x.item()
    if isinstance(x, complex):
        return [x.real, x.imag]
    if isinstance(x, (set, frozenset)):
        return sorted(x)
    raise TypeError(f"not serialisable: {type(x)}")


def load_table(j: int) -> dict:
    text = resources.files("so4groups").joinpath(f"data/table_g{j}.json").read_text()
    return json.loads(text)


def load_schema() -> dict:
    return json.loads(resources.files("so4groups").joinpath("data/report.schema.json").read_text())


def _workers() -> int:
    raw = os.environ.get(THREADS_ENV, "1")
    try:
        n = int(raw)
    except ValueError:
        raise UsageError(f"{THREADS_ENV} must be an integer, got {raw!r}") from None
    return max(1, n)


def _group_from_args(args):
    if args.file:
        if args.family or args.m is not None:
            raise UsageError("use either --file or --family/--m, not both")
        return load_group(args.file), {"file": os.path.basename(args.file)}, None
    if not args.family or args.m is None:
        raise UsageError("need --family and --m (or --file)")
    spec = FamilySpec(Family(args.family), args.m)
    return build(spec), {"family": spec.family.value, "m": spec.m, "label": spec.label}, spec


# -- analyze --------------------------------------------------------------------


def analysis_report(G, descriptor: dict, spec: FamilySpec | None, degrees=(1, 2, 3, 4, 6, 8)) -> dict:
    types = isotropy_types(G)
    part = j_commutation_partition(G)
    commuting = part["commuting"]
    matches_f = None
    if spec is not None and spec.family in (Family.G1, Family.G2, Family.G3):
        F = build(FamilySpec(index2_subgroup_family(spec.family), spec.m))
        matches_f = set(G.subset(commuting)) == {g.embed(G.field_order) for g in F.elements}
    sub = subgroup_tests(G, commuting)
    order2 = [g for g in range(G.order) if G.element_orders[g] == 2]
    return {
        "schema": SCHEMA_VERSION,
        "kind": "analysis",
        "group": descriptor,
        "order": G.order,
        "field_order": G.field_order,
        "conjugacy_classes": len(G.conjugacy_classes),
        "commutant_dimension": commutant_dimension(G),
        "absolutely_irreducible": commutant_dimension(G) == 1,
        "order_two_elements": len(order2),
        "isotropy_types": [t.to_json(G) for t in types],
        "j_partition": {
            "commuting": len(commuting),
            "anticommuting": len(part["anticommuting"]),
            "other": len(part["other"]),
            "commuting_is_subgroup": sub["is_subgroup"],
            "commuting_index": sub["index"],
            "commuting_equals_index2_family": matches_f,
        },
        "degree_table": degree_table(G, degrees).to_json(),
        "ize": ize_check(G, types),
    }


def _print_analysis(r: dict) -> None:
    g = r["group"]
    print(f"group {g.get('label') or g.get('file')}: order {r['order']}, field Q(zeta_{r['field_order']})")
    print(f"  absolutely irreducible: {r['absolutely_irreducible']} (commutant dim {r['commutant_dimension']})")
    print(f"  conjugacy classes: {r['conjugacy_classes']}, elements of order 2: {r['order_two_elements']}")
    print(f"  isotropy types: {len(r['isotropy_types'])}")
    for t in r["isotropy_types"]:
        print(
            f"    order {t['order']}, dim Fix {t['fix_dim']}, class length {t['class_length']},"
            f" |N(H)| {t['normalizer_order']}, image order {t['normalizer_image_order']},"
            f" angle {t['rotation_angle_over_pi']} pi, -id {t['image_is_minus_identity']}"
        )
    jp = r["j_partition"]
    print(f"  J-partition: commuting {jp['commuting']}, anticommuting {jp['anticommuting']}, other {jp['other']}")
    d = r["degree_table"]
    print("  degree  " + " ".join(f"{k:>4}" for k in d["degrees"]))
    print("  c_d     " + " ".join(f"{d['invariants'][str(k)]:>4}" for k in d["degrees"]))
    print("  C_d     " + " ".join(f"{d['equivariants'][str(k)]:>4}" for k in d["degrees"]))
    print(f"  Ize verdict: {r['ize']['verdict']}")


def cmd_analyze(args) -> int:
    t0 = time.perf_counter()
    G, desc, spec = _group_from_args(args)
    report = analysis_report(G, desc, spec)
    if args.timing:
        report["timing_seconds"] = round(time.perf_counter() - t0, 3)
    if args.json:
        print(_dump(report))
    else:
        _print_analysis(report)
    return 0


# -- tables ---------------------------------------------------------------------

G_COLUMNS = (("e3", 3, "C"), ("i4", 4, "c"), ("i6", 6, "c"), ("i8", 8, "c"))
F_COLUMNS = (("e1", 1, "C"), ("i2", 2, "c"), ("e3", 3, "C"), ("i4", 4, "c"), ("i6", 6, "c"), ("i8", 8, "c"))


def _counts(G, columns) -> dict:
    out = {}
    for name, d, kind in columns:
        out[name] = count_equivariants(G, d) if kind == "C" else count_invariants(G, d)
    return out


def table_row(j: int, m: int) -> dict:
    G = build(FamilySpec(Family(f"g{j}"), m))
    F = build(FamilySpec(Family(f"f{j}"), m))
    return {"m": m, "G": _counts(G, G_COLUMNS), "F": _counts(F, F_COLUMNS), "G_order": G.order, "F_order": F.order}


def tables_report(j: int, m_max: int, workers: int = 1) -> dict:
    published = {row["m"]: row for row in load_table(j)["rows"]}
    ms = list(range(3, m_max + 1, 2))
    if workers > 1 and len(ms) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(table_row, [j] * len(ms), ms))
    else:
        rows = [table_row(j, m) for m in ms]
    out = []
    for row in rows:
        ref = published.get(row["m"])
        if ref is None:
            status = "NO-DATA"
            diffs = []
        else:
            diffs = [f"G.{k}" for k in row["G"] if row["G"][k] != ref["G"][k]]
            diffs += [f"F.{k}" for k in row["F"] if row["F"][k] != ref["F"][k]]
            status = "FAIL" if diffs else "PASS"
        out.append(
            {
                **row,
                "published_G": None if ref is None else ref["G"],
                "published_F": None if ref is None else ref["F"],
                "status": status,
                "mismatches": diffs,
            }
        )
    return {"schema": SCHEMA_VERSION, "kind": "tables", "which": j, "m_max": m_max, "rows": out}


def _print_tables(r: dict) -> None:
    j = r["which"]
    gcols = [c[0] for c in G_COLUMNS]
    fcols = [c[0] for c in F_COLUMNS]
    print(f"G_{j}(m) and F_{j}(m): computed / published")
    print(f"{'m':>3}  " + " ".join(f"{c:>6}" for c in gcols) + "  | " + " ".join(f"{c:>6}" for c in fcols) + "  status")
    for row in r["rows"]:
        def cell(part, c):
            ref = row[f"published_{part}"]
            return f"{row[part][c]}/{'-' if ref is None else ref[c]}"

        line = f"{row['m']:>3}  " + " ".join(f"{cell('G', c):>6}" for c in gcols)
        line += "  | " + " ".join(f"{cell('F', c):>6}" for c in fcols)
        line += f"  {row['status']}"
        if row["mismatches"]:
            line += " (" + ", ".join(row["mismatches"]) + ")"
        print(line)


def cmd_tables(args) -> int:
    if args.m_max < 3:
        raise UsageError("--m-max must be at least 3")
    report = tables_report(args.which, args.m_max, _workers())
    if args.json:
        print(_dump(report))
    else:
        _print_tables(report)
    return 2 if any(row["status"] == "FAIL" for row in report["rows"]) else 0


# -- check-ize ------------------------------------------------------------------


def cmd_check_ize(args) -> int:
    G, desc, _ = _group_from_args(args)
    types = isotropy_types(G, with_action=False)
    ize = ize_check(G, types)
    report = {
        "schema": SCHEMA_VERSION,
        "kind": "ize",
        "group": desc,
        "order": G.order,
        **ize,
        "isotropy_types": [
            {"order": t.order, "fix_dim": t.fix_dim, "class_length": t.class_length} for t in types
        ],
    }
    if args.json:
        print(_dump(report))
    else:
        name = desc.get("label") or desc.get("file")
        print(f"{name}: order {G.order}")
        print(f"  absolutely irreducible: {ize['absolutely_irreducible']}")
        print(f"  fixed-space dimensions of isotropy types: {ize['fix_dims']}")
        print(f"  odd-dimensional fixed space: {ize['has_odd_dim_fix']}")
        print(f"  verdict (abs. irreducible, no odd-dimensional fixed space): {ize['verdict']}")
    return 0


# -- dynamics -------------------------------------------------------------------


def dynamics_report(spec: FamilySpec, c: CubicCoefficients, checks: set[str]) -> dict:
    G = build(spec)
    report: dict = {
        "schema": SCHEMA_VERSION,
        "kind": "dynamics",
        "group": {"family": spec.family.value, "m": spec.m, "label": spec.label},
        "coefficients": {"lambda": c.lam, "c1": c.c1, "c2": c.c2, "c3": c.c3, "coupling": Coupling(c.coupling).value},
        "passed": {},
    }
    is_g = spec.family in (Family.G1, Family.G2, Family.G3)
    if "equivariance" in checks:
        res = equivariance_residual(c, G)
        report["equivariance"] = res
        report["passed"]["equivariance"] = res["group"] < EQUIVARIANCE_TOL and res["s1"] < EQUIVARIANCE_TOL
    if "structure" in checks and is_g:
        F = build(FamilySpec(index2_subgroup_family(spec.family), spec.m))
        s = structure_checks(c, G, F)
        report["structure"] = s
        ok = s["gradient_parts_symmetric"] and s["coset_J_anticommutator"] < 1e-12
        if Coupling(c.coupling) is Coupling.HAMILTONIAN:
            ok = ok and s["hamiltonian_part_ok"] and s["I42_anti_invariance_defect"] < 1e-9
        report["passed"]["structure"] = bool(ok)
    if "branch" in checks and is_g:
        b = branch_and_jacobian(c, spec)
        b["plane_invariance_defect"] = plane_invariance_defect(c, fixed_plane_basis(spec))
        report["branch"] = b
        report["passed"]["branch_residual"] = b["residual"] < RESIDUAL_TOL
        report["passed"]["branch_closed_form"] = bool(
            np.allclose(b["jacobian_eigenvalues"], b["closed_form_eigenvalues"], rtol=0, atol=EIGEN_TOL)
        )
        report["passed"]["branch_published_formula"] = bool(
            np.allclose(b["jacobian_eigenvalues"], b["published_eigenvalues"], rtol=0, atol=EIGEN_TOL)
        )
    return report


def cmd_dynamics(args) -> int:
    spec = FamilySpec(Family(args.family), args.m)
    coupling = Coupling(args.coupling) if args.coupling else default_coupling(spec)
    c = CubicCoefficients(args.lam, args.c1, args.c2, args.c3, coupling)
    checks = {"equivariance", "structure", "branch"} if args.check == "all" else set(args.check.split(","))
    unknown = checks - {"equivariance", "structure", "branch"}
    if unknown:
        raise UsageError(f"unknown check(s): {', '.join(sorted(unknown))}")
    report = dynamics_report(spec, c, checks)
    if args.integrate:
        T, dt = args.integrate
        if "branch" in report:
            x0 = np.asarray(report["branch"]["equilibrium_real"]) + 1e-3
        else:
            x0 = np.random.default_rng(0).normal(size=4) * 0.1
        traj = integrate(c, x0, T, dt)
        np.savetxt(args.csv, traj, delimiter=",", header="t,x1,x2,x3,x4", comments="")
        report["trajectory_csv"] = os.path.basename(args.csv)
    print(_dump(report))
    return 0 if all(report["passed"].values()) else 2


# -- entry ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="so4groups", description="Finite SO(4) groups in quaternion-pair form.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    families = [f.value for f in Family]

    def group_args(sp):
        sp.add_argument("--family", choices=families)
        sp.add_argument("--m", type=int)
        sp.add_argument("--file", help="JSON generator file")
        sp.add_argument("--json", action="store_true")

    a = sub.add_parser("analyze", help="full report for one group")
    group_args(a)
    a.add_argument("--timing", action="store_true", help="add wall-clock time (breaks byte-identical output)")
    a.set_defaults(func=cmd_analyze)

    t = sub.add_parser("tables", help="reproduce a published count table")
    t.add_argument("--which", type=int, choices=(1, 2, 3), required=True)
    t.add_argument("--m-max", type=int, default=21)
    t.add_argument("--json", action="store_true")
    t.set_defaults(func=cmd_tables)

    z = sub.add_parser("check-ize", help="absolute irreducibility and odd-dimensional fixed spaces")
    group_args(z)
    z.set_defaults(func=cmd_check_ize)

    d = sub.add_parser("dynamics", help="cubic equivariant field diagnostics")
    d.add_argument("--family", choices=families, required=True)
    d.add_argument("--m", type=int, required=True)
    d.add_argument("--lambda", dest="lam", type=float, default=-1.0)
    d.add_argument("--c1", type=float, default=1.0)
    d.add_argument("--c2", type=float, default=0.5)
    d.add_argument("--c3", type=float, default=0.25)
    d.add_argument("--coupling", choices=[c.value for c in Coupling])
    d.add_argument("--check", default="all", help="all, or a comma list of equivariance,structure,branch")
    d.add_argument("--integrate", nargs=2, type=float, metavar=("T", "DT"))
    d.add_argument("--csv", default="trajectory.csv")
    d.set_defaults(func=cmd_dynamics)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # usage errors and --help; report the code instead of leaving the interpreter
        return exc.code if isinstance(exc.code, int) else 1
    try:
        return args.func(args)
    except (UsageError, GeneratorFileError, QuaternionError, GroupError, BranchError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
