"""Command-line frontend: every verification is a subcommand emitting a
machine-readable JSON report on stdout.

Exit codes: 0 when the verified claim holds (including expected
infeasibility results), 1 on a verification failure, 2 on usage errors.
Reports are deterministic: keys are sorted and all scalars are exact
(rationals as [numerator, denominator] pairs).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import catalog
from .connections import (
    cp_connection,
    cp_connection_quarter_formula,
    closed_form_nabla_minus_plus,
    closed_form_nabla_plus_plus,
    closed_form_xi,
    curvature_op,
    derivative_mode_report,
    obata_connection,
    parallel_defect,
    restrict_and_flatness,
    torsion,
)
from .hkt import (
    hermitian_family,
    hkt_constrain,
    pd_feasibility,
    subalgebra_restriction_check,
)
from .holonomy import (
    ambrose_singer,
    complexified_holonomy_check,
    match_block_description,
    quaternionic_classify,
    semidirect_report,
)
from .liealg import (
    LieAlgebra,
    LieAlgebraError,
    algebra_from_json,
    algebra_to_json,
    vec_is_zero,
)
from .scalars import GaussRational, as_gauss, gauss
from .sl3proof import replay_theorem, verify_equivalence_ii_iii
from .structures import is_complex_structure, minus_i_eigenspace

SCHEMA_VERSION = 1


def parse_gauss(text: str) -> GaussRational:
    """Parse 'a/b', 'a/b+c/d*i', 'c/d*i', 'i' style exact complex numbers."""
    s = text.replace(" ", "").replace("*i", "i")
    if not s:
        raise ValueError("empty number")
    re_part, im_part = Fraction(0), Fraction(0)
    # split into signed terms
    terms = []
    cur = s[0]
    for ch in s[1:]:
        if ch in "+-":
            terms.append(cur)
            cur = ch
        else:
            cur += ch
    terms.append(cur)
    for term in terms:
        if term.endswith("i"):
            body = term[:-1]
            if body in ("", "+", "-"):
                body += "1"
            im_part += Fraction(body)
        else:
            re_part += Fraction(term)
    return GaussRational(re_part, im_part)


def _frac_json(x) -> list:
    f = Fraction(x)
    return [f.numerator, f.denominator]


def _gauss_json(g: GaussRational) -> dict:
    return {"re": _frac_json(g.re), "im": _frac_json(g.im)}


def _mat_json(m) -> list:
    return [[_frac_json(x) for x in row] for row in m.rows]


def import_algebra(path: str) -> LieAlgebra:
    """Load a structure-constant document and validate the Jacobi identity."""
    with open(path) as fh:
        doc = json.load(fh)
    algebra = algebra_from_json(doc)
    failures = algebra.check_jacobi()
    if failures:
        i, j, k, _ = failures[0]
        raise LieAlgebraError(f"Jacobi identity fails at triple ({i},{j},{k})")
    return algebra


# -- subcommand bodies; each returns (status, payload) ------------------------


def _cmd_catalog_verify(args):
    payload = {"jacobi": {}, "complex_products": {}, "corrected_bases": {}}
    ok = True
    for m in (2, 3, 5):
        failures = catalog.build_sl(m).algebra.check_jacobi()
        payload["jacobi"][f"sl({m + 1})"] = not failures
        ok = ok and not failures
    for m in (2, 4):
        failures = catalog.build_gl(m).algebra.check_jacobi()
        payload["jacobi"][f"gl({m})"] = not failures
        ok = ok and not failures
    for n in range(1, args.n + 1):
        scp = catalog.cp_structure_sl(n)
        gcp = catalog.cp_structure_gl(n)
        ind = catalog.hypercomplex_sl_c(n)
        payload["complex_products"][f"n={n}"] = {
            "sl_dim": scp.sl.algebra.dim,
            "gl_dim": gcp.gl.algebra.dim,
            "hat_dim": ind.hat.algebra.dim,
            "validated": True,
        }
        base_tr, hat_tr = catalog.koszul_remark_traces(n)
        trace_ok = base_tr == 2 * n + 2 and hat_tr == 2 * base_tr
        payload["complex_products"][f"n={n}"]["trace_form"] = _frac_json(base_tr)
        ok = ok and trace_ok
    from .scalars import QISQRT2

    for name, mats in (
        ("III", catalog.family_iii_basis()),
        ("IV(mu'=2)", catalog.family_iv_basis(2)),
        ("V", catalog.family_v_basis()),
        ("VII_inf", catalog.family_vii_inf_basis()),
    ):
        rep = catalog.invariant_subalgebra_report(mats, QISQRT2)
        payload["corrected_bases"][name] = rep
        ok = ok and rep["bracket_closed"] and rep["direct_sum"]
    return ("pass" if ok else "fail"), payload


def _cmd_sasaki_tables(args):
    payload = {}
    ok = True
    if args.symbolic or args.lam is None:
        for fam in ("I", "II"):
            failures = catalog.table_algebra(fam).check_jacobi()
            payload[f"table_{fam}_jacobi"] = not failures
            ok = ok and not failures
        payload["mode"] = "symbolic"
    else:
        lam = parse_gauss(args.lam)
        payload["mode"] = "lambda=" + args.lam
        payload["lambda"] = _gauss_json(lam)
        from .liealg import Subspace, complexify, from_matrix_basis
        from .scalars import QI, QQ

        failures = catalog.table_algebra("I", lam).check_jacobi()
        payload["table_I_jacobi"] = not failures
        ok = ok and not failures
        sl3 = from_matrix_basis(catalog.sl3_basis_matrices(), QQ)[0]
        for fam in ("I", "II"):
            fam_lam = lam if fam == "I" else None
            j = catalog.sasaki_j(fam, fam_lam)
            good, witness = is_complex_structure(sl3, j)
            payload[f"J_{fam}_integrable"] = good
            ok = ok and good
            m = minus_i_eigenspace(complexify(sl3), j)
            rows = [
                catalog.sl3c_coords(x) for x in catalog.sasaki_basis(fam, fam_lam)
            ]
            same = m == Subspace.from_vectors(rows, 8, QI)
            payload[f"J_{fam}_eigenspace_matches_basis"] = same
            ok = ok and same
            mats = catalog.sasaki_basis_with_conjugates(fam, fam_lam)
            alg = from_matrix_basis(mats, QI)[0]
            expected = catalog.rescaled_table_constants(fam, fam_lam)
            match = all(
                alg.basis_bracket(*key)
                == {k: as_gauss(c) for k, c in t.items()}
                for key, t in expected.items()
            ) and all(key in expected for key in alg.brackets)
            payload[f"{fam}_matrices_match_rescaled_table"] = match
            ok = ok and match
    return ("pass" if ok else "fail"), payload


def _cmd_connection_check(args):
    n = args.n
    scp = catalog.cp_structure_sl(n)
    L = scp.sl.algebra
    conn = cp_connection(scp.cp)
    base = L.basis()
    payload = {}
    ok = True

    torsion_free = all(
        vec_is_zero(torsion(conn, base[i], base[j]))
        for i in range(L.dim)
        for j in range(i + 1, L.dim)
    )
    parallel = parallel_defect(conn, scp.cp.j) and parallel_defect(conn, scp.cp.e)
    quarter = all(
        conn.derive(base[i], base[j])
        == cp_connection_quarter_formula(scp.cp, base[i], base[j])
        for i in range(L.dim)
        for j in range(L.dim)
    )
    payload["torsion_free"] = torsion_free
    payload["parallel_j_e"] = parallel
    payload["quarter_formula"] = quarter
    ok = ok and torsion_free and parallel and quarter

    plus = scp.plus_basis
    minus = [scp.cp.j.apply(p) for p in plus]
    nabla_forms = all(
        conn.derive(p, q) == closed_form_nabla_plus_plus(n, p, q)
        for p in plus
        for q in plus
    ) and all(
        conn.derive(mm, q) == closed_form_nabla_minus_plus(n, mm, q)
        for mm in minus
        for q in plus
    )
    payload["nabla_closed_forms"] = nabla_forms
    ok = ok and nabla_forms

    xi_ok = True
    flat_blocks = True
    for i, xp in enumerate(plus):
        for j in range(i + 1, len(plus)):
            if not curvature_op(conn, xp, plus[j]).is_zero():
                flat_blocks = False
            if not curvature_op(conn, minus[i], minus[j]).is_zero():
                flat_blocks = False
        for ym in minus:
            r = curvature_op(conn, xp, ym)
            for zp in plus:
                if r.apply(zp) != closed_form_xi(n, xp, ym, zp):
                    xi_ok = False
    payload["curvature_matches_closed_form"] = xi_ok
    payload["curvature_flat_on_eigenspaces"] = flat_blocks
    ok = ok and xi_ok and flat_blocks

    for side in ("plus", "minus"):
        _, _, flat = restrict_and_flatness(scp.cp, side)
        payload[f"restricted_{side}_flat"] = flat
        ok = ok and flat

    mode = derivative_mode_report(scp, tuples="displayed")
    payload["derivative_mode"] = mode
    ok = ok and "commutator" in mode["matching_modes"]
    if n == 1:
        full_mode = derivative_mode_report(scp, tuples="all")
        payload["derivative_mode_full"] = full_mode
        ok = ok and full_mode["matching_modes"] == ["commutator"]
    return ("pass" if ok else "fail"), payload


def _cmd_holonomy(args):
    n = args.n
    payload = {"target": args.target, "n": n}
    ok = True
    scp = catalog.cp_structure_sl(n)
    hol_cp = ambrose_singer(scp.sl.algebra, cp_connection(scp.cp))
    if args.target == "cp":
        payload["dim"] = hol_cp.dim
        payload["basis"] = [_mat_json(t) for t in hol_cp.basis_ops]
        ok = ok and hol_cp.dim == n * n * (2 * n + 2)
        described = match_block_description(hol_cp, scp, "b")
        payload["matches_block_description"] = described
        ok = ok and described
        rep = semidirect_report(hol_cp, scp)
        payload["semidirect"] = rep
        ok = (
            ok
            and rep["ideal_dim"] == n * n * (2 * n + 1)
            and rep["quotient_dim"] == n * n
            and rep["ideal_abelian"]
            and rep["bracket_law"]
        )
    else:
        ind = catalog.hypercomplex_sl_c(n)
        hol_ob = ambrose_singer(
            ind.hat.algebra, obata_connection(ind.hat.algebra, ind.structure)
        )
        payload["dim"] = hol_ob.dim
        payload["basis"] = [_mat_json(t) for t in hol_ob.basis_ops]
        ok = ok and hol_ob.dim == 2 * n * n * (2 * n + 2)
        qc = quaternionic_classify(hol_ob, ind)
        payload["quaternionic"] = {
            "in_gl_h": qc["in_gl_h"],
            "in_v": qc["in_v"],
            "in_sl_h": qc["in_sl_h"],
            "witness": None
            if qc["witness"] is None
            else {"operator": qc["witness"][0], "trace": _frac_json(qc["witness"][1])},
        }
        ok = ok and qc["in_gl_h"] and qc["in_v"] and not qc["in_sl_h"]
        cc = complexified_holonomy_check(hol_cp, ind, hol_ob)
        payload["complexified"] = cc
        ok = ok and cc["span_equal"] and cc["dim_doubled"]
    return ("pass" if ok else "fail"), payload


def _feasibility_json(feas: dict) -> dict:
    out = {"status": feas["status"]}
    if "certificate" in feas:
        out["certificate"] = feas["certificate"]
    if "witness" in feas:
        out["witness"] = _mat_json(feas["witness"])
    return out


def _cmd_hkt_check(args):
    payload = {"algebra": args.algebra}
    ok = True
    gl2 = catalog.hypercomplex_gl_c(1)
    if args.algebra == "gl2c":
        fam = hermitian_family(gl2.hat.algebra, gl2.structure)
        payload["hermitian_rank"] = fam.rank
        ok = ok and fam.rank == 6
        fam4 = hkt_constrain(
            gl2.hat.algebra,
            gl2.structure,
            fam,
            triples=[(0, 1, 2), (0, 1, 3), (0, 1, 7), (1, 2, 3)],
        )
        diag_zero = all(
            f.rows[t][t] == 0 for f in fam4.free_directions for t in range(8)
        )
        payload["four_triples_force_zero_diagonal"] = diag_zero
        ok = ok and diag_zero
        full = hkt_constrain(gl2.hat.algebra, gl2.structure, fam)
        feas = pd_feasibility(full)
        payload["feasibility"] = _feasibility_json(feas)
        ok = ok and feas["status"] == "infeasible"
        g4 = catalog.hypercomplex_gl_c(2)
        hm = catalog.hat_map(catalog.gl_to_gl_plus2(1).matrix, gl2, g4)
        chain = subalgebra_restriction_check(g4, gl2, hm)
        payload["dagger_chain_propagates"] = chain["propagates"]
        ok = ok and chain["propagates"]
    else:  # sl2n1c
        n = args.n
        ind = catalog.hypercomplex_sl_c(n)
        fam = hermitian_family(ind.hat.algebra, ind.structure)
        full = hkt_constrain(ind.hat.algebra, ind.structure, fam)
        feas = pd_feasibility(full)
        payload["feasibility"] = _feasibility_json(feas)
        ok = ok and feas["status"] == "infeasible"
        if n == 1:
            hm = catalog.hat_map(catalog.gl_to_sl(2).matrix, gl2, ind)
            chain = subalgebra_restriction_check(ind, gl2, hm)
            payload["chain_from_gl2c_propagates"] = chain["propagates"]
            ok = ok and chain["propagates"]
    return ("pass" if ok else "fail"), payload


def _cmd_sl3_proof(args):
    families = ("I", "II") if args.family == "all" else (args.family,)
    report = replay_theorem(families)
    payload = {
        "verified_steps": report["verified_steps"],
        "cases": {
            fam: {
                "steps": [name for _, name in case["steps"]],
                "axioms": case["axioms"],
                "branches": None
                if case["branches"] is None
                else {
                    str(eps): [name for _, name in steps]
                    for eps, steps in case["branches"].items()
                },
            }
            for fam, case in report["cases"].items()
        },
    }
    return ("pass" if report["passed"] else "fail"), payload


def _cmd_equivalence(args):
    rep = verify_equivalence_ii_iii()
    return ("pass" if rep["passed"] else "fail"), rep


_EXPORT_OBJECTS = ("sl3", "sl4", "sl6", "gl2", "gl4", "sl3c", "gl2c", "table-I", "table-II")


def _export_algebra(name: str, lam_text: str | None):
    if name == "sl3":
        return catalog.build_sl(2).algebra
    if name == "sl4":
        return catalog.build_sl(3).algebra
    if name == "sl6":
        return catalog.build_sl(5).algebra
    if name == "gl2":
        return catalog.build_gl(2).algebra
    if name == "gl4":
        return catalog.build_gl(4).algebra
    if name == "sl3c":
        return catalog.hypercomplex_sl_c(1).hat.algebra
    if name == "gl2c":
        return catalog.hypercomplex_gl_c(1).hat.algebra
    if name == "table-II":
        return catalog.table_algebra("II")
    if name == "table-I":
        lam = parse_gauss(lam_text) if lam_text else gauss(Fraction(1, 2))
        return catalog.table_algebra("I", lam)
    raise ValueError(f"unknown object {name!r}")


def _cmd_export(args):
    algebra = _export_algebra(args.object, args.lam)
    doc = algebra_to_json(algebra)
    with open(args.out, "w") as fh:
        json.dump(doc, fh, sort_keys=True, indent=2)
        fh.write("\n")
    back = import_algebra(args.out)
    round_trip = back.brackets == algebra.brackets and back.dim == algebra.dim
    payload = {
        "object": args.object,
        "path": args.out,
        "dim": algebra.dim,
        "round_trip": round_trip,
    }
    return ("pass" if round_trip else "fail"), payload


def _lambda_arg(text: str) -> str:
    parse_gauss(text)  # malformed values become usage errors
    return text


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hyperlie",
        description="exact verification toolkit for the special linear "
        "hypercomplex constructions",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("catalog-verify", help="Jacobi and structure suite")
    p.add_argument("--n", type=int, default=1)
    p.set_defaults(func=_cmd_catalog_verify)

    p = sub.add_parser("sasaki-tables", help="classified family tables")
    p.add_argument("--lambda", dest="lam", type=_lambda_arg, default=None)
    p.add_argument("--symbolic", action="store_true")
    p.set_defaults(func=_cmd_sasaki_tables)

    p = sub.add_parser("connection-check", help="connection and curvature forms")
    p.add_argument("--n", type=int, default=1)
    p.set_defaults(func=_cmd_connection_check)

    p = sub.add_parser("holonomy", help="holonomy algebra computation")
    p.add_argument("--target", choices=("cp", "obata"), required=True)
    p.add_argument("--n", type=int, default=1)
    p.set_defaults(func=_cmd_holonomy)

    p = sub.add_parser("hkt-check", help="hyper-Hermitian metric feasibility")
    p.add_argument("--algebra", choices=("gl2c", "sl2n1c"), required=True)
    p.add_argument("--n", type=int, default=1)
    p.set_defaults(func=_cmd_hkt_check)

    p = sub.add_parser("sl3-proof", help="symbolic non-existence replay")
    p.add_argument("--family", choices=("I", "II", "all"), default="all")
    p.set_defaults(func=_cmd_sl3_proof)

    p = sub.add_parser("equivalence-ii-iii", help="family equivalence check")
    p.set_defaults(func=_cmd_equivalence)

    p = sub.add_parser("export", help="write a structure-constant document")
    p.add_argument("--object", choices=_EXPORT_OBJECTS, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--lambda", dest="lam", type=_lambda_arg, default=None)
    p.set_defaults(func=_cmd_export)
    return parser


def run(argv=None):
    """Parse arguments, run the subcommand, return (exit_code, report)."""
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        status, payload = args.func(args)
    except Exception as exc:  # verification failure -> report + exit 1
        report = {
            "command": args.command,
            "status": "fail",
            "payload": {"diagnostic": f"{type(exc).__name__}: {exc}"},
            "version": SCHEMA_VERSION,
        }
        return 1, report
    report = {
        "command": args.command,
        "status": status,
        "payload": payload,
        "version": SCHEMA_VERSION,
    }
    return (0 if status == "pass" else 1), report


def main(argv=None) -> int:
    code, report = run(argv)
    print(json.dumps(report, sort_keys=True, indent=2))
    return code


if __name__ == "__main__":
    sys.exit(main())
