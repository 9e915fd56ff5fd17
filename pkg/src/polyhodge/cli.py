"""Command line front end.

Exit codes: 0 success, 1 computation error or failed check, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from . import d2sys, dinv, nerve, toricdef, zoo
from .complexes import hodge_number, normal_fan
from .polytope import DimensionMismatch, EmptyInput, Polytope, prism, vertex_figure

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else x.numerator
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def load_polytope(args) -> Polytope:
    if args.zoo and args.file:
        raise InputError("give either --zoo or --file, not both")
    if args.zoo:
        try:
            return zoo.get(args.zoo)
        except zoo.ZooError as exc:
            raise InputError(str(exc)) from None
    if args.file:
        try:
            with open(args.file) as fh:
                text = fh.read()
        except OSError as exc:
            raise InputError(f"cannot read {args.file}: {exc}") from None
        try:
            return Polytope.from_json(text)
        except (ValueError, EmptyInput, DimensionMismatch, TypeError) as exc:
            raise InputError(f"bad polytope file: {exc}") from None
    raise InputError("no polytope given (use --zoo NAME or --file PATH)")


def parse_int_list(text: str, what: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise InputError(f"{what} must be comma-separated integers, got {text!r}") from None


def _echo(p: Polytope) -> dict:
    return {"name": p.name, "dim": p.dim, "f_vector": list(p.f_vector()[1:-1])}


def _checks_pass(checks: list[dict]) -> bool:
    return all(c["pass"] for c in checks if not c.get("informational"))


# --- subcommands -----------------------------------------------------------------


def cmd_dinv(args) -> tuple[dict, int]:
    p = load_polytope(args)
    prof = dinv.d_profile(p)
    checks: list[dinv.Check] = []
    want = set(args.crosscheck or [])
    if "all" in want:
        want = {"dual", "closedform", "normalfan", "flags"}
    if "dual" in want:
        du = dinv.d_profile_dual_route(p)
        checks.append(dinv.Check("dual_route", du == prof, list(prof.dims), list(du.dims)))
    if "closedform" in want:
        checks.extend(dinv.closed_form_checks(p))
    if "normalfan" in want and p.dim >= 1:
        checks.append(dinv.normal_fan_sequence_check(p))
    if "flags" in want and p.dim >= 4:
        try:
            k = d2sys.d2_via_flags(p)
            checks.append(dinv.Check("flag_kernel", k == prof[2], k, prof[2]))
        except d2sys.HypothesisViolated as exc:
            checks.append(dinv.Check("flag_kernel", True, "hypothesis violated", str(exc), True))
    cl = [_jsonable(c.as_dict()) for c in checks]
    rep = {"dims": list(prof.dims), "checks": cl}
    return rep, EXIT_OK if _checks_pass(cl) else EXIT_FAIL


def cmd_hodge(args) -> tuple[dict, int]:
    p = load_polytope(args)
    fan = normal_fan(p)
    D = fan.ambient_dim
    table = [[hodge_number(fan, a, b) for b in range(D + 1)] for a in range(D + 1)]
    return {"hodge": table, "fan": "normal"}, EXIT_OK


def cmd_minkowski(args) -> tuple[dict, int]:
    p = load_polytope(args)
    ms = dinv.minkowski_space(p)
    d1 = dinv.d_profile(p)[1]
    checks = [dinv.Check("dim_is_D1_plus_1", ms.dim == d1 + 1, ms.dim, d1 + 1).as_dict()]
    rep = {
        "dim": ms.dim,
        "edges": [list(e.vertices) for e in ms.edge_index],
        "basis": _jsonable(ms.basis),
        "checks": checks,
    }
    return rep, EXIT_OK if _checks_pass(checks) else EXIT_FAIL


def cmd_d2system(args) -> tuple[dict, int]:
    p = load_polytope(args)
    if p.dim < 4:
        d2 = dinv.d_profile(p)[2]
        return {"kernel_dim": d2, "route": "direct", "note": "flag system needs dim >= 4"}, EXIT_OK
    sys_ = d2sys.build_flag_system(p)
    k = sys_.kernel_dim()
    rep = {
        "variables": len(sys_.variables),
        "equations": sys_.family_rows,
        "kernel_dim": k,
        "route": "flags",
    }
    checks = []
    if args.crosscheck:
        d2 = dinv.d_profile(p)[2]
        checks.append(dinv.Check("flag_kernel_vs_direct", k == d2, k, d2).as_dict())
    rep["checks"] = checks
    return rep, EXIT_OK if _checks_pass(checks) else EXIT_FAIL


def cmd_clean(args) -> tuple[dict, int]:
    p = load_polytope(args)
    st = d2sys.clean(p)
    rep = {
        "clean_vertices": sorted(st.clean_vertices),
        "clean_2faces": sorted(list(f) for f in st.clean_2faces),
        "unclean_vertices": sorted(set(range(len(p.vertices))) - st.clean_vertices),
        "complete": st.complete,
        "history": [[k, list(x) if isinstance(x, tuple) else x] for k, x in st.history],
    }
    return rep, EXIT_OK


def cmd_certify(args) -> tuple[dict, int]:
    p = load_polytope(args)
    v = d2sys.certify_vanishing(p)
    d2 = dinv.d_profile(p)[2] if p.dim >= 2 else 0
    vanishes = isinstance(v, d2sys.VanishesByTheorem)
    checks = []
    if vanishes:
        checks.append(dinv.Check("direct_D2_zero", d2 == 0, d2, 0).as_dict())
    rep = {
        "verdict": "VanishesByTheorem" if vanishes else "NotApplicable",
        "reason": None if vanishes else v.reason,
        "direct_D2": d2,
        "checks": checks,
    }
    return rep, EXIT_OK if _checks_pass(checks) else EXIT_FAIL


def cmd_nerve(args) -> tuple[dict, int]:
    p = load_polytope(args)
    nv = nerve.build_nerve(p, args.ell)
    rows = {q: nerve.e2_page(nv, q) for q in (0, 1)}
    # columns past the last nonzero entry are all zero; keep at least 0..ell+1
    last = max([args.ell + 1] + [j for row in rows.values() for j, x in enumerate(row) if x])
    table = {f"{j},{q}": (row[j] if j < len(row) else 0) for q, row in rows.items() for j in range(last + 1)}
    vsum = sum(
        nerve.skeleton_reduced_cohomology(vertex_figure(p, a), args.ell - 1) for a in range(len(p.vertices))
    )
    off = {j: x for j, x in enumerate(rows[0]) if j != args.ell and x}
    e_ell = rows[0][args.ell] if args.ell < len(rows[0]) else 0
    checks = [
        dinv.Check("bottom_row_vanishes_off_ell", not off, off, {}).as_dict(),
        dinv.Check("vertex_figure_sum", e_ell == vsum, e_ell, vsum).as_dict(),
    ]
    rep = {"ell": args.ell, "e2": table, "checks": checks}
    return rep, EXIT_OK if _checks_pass(checks) else EXIT_FAIL


def cmd_toric(args) -> tuple[dict, int]:
    p = load_polytope(args)
    try:
        c = toricdef.gorenstein_cone(p)
    except toricdef.NonIntegralVertices as exc:
        raise InputError(str(exc)) from None
    if args.action in ("t1", "t2"):
        R = parse_int_list(args.degree, "--degree") if args.degree else c.rstar
        if len(R) != c.rank:
            raise InputError(f"--degree needs {c.rank} entries")
        k = 1 if args.action == "t1" else 2
        return {args.action: toricdef.t_graded(c, k, R), "degree": list(R)}, EXIT_OK
    lo, hi = parse_int_list(args.box or "-1,1", "--box")
    res = toricdef.sweep(c, lo, hi)
    out = {",".join(map(str, R)): {"t1": t1, "t2": t2} for R, (t1, t2) in res.items()}
    return {"box": [lo, hi], "degrees": out}, EXIT_OK


def cmd_zoo(args) -> tuple[dict, int]:
    if args.zoo:
        p = load_polytope(args)
        return {"polytope": json.loads(p.to_json())}, EXIT_OK
    return {"names": zoo.names()}, EXIT_OK


def selfcheck_rows() -> list[dict]:
    """The regression table, in a fixed order."""
    rows = []

    def add(name, got, want):
        rows.append({"name": name, "pass": got == want, "got": _jsonable(got), "want": _jsonable(want)})

    prof = lambda n: list(dinv.d_profile(zoo.get(n)).dims)  # noqa: E731
    add("icosahedron", prof("icosahedron"), [0, 0, 8, 0])
    for m in range(4, 9):
        add(f"pyramid_{m}gon", prof(f"pyramid_{m}gon"), [0, 0, 0, 0])
        add(f"bipyramid_{m}gon D2", dinv.d_profile(zoo.get(f"bipyramid_{m}gon"))[2], m - 2)
    add("cuboctahedron", prof("cuboctahedron"), [0, 1, 3, 0])
    add("cuboctahedron f", list(zoo.get("cuboctahedron").f_vector()[1:4]), [12, 24, 14])
    add("dp_cuboctahedron", prof("dp_cuboctahedron"), [0, 0, 1, 4, 0])
    for m in range(3, 11):
        add(f"{m}gon D1", dinv.d_profile(zoo.get(f"{m}gon"))[1], m - 3)
    simple = {n: zoo.get(n) for n in ("cube3", "cube4", "prism_triangle")}
    simple["prism_triangle x interval"] = prism(simple["prism_triangle"])
    simple["5gon x interval"] = prism(zoo.get("5gon"))
    for n, p in simple.items():
        add(f"{n} high", [dinv.d_profile(p)[k] for k in range(2, p.dim + 1)], [0] * (p.dim - 1))
    dp = zoo.get("dp_cuboctahedron")
    add("dp_cuboctahedron flags", d2sys.d2_via_flags(dp), 1)
    add("dp_cuboctahedron sign element", d2sys.sign_element_check(dp), True)
    add("simplex4 flags", d2sys.d2_via_flags(zoo.get("simplex4")), 0)
    sq = toricdef.gorenstein_cone(zoo.get("unit_square_lattice"))
    cu = toricdef.gorenstein_cone(zoo.get("unit_cube_lattice"))
    add("conifold T1(-R*)", toricdef.t_graded(sq, 1, sq.rstar), 1)
    add("cube cone T1(-R*)", toricdef.t_graded(cu, 1, cu.rstar), 2)
    add("cube cone T2(-R*)", toricdef.t_graded(cu, 2, cu.rstar), 0)
    return rows


def cmd_selfcheck(args) -> tuple[dict, int]:
    rows = selfcheck_rows()
    ok = all(r["pass"] for r in rows)
    return {"checks": rows, "pass": ok}, EXIT_OK if ok else EXIT_FAIL


# --- output ---------------------------------------------------------------------


def _text(rep: dict) -> str:
    def flat(v):
        if isinstance(v, (list, tuple)):
            return "(" + ", ".join(flat(x) for x in v) + ")"
        if isinstance(v, dict):
            return json.dumps(_jsonable(v))
        return str(v)

    body = {k: v for k, v in rep.items() if k != "checks"}
    w = max(len(k) for k in body)
    lines = []
    for key, val in body.items():
        if isinstance(val, dict) and val and all(not isinstance(v, dict) for v in val.values()):
            lines.append(f"{key}:")
            kw = max(len(str(k)) for k in val)
            lines.extend(f"  {str(k):<{kw}}  {flat(v)}" for k, v in val.items())
        else:
            lines.append(f"{key:<{w}}  {flat(val)}")
    checks = rep.get("checks") or []
    if checks:
        cw = max(len(c["name"]) for c in checks)
        lines.append("checks:")
        for c in checks:
            mark = "pass" if c["pass"] else ("info" if c.get("informational") else "FAIL")
            lhs, rhs = c.get("lhs", c.get("got")), c.get("rhs", c.get("want"))
            lines.append(f"  {c['name']:<{cw}}  {mark}  {flat(lhs)} vs {flat(rhs)}")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="polyhodge", description="Polyhedral Hodge invariants over Q.")
    sub = ap.add_subparsers(dest="command", required=True)

    def with_input(sp):
        sp.add_argument("--zoo", metavar="NAME", help="built-in polytope, e.g. cube3, 7gon, icosahedron")
        sp.add_argument("--file", metavar="PATH", help='JSON file {"name": ..., "vertices": [[...], ...]}')
        sp.add_argument("--json", action="store_true", help="emit JSON")
        return sp

    sp = with_input(sub.add_parser("dinv", help="dimensions of D^k"))
    sp.add_argument(
        "--crosscheck", action="append", choices=["dual", "closedform", "normalfan", "flags", "all"]
    )
    sp.set_defaults(func=cmd_dinv)
    with_input(sub.add_parser("hodge", help="H^{p,q} of the normal fan")).set_defaults(func=cmd_hodge)
    with_input(sub.add_parser("minkowski", help="Minkowski summand space")).set_defaults(func=cmd_minkowski)
    sp = with_input(sub.add_parser("d2system", help="flag equation system for D^2"))
    sp.add_argument("--crosscheck", action="store_true", help="compare with the direct D^2")
    sp.set_defaults(func=cmd_d2system)
    with_input(sub.add_parser("clean", help="cleaning fixpoint")).set_defaults(func=cmd_clean)
    with_input(sub.add_parser("certify", help="pyramid cleaning certificate for D^2 = 0")).set_defaults(
        func=cmd_certify
    )
    sp = with_input(sub.add_parser("nerve-e2", help="E2 terms of the skeleton covering"))
    sp.add_argument("--ell", type=int, default=3)
    sp.set_defaults(func=cmd_nerve)
    sp = with_input(sub.add_parser("toric", help="graded T^1, T^2 of the Gorenstein cone"))
    sp.add_argument("action", choices=["t1", "t2", "sweep"])
    sp.add_argument("--degree", metavar="a,b,...", help="degree R (default: R*)")
    sp.add_argument("--box", metavar="lo,hi", help="coordinate box for sweep (default -1,1)")
    sp.set_defaults(func=cmd_toric)
    with_input(sub.add_parser("zoo", help="list zoo names or dump one as JSON")).set_defaults(func=cmd_zoo)
    sp = sub.add_parser("selfcheck", help="run the regression table")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_selfcheck)
    return ap


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    t0 = time.perf_counter()
    try:
        rep, code = args.func(args)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (
        d2sys.HypothesisViolated,
        d2sys.NotApplicableError,
        toricdef.DegreeUnsupported,
        toricdef.PreconditionViolated,
        nerve.DimensionOutOfRange,
        DimensionMismatch,
        ArithmeticError,
    ) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    report = {"command": args.command}
    if getattr(args, "zoo", None) or getattr(args, "file", None):
        report["input"] = _echo(load_polytope(args))
    report.update(rep)
    if args.command != "selfcheck":
        report["timing"] = round(time.perf_counter() - t0, 4)
    if args.json:
        print(json.dumps(_jsonable(report), indent=2, sort_keys=False), file=out)
    else:
        print(_text(report), file=out)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
