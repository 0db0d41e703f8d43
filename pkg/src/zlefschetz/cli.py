"""Command-line front end.

Exit codes: 0 when every computed statement holds, 1 when one fails,
2 for usage errors (bad flags, unknown tags, sizes past the guard).
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from typing import List, Optional, Sequence

from .exterior import parse_ring
from .report import FORMATS, Table, emit
from .suite import DEFAULT_SEED, RINGS, TAGS, UnknownTag, exit_code, run_suite

G_HARD_CAP = 8
GUARD_FROM_G = 7
DEFAULT_MAX_BYTES = 4 << 30
U_NOTE = ("groups are listed per U-period of the Z/2-graded module; "
          "omega U is replaced by omega, which loses no invariants")


class UsageError(Exception):
    pass


def estimated_bytes(g: int) -> int:
    """Rough peak for the largest middle-degree dense operator: 128 bytes per entry."""
    n = math.comb(2 * g, g)
    return 128 * n * n


def guard_size(g: Optional[int]) -> None:
    if g is None:
        return
    if g < 0:
        raise UsageError("g must be nonnegative")
    if g > G_HARD_CAP:
        raise UsageError(f"g={g} exceeds the hard cap g <= {G_HARD_CAP}")
    if g >= GUARD_FROM_G:
        limit = int(os.environ.get("LEFSCHETZ_MAX_BYTES", DEFAULT_MAX_BYTES))
        need = estimated_bytes(g)
        if need > limit:
            raise UsageError(f"g={g} needs about {need} bytes, above LEFSCHETZ_MAX_BYTES={limit}")


def _ring(text: str):
    try:
        return parse_ring(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


# ---------------------------------------------------------------------------
# subcommands; each returns (table, ok)


def cmd_lefschetz(a):
    from .lefschetz import filtration, graded_constant_table, graded_rank
    if a.what == "filtration":
        if a.k is None:
            raise UsageError("lefschetz filtration needs --k")
        if not 0 <= a.k <= 2 * a.g:
            raise UsageError(f"--k must lie in 0..{2 * a.g}")
        f = filtration(a.g, a.k)
        ranks, gr = f.level_ranks(), f.graded_ranks()
        rows = [{"r": r, "level_rank": ranks[r], "graded_rank": gr[r],
                 "primitive_rank": graded_rank(a.g, a.k, r), "ok": gr[r] == graded_rank(a.g, a.k, r)}
                for r in ranks]
        t = Table(f"filtration of Lambda^{a.k}, g={a.g}",
                  ["r", "level_rank", "graded_rank", "primitive_rank", "ok"], rows)
        return t, all(r["ok"] for r in rows)
    table = graded_constant_table(a.g)
    rows = [c.to_json_obj() for c in table]
    t = Table(f"graded wedge and contraction constants, g={a.g}",
              ["g", "k", "r", "j", "direction", "claimed_constant", "verified"], rows)
    return t, all(c.verified for c in table)


def cmd_coker(a):
    from .cokernels import (expected_shifted_graded, hard_lefschetz_coker, parity_operator,
                            shifted_filtration)
    from .linalg import BlockSmith
    if not 0 <= a.k <= a.g:
        raise UsageError("--k must lie in 0..g")
    if a.form == "omega":
        r = hard_lefschetz_coker(a.g, a.k, graded=a.graded)
        rows = [{"map": f"omega_{a.k} ^ : Lambda^{a.g - a.k} -> Lambda^{a.g + a.k}",
                 "computed": r.computed.describe(), "expected": r.expected.describe(),
                 "ok": r.ok}]
        if r.graded is not None:
            for gr, (rr, rank, mod) in zip(r.graded, r.pieces):
                rows.append({"map": f"graded piece r={rr}", "computed": gr.describe(),
                             "expected": _cyclic_text(mod, rank),
                             "ok": gr.describe() == _cyclic_text(mod, rank)})
        t = Table(f"Hard Lefschetz cokernel, g={a.g}, k={a.k}",
                  ["map", "computed", "expected", "ok"], rows, data=r.to_json_obj())
        return t, r.ok
    # exp: the contraction by e^omega - 1 on the parity of g - k
    parity = (a.g - a.k) % 2
    total = BlockSmith(parity_operator(a.g, parity, "exp"), transforms=False).cokernel()
    rows = [{"map": f"iota_(e^omega - 1) on Lambda^{'odd' if parity else 'even'}",
             "computed": total.describe(), "expected": "", "ok": True}]
    data = {"g": a.g, "k": a.k, "parity": parity, "coker": total.to_json_obj()}
    ok = True
    if a.graded:
        lvl = next(x for x in shifted_filtration(a.g).levels if x.k == a.k and x.form == "exp")
        rows.append({"map": f"shifted graded piece k={a.k}", "computed": lvl.graded.describe(),
                     "expected": expected_shifted_graded(a.g, a.k).describe(), "ok": lvl.ok})
        data["graded"] = lvl.graded.to_json_obj()
        ok = lvl.ok
    t = Table(f"cokernel of e^omega - 1, g={a.g}", ["map", "computed", "expected", "ok"], rows,
              data=data)
    return t, ok


def _cyclic_text(mod: int, rank: int) -> str:
    from .linalg import AbelianInvariants
    return AbelianInvariants.cyclic(mod, rank).describe()


def cmd_touchard(a):
    from .cokernels import touchard_conjugation
    if a.k < 0:
        raise UsageError("--k must be nonnegative")
    r = touchard_conjugation(a.k)
    rows = [{"k": a.k, "conjugation": r.conjugation_ok, "phi_unimodular": r.phi_unimodular,
             "coker_D": r.coker_D.describe(), "coker_E": r.coker_E.describe(),
             "expected": r.expected.describe(), "ok": r.ok}]
    t = Table(f"Touchard conjugation, k={a.k}",
              ["k", "conjugation", "phi_unimodular", "coker_D", "coker_E", "expected", "ok"],
              rows, data=r.to_json_obj())
    return t, r.ok


def cmd_heisenberg(a):
    from .heisenberg import heisenberg_report
    routes = ("gysin", "formula", "filtration") if a.route in ("all", "filtration") \
        else ("gysin", "formula")
    r = heisenberg_report(a.g, routes)
    cols = ["k", "gysin", "formula"] + (["filtration"] if r.filtration else []) + ["agree"]
    data = {"g": a.g, "gysin": r.gysin.to_json_obj(), "formula": r.formula.to_json_obj(),
            "duality": r.duality_ok, "euler_characteristic": r.euler}
    if r.filtration:
        data["filtration"] = r.filtration.homology().to_json_obj()
    t = Table(f"H_*(N_{a.g}; Z)", cols, r.rows(), data=data,
              notes=[f"total {r.gysin.total().describe()}",
                     f"duality {'holds' if r.duality_ok else 'fails'}, Euler characteristic {r.euler}"])
    return t, r.ok


def _pair_rows(label: str, p) -> List[dict]:
    return [{"group": label, "even": p.even.describe(), "odd": p.odd.describe(),
             "total": p.total.describe()}]


def cmd_floer(a):
    from . import floer
    ring = _ring(a.ring)
    cols = ["group", "even", "odd", "total"]
    if a.what == "hc":
        p = floer.cup_homology(a.g, ring)
        return Table(f"cup homology, g={a.g}, ring={ring.name}", cols, _pair_rows("HC", p),
                     data={"g": a.g, "ring": ring.name, "groups": p.to_json_obj()},
                     notes=[U_NOTE]), True
    if a.what == "hf":
        m = floer.hf_model(a.g, ring)
        rows = _pair_rows("coker", m.coker) + _pair_rows("ker", m.ker) + _pair_rows("HF", m.groups)
        return Table(f"HF model coker + e^0 ker, g={a.g}, ring={ring.name}", cols, rows,
                     data=m.to_json_obj(), notes=[U_NOTE]), True
    if a.what == "compare":
        r = floer.hc_hf_compare(a.g, graded=a.graded)
        rows = _pair_rows("HC", r.cup) + _pair_rows("HF", r.hf)
        notes = [U_NOTE, f"HC = HF: {'yes' if r.ok else 'no'}"]
        if r.graded is not None:
            notes += [f"shifted k={x['k']}: {x['graded']}" for x in r.graded]
            notes.append(f"kernel row: {r.top_row.describe()}")
        return Table(f"HC against HF model, g={a.g}, ring=z", cols, rows,
                     data=r.to_json_obj(), notes=notes), r.ok
    if a.what == "torsion":
        r = floer.torsion_count_report(a.g)
        obj = r.to_json_obj()
        rows = [{"quantity": k, "value": v} for k, v in obj.items()]
        return Table(f"HF model rank and torsion against closed formulas, g={a.g}",
                     ["quantity", "value"], rows, data=obj), r.counted_matches
    if a.what == "witness":
        r = floer.contraction_nondegeneracy(a.g, ring, samples=50, seed=a.seed)
        rows = [{"alpha": s, "witness": "none"} for s in r.failed]
        return Table(f"witness search in ker(omega), g={a.g}, ring={ring.name}",
                     ["alpha", "witness"], rows, data=r.to_json_obj(),
                     notes=[f"{r.tested} kernel elements tested, {r.failures} without witness"]), r.ok
    if a.what == "fixed-points":
        try:
            r = floer.transvection_fixed_points(a.g, ring)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        rows = [{"generator": s} for s in r.extra]
        return Table(f"transvection fixed points beyond coker, g={a.g}, ring={ring.name}",
                     ["generator"], rows, data=r.to_json_obj(),
                     notes=[f"coker {r.coker.describe()}", f"fixed {r.fixed.describe()}"]), r.ok
    # noniso-g4
    from .equivariant import f2_g4_structures, noniso_certificate
    st = f2_g4_structures()
    c = noniso_certificate()
    rows = [{"check": x.name, "ok": x.ok, "detail": x.detail} for x in st.checks + c.checks]
    rows += [{"check": f"dim {k}", "ok": True, "detail": str(v)} for k, v in c.hom_dims.items()]
    data = {"structures": st.to_json_obj(), "certificate": c.to_json_obj()}
    return Table("Sp(8, F_2) non-isomorphism certificate, g=4", ["check", "ok", "detail"], rows,
                 data=data, notes=[c.verdict]), c.non_isomorphic and st.ok


def cmd_verify(a):
    if a.all:
        tags = list(TAGS)
    elif a.tag:
        tags = [t.strip() for t in ",".join(a.tag).split(",") if t.strip()]
    else:
        raise UsageError("verify needs --all or --tag")
    rings = tuple(r.strip() for r in a.rings.split(",")) if a.rings else RINGS
    for r in rings:
        _ring(r)
    guard_size(a.g_max)
    try:
        reports = run_suite(tags, a.g_max, rings, seed=a.seed, jobs=a.jobs)
    except UnknownTag as exc:
        raise UsageError(f"unknown tag {exc.args[0]!r}; known tags: {', '.join(TAGS)}") from None
    cols = ["tag", "params", "status", "computed", "expected"] + (["seconds"] if a.timing else [])
    npass = sum(r.status == "pass" for r in reports)
    nfail = sum(r.status == "fail" for r in reports)
    t = Table(f"verification suite, g <= {a.g_max}", cols,
              [r.row(a.timing) for r in reports],
              notes=[f"{len(reports)} checks: {npass} pass, {nfail} fail"])
    return t, exit_code(reports) == 0


# ---------------------------------------------------------------------------
# parser


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--format", choices=FORMATS, default=argparse.SUPPRESS)
    p.add_argument("--json", action="store_const", const="json", dest="format",
                   default=argparse.SUPPRESS, help="shorthand for --format json")
    p.add_argument("--jobs", type=int, default=argparse.SUPPRESS)
    p.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    p.add_argument("--timing", action="store_true", default=argparse.SUPPRESS)
    return p


def _tag_help() -> str:
    return "tags:\n" + "\n".join(f"  {t.name:27s} {t.description}" for t in TAGS.values())


def build_parser() -> argparse.ArgumentParser:
    # each parser needs its own copy: set_defaults rewrites shared action objects
    p = argparse.ArgumentParser(prog="zlefschetz", parents=[_common()],
                                description="Exact computations with the integral Lefschetz "
                                            "filtration on the exterior algebra of Z^{2g}.")
    p.set_defaults(format="text", jobs=1, seed=DEFAULT_SEED, timing=False)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("lefschetz", parents=[_common()], help="filtration ranks and graded constants")
    s.add_argument("what", choices=("filtration", "constants"))
    s.add_argument("--g", type=int, required=True)
    s.add_argument("--k", type=int)
    s.set_defaults(func=cmd_lefschetz)

    s = sub.add_parser("coker", parents=[_common()], help="Hard Lefschetz and e^omega - 1 cokernels")
    s.add_argument("--g", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--form", choices=("omega", "exp"), default="omega")
    s.add_argument("--graded", action="store_true")
    s.set_defaults(func=cmd_coker)

    s = sub.add_parser("touchard", parents=[_common()], help="Touchard conjugation of E_k and D_k")
    s.add_argument("--k", type=int, required=True)
    s.set_defaults(func=cmd_touchard)

    s = sub.add_parser("heisenberg", parents=[_common()], help="integral homology of N_g")
    s.add_argument("--g", type=int, required=True)
    s.add_argument("--route", choices=("gysin", "formula", "filtration", "all"), default="all")
    s.set_defaults(func=cmd_heisenberg)

    s = sub.add_parser("floer", parents=[_common()], help="cup homology and the HF model")
    s.add_argument("what", choices=("hc", "hf", "compare", "torsion", "witness", "fixed-points",
                                    "noniso-g4"))
    s.add_argument("--g", type=int, default=4)
    s.add_argument("--ring", default="z", help="z, f2, fp:P or zmod:N")
    s.add_argument("--graded", action="store_true", help="with compare: shifted graded pieces")
    s.set_defaults(func=cmd_floer)

    s = sub.add_parser("verify", parents=[_common()], help="run the verification suite",
                       epilog=_tag_help(), formatter_class=argparse.RawDescriptionHelpFormatter)
    s.add_argument("--all", action="store_true")
    s.add_argument("--tag", action="append", help="tag name; repeat or comma-separate")
    s.add_argument("--g-max", type=int, default=4)
    s.add_argument("--ring", dest="rings", default=None,
                   help="comma-separated rings for ring sweeps (default z,f2,zmod:4)")
    s.set_defaults(func=cmd_verify)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    a = parser.parse_args(argv)
    try:
        if a.command == "floer" and a.what == "noniso-g4":
            a.g = 4
        guard_size(getattr(a, "g", None))
        if a.jobs < 1:
            raise UsageError("--jobs must be at least 1")
        table, ok = a.func(a)
    except UsageError as exc:
        print(f"zlefschetz: error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(emit(table, a.format))
    sys.stdout.flush()
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
