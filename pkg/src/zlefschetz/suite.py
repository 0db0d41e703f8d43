"""
The verification suite: named checks swept over g, run in a fixed order.

Each tag expands into tasks ``(tag, params)``; a task returns a CheckReport.
Tasks are independent, so they may run in a process pool; reports are always
collected in task order, which keeps output identical for any worker count.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from .exterior import parse_ring
from .linalg import AbelianInvariants

STATUSES = ("pass", "fail", "skipped")
DEFAULT_SEED = 0
RINGS = ("z", "f2", "zmod:4")


@dataclass
class CheckReport:
    tag: str
    params: Dict[str, Any]
    status: str
    computed: Any
    expected: Any
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return self.status != "fail"

    def row(self, timing: bool = False) -> Dict[str, Any]:
        out = {"tag": self.tag, "params": _params_text(self.params), "status": self.status,
               "computed": self.computed, "expected": self.expected}
        if timing:
            out["seconds"] = round(self.seconds, 3)
        return out


def _params_text(params: Dict[str, Any]) -> str:
    return " ".join(f"{k}={v}" for k, v in params.items())


def _verdict(ok: bool) -> str:
    return "pass" if ok else "fail"


# ---------------------------------------------------------------------------
# the checks; each takes (params, seed) and returns (ok, computed, expected)


def _contraction_identities(p, seed):
    from .lefschetz import binomial_commutation, commutator_identity, random_identity_cases
    g = p["g"]
    if p["mode"] == "full":
        a, b = commutator_identity(g), binomial_commutation(g)
        fails = len(a.failures) + len(b.failures)
        return fails == 0, {"cases": a.cases + b.cases, "failures": fails}, {"failures": 0}
    a = commutator_identity(g)
    r = random_identity_cases(g, p["cases"], seed)
    fails = len(a.failures) + len(r.failures)
    return fails == 0, {"cases": a.cases + r.cases, "failures": fails}, {"failures": 0}


def _graded_pieces(p, seed):
    from .lefschetz import graded_constant_table, graded_iso_check, level_range
    g = p["g"]
    bad = []
    count = 0
    for k in range(2 * g + 1):
        lo, hi = level_range(g, k)
        for r in range(lo, hi + 1):
            c = graded_iso_check(g, k, r)
            count += 1
            if not c.ok:
                bad.append(f"k={k} r={r} rank={c.rank} det={c.determinant}")
    consts = graded_constant_table(g)
    bad.extend(f"{c.direction} k={c.k} r={c.r} j={c.j}" for c in consts if not c.verified)
    computed = {"pieces": count, "constants": len(consts), "bad": bad}
    return not bad, computed, {"bad": []}


def _splittings(p, seed):
    from .heisenberg import pairing_determinants
    from .lefschetz import (divisibility_check, obstruction_checks, standard_splitting,
                            star_level_check, verify_splitting, level_range)
    g = p["g"]
    bad = []
    for k in range(2 * g + 1):
        sp = standard_splitting(g, k)
        # first half: iota_omega lowers r by one; second half: iota_{omega_j} lands on Lambda^{2g-k}
        if k > g:
            compat = (k - g, standard_splitting(g, 2 * g - k), g - k)
        else:
            compat = (1, standard_splitting(g, k - 2), -1) if k >= 2 else None
        if not verify_splitting(sp, compat).ok:
            bad.append(f"splitting k={k}")
    for k in range(g + 1):
        for r in range(g - k + 1):
            if not divisibility_check(g, k, r).ok:
                bad.append(f"divisibility k={k} r={r}")
        lo, hi = level_range(g, g - k)
        for r in range(lo, hi + 1):
            if not star_level_check(g, k, r):
                bad.append(f"star k={k} r={r}")
    if g >= 2 and not obstruction_checks(g).ok:
        bad.append("obstruction")
    dets = pairing_determinants(g)
    if any(d == 0 for d in dets.values()):
        bad.append("degenerate pairing")
    return not bad, {"bad": bad, "pairing_dets": [dets[k] for k in sorted(dets)]}, {"bad": []}


def _hard_lefschetz(p, seed):
    from .cokernels import hard_lefschetz_coker
    r = hard_lefschetz_coker(p["g"], p["k"], graded=p.get("graded", False))
    computed = r.computed.describe()
    if r.graded is not None:
        computed = {"total": computed, "graded": [x.describe() for x in r.graded]}
    return r.ok, computed, r.expected.describe()


def _heisenberg(p, seed):
    from .heisenberg import heisenberg_report
    r = heisenberg_report(p["g"])
    computed = {"homology": [h.describe() for h in r.gysin.groups], "agree": r.agree,
                "duality": r.duality_ok, "euler": r.euler}
    expected = {"homology": [h.describe() for h in r.formula.groups], "agree": True,
                "duality": True, "euler": 0}
    return r.ok, computed, expected


def _heisenberg_total(p, seed):
    from .heisenberg import gysin_homology
    total = gysin_homology(p["g"]).total()
    return total.count_cyclic(2) == 10 and total.free_rank == 252, total.describe(), \
        "Z^252 + Z/2^10"


def _coker_comparison(p, seed):
    from .cokernels import coker_ker_compare
    r = coker_ker_compare(p["g"])
    computed = {"omega": r.total("omega").describe(), "exp": r.total("exp").describe(),
                "transport": r.total("transport").describe(), "kernels_equal": r.kernels_equal}
    expected = {"omega": r.total("omega").describe(), "exp": r.total("omega").describe(),
                "transport": r.total("omega").describe(), "kernels_equal": True}
    return r.ok, computed, expected


def _f2_kernel_witness(p, seed):
    from .cokernels import f2_kernel_witness
    w = f2_kernel_witness(p["g_max"])
    return w.first_difference == 3, {"first_difference": w.first_difference,
                                     "rows": [list(r) for r in w.rows]}, {"first_difference": 3}


def _shifted_filtration(p, seed):
    from .cokernels import shifted_filtration
    r = shifted_filtration(p["g"])
    computed = [f"{x.form} k={x.k}: {x.graded.describe()}" for x in r.levels]
    expected = [f"{x.form} k={x.k}: {x.expected.describe()}" for x in r.levels]
    return r.ok, computed, expected


def _touchard(p, seed):
    from .cokernels import touchard_conjugation
    r = touchard_conjugation(p["k"])
    return r.ok, {"conjugation": r.conjugation_ok, "coker": r.coker_E.describe()}, \
        {"conjugation": True, "coker": r.expected.describe()}


def _f2_structures(p, seed):
    from .equivariant import f2_g4_structures
    st = f2_g4_structures()
    c = next(c for c in st.checks if c.name == p["check"])
    return c.ok, {"holds": c.ok, "detail": c.detail}, {"holds": True}


def _f2_certificate(p, seed):
    from .equivariant import noniso_certificate
    c = noniso_certificate()
    bad = [x.name for x in c.checks if not x.ok]
    return c.non_isomorphic, {"hom_dims": c.hom_dims, "failed": bad}, {"failed": []}


def _cup_equals_hf(p, seed):
    from .floer import cup_homology, hf_model
    cup, hf = cup_homology(p["g"]), hf_model(p["g"]).groups
    return cup == hf, {"even": cup.even.describe(), "odd": cup.odd.describe()}, \
        {"even": hf.even.describe(), "odd": hf.odd.describe()}


def _cup_decomposition(p, seed):
    from .floer import cup_decomposition_check, differential_squares_to_zero
    r = cup_decomposition_check(p["g"], parse_ring(p["ring"]))
    sq = differential_squares_to_zero(p["g"])
    return r.ok and sq, {"cup": r.cup.total.describe(), "d2_zero": sq}, \
        {"cup": r.model.total.describe(), "d2_zero": True}


def _first_torsion(p, seed):
    from .floer import first_torsion
    got = first_torsion(p["q"], p["g_max"])
    return got == p["expect"], got, p["expect"]


def _torsion_counts(p, seed):
    from .floer import torsion_count_report
    r = torsion_count_report(p["g"])
    computed = {"groups": r.computed.describe(primary=True),
                "formula_rank": r.closed_rank, "formula_rank_matches": r.closed_rank_matches,
                "formula_torsion": r.closed_torsion.describe(primary=True),
                "formula_torsion_matches": r.closed_torsion_matches}
    counted = AbelianInvariants(r.counted_rank) + r.counted_torsion
    return r.counted_matches, computed, {"groups": counted.describe(primary=True)}


def _witness(p, seed):
    from .floer import contraction_nondegeneracy
    r = contraction_nondegeneracy(p["g"], parse_ring(p["ring"]), samples=20, seed=seed)
    return r.ok, {"tested": r.tested, "no_witness": r.failed}, {"no_witness": []}


def _fixed_points(p, seed):
    from .floer import transvection_fixed_points
    r = transvection_fixed_points(p["g"], parse_ring(p["ring"]))
    return r.ok, {"fixed": r.fixed.describe(), "extra": r.extra}, \
        {"fixed": r.coker.describe(), "extra": []}


def _equivariance(p, seed):
    from .cokernels import equivariance_spot_check
    from .heisenberg import graded_equivariance_check
    g = p["g"]
    a = equivariance_spot_check(g, 20, seed)
    b = graded_equivariance_check(g, 5, seed)
    return a and b, {"contractions": a, "filtration": b}, {"contractions": True, "filtration": True}


# ---------------------------------------------------------------------------
# the registry


@dataclass(frozen=True)
class Tag:
    name: str
    description: str
    plan: Callable[[int, Sequence[str]], List[Tuple[Callable, Dict[str, Any]]]]


def _gs(lo: int, hi: int) -> range:
    return range(lo, hi + 1)


def _plan_identities(g_max, rings):
    out = [(_contraction_identities, {"g": g, "mode": "full"}) for g in _gs(1, min(g_max, 4))]
    if g_max >= 5:
        out.append((_contraction_identities, {"g": 5, "mode": "random", "cases": 10000}))
    return out


def _plan_hard_lefschetz(g_max, rings):
    out = []
    for g in _gs(1, min(g_max, 6)):
        for k in range(g + 1):
            out.append((_hard_lefschetz, {"g": g, "k": k, "graded": g <= 4}))
    return out


def _plan_heisenberg(g_max, rings):
    out = [(_heisenberg, {"g": g}) for g in _gs(1, min(g_max, 5))]
    if g_max >= 4:
        out.append((_heisenberg_total, {"g": 4}))
    return out


def _plan_coker(g_max, rings):
    out = [(_coker_comparison, {"g": g}) for g in _gs(1, min(g_max, 6))]
    if g_max >= 3:
        out.append((_f2_kernel_witness, {"g_max": min(g_max, 4)}))
    return out


def _plan_f2(g_max, rings):
    if g_max < 4 or "f2" not in rings:
        return []
    from .equivariant import f2_g4_structures
    names = [c.name for c in f2_g4_structures().checks]
    return [(_f2_structures, {"check": n}) for n in names] + [(_f2_certificate, {"g": 4})]


def _plan_floer(g_max, rings):
    out = [(_cup_equals_hf, {"g": g}) for g in _gs(1, min(g_max, 6))]
    for g in _gs(1, min(g_max, 5)):
        for ring in rings:
            out.append((_cup_decomposition, {"g": g, "ring": ring}))
    if g_max >= 3:
        out.append((_first_torsion, {"q": 2, "g_max": min(g_max, 6), "expect": 3}))
    if g_max >= 5:
        out.append((_first_torsion, {"q": 3, "g_max": min(g_max, 6), "expect": 5}))
    out.extend((_torsion_counts, {"g": g}) for g in _gs(1, min(g_max, 6)))
    return out


def _plan_fixed(g_max, rings):
    out = []
    for ring, cap in (("z", 3), ("f2", 4)):
        if ring not in rings:
            continue
        for g in _gs(1, min(g_max, cap)):
            out.append((_witness, {"g": g, "ring": ring}))
            out.append((_fixed_points, {"g": g, "ring": ring}))
    return out


TAGS: Dict[str, Tag] = {t.name: t for t in [
    Tag("contraction-identities",
        "iota_omega(omega ^ x) = omega ^ iota_omega(x) + (k-g)x and the binomial rule for "
        "iota_{omega_m}(omega_n ^ x)", _plan_identities),
    Tag("graded-pieces",
        "gr_r Lambda^k is free of rank P^{k-2r}, iota_{omega_r} is unimodular on it, and the "
        "graded wedge / contraction constants",
        lambda g_max, rings: [(_graded_pieces, {"g": g}) for g in _gs(1, min(g_max, 5))]),
    Tag("splittings",
        "Z-splittings of the filtration, divisibility of omega_r ^ P^k, star on levels, "
        "the primitive pairing is nondegenerate",
        lambda g_max, rings: [(_splittings, {"g": g}) for g in _gs(1, min(g_max, 4))]),
    Tag("hard-lefschetz",
        "coker(omega_k ^ : Lambda^{g-k} -> Lambda^{g+k}) = sum_r P^{g-k-2r} / C(r+k, r)",
        _plan_hard_lefschetz),
    Tag("heisenberg",
        "H_*(N_g; Z) by the Gysin sequence, the Lee-Packer formula and the filtration agree",
        _plan_heisenberg),
    Tag("coker-comparison",
        "coker(omega; Z) = coker(e^omega - 1; Z) by SNF and by transport along phi; equal kernels",
        _plan_coker),
    Tag("shifted-filtration",
        "graded pieces of the shifted filtration on both cokernels are sum_r P^{g-k}/(r)",
        lambda g_max, rings: [(_shifted_filtration, {"g": g}) for g in _gs(1, min(g_max, 4))]),
    Tag("touchard",
        "the Touchard matrix conjugates the binomial shift into differentiation",
        lambda g_max, rings: [(_touchard, {"k": k}) for k in range(13)]),
    Tag("f2-g4",
        "the Sp(8, F_2) structure of both cokernels at g = 4 and the non-isomorphism certificate",
        _plan_f2),
    Tag("floer-model",
        "cup homology equals the HF model over Z; torsion thresholds and counts",
        _plan_floer),
    Tag("transvection-fixed-points",
        "every nonzero alpha in ker(omega) has [alpha ^ f] != 0, so transvections fix only "
        "the coker summand", _plan_fixed),
    Tag("equivariance",
        "random integral transvections commute with both contractions, preserve the "
        "filtration and its graded contractions",
        lambda g_max, rings: [(_equivariance, {"g": g}) for g in _gs(1, min(g_max, 4))]),
]}


class UnknownTag(ValueError):
    pass


def plan_tasks(tags: Iterable[str], g_max: int, rings: Sequence[str] = RINGS
               ) -> List[Tuple[str, Callable, Dict[str, Any]]]:
    out = []
    for t in tags:
        if t not in TAGS:
            raise UnknownTag(t)
        for fn, params in TAGS[t].plan(g_max, rings):
            out.append((t, fn, params))
    return out


def _run_task(task, seed: int) -> CheckReport:
    tag, fn, params = task
    start = time.perf_counter()
    try:
        ok, computed, expected = fn(params, seed)
        status = _verdict(ok)
    except Exception as exc:  # a crash is a failed check, reported with its message
        status, computed, expected = "fail", f"error: {type(exc).__name__}: {exc}", "no error"
    return CheckReport(tag, params, status, computed, expected, time.perf_counter() - start)


def _run_indexed(args):
    task, seed = args
    return _run_task(task, seed)


def run_suite(tags: Iterable[str], g_max: int, rings: Sequence[str] = RINGS,
              seed: int = DEFAULT_SEED, jobs: int = 1,
              progress: Optional[Callable[[CheckReport], None]] = None) -> List[CheckReport]:
    tasks = plan_tasks(tags, g_max, rings)
    if jobs <= 1 or len(tasks) <= 1:
        out = []
        for t in tasks:
            rep = _run_task(t, seed)
            if progress:
                progress(rep)
            out.append(rep)
        return out
    # pool.map yields in submission order, whatever order the workers finish in
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        results = list(pool.map(_run_indexed, [(t, seed) for t in tasks], chunksize=1))
    if progress:
        for r in results:
            progress(r)
    return results


def exit_code(reports: Sequence[CheckReport]) -> int:
    return 0 if all(r.ok for r in reports) else 1


__all__ = ["CheckReport", "DEFAULT_SEED", "RINGS", "STATUSES", "TAGS", "Tag", "UnknownTag",
           "exit_code", "plan_tasks", "run_suite"]
