"""
Cup homology of Sigma_g x S^1 and the algebraic model of its HF^infinity.

Everything is reported per U-period of the Z/2-graded [U, U^{-1}]-module, so
a group is a pair (even part, odd part).  The cup differential on
Lambda^*(R^{2g+1}) contracts with the triple cup product form e^0 ^ omega:

    d(e^0 ^ e^T) = -iota_omega(e^T),     d(e^T) = 0   (T without index 0)

and the HF model is coker + ker of contraction by e^omega - 1 on Lambda^*(R^{2g}).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from .cokernels import PARITIES, parity_operator, shifted_filtration
from .exterior import (ZZ, CoefficientRing, Multivector, indices, monomial_basis, operator_matrix,
                       format_multivector, parity_degrees, to_vector, from_vector)
from .lefschetz import TheoremViolation
from .linalg import (AbelianInvariants, BlockSmith, IntMatrix, Lattice, complement_basis,
                     hermite, kernel_mod, rank_mod_blocks)
from .linalg.intmatrix import SparseVector


# ---------------------------------------------------------------------------
# rings


def coker_over(M: IntMatrix, ring: CoefficientRing) -> AbelianInvariants:
    """coker(M tensor R) for R = Z, F_p or Z/n."""
    n = ring.modulus
    if n == 0:
        return BlockSmith(M, transforms=False).cokernel()
    if ring.is_field:
        return AbelianInvariants.vector_space(n, M.rows - rank_mod_blocks(M, n))
    return BlockSmith(M, transforms=False).cokernel().tensor_mod(n)


def ker_over(M: IntMatrix, ring: CoefficientRing) -> AbelianInvariants:
    """ker(M tensor R); over Z/n this is ker(M) tensor Z/n + Tor(coker M, Z/n)."""
    n = ring.modulus
    if n == 0:
        return AbelianInvariants(M.cols - BlockSmith(M, transforms=False).rank, ())
    if ring.is_field:
        return AbelianInvariants.vector_space(n, M.cols - rank_mod_blocks(M, n))
    bs = BlockSmith(M, transforms=False)
    return AbelianInvariants(M.cols - bs.rank, ()).tensor_mod(n) + bs.cokernel().tor_mod(n)


@dataclass(frozen=True)
class ParityPair:
    even: AbelianInvariants
    odd: AbelianInvariants

    @property
    def total(self) -> AbelianInvariants:
        return self.even + self.odd

    def __getitem__(self, parity) -> AbelianInvariants:
        if parity in (0, "even"):
            return self.even
        if parity in (1, "odd"):
            return self.odd
        raise KeyError(parity)

    def to_json_obj(self) -> dict:
        return {"even": self.even.to_json_obj(), "odd": self.odd.to_json_obj(),
                "total": self.total.to_json_obj()}


# ---------------------------------------------------------------------------
# the cup complex


def triple_cup_form(g: int, ring: CoefficientRing = ZZ) -> Multivector:
    """e^0 ^ omega on the (2g+1)-dimensional space."""
    terms = {1 | (0b11 << (2 * i - 1)): 1 for i in range(1, g + 1)}
    return Multivector(g, terms, ring, with_zero=True)


def cup_contraction_monomial(form_mask: int, s: int) -> Tuple[int, int]:
    """(sign, remainder) of contracting e^S by the dual of e^{abc}: sign is
    (-1)^{i_1+i_2+i_3} for the 1-based positions of a, b, c in S."""
    if form_mask & s != form_mask:
        return 0, 0
    pos = 0
    total = 0
    for idx, bit in enumerate(indices(s)):
        if form_mask >> bit & 1:
            total += idx + 1
            pos += 1
    return (-1) ** total, s & ~form_mask


@lru_cache(maxsize=None)
def cup_differential(g: int, parity: int, form_key: Optional[Tuple[Tuple[int, int], ...]] = None
                     ) -> IntMatrix:
    """Matrix of the cup differential from Lambda^{parity} to Lambda^{1-parity}
    of the (2g+1)-dimensional space.  ``form_key`` lists (mask, coeff) of the
    3-form; the default is e^0 ^ omega."""
    terms = form_key if form_key is not None else tuple(sorted(triple_cup_form(g).terms.items()))
    src = monomial_basis(g, parity_degrees(g, parity, True), True)
    tgt = monomial_basis(g, parity_degrees(g, 1 - parity, True), True)
    pos = {m: i for i, m in enumerate(tgt)}
    cols = []
    for s in src:
        col: Dict[int, int] = {}
        for m, c in terms:
            sg, r = cup_contraction_monomial(m, s)
            if sg:
                col[pos[r]] = col.get(pos[r], 0) + sg * c
        cols.append({i: v for i, v in col.items() if v})
    return IntMatrix.from_columns(len(tgt), cols)


def differential_squares_to_zero(g: int, form_key=None) -> bool:
    d0 = cup_differential(g, 0, form_key)
    d1 = cup_differential(g, 1, form_key)
    return (d1 @ d0).is_zero() and (d0 @ d1).is_zero()


def _homology_z(d_out: IntMatrix, d_in: IntMatrix) -> AbelianInvariants:
    """ker(d_out) / im(d_in) over Z."""
    K = BlockSmith(d_out).kernel()
    if not K:
        return AbelianInvariants(0, ())
    L = Lattice(d_out.cols, K)
    cols = [L.coordinates(c) for c in d_in.columns() if c]
    return BlockSmith(IntMatrix.from_columns(len(K), cols), transforms=False).cokernel()


def cup_homology(g: int, ring: CoefficientRing = ZZ, form_key=None) -> ParityPair:
    """Homology of (Lambda^*(R^{2g+1}), contraction by the triple cup form), one U-period."""
    d = [cup_differential(g, 0, form_key), cup_differential(g, 1, form_key)]
    n = ring.modulus
    if n and ring.is_field:
        out = []
        for p in (0, 1):
            dim = d[p].cols - rank_mod_blocks(d[p], n) - rank_mod_blocks(d[1 - p], n)
            out.append(AbelianInvariants.vector_space(n, dim))
        return ParityPair(*out)
    hz = [_homology_z(d[p], d[1 - p]) for p in (0, 1)]
    if n == 0:
        return ParityPair(*hz)
    # universal coefficients: H_p(C; Z/n) = H_p tensor Z/n + Tor(H_{1-p}, Z/n)
    return ParityPair(*[hz[p].tensor_mod(n) + hz[1 - p].tor_mod(n) for p in (0, 1)])


# ---------------------------------------------------------------------------
# kernel / cokernel models on Lambda^*(R^{2g})


def coker_ker(g: int, form: str, ring: CoefficientRing = ZZ) -> Tuple[ParityPair, ParityPair]:
    """(coker, ker) of contraction by omega or e^omega - 1, split by parity."""
    cok, ker = [], []
    for p in (0, 1):
        M = parity_operator(g, p, form)
        cok.append(coker_over(M, ring))
        ker.append(ker_over(M, ring))
    return ParityPair(*cok), ParityPair(*ker)


def model_groups(g: int, form: str, ring: CoefficientRing = ZZ) -> ParityPair:
    """coker + e^0 ker: the even part pairs coker_even with ker_odd."""
    cok, ker = coker_ker(g, form, ring)
    return ParityPair(cok.even + ker.odd, cok.odd + ker.even)


@dataclass
class DecompositionReport:
    g: int
    ring: str
    cup: ParityPair
    model: ParityPair

    @property
    def ok(self) -> bool:
        return self.cup == self.model


def cup_decomposition_check(g: int, ring: CoefficientRing = ZZ,
                            strict: bool = False) -> DecompositionReport:
    rep = DecompositionReport(g, ring.name, cup_homology(g, ring), model_groups(g, "omega", ring))
    if strict and not rep.ok:
        raise TheoremViolation(f"cup homology differs from coker + ker at g={g}")
    return rep


@dataclass
class HFModel:
    g: int
    ring: str
    coker: ParityPair
    ker: ParityPair

    @property
    def groups(self) -> ParityPair:
        return ParityPair(self.coker.even + self.ker.odd, self.coker.odd + self.ker.even)

    @property
    def total(self) -> AbelianInvariants:
        return self.groups.total

    def to_json_obj(self) -> dict:
        return {"g": self.g, "ring": self.ring, "coker": self.coker.to_json_obj(),
                "ker": self.ker.to_json_obj(), "groups": self.groups.to_json_obj()}


def hf_model(g: int, ring: CoefficientRing = ZZ) -> HFModel:
    cok, ker = coker_ker(g, "exp", ring)
    return HFModel(g, ring.name, cok, ker)


@dataclass
class CompareReport:
    g: int
    cup: ParityPair
    hf: ParityPair
    graded: Optional[List[dict]] = None
    top_row: Optional[AbelianInvariants] = None

    @property
    def ok(self) -> bool:
        return self.cup == self.hf

    def to_json_obj(self) -> dict:
        out = {"g": self.g, "cup": self.cup.to_json_obj(), "hf": self.hf.to_json_obj(),
               "ok": self.ok}
        if self.graded is not None:
            out["graded"] = self.graded
        if self.top_row is not None:
            out["kernel_row"] = self.top_row.describe()
        return out


def hc_hf_compare(g: int, graded: bool = False, strict: bool = False) -> CompareReport:
    """Cup homology over Z against the HF model over Z, with the graded pieces
    of the shifted filtration (k = 0..g) and the kernel row k = g+1 when asked."""
    rep = CompareReport(g, cup_homology(g), hf_model(g).groups)
    if graded:
        sf = shifted_filtration(g)
        rep.graded = [row for row in sf.graded_table() if row["form"] == "exp"]
        rep.top_row = hf_model(g).ker.total
    if strict and not rep.ok:
        raise TheoremViolation(f"cup homology and HF model differ at g={g}")
    return rep


# ---------------------------------------------------------------------------
# torsion counts


def closed_rank_formula(g: int) -> int:
    return 2 * math.comb(2 * g, g)


def closed_torsion_formula(g: int) -> AbelianInvariants:
    parts = []
    n = 2
    while g + 1 - 2 * n >= 0:
        parts.append(AbelianInvariants.cyclic(n, 2 * math.comb(2 * g + 1, g + 1 - 2 * n)))
        n += 1
    return AbelianInvariants.direct_sum(parts)


def counted_rank_formula(g: int) -> int:
    """Sum of rank P^k over k <= g, twice: 2 C(2g+1, g)."""
    return 2 * math.comb(2 * g + 1, g)


def counted_torsion_formula(g: int) -> AbelianInvariants:
    """One Z/n per copy of P^{g-k} / (n) over the shifted graded pieces:
    C(2g+2, g+1-2n) copies of Z/n in total."""
    parts = []
    n = 2
    while g + 1 - 2 * n >= 0:
        parts.append(AbelianInvariants.cyclic(n, math.comb(2 * g + 2, g + 1 - 2 * n)))
        n += 1
    return AbelianInvariants.direct_sum(parts)


@dataclass
class TorsionCountReport:
    g: int
    computed: AbelianInvariants
    per_parity: ParityPair
    closed_rank: int
    closed_torsion: AbelianInvariants
    counted_rank: int
    counted_torsion: AbelianInvariants

    @property
    def closed_rank_matches(self) -> bool:
        return self.computed.free_rank == self.closed_rank

    @property
    def closed_torsion_matches(self) -> bool:
        return self.computed.torsion_subgroup() == self.closed_torsion

    @property
    def counted_matches(self) -> bool:
        return (self.computed.free_rank == self.counted_rank and
                self.computed.torsion_subgroup() == self.counted_torsion)

    def to_json_obj(self) -> dict:
        return {"g": self.g, "computed": self.computed.describe(primary=True),
                "even": self.per_parity.even.describe(primary=True),
                "odd": self.per_parity.odd.describe(primary=True),
                "formula_rank": self.closed_rank, "formula_rank_matches": self.closed_rank_matches,
                "formula_torsion": self.closed_torsion.describe(primary=True),
                "formula_torsion_matches": self.closed_torsion_matches,
                "counted_rank": self.counted_rank,
                "counted_torsion": self.counted_torsion.describe(primary=True),
                "counted_matches": self.counted_matches}


def torsion_count_report(g: int) -> TorsionCountReport:
    m = hf_model(g)
    return TorsionCountReport(g, m.total, m.groups, closed_rank_formula(g), closed_torsion_formula(g),
                              counted_rank_formula(g), counted_torsion_formula(g))


def first_torsion(q: int, g_max: int) -> Optional[int]:
    """Smallest g <= g_max whose HF model has an element of order q (q a prime power)."""
    for g in range(1, g_max + 1):
        if any(d % q == 0 for d in hf_model(g).total.torsion):
            return g
    return None


# ---------------------------------------------------------------------------
# the transvection action on coker + e^0 ker


@dataclass
class ModelContext:
    """Contraction by omega on all of Lambda^*(R^{2g}), with helpers for
    membership in its image and kernel, over Z or F_p."""

    g: int
    ring: CoefficientRing
    basis: Tuple[int, ...] = ()
    matrix: Optional[IntMatrix] = None
    _bs: Optional[BlockSmith] = None
    _reduce: object = None
    _kernel: Optional[List[SparseVector]] = None

    def __post_init__(self):
        self.basis = monomial_basis(self.g, tuple(range(2 * self.g + 1)))
        self.matrix = operator_matrix("contract_omega", self.g, "all", "all")
        p = self.ring.modulus
        if p == 0:
            self._bs = BlockSmith(self.matrix)
            self._kernel = self._bs.kernel()
        elif self.ring.is_field:
            n = self.matrix.rows
            rows = [[0] * n for _ in range(len(self.matrix.columns()))]
            for j, col in enumerate(self.matrix.columns()):
                for i, v in col.items():
                    rows[j][i] = v % p
            _, self._reduce = complement_basis(rows, n, p)
            self._kernel = [{i: x for i, x in enumerate(v) if x}
                            for v in kernel_mod(self.matrix, p)]
        else:
            raise ValueError("the transvection model is implemented over Z and F_p")

    @property
    def dim(self) -> int:
        return len(self.basis)

    def kernel(self) -> List[SparseVector]:
        return self._kernel

    def in_image(self, vec: SparseVector) -> bool:
        p = self.ring.modulus
        if p == 0:
            return self._bs.in_image(vec)
        dense = [0] * self.dim
        for i, v in vec.items():
            dense[i] = v % p
        return not any(self._reduce(dense))

    def class_coords(self, vec: SparseVector):
        """Canonical coordinates of the class of vec in the cokernel."""
        p = self.ring.modulus
        if p == 0:
            return self._bs.cokernel_class(vec)
        dense = [0] * self.dim
        for i, v in vec.items():
            dense[i] = v % p
        return tuple(self._reduce(dense))

    def vector(self, x: Multivector) -> SparseVector:
        return to_vector(x, self.basis)

    def multivector(self, vec: SparseVector) -> Multivector:
        return from_vector(self.g, vec, self.basis, self.ring)

    def wedge_basis(self, i: int, vec: SparseVector) -> SparseVector:
        e = Multivector.e(self.g, i, ring=self.ring)
        return self.vector(e ^ self.multivector(vec))


@lru_cache(maxsize=None)
def model_context(g: int, modulus: int = 0) -> ModelContext:
    ring = CoefficientRing(modulus, modulus != 0) if modulus else ZZ
    return ModelContext(g, ring)


def transvection_action(g: int, f: Multivector, cls: Tuple[Multivector, Multivector]
                        ) -> Tuple[Multivector, Multivector]:
    """f . (y, e^0 x) = (y - f ^ x, e^0 x): identity on the coker summand."""
    y, x = cls
    return (y - (f ^ x), x)


def same_class(ctx: ModelContext, a: Tuple[Multivector, Multivector],
               b: Tuple[Multivector, Multivector]) -> bool:
    """Equality in coker + e^0 ker (the x parts are compared exactly)."""
    dy = ctx.vector(a[0] - b[0])
    return a[1] == b[1] and ctx.in_image(dy)


@dataclass
class FixedPointReport:
    """Fixed points of every transvection = coker + e^0 X, where X is the set of
    x in ker(omega) with [f ^ x] = 0 for all f.  ``extra`` lists generators of X."""

    g: int
    ring: str
    coker: AbelianInvariants
    extra_rank: int
    extra: List[str] = field(default_factory=list)

    @property
    def extra_group(self) -> AbelianInvariants:
        if self.ring == "z":
            return AbelianInvariants(self.extra_rank, ())
        return AbelianInvariants.vector_space(int(self.ring[1:]), self.extra_rank)

    @property
    def fixed(self) -> AbelianInvariants:
        return self.coker + self.extra_group

    @property
    def ok(self) -> bool:
        """True when the fixed subgroup is exactly the coker summand."""
        return self.extra_rank == 0

    def to_json_obj(self) -> dict:
        return {"g": self.g, "ring": self.ring, "coker": self.coker.describe(),
                "fixed": self.fixed.describe(), "equals_coker": self.ok,
                "extra_generators": self.extra}


def transvection_fixed_points(g: int, ring: CoefficientRing = ZZ) -> FixedPointReport:
    """Common fixed points of the transvections f = e^1, ..., e^{2g} on coker + e^0 ker."""
    if ring.modulus and not ring.is_field:
        raise ValueError("fixed points are computed over Z and F_p")
    ctx = model_context(g, ring.modulus)
    K = ctx.kernel()
    N = ctx.dim
    n = 2 * g
    p = ring.modulus
    if p == 0:
        B = ctx._bs.image_basis()
        cols = []
        for x in K:
            stacked = {}
            for i in range(1, n + 1):
                for a, v in ctx.wedge_basis(i, x).items():
                    stacked[(i - 1) * N + a] = v
            cols.append(stacked)
        for i in range(n):
            for b in B:
                cols.append({i * N + a: -v for a, v in b.items()})
        bs = BlockSmith(IntMatrix.from_columns(n * N, cols))
        proj = [{j: c for j, c in v.items() if j < len(K)} for v in bs.kernel()]
        proj = [v for v in proj if v]
        gens = []
        if proj:
            # a Z-basis of the fixed kernel lattice, in kernel coordinates
            H, _ = hermite(IntMatrix.from_columns(len(K), proj).T)
            gens = [{j: x for j, x in enumerate(row) if x} for row in H.to_dense() if any(row)]
    else:
        rows = []
        for x in K:
            row: List[int] = []
            for i in range(1, n + 1):
                row.extend(ctx.class_coords(ctx.wedge_basis(i, x)))
            rows.append(row)
        width = len(rows[0]) if rows else 0
        if width == 0:
            gens = [{j: 1} for j in range(len(K))]
        else:
            transposed = [[rows[j][c] for j in range(len(K))] for c in range(width)]
            gens = [{j: x for j, x in enumerate(v) if x} for v in kernel_mod(transposed, p)]
    text = []
    for c in gens:
        vec: Dict[int, int] = {}
        for j, a in c.items():
            for i, v in K[j].items():
                vec[i] = vec.get(i, 0) + a * v
        vec = {i: (v % p if p else v) for i, v in vec.items()}
        text.append(format_multivector(ctx.multivector({i: v for i, v in vec.items() if v})))
    return FixedPointReport(g, ring.name, coker_over(ctx.matrix, ring), len(gens), text)


@dataclass
class WitnessReport:
    g: int
    ring: str
    tested: int
    witnesses: List[Tuple[Tuple[Tuple[int, int], ...], int]] = field(default_factory=list)
    failed: List[str] = field(default_factory=list)

    @property
    def failures(self) -> int:
        return len(self.failed)

    @property
    def ok(self) -> bool:
        return not self.failed

    def to_json_obj(self) -> dict:
        return {"g": self.g, "ring": self.ring, "tested": self.tested,
                "witnessed": len(self.witnesses), "failed": self.failed, "ok": self.ok}


def find_witness(ctx: ModelContext, alpha: SparseVector) -> Optional[int]:
    """Smallest i with [alpha ^ e^i] != 0 in the cokernel, or None."""
    for i in range(1, 2 * ctx.g + 1):
        e = Multivector.e(ctx.g, i, ring=ctx.ring)
        if not ctx.in_image(ctx.vector(ctx.multivector(alpha) ^ e)):
            return i
    return None


def contraction_nondegeneracy(g: int, ring: CoefficientRing = ZZ, samples: int = 50,
                              seed: int = 0, strict: bool = False) -> WitnessReport:
    """Every nonzero alpha in ker(omega; R) has some e^i with [alpha ^ e^i] != 0.

    Tries every kernel basis vector and ``samples`` random combinations."""
    ctx = model_context(g, ring.modulus)
    K = ctx.kernel()
    rng = random.Random(seed)
    cands = list(K)
    p = ring.modulus
    for _ in range(samples):
        combo: Dict[int, int] = {}
        for v in K:
            c = rng.randint(-3, 3) if p == 0 else rng.randrange(p)
            for i, x in v.items():
                combo[i] = combo.get(i, 0) + c * x
        combo = {i: (x % p if p else x) for i, x in combo.items()}
        combo = {i: x for i, x in combo.items() if x}
        if combo:
            cands.append(combo)
    rep = WitnessReport(g, ring.name, len(cands))
    for a in cands:
        w = find_witness(ctx, a)
        if w is None:
            rep.failed.append(format_multivector(ctx.multivector(a)))
        else:
            rep.witnesses.append((tuple(sorted(a.items())), w))
    if strict and not rep.ok:
        raise TheoremViolation(f"no witness form found at g={g}")
    return rep


__all__ = [
    "CompareReport", "DecompositionReport", "FixedPointReport", "HFModel", "ModelContext",
    "ParityPair", "TorsionCountReport", "WitnessReport", "coker_ker", "coker_over",
    "contraction_nondegeneracy", "counted_rank_formula", "counted_torsion_formula",
    "cup_contraction_monomial", "cup_decomposition_check", "cup_differential", "cup_homology",
    "differential_squares_to_zero", "find_witness", "first_torsion", "hc_hf_compare", "hf_model",
    "ker_over", "model_context", "model_groups", "closed_rank_formula", "closed_torsion_formula",
    "same_class", "torsion_count_report", "transvection_action", "transvection_fixed_points",
    "triple_cup_form",
]
