"""
The Lefschetz filtration on Lambda^k(Z^{2g}).

    F_r Lambda^k = { a in Lambda^k : omega^{g-k+1+r} ^ a = 0 }

is an increasing filtration by saturated sublattices, starting at the
primitive lattice P^k (k <= g) or the coprimitive lattice (k >= g), whose
graded pieces are free and identified with P^{k-2r} by contraction with the
divided power omega_r.  Everything here works with sparse coordinate vectors
in the monomial basis ``monomial_basis(g, k)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

from .exterior import (Multivector, degree_operator, dim_exterior, from_vector, monomial_basis,
                       omega_power, primitive_rank, to_vector)
from .linalg import (BlockSmith, IntMatrix, Lattice, NoSolution, determinant, graded_piece,
                     is_saturated)
from .linalg.intmatrix import SparseVector


class TheoremViolation(AssertionError):
    """A computed object contradicts a statement that is proved to hold."""


def wedge_omega(g: int, j: int, k: int, vecs: List[SparseVector]) -> List[SparseVector]:
    M = degree_operator("wedge", g, j, k)
    return [M.apply(v) for v in vecs]


def contract_omega(g: int, j: int, k: int, vecs: List[SparseVector]) -> List[SparseVector]:
    M = degree_operator("contract", g, j, k)
    return [M.apply(v) for v in vecs]


def as_multivector(g: int, k: int, vec: SparseVector) -> Multivector:
    return from_vector(g, vec, monomial_basis(g, k))


def as_vector(x: Multivector, k: int) -> SparseVector:
    return to_vector(x, monomial_basis(g=x.g, degrees=k))


def level_range(g: int, k: int) -> Tuple[int, int]:
    """(lowest r with F_r nonzero, lowest r with F_r everything)."""
    return max(0, k - g), k // 2


# ---------------------------------------------------------------------------
# filtration


@lru_cache(maxsize=None)
def filtration_level(g: int, k: int, r: int) -> Lattice:
    """Saturated basis of F_r Lambda^k as the kernel of wedge with omega_{g-k+1+r}."""
    n = dim_exterior(g, k)
    j = g - k + 1 + r
    if j <= 0:
        return Lattice(n, [])
    if j > g or k + 2 * j > 2 * g:
        return Lattice(n, [{i: 1} for i in range(n)])
    return Lattice(n, BlockSmith(degree_operator("wedge", g, j, k)).kernel())


def primitive_basis(g: int, k: int) -> List[SparseVector]:
    """Saturated basis of P^k (empty unless 0 <= k <= g)."""
    if k < 0 or k > g:
        return []
    return filtration_level(g, k, 0).basis


@dataclass
class FiltrationData:
    g: int
    k: int
    levels: Dict[int, Lattice]
    splitting: Optional[Dict[int, List[SparseVector]]] = None

    @property
    def dim(self) -> int:
        return dim_exterior(self.g, self.k)

    def level(self, r: int) -> Lattice:
        lo, hi = level_range(self.g, self.k)
        if r < lo:
            return Lattice(self.dim, [])
        if r > hi:
            return self.levels[hi]
        return self.levels[r]

    def level_ranks(self) -> Dict[int, int]:
        return {r: L.rank for r, L in sorted(self.levels.items())}

    def graded(self, r: int):
        return _graded(self.g, self.k, r)

    def graded_ranks(self) -> Dict[int, int]:
        return {r: self.graded(r).rank for r in sorted(self.levels)}


def filtration(g: int, k: int) -> FiltrationData:
    if not 0 <= k <= 2 * g:
        raise ValueError(f"degree {k} outside 0..{2 * g}")
    lo, hi = level_range(g, k)
    return FiltrationData(g, k, {r: filtration_level(g, k, r) for r in range(lo, hi + 1)})


@lru_cache(maxsize=None)
def _graded(g: int, k: int, r: int):
    lo, _ = level_range(g, k)
    outer = filtration_level(g, k, r)
    inner = filtration_level(g, k, r - 1) if r > lo else Lattice(outer.dim, [])
    return graded_piece(outer, inner)


def graded_rank(g: int, k: int, r: int) -> int:
    """C(2g, k-2r) - C(2g, k-2r-2): the rank of P^{k-2r}."""
    return primitive_rank(g, k - 2 * r)


def in_level(g: int, k: int, r: int, vec: SparseVector) -> bool:
    lo, hi = level_range(g, k)
    if not vec:
        return True
    if r < lo:
        return False
    if r >= hi:
        return True
    return filtration_level(g, k, r).contains(vec)


# ---------------------------------------------------------------------------
# graded isomorphisms and constants


@dataclass
class IsoCertificate:
    g: int
    k: int
    r: int
    rank: int
    expected_rank: int
    determinant: int
    saturated: bool

    @property
    def ok(self) -> bool:
        return (self.rank == self.expected_rank and abs(self.determinant) == 1
                and self.saturated)


def graded_iso_check(g: int, k: int, r: int) -> IsoCertificate:
    """Contraction by omega_r as a map gr_r Lambda^k -> P^{k-2r}, in saturated bases."""
    if r < 0 or k - 2 * r < 0 or k - 2 * r > g:
        raise ValueError("need 0 <= k - 2r <= g")
    piece = _graded(g, k, r)
    target = filtration_level(g, k - 2 * r, 0)
    images = contract_omega(g, r, k, piece.complement)
    cols = []
    for v in images:
        try:
            cols.append(target.coordinates(v))
        except NoSolution as exc:
            raise TheoremViolation(f"contraction leaves P^{k - 2 * r}") from exc
    M = IntMatrix.from_columns(target.rank, cols)
    det = determinant(M) if M.rows == M.cols else 0
    sat = filtration_level(g, k, r).is_saturated()
    return IsoCertificate(g, k, r, piece.rank, graded_rank(g, k, r), det, sat)


@dataclass
class GradedMapReport:
    g: int
    k: int
    r: int
    j: int
    direction: str
    claimed_constant: int
    verified: bool

    def to_json_obj(self):
        return {"g": self.g, "k": self.k, "r": self.r, "j": self.j,
                "direction": self.direction, "claimed_constant": self.claimed_constant,
                "verified": self.verified}


def _eq_scaled(lhs: List[SparseVector], rhs: List[SparseVector], c: int) -> bool:
    return all(a == {i: c * v for i, v in b.items() if c * v} for a, b in zip(lhs, rhs))


def graded_constants(g: int, k: int, r: int, j: int) -> Tuple[GradedMapReport, GradedMapReport]:
    """Wedge and contraction by omega_j on graded pieces, as multiples of identity.

    Graded pieces are identified with primitive lattices through the
    contraction isomorphisms A_r = iota_{omega_r}.  In those terms:

        A_{r+j}(omega_j ^ x) = (-1)^j C(g-k+r, j) A_r(x)     x in gr_r Lambda^k
        A_r(iota_{omega_j} y) = C(r+j, j) A_{r+j}(y)          y in gr_{r+j} Lambda^k
    """
    wedge_c = (-1) ** j * math.comb(g - k + r, j) if g - k + r >= 0 else 0
    contract_c = math.comb(r + j, j)

    lo, hi = level_range(g, k)
    wedge_ok = True
    if lo <= r <= hi and k + 2 * j <= 2 * g:
        xs = _graded(g, k, r).complement
        lhs = contract_omega(g, r + j, k + 2 * j, wedge_omega(g, j, k, xs))
        rhs = contract_omega(g, r, k, xs)
        wedge_ok = _eq_scaled(lhs, rhs, wedge_c)
    contract_ok = True
    if lo <= r + j <= hi:
        ys = _graded(g, k, r + j).complement
        lhs = contract_omega(g, r, k - 2 * j, contract_omega(g, j, k, ys))
        rhs = contract_omega(g, r + j, k, ys)
        contract_ok = _eq_scaled(lhs, rhs, contract_c)
    return (GradedMapReport(g, k, r, j, "wedge", wedge_c, wedge_ok),
            GradedMapReport(g, k, r, j, "contract", contract_c, contract_ok))


def graded_constant_table(g: int) -> List[GradedMapReport]:
    """Every wedge/contraction constant with nonzero source piece, in a fixed order."""
    out = []
    for k in range(2 * g + 1):
        lo, hi = level_range(g, k)
        for r in range(lo, hi + 1):
            for j in range(0, g + 1):
                w, c = graded_constants(g, k, r, j)
                if k + 2 * j <= 2 * g:
                    out.append(w)
                if r + j <= hi:
                    out.append(c)
    return out


@dataclass
class DivisibilityReport:
    g: int
    k: int
    r: int
    divisor: int
    divisible: bool
    inverse_ok: bool

    @property
    def ok(self) -> bool:
        return self.divisible and self.inverse_ok


def divisibility_check(g: int, k: int, r: int) -> DivisibilityReport:
    """[omega_r ^ x] in gr_r Lambda^{k+2r} is C(g-k, r) times a class y with
    iota_{omega_r}(y) = (-1)^r x, for every x in P^k."""
    if not (0 <= k <= g and 0 <= r <= g - k):
        raise ValueError("need 0 <= k <= g and 0 <= r <= g - k")
    c = math.comb(g - k, r)
    xs = primitive_basis(g, k)
    ys = wedge_omega(g, r, k, xs)
    piece = _graded(g, k + 2 * r, r)
    divisible = True
    inverse_ok = True
    for x, y in zip(xs, ys):
        coords = piece.coords(y)
        if any(v % c for v in coords):
            divisible = False
            continue
        # the class y / c, represented with the complement vectors
        rep: Dict[int, int] = {}
        for a, v in zip(piece.complement, coords):
            for i, w in a.items():
                rep[i] = rep.get(i, 0) + (v // c) * w
        back = degree_operator("contract", g, r, k + 2 * r).apply(rep)
        sign = (-1) ** r
        if back != {i: sign * v for i, v in x.items()}:
            inverse_ok = False
    return DivisibilityReport(g, k, r, c, divisible, inverse_ok)


@dataclass
class ObstructionReport:
    g: int
    contraction_of_top: bool
    content_one: bool
    generator_multiples: Dict[int, int]

    @property
    def ok(self) -> bool:
        return (self.contraction_of_top and self.content_one and
                all(abs(v) == math.comb(self.g, k) for k, v in self.generator_multiples.items()))


def obstruction_checks(g: int) -> ObstructionReport:
    """iota_omega(omega_g) = -omega_{g-1}, omega_{g-1} primitive as a vector, and
    omega_k = +-C(g,k) times a generator of gr_k Lambda^{2k}."""
    if g < 2:
        raise ValueError("needs g >= 2")
    from .exterior import contract_form, omega
    top = contract_form(omega(g), omega_power(g, g)) == -omega_power(g, g - 1)
    content = omega_power(g, g - 1).content() == 1
    multiples = {}
    for k in range(1, g):
        piece = _graded(g, 2 * k, k)
        coords = piece.coords(as_vector(omega_power(g, k), 2 * k))
        multiples[k] = coords[0]
    return ObstructionReport(g, top, content, multiples)


# ---------------------------------------------------------------------------
# Z-splittings


@dataclass
class Splitting:
    """Complements G_r with F_r = G_r + F_{r-1} (direct) for each level r."""

    g: int
    k: int
    pieces: Dict[int, List[SparseVector]] = field(default_factory=dict)

    def lattice(self, r: int) -> Lattice:
        return Lattice(dim_exterior(self.g, self.k), self.pieces.get(r, []))

    def all_vectors(self) -> List[SparseVector]:
        return [v for r in sorted(self.pieces) for v in self.pieces[r]]


def _preimage(M: IntMatrix, target: List[SparseVector]) -> List[SparseVector]:
    """Basis of {x : M x in span(target)}, assuming target is independent."""
    n = M.cols
    cols = M.columns() + [{i: -v for i, v in t.items()} for t in target]
    K = IntMatrix.from_columns(M.rows, cols)
    out = []
    for v in BlockSmith(K).kernel():
        x = {i: c for i, c in v.items() if i < n}
        out.append(x)
    return out


def _section(g: int, src_k: int, ys: List[SparseVector], r: int,
             target: Lattice) -> List[SparseVector]:
    """Image of a right inverse of iota_{omega_r}: span(ys) -> target."""
    imgs = contract_omega(g, r, src_k, ys)
    cols = []
    for v in imgs:
        try:
            cols.append(target.coordinates(v))
        except NoSolution as exc:
            raise TheoremViolation("contraction leaves the primitive lattice") from exc
    N = IntMatrix.from_columns(target.rank, cols)
    bs = BlockSmith(N)
    out = []
    for i in range(target.rank):
        try:
            z = bs.solve({i: 1})
        except NoSolution as exc:
            raise TheoremViolation("lift failed: contraction not surjective") from exc
        vec: Dict[int, int] = {}
        for l, c in z.items():
            for a, w in ys[l].items():
                vec[a] = vec.get(a, 0) + c * w
        out.append({a: w for a, w in vec.items() if w})
    return out


@lru_cache(maxsize=None)
def _first_half(g: int) -> Dict[int, Splitting]:
    out: Dict[int, Splitting] = {}
    for k in range(g + 1):
        sp = Splitting(g, k, {0: list(primitive_basis(g, k))})
        for r in range(1, k // 2 + 1):
            below = out[k - 2].pieces[r - 1]
            ys = _preimage(degree_operator("contract", g, 1, k), below)
            sp.pieces[r] = _section(g, k, ys, r, filtration_level(g, k - 2 * r, 0))
        out[k] = sp
    return out


def split_first_half(g: int) -> Dict[int, Splitting]:
    """Splittings of Lambda^k, k <= g, with iota_omega(G_r) inside G_{r-1}."""
    return dict(_first_half(g))


def split_across_midpoint(g: int, k: int, base: Splitting) -> Splitting:
    """Splitting of Lambda^{g+k} with iota_{omega_k}(G_{r+k}) inside G_r of ``base``."""
    if not 0 <= k <= g:
        raise ValueError("need 0 <= k <= g")
    if base.k != g - k:
        raise ValueError("base splitting must live on Lambda^{g-k}")
    out = Splitting(g, g + k)
    M = degree_operator("contract", g, k, g + k)
    for r in sorted(base.pieces):
        ys = _preimage(M, base.pieces[r])
        out.pieces[r + k] = _section(g, g + k, ys, r + k, filtration_level(g, g - k - 2 * r, 0))
    return out


@lru_cache(maxsize=None)
def standard_splitting(g: int, k: int) -> Splitting:
    """First-half splitting for k <= g; midpoint splitting over it for k > g."""
    if k <= g:
        return _first_half(g)[k]
    return split_across_midpoint(g, k - g, _first_half(g)[2 * g - k])


@dataclass
class SplittingReport:
    g: int
    k: int
    levels_ok: bool
    unimodular: bool
    compatible: bool

    @property
    def ok(self) -> bool:
        return self.levels_ok and self.unimodular and self.compatible


def verify_splitting(sp: Splitting, compat: Optional[Tuple[int, Splitting, int]] = None
                     ) -> SplittingReport:
    """Check F_r = G_r + F_{r-1} directly for every level, det = +-1 overall,
    and optionally iota_{omega_j}(G_r) inside other.G_{r+shift} for
    ``compat = (j, other, shift)``."""
    g, k = sp.g, sp.k
    lo, hi = level_range(g, k)
    levels_ok = set(sp.pieces) == set(range(lo, hi + 1))
    acc: List[SparseVector] = []
    for r in range(lo, hi + 1):
        if not levels_ok:
            break
        F = filtration_level(g, k, r)
        G = sp.pieces[r]
        if not all(F.contains(v) for v in G):
            levels_ok = False
            break
        acc = acc + G
        if len(acc) != F.rank:
            levels_ok = False
            break
        L = Lattice(F.dim, acc)
        try:
            if not all(L.contains(v) for v in F.basis):
                levels_ok = False
        except ValueError:
            levels_ok = False
    allv = sp.all_vectors()
    n = dim_exterior(g, k)
    unimodular = len(allv) == n and abs(determinant(IntMatrix.from_columns(n, allv))) == 1
    compatible = True
    if compat is not None:
        j, other, shift = compat
        for r, G in sp.pieces.items():
            tgt = other.lattice(r + shift)
            for v in contract_omega(g, j, k, G):
                if v and not tgt.contains(v):
                    compatible = False
    return SplittingReport(g, k, levels_ok, unimodular, compatible)


# ---------------------------------------------------------------------------
# miscellany used by the checks


def star_level_check(g: int, k: int, r: int) -> bool:
    """star maps F_r Lambda^{g-k} bijectively onto F_{k+r} Lambda^{g+k}."""
    from .exterior import operator_matrix
    S = operator_matrix("star", g, g - k)
    src = filtration_level(g, g - k, r)
    dst = filtration_level(g, g + k, k + r)
    imgs = [S.apply(v) for v in src.basis]
    if len(imgs) != dst.rank:
        return False
    if not all(dst.contains(v) for v in imgs):
        return False
    return Lattice(dst.dim, imgs).index_in(dst).is_trivial if imgs else dst.rank == 0


def membership_equivalence(g: int, k: int, r: int, j: int, vec: SparseVector) -> Tuple[bool, bool, bool]:
    """(x in F_r, omega_j ^ x in F_{r+j}, iota_{omega_j} x in F_{r-j})."""
    a = in_level(g, k, r, vec)
    b = in_level(g, k + 2 * j, r + j, degree_operator("wedge", g, j, k).apply(vec)) \
        if k + 2 * j <= 2 * g else a
    c = in_level(g, k - 2 * j, r - j, degree_operator("contract", g, j, k).apply(vec)) \
        if k - 2 * j >= 0 else a
    return a, b, c


def pairing_gram(g: int, k: int) -> IntMatrix:
    """Gram matrix of (x, y) -> coefficient of x ^ y ^ omega_{g-k} on P^k."""
    from .exterior import wedge
    basis = primitive_basis(g, k)
    xs = [as_multivector(g, k, v) for v in basis]
    w = omega_power(g, g - k)
    top = (1 << (2 * g + 1)) - 2
    rows = []
    ys = [x ^ w for x in xs]
    for x in xs:
        rows.append([wedge(x, y).terms.get(top, 0) for y in ys])
    return IntMatrix.from_dense(rows, len(xs))


# ---------------------------------------------------------------------------
# contraction identities


def gbinom(a: int, j: int) -> int:
    """a(a-1)...(a-j+1)/j! for any integer a, so gbinom(-i, j) = (-1)^j C(i+j-1, j)."""
    if j < 0:
        return 0
    num = 1
    for i in range(j):
        num *= a - i
    return num // math.factorial(j)


def _wedge_vec(g: int, n: int, k: int, vec: SparseVector) -> SparseVector:
    if n < 0 or n > g or k + 2 * n > 2 * g or not vec:
        return {}
    if n == 0:
        return dict(vec)
    return degree_operator("wedge", g, n, k).apply(vec)


def _contract_vec(g: int, m: int, k: int, vec: SparseVector) -> SparseVector:
    if m < 0 or m > g or k - 2 * m < 0 or not vec:
        return {}
    if m == 0:
        return dict(vec)
    return degree_operator("contract", g, m, k).apply(vec)


def _add_into(acc: SparseVector, vec: SparseVector, c: int) -> None:
    for i, v in vec.items():
        x = acc.get(i, 0) + c * v
        if x:
            acc[i] = x
        else:
            acc.pop(i, None)


@dataclass
class IdentityReport:
    g: int
    name: str
    cases: int
    failures: List[Tuple] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def commutator_identity(g: int) -> IdentityReport:
    """iota_omega(omega ^ x) = omega ^ iota_omega(x) + (k - g) x on every basis x."""
    rep = IdentityReport(g, "commutator", 0)
    for k in range(2 * g + 1):
        for i in range(dim_exterior(g, k)):
            x = {i: 1}
            lhs = _contract_vec(g, 1, k + 2, _wedge_vec(g, 1, k, x))
            rhs = _wedge_vec(g, 1, k - 2, _contract_vec(g, 1, k, x))
            _add_into(rhs, x, k - g)
            rep.cases += 1
            if lhs != rhs:
                rep.failures.append((k, i))
    return rep


def binomial_commutation_rhs(g: int, m: int, n: int, k: int, x: SparseVector) -> SparseVector:
    """sum_j (-1)^j C(g-k+m-n, j) omega_{n-j} ^ iota_{omega_{m-j}}(x)."""
    out: SparseVector = {}
    for j in range(m + 1):
        c = (-1) ** j * gbinom(g - k + m - n, j)
        if c:
            _add_into(out, _wedge_vec(g, n - j, k - 2 * (m - j),
                                      _contract_vec(g, m - j, k, x)), c)
    return out


def binomial_commutation(g: int) -> IdentityReport:
    """iota_{omega_m}(omega_n ^ x) against its binomial expansion, all 0 <= m, n <= g
    and every basis x of every degree."""
    rep = IdentityReport(g, "binomial commutation", 0)
    for k in range(2 * g + 1):
        for m in range(g + 1):
            for n in range(g + 1):
                for i in range(dim_exterior(g, k)):
                    x = {i: 1}
                    lhs = _contract_vec(g, m, k + 2 * n, _wedge_vec(g, n, k, x))
                    rep.cases += 1
                    if lhs != binomial_commutation_rhs(g, m, n, k, x):
                        rep.failures.append((k, m, n, i))
    return rep


def random_identity_cases(g: int, count: int, seed: int = 0) -> IdentityReport:
    """Both identities on random basis monomials, through Multivector arithmetic
    (wedge and contract_form) instead of operator matrices."""
    import random
    from .exterior import contract_form, omega
    rng = random.Random(seed)
    rep = IdentityReport(g, "random", 0)
    w = omega(g)
    powers = [omega_power(g, r) for r in range(g + 1)]

    def wp(r):
        return powers[r] if 0 <= r <= g else Multivector.zero(g)

    for _ in range(count):
        mask = 0
        for i in range(1, 2 * g + 1):
            if rng.random() < 0.5:
                mask |= 1 << i
        x = Multivector(g, {mask: 1})
        k = x.degree
        if rng.random() < 0.2:
            lhs = contract_form(w, w ^ x)
            rhs = (w ^ contract_form(w, x)) + (k - g) * x
            params = (k, 1, 1, mask)
        else:
            m, n = rng.randint(0, g), rng.randint(0, g)
            lhs = contract_form(wp(m), wp(n) ^ x)
            rhs = Multivector.zero(g)
            for j in range(m + 1):
                c = (-1) ** j * gbinom(g - k + m - n, j)
                if c:
                    rhs = rhs + c * (wp(n - j) ^ contract_form(wp(m - j), x))
            params = (k, m, n, mask)
        rep.cases += 1
        if lhs != rhs:
            rep.failures.append(params)
    return rep
