"""Smith and Hermite normal forms over Z, and everything built on them.

The dense kernel :func:`smith_dense` does classical pivoting with the
minimal absolute value as pivot (first index among ties, row-major), so
results are reproducible.  :class:`BlockSmith` runs it independently on each
connected block of a sparse matrix; kernels, preimages and cokernels are
read off the per-block transforms.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .abelian import AbelianInvariants, invariant_factor_chain
from .intmatrix import IntMatrix, SparseVector


class NoSolution(ValueError):
    """The requested target is not in the integral column span."""


def _identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_dense(a: List[List[int]], m: int, n: int, transforms: bool = True):
    """Reduce the m x n list-of-rows matrix ``a`` in place.

    Returns ``(diag, U, Uinv, V)`` with U a V = diag (invariant-factor chain,
    nonnegative, nonzero entries first).  The transform matrices are lists of
    rows, or None when ``transforms`` is false.
    """
    U = _identity(m) if transforms else None
    Uit = _identity(m) if transforms else None  # transpose of U^{-1}
    Vt = _identity(n) if transforms else None   # transpose of V
    t = 0
    top = min(m, n)

    def swap_rows(i, k):
        a[i], a[k] = a[k], a[i]
        if transforms:
            U[i], U[k] = U[k], U[i]
            Uit[i], Uit[k] = Uit[k], Uit[i]

    def swap_cols(j, k):
        for row in a:
            row[j], row[k] = row[k], row[j]
        if transforms:
            Vt[j], Vt[k] = Vt[k], Vt[j]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        rs, rd = a[src], a[dst]
        for c in range(t, n):
            if rs[c]:
                rd[c] += q * rs[c]
        if transforms:
            us, ud = U[src], U[dst]
            for c in range(m):
                if us[c]:
                    ud[c] += q * us[c]
            # U^{-1} gets column src -= q * column dst
            ws, wd = Uit[src], Uit[dst]
            for c in range(m):
                if wd[c]:
                    ws[c] -= q * wd[c]

    def add_col(dst, src, q):
        # col_dst += q * col_src
        for i in range(t, m):
            row = a[i]
            if row[src]:
                row[dst] += q * row[src]
        if transforms:
            vs, vd = Vt[src], Vt[dst]
            for c in range(n):
                if vs[c]:
                    vd[c] += q * vs[c]

    while t < top:
        best = None
        for i in range(t, m):
            row = a[i]
            for j in range(t, n):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        if i != t:
            swap_rows(t, i)
        if j != t:
            swap_cols(t, j)
        while True:
            p = a[t][t]
            dirty = False
            for i in range(t + 1, m):
                v = a[i][t]
                if v:
                    add_row(i, t, -(v // p))
                    if a[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                v = a[t][j]
                if v:
                    add_col(j, t, -(v // p))
                    if a[t][j]:
                        dirty = True
            if dirty:
                # move the smallest leftover in row/column t onto the diagonal
                best = (abs(a[t][t]), t, t)
                for i in range(t + 1, m):
                    if a[i][t] and abs(a[i][t]) < best[0]:
                        best = (abs(a[i][t]), i, t)
                for j in range(t + 1, n):
                    if a[t][j] and abs(a[t][j]) < best[0]:
                        best = (abs(a[t][j]), t, j)
                _, i, j = best
                if i != t:
                    swap_rows(t, i)
                if j != t:
                    swap_cols(t, j)
                continue
            bad = None
            for i in range(t + 1, m):
                row = a[i]
                for j in range(t + 1, n):
                    if row[j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, 1)
        if a[t][t] < 0:
            a[t][t] = -a[t][t]
            if transforms:
                U[t] = [-x for x in U[t]]
                Uit[t] = [-x for x in Uit[t]]
        t += 1

    diag = [a[i][i] for i in range(top)]
    if not transforms:
        return diag, None, None, None
    Uinv = [list(r) for r in zip(*Uit)] if m else []
    V = [list(r) for r in zip(*Vt)] if n else []
    return diag, U, Uinv, V


@dataclass(frozen=True)
class SmithForm:
    """U A V = S with S diagonal in invariant-factor form."""

    A: IntMatrix
    U: IntMatrix
    V: IntMatrix
    S: IntMatrix
    invariant_factors: Tuple[int, ...]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.invariant_factors if d)

    def verify(self) -> bool:
        if self.U @ self.A @ self.V != self.S:
            return False
        nz = [d for d in self.invariant_factors if d]
        if any(d < 0 for d in nz) or any(nz[i + 1] % nz[i] for i in range(len(nz) - 1)):
            return False
        return _abs_det(self.U.to_dense()) == 1 and _abs_det(self.V.to_dense()) == 1


def smith(A: IntMatrix) -> SmithForm:
    """Full Smith form with unimodular transforms (dense; for modest sizes)."""
    m, n = A.shape
    diag, U, _, V = smith_dense(A.to_dense(), m, n, True)
    S = IntMatrix.diagonal(diag, m, n)
    out = SmithForm(A, IntMatrix.from_dense(U, m), IntMatrix.from_dense(V, n), S, tuple(diag))
    if not out.verify():  # pragma: no cover - would be an arithmetic bug
        raise AssertionError("Smith form failed verification")
    return out


def _abs_det(rows: List[List[int]]) -> int:
    return abs(determinant(IntMatrix.from_dense(rows, len(rows))))


def determinant(A: IntMatrix) -> int:
    """Exact determinant of a square matrix (Bareiss, with sign)."""
    if A.rows != A.cols:
        raise ValueError("determinant of a non-square matrix")
    n = A.rows
    if n == 0:
        return 1
    a = A.to_dense()
    prev, sign = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def hermite(A: IntMatrix) -> Tuple[IntMatrix, IntMatrix]:
    """Row-style Hermite normal form: returns (H, T) with T A = H, T unimodular.

    H is in row echelon form with positive pivots and entries above each
    pivot reduced into [0, pivot).
    """
    m, n = A.shape
    a = A.to_dense()
    T = _identity(m)
    r = 0
    for c in range(n):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if a[i][c]]
            if not nz:
                break
            p = min(nz, key=lambda i: (abs(a[i][c]), i))
            if p != r:
                a[r], a[p] = a[p], a[r]
                T[r], T[p] = T[p], T[r]
            done = True
            for i in range(r + 1, m):
                if a[i][c]:
                    q = a[i][c] // a[r][c]
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                    T[i] = [x - q * y for x, y in zip(T[i], T[r])]
                    if a[i][c]:
                        done = False
            if done:
                break
        if r < m and a[r][c]:
            if a[r][c] < 0:
                a[r] = [-x for x in a[r]]
                T[r] = [-x for x in T[r]]
            for i in range(r):
                q = a[i][c] // a[r][c]
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                    T[i] = [x - q * y for x, y in zip(T[i], T[r])]
            r += 1
    return IntMatrix.from_dense(a, n), IntMatrix.from_dense(T, m)


# ---------------------------------------------------------------------------
# block-wise reduction


@dataclass
class _Block:
    rows: Tuple[int, ...]
    cols: Tuple[int, ...]
    diag: List[int]
    rank: int
    U: Optional[List[List[int]]]
    Uinv: Optional[List[List[int]]]
    V: Optional[List[List[int]]]


class BlockSmith:
    """Smith reduction of a sparse matrix, computed per connected block."""

    def __init__(self, A: IntMatrix, transforms: bool = True):
        self.A = A
        self.transforms = transforms
        self.blocks: List[_Block] = []
        self.row_block: Dict[int, int] = {}
        for rows, cols in A.blocks():
            if cols and rows:
                dense = A.dense_block(rows, cols)
                diag, U, Ui, V = smith_dense(dense, len(rows), len(cols), transforms)
            else:
                diag = []
                U = _identity(len(rows)) if transforms else None
                Ui = _identity(len(rows)) if transforms else None
                V = _identity(len(cols)) if transforms else None
            rank = sum(1 for d in diag if d)
            self.row_block.update({r: len(self.blocks) for r in rows})
            self.blocks.append(_Block(rows, cols, diag, rank, U, Ui, V))

    @property
    def rank(self) -> int:
        return sum(b.rank for b in self.blocks)

    def nonzero_diagonal(self) -> List[int]:
        return [d for b in self.blocks for d in b.diag if d]

    def cokernel(self) -> AbelianInvariants:
        return AbelianInvariants.from_diagonal(self.A.rows - self.rank, self.nonzero_diagonal())

    def invariant_factors(self) -> List[int]:
        chain = invariant_factor_chain(self.nonzero_diagonal())
        return [1] * (self.rank - len(chain)) + chain

    def _need(self):
        if not self.transforms:
            raise RuntimeError("transforms were not computed")

    def kernel(self) -> List[SparseVector]:
        """Saturated kernel basis (columns of V past the rank, per block)."""
        self._need()
        out = []
        for b in self.blocks:
            for k in range(b.rank, len(b.cols)):
                v = {b.cols[i]: b.V[i][k] for i in range(len(b.cols)) if b.V[i][k]}
                out.append(v)
        return out

    def image_saturation(self) -> List[SparseVector]:
        """Basis of (column span tensor Q) intersected with Z^rows."""
        self._need()
        out = []
        for b in self.blocks:
            for k in range(b.rank):
                out.append({b.rows[i]: b.Uinv[i][k] for i in range(len(b.rows)) if b.Uinv[i][k]})
        return out

    def image_basis(self) -> List[SparseVector]:
        """Basis of the column span: d_i times the saturated image vectors."""
        self._need()
        out = []
        for b in self.blocks:
            for k in range(b.rank):
                d = b.diag[k]
                out.append({b.rows[i]: d * b.Uinv[i][k]
                            for i in range(len(b.rows)) if b.Uinv[i][k]})
        return out

    def cokernel_complement(self) -> List[SparseVector]:
        """Vectors completing the saturated image to a basis of Z^rows."""
        self._need()
        out = []
        for b in self.blocks:
            for k in range(b.rank, len(b.rows)):
                out.append({b.rows[i]: b.Uinv[i][k] for i in range(len(b.rows)) if b.Uinv[i][k]})
        return out

    def transformed(self, vec: SparseVector) -> Dict[int, Dict[int, int]]:
        """U applied to ``vec``, grouped by block index."""
        self._need()
        per: Dict[int, Dict[int, int]] = {}
        for r, x in vec.items():
            if x:
                per.setdefault(self.row_block[r], {})[r] = x
        out = {}
        for bi, part in per.items():
            b = self.blocks[bi]
            pos = {r: i for i, r in enumerate(b.rows)}
            y = {}
            for r, x in part.items():
                c = pos[r]
                for i in range(len(b.rows)):
                    u = b.U[i][c]
                    if u:
                        y[i] = y.get(i, 0) + u * x
            out[bi] = {i: v for i, v in y.items() if v}
        return out

    def solve(self, vec: SparseVector) -> SparseVector:
        """Deterministic integral x with A x = vec; free variables are zero.

        Raises NoSolution when vec is not in the integral column span.
        """
        out: SparseVector = {}
        for bi, y in self.transformed(vec).items():
            b = self.blocks[bi]
            z = {}
            for i, v in y.items():
                if i >= b.rank:
                    raise NoSolution("target not in the column span over Q")
                q, r = divmod(v, b.diag[i])
                if r:
                    raise NoSolution("target in the rational but not the integral span")
                z[i] = q
            for k, q in z.items():
                for i in range(len(b.cols)):
                    vik = b.V[i][k]
                    if vik:
                        c = b.cols[i]
                        out[c] = out.get(c, 0) + vik * q
        return {c: v for c, v in out.items() if v}

    def in_image(self, vec: SparseVector) -> bool:
        try:
            self.solve(vec)
        except NoSolution:
            return False
        return True

    def cokernel_class(self, vec: SparseVector) -> Tuple[Tuple[int, int, int], ...]:
        """Canonical coordinates of vec in coker(A).

        Returns the nonzero entries as (block, position, value) where torsion
        coordinates are reduced modulo their invariant factor.  The empty
        tuple means vec lies in the image.
        """
        out = []
        for bi, y in sorted(self.transformed(vec).items()):
            b = self.blocks[bi]
            for i, v in sorted(y.items()):
                if i < b.rank:
                    v %= b.diag[i]
                if v:
                    out.append((bi, i, v))
        return tuple(out)

    def cokernel_moduli(self) -> List[Tuple[int, int, int]]:
        """(block, position, modulus) for each nontrivial cokernel coordinate; modulus 0 = free."""
        out = []
        for bi, b in enumerate(self.blocks):
            for i in range(len(b.rows)):
                d = b.diag[i] if i < b.rank else 0
                if d != 1:
                    out.append((bi, i, d))
        return out


def kernel_lattice(A: IntMatrix) -> List[SparseVector]:
    """Basis of the saturated integral kernel of A."""
    return BlockSmith(A).kernel()


def cokernel(A: IntMatrix) -> AbelianInvariants:
    return BlockSmith(A, transforms=False).cokernel()


def rank(A: IntMatrix) -> int:
    return BlockSmith(A, transforms=False).rank


def solve(A: IntMatrix, target) -> SparseVector:
    if not isinstance(target, dict):
        target = {i: v for i, v in enumerate(target) if v}
    return BlockSmith(A).solve(target)


def solve_and_lift(A: IntMatrix, targets: Sequence[SparseVector]) -> List[SparseVector]:
    """Integral preimages of each target under A (deterministic)."""
    bs = BlockSmith(A)
    return [bs.solve(t if isinstance(t, dict) else {i: v for i, v in enumerate(t) if v})
            for t in targets]


def right_inverse(A: IntMatrix) -> IntMatrix:
    """A section of a surjection A: Z^n -> Z^m, as an n x m matrix."""
    bs = BlockSmith(A)
    cols = []
    for i in range(A.rows):
        try:
            cols.append(bs.solve({i: 1}))
        except NoSolution as exc:
            raise NoSolution(f"not surjective onto Z^{A.rows}") from exc
    return IntMatrix.from_columns(A.cols, cols)
