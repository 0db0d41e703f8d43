"""Dense linear algebra over prime fields.

Generic routines work on lists of rows with entries in [0, p).  For p = 2
there is a bitset path: a vector is a Python int whose bit j is coordinate j.
"""

from __future__ import annotations

from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .intmatrix import IntMatrix
from .smith import NoSolution


def _rows(A, p: int) -> List[List[int]]:
    if isinstance(A, IntMatrix):
        return [[x % p for x in row] for row in A.to_dense()]
    return [[x % p for x in row] for row in A]


def rref(A, p: int) -> Tuple[List[List[int]], List[int]]:
    """Reduced row echelon form over F_p; returns (nonzero rows, pivot columns)."""
    a = _rows(A, p)
    n = len(a[0]) if a else 0
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, len(a)) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = pow(a[r][c], -1, p)
        a[r] = [x * inv % p for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a[:r], pivots


def rank_mod(A, p: int) -> int:
    if p == 2:
        return len(gf2_echelon(_bits_of(A))[0])
    return len(rref(A, p)[1])


def kernel_mod(A, p: int, ncols: Optional[int] = None) -> List[List[int]]:
    """Basis of {x : A x = 0} over F_p, one vector per free column."""
    if isinstance(A, IntMatrix):
        ncols = A.cols
    elif ncols is None:
        ncols = len(A[0]) if A else 0
    R, piv = rref(A, p) if (A.rows if isinstance(A, IntMatrix) else len(A)) else ([], [])
    pivset = set(piv)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [0] * ncols
        v[f] = 1
        for row, c in zip(R, piv):
            v[c] = (-row[f]) % p
        basis.append(v)
    return basis


def solve_mod(A, b: Sequence[int], p: int) -> List[int]:
    """One solution of A x = b over F_p (free variables zero)."""
    a = _rows(A, p)
    m = len(a)
    n = A.cols if isinstance(A, IntMatrix) else (len(a[0]) if a else 0)
    aug = [row + [b[i] % p] for i, row in enumerate(a)]
    R, piv = rref(aug, p) if m else ([], [])
    if n in piv:
        raise NoSolution("inconsistent system over F_p")
    x = [0] * n
    for row, c in zip(R, piv):
        x[c] = row[n]
    return x


def complement_basis(span: Sequence[Sequence[int]], n: int, p: int):
    """Standard-basis complement to a subspace, plus a coordinate map.

    Returns ``(free_cols, reduce)`` where ``free_cols`` lists the coordinates
    not used as pivots of span's echelon form, and ``reduce(v)`` returns the
    coordinates of the class of v in F_p^n / span with respect to the unit
    vectors at ``free_cols``.
    """
    R, piv = rref(span, p) if span else ([], [])
    free = [c for c in range(n) if c not in set(piv)]

    def reduce(v):
        v = [x % p for x in v]
        for row, c in zip(R, piv):
            if v[c]:
                f = v[c]
                v = [(x - f * y) % p for x, y in zip(v, row)]
        return [v[c] for c in free]

    return free, reduce


# ---------------------------------------------------------------------------
# F_2 bitsets


def _bits_of(A) -> List[int]:
    rows = A.to_dense() if isinstance(A, IntMatrix) else A
    out = []
    for row in rows:
        v = 0
        for j, x in enumerate(row):
            if x % 2:
                v |= 1 << j
        out.append(v)
    return out


def bits_from_list(v: Iterable[int]) -> int:
    out = 0
    for j, x in enumerate(v):
        if x % 2:
            out |= 1 << j
    return out


def bits_to_list(v: int, n: int) -> List[int]:
    return [(v >> j) & 1 for j in range(n)]


def gf2_echelon(rows: Iterable[int]) -> Tuple[List[int], List[int]]:
    """Fully reduced echelon basis of the span of bit-rows.

    Returns (basis, pivots) with pivot = lowest set bit of each basis row,
    and no basis row having a bit at another row's pivot.
    """
    basis: Dict[int, int] = {}
    for v in rows:
        v = gf2_reduce(v, basis)
        if v:
            low = v & -v
            for k in list(basis):
                if basis[k] & low:
                    basis[k] ^= v
            basis[low] = v
    keys = sorted(basis)
    return [basis[k] for k in keys], [k.bit_length() - 1 for k in keys]


def gf2_reduce(v: int, basis: Dict[int, int]) -> int:
    """Reduce v against an echelon basis keyed by pivot bit."""
    for low, row in basis.items():
        if v & low:
            v ^= row
    return v


class GF2Echelon:
    """Incrementally maintained reduced echelon basis over F_2."""

    __slots__ = ("rows",)

    def __init__(self):
        self.rows: Dict[int, int] = {}

    def __len__(self):
        return len(self.rows)

    def reduce(self, v: int) -> int:
        # rows are fully reduced, so only the pivots already set in v matter
        rows = self.rows
        w = v
        while w:
            low = w & -w
            r = rows.get(low)
            if r is not None:
                v ^= r
            w ^= low
        return v

    def add(self, v: int) -> bool:
        v = self.reduce(v)
        if not v:
            return False
        low = v & -v
        for k, r in self.rows.items():
            if r & low:
                self.rows[k] = r ^ v
        self.rows[low] = v
        return True

    def contains(self, v: int) -> bool:
        return self.reduce(v) == 0

    def nullspace(self, n: int) -> List[int]:
        """Basis of {x in F_2^n : r . x = 0 for every row r}."""
        pivots = {k.bit_length() - 1: r for k, r in self.rows.items()}
        out = []
        for f in range(n):
            if f in pivots:
                continue
            x = 1 << f
            for c, r in pivots.items():
                if r >> f & 1:
                    x |= 1 << c
            out.append(x)
        return out


def gf2_rank(rows: Iterable[int]) -> int:
    e = GF2Echelon()
    for v in rows:
        e.add(v)
    return len(e)


def gf2_kernel(rows: Sequence[int], n: int) -> List[int]:
    """Null space of the matrix with the given bit-rows (n columns)."""
    e = GF2Echelon()
    for v in rows:
        e.add(v)
    return e.nullspace(n)


def rank_mod_blocks(A: IntMatrix, p: int) -> int:
    """Rank over F_p, summed over the connected blocks of the sparsity pattern."""
    total = 0
    for rows, cols in A.blocks():
        if not rows or not cols:
            continue
        block = A.dense_block(rows, cols)
        total += len(gf2_echelon(_bits_of(block))[0]) if p == 2 else len(rref(block, p)[1])
    return total
