"""Sublattices of Z^N given by bases of sparse vectors."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Sequence

from .abelian import AbelianInvariants
from .intmatrix import IntMatrix, SparseVector
from .smith import BlockSmith, NoSolution


def basis_matrix(dim: int, vectors: Sequence[SparseVector]) -> IntMatrix:
    return IntMatrix.from_columns(dim, list(vectors))


def saturate(dim: int, vectors: Sequence[SparseVector]) -> List[SparseVector]:
    """Basis of the saturation (span over Q intersected with Z^dim)."""
    return BlockSmith(basis_matrix(dim, vectors)).image_saturation()


def is_saturated(dim: int, vectors: Sequence[SparseVector]) -> bool:
    """True when the vectors are independent and span a saturated lattice."""
    bs = BlockSmith(basis_matrix(dim, vectors), transforms=False)
    return bs.rank == len(vectors) and all(d == 1 for d in bs.nonzero_diagonal())


class Lattice:
    """A lattice with a fixed basis, able to express members in that basis."""

    def __init__(self, dim: int, basis: Sequence[SparseVector]):
        self.dim = dim
        self.basis = [dict(v) for v in basis]
        self._smith = None

    def __len__(self):
        return len(self.basis)

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def smith(self) -> BlockSmith:
        if self._smith is None:
            self._smith = BlockSmith(basis_matrix(self.dim, self.basis))
            if self._smith.rank != len(self.basis):
                raise ValueError("lattice basis vectors are dependent")
        return self._smith

    def coordinates(self, vec: SparseVector) -> SparseVector:
        """Integer coordinates of vec in this basis (NoSolution if not a member)."""
        return self.smith.solve(vec)

    def contains(self, vec: SparseVector) -> bool:
        return self.smith.in_image(vec)

    def contains_all(self, vecs: Sequence[SparseVector]) -> bool:
        return all(self.contains(v) for v in vecs)

    def combine(self, coords: SparseVector) -> SparseVector:
        out: Dict[int, int] = {}
        for k, c in coords.items():
            for i, v in self.basis[k].items():
                out[i] = out.get(i, 0) + c * v
        return {i: v for i, v in out.items() if v}

    def is_saturated(self) -> bool:
        bs = self.smith
        return all(d == 1 for d in bs.nonzero_diagonal())

    def index_in(self, other: "Lattice") -> AbelianInvariants:
        """other / self, assuming self is a sublattice of other."""
        cols = [other.coordinates(v) for v in self.basis]
        return BlockSmith(IntMatrix.from_columns(other.rank, cols), transforms=False).cokernel()


@dataclass
class GradedPiece:
    """L / S for a saturated sublattice S of L.

    ``complement`` is a list of vectors of L with L = S + span(complement)
    (direct), and ``coords(v)`` gives the coordinates of the class of v in
    L / S with respect to the images of ``complement``.
    """

    outer: Lattice
    inner: Lattice
    complement: List[SparseVector]
    _reducer: BlockSmith
    _order: List[tuple]

    @property
    def rank(self) -> int:
        return len(self.complement)

    def coords(self, vec: SparseVector) -> List[int]:
        c = self.outer.coordinates(vec)
        ys = self._reducer.transformed(c)
        out = []
        for bi, i in self._order:
            out.append(ys.get(bi, {}).get(i, 0))
        return out


def graded_piece(outer: Lattice, inner: Lattice) -> GradedPiece:
    """Split outer = inner + complement when inner is saturated in outer."""
    cols = [outer.coordinates(v) for v in inner.basis]
    bs = BlockSmith(IntMatrix.from_columns(outer.rank, cols))
    if any(d != 1 for d in bs.nonzero_diagonal()) or bs.rank != inner.rank:
        raise ValueError("inner lattice is not saturated in the outer lattice")
    order = []
    comp = []
    for bi, b in enumerate(bs.blocks):
        for k in range(b.rank, len(b.rows)):
            order.append((bi, k))
            coords = {b.rows[i]: b.Uinv[i][k] for i in range(len(b.rows)) if b.Uinv[i][k]}
            comp.append(outer.combine(coords))
    return GradedPiece(outer, inner, comp, bs, order)


__all__ = ["Lattice", "GradedPiece", "graded_piece", "saturate", "is_saturated",
           "basis_matrix", "NoSolution"]
