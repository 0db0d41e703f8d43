"""Exact linear algebra over Z and F_p."""

from .abelian import AbelianInvariants, factorize, invariant_factor_chain, primary_parts
from .intmatrix import IntMatrix
from .lattice import GradedPiece, Lattice, graded_piece, is_saturated, saturate
from .modp import (GF2Echelon, complement_basis, gf2_kernel, gf2_rank, kernel_mod, rank_mod,
                   rank_mod_blocks,
                   rref, solve_mod)
from .smith import (BlockSmith, NoSolution, SmithForm, cokernel, determinant, hermite,
                    kernel_lattice, rank, right_inverse, smith, smith_dense, solve,
                    solve_and_lift)

__all__ = [
    "AbelianInvariants", "BlockSmith", "GF2Echelon", "GradedPiece", "IntMatrix", "Lattice",
    "NoSolution", "SmithForm", "cokernel", "complement_basis", "determinant", "factorize",
    "gf2_kernel", "gf2_rank", "graded_piece", "hermite", "invariant_factor_chain",
    "is_saturated", "kernel_lattice", "kernel_mod", "primary_parts", "rank", "rank_mod",
    "rank_mod_blocks",
    "right_inverse", "rref", "saturate", "smith", "smith_dense", "solve", "solve_and_lift",
    "solve_mod",
]
