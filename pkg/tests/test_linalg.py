import json
import random

import pytest
from hypothesis import given, settings, strategies as st

import oracle
from zlefschetz.linalg import (
    AbelianInvariants, BlockSmith, IntMatrix, NoSolution, cokernel, determinant, is_saturated,
    kernel_lattice, kernel_mod, rank_mod, right_inverse, smith, solve_and_lift,
)


def M(rows):
    return IntMatrix.from_dense(rows)


# -- Smith form ------------------------------------------------------------------

def test_smith_diag_2_3():
    assert oracle.invariant_factors([[2, 0], [0, 3]]) == [1, 6]
    assert smith(M([[2, 0], [0, 3]])).invariant_factors == (1, 6)


def test_smith_zero_matrix():
    assert smith(IntMatrix.zeros(3, 2)).invariant_factors == (0, 0)


@pytest.mark.parametrize("n", [1, 3, 5])
def test_smith_identity(n):
    assert smith(IntMatrix.identity(n)).invariant_factors == (1,) * n


def test_smith_textbook_example():
    A = [[2, 4, 4], [-6, 6, 12], [10, -4, -16]]
    assert oracle.invariant_factors(A) == [2, 6, 12]
    assert smith(M(A)).invariant_factors == (2, 6, 12)


# -- kernels ---------------------------------------------------------------------

def test_kernel_of_row_1_1():
    K = kernel_lattice(M([[1, 1]]))
    assert len(K) == 1
    assert sorted(K[0].items()) in ([(0, 1), (1, -1)], [(0, -1), (1, 1)])


def test_kernel_of_2_is_empty():
    assert kernel_lattice(M([[2]])) == []


def test_kernel_of_identity_is_empty():
    assert kernel_lattice(IntMatrix.identity(4)) == []


# -- cokernels -------------------------------------------------------------------

def test_cokernel_of_2():
    assert cokernel(M([[2]])) == AbelianInvariants(0, (2,))


def test_cokernel_of_zero():
    assert cokernel(M([[0]])) == AbelianInvariants(1, ())


def test_cokernel_diag_1_2_0():
    assert oracle.cokernel([[1, 0, 0], [0, 2, 0], [0, 0, 0]]) == (1, [2])
    assert cokernel(IntMatrix.diagonal([1, 2, 0], 3, 3)) == AbelianInvariants(1, (2,))


# -- solving ---------------------------------------------------------------------

def test_solve_2x_equals_4():
    assert solve_and_lift(M([[2]]), [{0: 4}]) == [{0: 2}]


def test_solve_2x_equals_3_has_no_solution():
    with pytest.raises(NoSolution):
        solve_and_lift(M([[2]]), [{0: 3}])


def test_solve_row_1_1_is_deterministic():
    a = solve_and_lift(M([[1, 1]]), [{0: 1}])[0]
    assert a.get(0, 0) + a.get(1, 0) == 1
    assert solve_and_lift(M([[1, 1]]), [{0: 1}])[0] == a


def test_right_inverse_of_surjection():
    A = M([[1, 2, 3], [0, 1, 4]])
    R = right_inverse(A)
    assert (A @ R).to_dense() == IntMatrix.identity(2).to_dense()


def test_no_solution_is_not_arithmetic_error():
    assert issubclass(NoSolution, ValueError)
    assert not issubclass(NoSolution, ArithmeticError)


# -- finite fields -----------------------------------------------------------------

def test_rank_of_2_over_f2():
    assert rank_mod(M([[2]]), 2) == 0


def test_identity_rank_over_f2():
    assert rank_mod(IntMatrix.identity(5), 2) == 5


def test_kernel_of_row_1_1_over_f2():
    assert kernel_mod(M([[1, 1]]), 2) == [[1, 1]]


# -- interchange -------------------------------------------------------------------

def test_matrix_json_format():
    A = M([[0, -3], [12345678901234567890, 0]])
    obj = json.loads(A.to_json())
    assert obj == {"rows": 2, "cols": 2,
                   "entries": [[0, 1, "-3"], [1, 0, "12345678901234567890"]]}
    assert IntMatrix.from_json(A.to_json()) == A


def test_abelian_json_and_text():
    a = AbelianInvariants(5, (2, 2, 6))
    assert AbelianInvariants.from_json_obj(json.loads(a.to_json())) == a
    assert a.describe() == "Z^5 + Z/2^2 + Z/6"
    assert a.describe(primary=True) == "Z^5 + Z/2^3 + Z/3"
    assert AbelianInvariants.parse("Z^5 + Z/2^3") == AbelianInvariants(5, (2, 2, 2))


# -- properties ------------------------------------------------------------------

small_matrices = st.integers(1, 5).flatmap(lambda m: st.integers(1, 5).flatmap(
    lambda n: st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n),
                       min_size=m, max_size=m)))


@settings(max_examples=80, deadline=None)
@given(small_matrices)
def test_smith_form_is_verified(rows):
    s = smith(M(rows))
    assert s.verify()
    assert list(s.invariant_factors) == oracle.invariant_factors(rows)


@settings(max_examples=80, deadline=None)
@given(small_matrices)
def test_cokernel_matches_oracle(rows):
    free, tors = oracle.cokernel(rows)
    c = cokernel(M(rows))
    assert c.free_rank == free
    assert sorted(c.torsion) == tors


def unimodular(n, rng):
    U = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(3 * n):
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        if i == j:
            continue
        c = rng.randint(-2, 2)
        U[i] = [a + c * b for a, b in zip(U[i], U[j])]
    return M(U)


@settings(max_examples=60, deadline=None)
@given(small_matrices, st.integers(0, 10 ** 6))
def test_cokernel_invariant_under_unimodular_change(rows, seed):
    rng = random.Random(seed)
    A = M(rows)
    U, V = unimodular(A.rows, rng), unimodular(A.cols, rng)
    assert abs(determinant(U)) == 1 and abs(determinant(V)) == 1
    assert cokernel(U @ A @ V) == cokernel(A)
    perm = list(range(A.rows))
    rng.shuffle(perm)
    assert cokernel(A.select_rows(perm)) == cokernel(A)


@settings(max_examples=60, deadline=None)
@given(small_matrices)
def test_kernel_is_saturated_and_annihilated(rows):
    A = M(rows)
    K = kernel_lattice(A)
    assert all(not A.apply(v) for v in K)
    assert len(K) == A.cols - BlockSmith(A).rank
    if K:
        assert is_saturated(A.cols, K)


@settings(max_examples=60, deadline=None)
@given(small_matrices, st.sampled_from([2, 3, 5, 7]))
def test_rank_nullity_over_fp(rows, p):
    A = M(rows)
    r = rank_mod(A, p)
    assert r == oracle.rank_mod(rows, p)
    K = kernel_mod(A, p)
    assert r + len(K) == A.cols
    for v in K:
        assert all(sum(a * b for a, b in zip(row, v)) % p == 0 for row in rows)


@settings(max_examples=40, deadline=None)
@given(small_matrices)
def test_matrix_json_roundtrip(rows):
    A = M(rows)
    assert IntMatrix.from_json(A.to_json()) == A
