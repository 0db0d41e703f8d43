import math

import pytest
from hypothesis import given, settings, strategies as st

import oracle
from zlefschetz.exterior import contract_form, dim_exterior, omega, omega_power, primitive_rank
from zlefschetz.lefschetz import (
    binomial_commutation, commutator_identity, divisibility_check, filtration,
    graded_constant_table, graded_constants, graded_iso_check, level_range,
    membership_equivalence, obstruction_checks, primitive_basis, random_identity_cases,
    split_across_midpoint, split_first_half, standard_splitting, star_level_check,
    verify_splitting,
)
from zlefschetz.linalg import Lattice, is_saturated

# level ranks of F_r Lambda^k, computed by the oracle as kernels of wedge with omega powers
ORACLE_LEVEL_RANKS = {
    1: {0: {0: 1}, 1: {0: 2}, 2: {1: 1}},
    2: {0: {0: 1}, 1: {0: 4}, 2: {0: 5, 1: 6}, 3: {1: 4}, 4: {2: 1}},
    3: {0: {0: 1}, 1: {0: 6}, 2: {0: 14, 1: 15}, 3: {0: 14, 1: 20}, 4: {1: 14, 2: 15},
        5: {2: 6}, 6: {3: 1}},
}


# -- primitives ----------------------------------------------------------------------

@pytest.mark.parametrize("g", range(1, 5))
def test_primitive_degree_zero_is_scalars(g):
    assert primitive_basis(g, 0) == [{0: 1}]


def test_primitive_g1_k1_is_everything():
    assert len(primitive_basis(1, 1)) == 2


def test_primitive_g4_k2_rank():
    assert len(primitive_basis(4, 2)) == math.comb(8, 2) - math.comb(8, 0) == 27


@pytest.mark.parametrize("g,k", [(g, k) for g in range(1, 5) for k in range(g + 1)])
def test_primitive_basis_saturated_with_binomial_rank(g, k):
    P = primitive_basis(g, k)
    assert len(P) == primitive_rank(g, k)
    assert is_saturated(dim_exterior(g, k), P)


# -- filtration ----------------------------------------------------------------------

def test_filtration_g2_k2():
    assert filtration(2, 2).level_ranks() == {0: 5, 1: 6}


def test_filtration_g2_k4_single_level():
    f = filtration(2, 4)
    assert f.level_ranks() == {2: 1}
    assert f.level(1).rank == 0


@pytest.mark.parametrize("g", range(1, 5))
def test_filtration_degree_zero(g):
    assert filtration(g, 0).level_ranks() == {0: 1}


@pytest.mark.parametrize("g", sorted(ORACLE_LEVEL_RANKS))
def test_level_ranks_match_oracle(g):
    got = {k: filtration(g, k).level_ranks() for k in range(2 * g + 1)}
    assert got == ORACLE_LEVEL_RANKS[g]


@pytest.mark.parametrize("g", range(1, 5))
def test_filtration_starts_at_primitives_or_coprimitives(g):
    for k in range(2 * g + 1):
        lo, hi = level_range(g, k)
        f = filtration(g, k)
        assert f.level(hi).rank == dim_exterior(g, k)
        if k <= g:
            assert lo == 0 and f.level(0).rank == primitive_rank(g, k)
        else:
            assert lo == k - g


# -- graded pieces -------------------------------------------------------------------

@pytest.mark.parametrize("g", range(1, 5))
def test_top_piece_of_even_degree(g):
    for r in range(g + 1):
        c = graded_iso_check(g, 2 * r, r)
        assert c.rank == 1 and c.ok
        w = omega_power(g, r)
        assert contract_form(w, w) == (-1) ** r * math.comb(g, r)


def test_gr1_lambda3_g3():
    c = graded_iso_check(3, 3, 1)
    assert (c.rank, abs(c.determinant), c.ok) == (6, 1, True)


def test_gr2_lambda4_g2():
    c = graded_iso_check(2, 4, 2)
    assert (c.rank, c.ok) == (1, True)


def test_graded_iso_rejects_bad_range():
    with pytest.raises(ValueError):
        graded_iso_check(2, 1, 1)


@pytest.mark.parametrize("g", range(1, 5))
def test_all_graded_pieces_free_of_primitive_rank(g):
    for k in range(2 * g + 1):
        lo, hi = level_range(g, k)
        for r in range(lo, hi + 1):
            c = graded_iso_check(g, k, r)
            assert c.ok and c.rank == primitive_rank(g, k - 2 * r)


# -- graded constants ----------------------------------------------------------------

def test_wedge_constant_g2_k0_r1_j1():
    w, _ = graded_constants(2, 0, 1, 1)
    assert w.claimed_constant == -3 and w.verified


@pytest.mark.parametrize("g,k,r", [(3, 2, 0), (3, 4, 1), (4, 5, 1)])
def test_identity_constants(g, k, r):
    w, c = graded_constants(g, k, r, 0)
    assert (w.claimed_constant, c.claimed_constant) == (1, 1)
    assert w.verified and c.verified


@pytest.mark.parametrize("g", range(1, 5))
def test_contraction_on_top_is_multiplication_by_g(g):
    _, c = graded_constants(g, 2 * g, g - 1, 1)
    assert c.claimed_constant == g and c.verified
    # oracle: A_g(omega_g) = (-1)^g and A_{g-1}(iota_omega omega_g) = (-1)^g g
    top = oracle.omega_power(g, g)
    low = oracle.iota(oracle.omega(g), top)
    assert oracle.iota(top, top) == {(): (-1) ** g}
    assert oracle.iota(oracle.omega_power(g, g - 1), low) == {(): (-1) ** g * g}


@pytest.mark.parametrize("g", range(1, 5))
def test_constant_table_verified(g):
    table = graded_constant_table(g)
    assert table and all(c.verified for c in table)
    for c in table:
        if c.direction == "wedge":
            assert c.claimed_constant == (-1) ** c.j * math.comb(g - c.k + c.r, c.j)
        else:
            assert c.claimed_constant == math.comb(c.r + c.j, c.j)


# -- divisibility and obstructions ---------------------------------------------------

def test_omega_twice_a_generator_g2():
    d = divisibility_check(2, 0, 1)
    assert d.divisor == 2 and d.ok
    assert obstruction_checks(2).generator_multiples[1] in (2, -2)


@pytest.mark.parametrize("g", range(1, 5))
def test_middle_degree_divisor_is_one(g):
    d = divisibility_check(g, g, 0)
    assert d.divisor == 1 and d.ok


def test_divisibility_g3_k1_r2():
    d = divisibility_check(3, 1, 2)
    assert d.divisor == 1 and d.ok


@pytest.mark.parametrize("g", range(1, 5))
def test_divisibility_sweep(g):
    for k in range(g + 1):
        for r in range(g - k + 1):
            assert divisibility_check(g, k, r).ok


def test_contraction_of_top_form_g2():
    expected = oracle.iota(oracle.omega(2), {(1, 2, 3, 4): 1})
    assert expected == {(1, 2): -1, (3, 4): -1}
    assert contract_form(omega(2), omega_power(2, 2)) == -omega(2)


def test_content_of_omega2_g3():
    assert omega_power(3, 2).content() == 1


@pytest.mark.parametrize("g", range(2, 6))
def test_obstruction_report(g):
    r = obstruction_checks(g)
    assert r.ok
    assert {k: abs(v) for k, v in r.generator_multiples.items()} == \
        {k: math.comb(g, k) for k in range(1, g)}


# -- splittings ----------------------------------------------------------------------

@pytest.mark.parametrize("k", [0, 1])
def test_low_degree_splitting_is_single_step(k):
    sp = split_first_half(3)[k]
    assert list(sp.pieces) == [0]
    assert len(sp.pieces[0]) == dim_exterior(3, k)


def test_g2_contraction_maps_g1_into_g0():
    sps = split_first_half(2)
    assert verify_splitting(sps[2], (1, sps[0], -1)).ok


@pytest.mark.parametrize("g", range(1, 5))
def test_first_half_sweep(g):
    sps = split_first_half(g)
    for k in range(g + 1):
        compat = (1, sps[k - 2], -1) if k >= 2 else None
        assert verify_splitting(sps[k], compat).ok


def test_midpoint_g2_k1():
    base = split_first_half(2)[1]
    sp = split_across_midpoint(2, 1, base)
    assert sp.k == 3
    assert verify_splitting(sp, (1, base, -1)).ok


def test_midpoint_k0_is_identity_compatibility():
    base = split_first_half(3)[3]
    sp = split_across_midpoint(3, 0, base)
    assert verify_splitting(sp, (0, base, 0)).ok


@pytest.mark.parametrize("k", range(5))
def test_midpoint_g4_sweep(k):
    base = standard_splitting(4, 4 - k)
    sp = split_across_midpoint(4, k, base)
    assert verify_splitting(sp, (k, base, -k)).ok


# -- level relations -------------------------------------------------------------------

@pytest.mark.parametrize("g", range(1, 5))
def test_star_maps_levels_onto_levels(g):
    for k in range(-g, g + 1):
        lo, hi = level_range(g, g - k)
        for r in range(lo, hi + 1):
            assert star_level_check(g, k, r)


@st.composite
def level_membership_case(draw):
    g = draw(st.integers(1, 4))
    k = draw(st.integers(0, 2 * g))
    n = dim_exterior(g, k)
    vec = draw(st.dictionaries(st.integers(0, n - 1), st.integers(-3, 3), max_size=4))
    vec = {i: v for i, v in vec.items() if v}
    lo, hi = level_range(g, k)
    r = draw(st.integers(lo, hi))
    j = draw(st.integers(1, g))
    # half the time start from a genuine element of the level
    if draw(st.booleans()):
        L = filtration(g, k).level(r)
        coeffs = draw(st.lists(st.integers(-2, 2), min_size=L.rank, max_size=L.rank))
        vec = L.combine({i: c for i, c in enumerate(coeffs) if c})
    return g, k, r, j, vec


@settings(max_examples=120, deadline=None)
@given(level_membership_case())
def test_three_way_level_equivalence(case):
    g, k, r, j, vec = case
    a, b, c = membership_equivalence(g, k, r, j, vec)
    assert a == b == c


@pytest.mark.parametrize("g", range(1, 4))
def test_filtration_via_divided_or_plain_powers(g):
    """Kernels of wedge with omega^p and with omega_p agree over Z."""
    from zlefschetz.exterior import operator_matrix
    from zlefschetz.linalg import kernel_lattice
    for k in range(2 * g + 1):
        for p in range(1, g + 1):
            if k + 2 * p > 2 * g:
                continue
            divided = operator_matrix("wedge_omega", g, k, k + 2 * p, j=p)
            plain = divided.scale(math.factorial(p))
            a = Lattice(dim_exterior(g, k), kernel_lattice(divided))
            b = Lattice(dim_exterior(g, k), kernel_lattice(plain))
            assert a.rank == b.rank and all(a.contains(v) for v in b.basis)


# -- contraction identities -------------------------------------------------------------

@pytest.mark.parametrize("g", range(1, 5))
def test_commutator_identity_full(g):
    assert commutator_identity(g).ok


def test_commutator_identity_g5():
    assert commutator_identity(5).ok


@pytest.mark.parametrize("g", range(1, 5))
def test_binomial_commutation_full(g):
    rep = binomial_commutation(g)
    assert rep.ok and rep.cases == (2 ** (2 * g)) * (g + 1) ** 2


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 5), st.integers(0, 2 ** 32))
def test_random_identity_cases(g, seed):
    assert random_identity_cases(g, 20, seed).ok
