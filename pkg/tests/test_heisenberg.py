import math

import pytest
from hypothesis import given, settings, strategies as st

import oracle
from zlefschetz.heisenberg import (
    duality_check, filtration_subquotients, graded_equivariance_check, gysin_homology,
    heisenberg_report, lee_packer_cohomology, lee_packer_formula, pairing_determinants,
    universal_coefficients,
)
from zlefschetz.linalg import AbelianInvariants

# H_k(N_g; Z) from the oracle's dense SNF, frozen
ORACLE_HOMOLOGY = {
    1: [(1, []), (2, []), (2, []), (1, [])],
    2: [(1, []), (4, []), (5, []), (5, []), (4, []), (1, [])],
    3: [(1, []), (6, []), (14, []), (14, [2]), (14, []), (14, []), (6, []), (1, [])],
}


def Z(n, *tors):
    return AbelianInvariants(n, tuple(tors))


@pytest.mark.parametrize("g", range(1, 6))
def test_low_degrees(g):
    h = gysin_homology(g)
    assert h[0] == Z(1)
    assert h[1] == Z(2 * g)


def test_h2_of_three_dimensional_heisenberg():
    assert gysin_homology(1)[2] == Z(2)


def test_formula_cohomology_g1():
    assert lee_packer_cohomology(1) == [Z(1), Z(2), Z(2), Z(1)]


def test_formula_upper_branch_g2_k3():
    assert lee_packer_cohomology(2)[3] == Z(math.comb(4, 2) - math.comb(4, 0))


@pytest.mark.parametrize("g", sorted(ORACLE_HOMOLOGY))
def test_homology_matches_oracle(g):
    assert oracle.heisenberg_homology(g) == ORACLE_HOMOLOGY[g]
    got = gysin_homology(g).groups
    assert got == [Z(f, *t) for f, t in ORACLE_HOMOLOGY[g]]


def test_filtration_pieces_g2_k2():
    d = filtration_subquotients(2).degrees[2]
    assert d.pieces == [Z(0), Z(5)] and d.ok


def test_filtration_pieces_g3():
    f = filtration_subquotients(3)
    # the single Z/2 is P^0/(2) in H_3; H_4 is torsion free
    assert f.degrees[3].pieces == [Z(0), Z(0, 2), Z(14)]
    assert f.degrees[4].pieces == [Z(0), Z(14)]
    assert f.ok


@pytest.mark.parametrize("g", range(1, 6))
def test_routes_agree(g):
    r = heisenberg_report(g)
    assert r.agree and r.ok
    assert all(row["agree"] for row in r.rows())


@pytest.mark.parametrize("g", range(1, 6))
def test_duality_and_euler(g):
    h = gysin_homology(g)
    assert duality_check(h)
    assert universal_coefficients(h) == lee_packer_cohomology(g)
    assert h.euler_characteristic() == 0


@pytest.mark.parametrize("g", range(1, 5))
def test_totals(g):
    expected = {1: Z(6), 2: Z(20), 3: Z(70, 2), 4: Z(252, *([2] * 10))}[g]
    assert gysin_homology(g).total() == expected


def test_totals_have_no_odd_torsion_below_g5():
    assert all(t == 2 for t in gysin_homology(4).total().torsion)


def test_formula_route_labels():
    assert lee_packer_formula(2).route == "formula"
    obj = gysin_homology(2).to_json_obj()
    assert obj["route"] == "gysin" and len(obj["homology"]) == 6


@pytest.mark.parametrize("g,dets", [
    (2, {0: 1, 1: 1, 2: -2}),
    (3, {0: 1, 1: 1, 2: 3, 3: 64}),
    (4, {0: 1, 1: 1, 2: -4, 3: 6561, 4: 201326592}),
])
def test_primitive_pairing_is_nondegenerate(g, dets):
    # nonzero, but not unimodular beyond degree 1
    assert pairing_determinants(g) == dets


@settings(max_examples=8, deadline=None)
@given(st.integers(1, 3), st.integers(0, 2 ** 32))
def test_transvections_act_on_graded_pieces(g, seed):
    assert graded_equivariance_check(g, 2, seed)
