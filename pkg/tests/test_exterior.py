import math

import pytest
from hypothesis import given, settings, strategies as st

import oracle
from zlefschetz.exterior import (
    ZZ, DimensionMismatch, Multivector, contract_form, contract_vector, exp_omega_minus_one,
    format_multivector, integers_mod, monomial_basis, omega, omega_power, operator_matrix,
    parse_multivector, parse_ring, prime_field, star, to_vector, wedge,
)


def e(g, *idx):
    return Multivector.e(g, *idx)


def as_oracle(x: Multivector) -> oracle.Vec:
    return {tuple(i for i in range(64) if m >> i & 1): c for m, c in x.terms.items()}


def from_oracle(g: int, v: oracle.Vec) -> Multivector:
    return Multivector(g, {sum(1 << i for i in k): c for k, c in v.items()})


# -- wedge ---------------------------------------------------------------------

def test_wedge_adjacent_indices():
    assert e(1, 1) ^ e(1, 2) == e(1, 1, 2)


def test_wedge_one_inversion():
    assert e(1, 2) ^ e(1, 1) == -e(1, 1, 2)


def test_omega_squared_g2():
    w = omega(2)
    assert w ^ w == 2 * e(2, 1, 2, 3, 4)


def test_wedge_mismatch_raises():
    with pytest.raises(DimensionMismatch):
        wedge(omega(2), omega(3))
    with pytest.raises(DimensionMismatch):
        wedge(omega(2), omega(2, prime_field(2)))


# -- contractions --------------------------------------------------------------

def test_contract_e2_on_e12():
    assert contract_vector(e(1, 2), e(1, 1, 2)) == e(1, 2)


def test_contract_e1_on_e12():
    assert contract_vector(e(1, 1), e(1, 1, 2)) == e(1, 1)


def test_contract_unpaired_vector_vanishes():
    assert not contract_vector(e(2, 3), e(2, 1, 2))


@pytest.mark.parametrize("g", range(1, 6))
def test_iota_omega_of_omega_is_minus_g(g):
    assert contract_form(omega(g), omega(g)) == -g


@pytest.mark.parametrize("g", range(1, 6))
def test_top_divided_power_pairs_to_sign(g):
    w = omega_power(g, g)
    assert contract_form(w, w) == (-1) ** g


def test_iota_e12_on_e12_matches_oracle():
    expected = oracle.iota({(1, 2): 1}, {(1, 2): 1})
    assert expected == {(): -1}
    assert contract_form(e(1, 1, 2), e(1, 1, 2)) == -1


@pytest.mark.parametrize("g,r", [(g, r) for g in range(1, 5) for r in range(g + 1)])
def test_divided_power_self_pairing(g, r):
    w = omega_power(g, r)
    assert contract_form(w, w) == (-1) ** r * math.comb(g, r)


def test_vector_contractor_must_have_degree_one():
    with pytest.raises(ValueError):
        contract_vector(omega(2), omega(2))


# -- divided powers --------------------------------------------------------------

@pytest.mark.parametrize("g", range(0, 5))
def test_omega_power_zero_is_one(g):
    assert omega_power(g, 0) == 1


def test_omega_power_g2_r2():
    assert omega_power(2, 2) == e(2, 1, 2, 3, 4)


def test_omega_power_g3_r2_matches_oracle():
    expected = from_oracle(3, oracle.omega_power(3, 2))
    assert expected == e(3, 1, 2, 3, 4) + e(3, 1, 2, 5, 6) + e(3, 3, 4, 5, 6)
    assert omega_power(3, 2) == expected


def test_omega_power_out_of_range_is_zero():
    assert not omega_power(3, -1)
    assert not omega_power(3, 4)


@pytest.mark.parametrize("g", range(1, 9))
def test_factorial_times_divided_power_is_power(g):
    w = omega(g)
    p = Multivector.one(g)
    for r in range(g + 1):
        assert math.factorial(r) * omega_power(g, r) == p
        p = p ^ w


def test_exp_omega_minus_one_sums_divided_powers():
    assert exp_omega_minus_one(2) == omega(2) + omega_power(2, 2)


# -- star ------------------------------------------------------------------------

@pytest.mark.parametrize("g", range(1, 5))
def test_star_of_one_is_top_form(g):
    assert star(Multivector.one(g)) == e(g, *range(1, 2 * g + 1))


def test_star_g1_e1():
    assert from_oracle(1, oracle.iota({(1,): 1}, {(1, 2): 1})) == e(1, 1)
    assert star(e(1, 1)) == e(1, 1)


@pytest.mark.parametrize("g", range(1, 5))
def test_star_squared_sign(g):
    for d in range(2 * g + 1):
        k = g - d
        for m in monomial_basis(g, (d,)):
            x = Multivector(g, {m: 1})
            assert star(star(x)) == (-1) ** k * x


@pytest.mark.parametrize("g", range(1, 5))
def test_star_intertwines_wedge_and_contraction(g):
    w = omega(g)
    for d in range(2 * g - 1):
        for m in monomial_basis(g, (d,)):
            x = Multivector(g, {m: 1})
            assert star(w ^ x) == contract_form(w, star(x))


@pytest.mark.parametrize("g", range(1, 5))
def test_star_is_unimodular_on_each_degree(g):
    from zlefschetz.linalg import determinant
    for d in range(2 * g + 1):
        assert abs(determinant(operator_matrix("star", g, d))) == 1


# -- operator matrices -----------------------------------------------------------

def test_contract_omega_matrix_g1():
    assert operator_matrix("contract_omega", 1, 2).to_dense() == [[-1]]


def test_wedge_omega_matrix_g1_on_scalars():
    M = operator_matrix("wedge_omega", 1, 0, 2)
    assert M.to_dense() == [[1]]
    # with every degree as target, the only nonzero entry is the e^{12} row
    M = operator_matrix("wedge_omega", 1, 0, (0, 1, 2))
    assert [r[0] for r in M.to_dense()] == [0, 0, 0, 1]


def test_contract_exp_matrix_g2_blocks_match_oracle():
    M = operator_matrix("contract_exp", 2, 4, (0, 2))
    src = oracle.basis(2, 4)
    tgt = oracle.basis(2, 0) + oracle.basis(2, 2)
    e1 = oracle.add(oracle.omega(2), oracle.omega_power(2, 2))
    expected = oracle.matrix(lambda x: oracle.iota(e1, x), src, tgt)
    assert M.to_dense() == expected
    # blocks: iota_{omega_2} to Lambda^0 and iota_omega to Lambda^2
    assert expected[0] == [1]
    assert [r[0] for r in expected[1:]] == [row[0] for row in oracle.matrix(
        lambda x: oracle.iota(oracle.omega(2), x), src, oracle.basis(2, 2))]


def test_unknown_operator_raises():
    with pytest.raises(ValueError):
        operator_matrix("frobnicate", 2, 1)


# -- parsing, rings ----------------------------------------------------------------

def test_text_format_roundtrip():
    x = parse_multivector("2 e{1,2} - e{3,4}", 2)
    assert x == 2 * e(2, 1, 2) - e(2, 3, 4)
    assert parse_multivector(format_multivector(x), 2) == x
    assert parse_multivector("1", 2) == 1


def test_ring_names():
    assert ZZ.name == "z"
    assert parse_ring("f2").name == "f2"
    assert parse_ring("zmod:4") == integers_mod(4)
    with pytest.raises(ValueError):
        parse_ring("q")


def test_reduction_mod_two_kills_even_coefficients():
    assert not (omega(2) ^ omega(2)).reduce(prime_field(2))


# -- properties ------------------------------------------------------------------

def multivectors(g, max_terms=4, degree=None):
    degs = range(2 * g + 1) if degree is None else [degree]
    masks = [m for d in degs for m in monomial_basis(g, (d,))]
    return st.dictionaries(st.sampled_from(masks), st.integers(-5, 5), max_size=max_terms).map(
        lambda t: Multivector(g, t))


@st.composite
def homogeneous_pair(draw):
    g = draw(st.integers(1, 4))
    a = draw(st.integers(0, 2 * g))
    b = draw(st.integers(0, 2 * g))
    return g, a, b, draw(multivectors(g, degree=a)), draw(multivectors(g, degree=b))


@settings(max_examples=60, deadline=None)
@given(homogeneous_pair())
def test_graded_commutativity(data):
    g, a, b, x, y = data
    assert x ^ y == (-1) ** (a * b) * (y ^ x)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 3).flatmap(lambda g: st.tuples(*[multivectors(g)] * 3)))
def test_wedge_associative(xyz):
    x, y, z = xyz
    assert (x ^ y) ^ z == x ^ (y ^ z)


@settings(max_examples=80, deadline=None)
@given(homogeneous_pair(), st.data())
def test_signed_leibniz_rule(data, draw):
    g, a, _, x, y = data
    v = Multivector.e(g, draw.draw(st.integers(1, 2 * g)))
    lhs = contract_vector(v, x ^ y)
    rhs = (contract_vector(v, x) ^ y) + (-1) ** a * (x ^ contract_vector(v, y))
    assert lhs == rhs


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 3).flatmap(lambda g: st.tuples(multivectors(g), multivectors(g))))
def test_contraction_agrees_with_oracle(xz):
    x, z = xz
    assert as_oracle(contract_form(x, z)) == oracle.iota(as_oracle(x), as_oracle(z))
    assert as_oracle(x ^ z) == oracle.wedge(as_oracle(x), as_oracle(z))


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4).flatmap(lambda g: multivectors(g, 6)))
def test_vector_roundtrip(x):
    basis_masks = monomial_basis(x.g, tuple(range(2 * x.g + 1)))
    from zlefschetz.exterior import from_vector
    assert from_vector(x.g, to_vector(x, basis_masks), basis_masks) == x
