import random

import pytest

import oracle
from zlefschetz.equivariant import (
    FpModulePresentation, apply, commutes, equivariant_hom_space, exterior_action,
    exterior_action_reference, exterior_module, f2_g4_structures, noniso_certificate,
    span_rank, symplectic_transvections,
)


@pytest.fixture(scope="module")
def g4():
    return f2_g4_structures()


@pytest.fixture(scope="module")
def cert():
    return noniso_certificate()


# -- group actions ----------------------------------------------------------------------

def test_transvection_count():
    assert len(symplectic_transvections(2)) == 15


@pytest.mark.parametrize("k", range(5))
def test_generators_are_invertible(k):
    M = exterior_module(k, 2)
    assert all(span_rank(a) == M.dim for a in M.action)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_fast_action_matches_reference(k):
    fast = exterior_action(2, k)
    for t in random.Random(k).sample(range(15), 5):
        assert list(fast[t]) == list(exterior_action_reference(2, k, t))


def test_only_f2_presentations():
    with pytest.raises(ValueError):
        FpModulePresentation("x", 1, [[1]], p=3)


# -- hom spaces against the dense oracle ------------------------------------------------

@pytest.mark.parametrize("g,ks,kt", [
    (2, 1, 1), (2, 2, 2), (2, 2, 0), (2, 0, 2), (2, 2, 1), (3, 2, 0), (3, 1, 3),
])
def test_hom_dimension_matches_oracle(g, ks, kt):
    h = equivariant_hom_space(exterior_module(ks, g), exterior_module(kt, g))
    assert h.dim == oracle.hom_dimension_mod2(g, ks, kt)
    S, T = exterior_module(ks, g), exterior_module(kt, g)
    assert all(commutes(f, a, b) for f in h.basis for a, b in zip(S.action, T.action))


def test_identity_in_endomorphisms():
    L = exterior_module(2, 2)
    h = equivariant_hom_space(L, L)
    assert h.contains([1 << i for i in range(L.dim)])


# -- the g = 4 structures -----------------------------------------------------------------

def test_dimensions(g4):
    d = g4.dims
    assert d["C_4"] == 44
    assert d["iota_omega F_2 Lambda^6"] == 26
    assert d["coker total"] == 136
    assert (d["T"], d["C_4'"], d["Lambda^2/<omega>"], d["P^2"]) == (1, 43, 27, 27)


def test_odd_and_even_cokernel_dimensions(g4):
    d = g4.dims
    assert d["odd coker(omega)"] == d["odd coker(exp)"] == d["Lambda^1 + Lambda^1 + P^3"] == 64
    assert d["even coker(omega)"] == d["even coker(exp)"] == 72


def test_structure_checks(g4):
    names = {c.name: c.ok for c in g4.checks}
    assert names["(e) i(omega_4) = omega_2, nonzero in C_4'"]
    assert names["(c) j injective with j(omega_4) = omega_3 in F_2 Lambda^6"]
    assert names["(b) gr_3 Lambda^6 -> gr_1 Lambda^2 is an isomorphism"]
    assert g4.ok


def test_submodules_are_invariant(g4):
    L2 = g4.lam[2]
    assert L2.is_invariant(g4.P2_span)
    assert g4.C4.is_invariant(g4.C4p_span)
    assert g4.C4.is_invariant(g4.T_span)


# -- the non-isomorphism certificate ----------------------------------------------------------

def test_hom_dimensions(cert):
    assert cert.hom_dims == {
        "Hom(Lambda^2, Lambda^2)": 2,
        "Hom(Lambda^2, Lambda^0)": 1,
        "Hom(Lambda^2, C_4')": 1,
        "Hom(Lambda^2, C_4' + Lambda^2/<omega>)": 2,
        "Hom(Lambda^2, coker(omega)_even)": 4,
        "Hom(Lambda^2, coker(exp)_even)": 4,
    }


def test_every_map_kills_omega(cert):
    checks = {c.name: c.ok for c in cert.checks}
    assert checks["every map Lambda^2 -> C_4' + Lambda^2/<omega> kills omega"]
    assert checks["every map Lambda^2 -> C_4' kills P^2"]
    assert checks["Hom(Lambda^2, Lambda^0) is spanned by iota_omega"]


def test_verdict(cert):
    assert cert.non_isomorphic
    assert "not isomorphic" in cert.verdict
    assert cert.to_json_obj()["non_isomorphic"] is True


def test_apply_is_linear():
    a = [0b01, 0b11]
    assert apply(a, 0b11) == apply(a, 0b01) ^ apply(a, 0b10)
