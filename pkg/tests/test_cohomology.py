from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from confrep import cohomology, mcg
from confrep.checks import j2_inputs
from confrep.cohomology import CertificateMissing, GenusMismatch, RMonomial, act, slice_basis
from confrep.freegroup import Word
from confrep.johnson import johnson_rep


def test_degree_zero_slice_is_w_power():
    for g in range(4):
        for n in range(5):
            b = slice_basis(g, 0, n)
            assert b.monomials == (RMonomial(n, (0,) * (2 * g), "V", 0, 0),)


def test_genus_zero():
    t = cohomology.dims_table(0, 4, 4)
    assert t == [[1] * 5, [0, 0, 1, 1, 1], [0] * 5, [0] * 5, [0] * 5]


def test_genus_one_two_points():
    assert [len(slice_basis(1, i, 2)) for i in range(5)] == [1, 2, 2, 0, 0]


def test_vanishing_above_twice_n():
    for g in range(5):
        t = cohomology.dims_table(g, 14, 6)
        assert all(t[i][n] == 0 for i in range(15) for n in range(7) if i > 2 * n)


def test_brute_force_agrees_small():
    for g in range(3):
        for i in range(6):
            for n in range(5):
                assert len(slice_basis(g, i, n)) == cohomology.brute_force_dim(g, i, n)


def test_h2_of_two_points():
    for g in range(1, 5):
        assert len(slice_basis(g, 2, 2)) == 2 * g + comb(2 * g, 2) - 1


def test_monomial_strings():
    assert [str(m) for m in slice_basis(1, 1, 2).monomials] == ["w*V1[0]", "w*V1[1]"]
    assert [str(m) for m in slice_basis(1, 2, 3).monomials] == ["K1[0]*v", "K1[1]*v", "w*y1*V0[0]", "w*y2*V0[0]"]
    assert [str(m) for m in slice_basis(0, 1, 2).monomials] == ["K0[0]*v"]


def test_bad_arguments():
    with pytest.raises(ValueError):
        slice_basis(1, -1, 2)
    with pytest.raises(GenusMismatch):
        act(mcg.identity_class(1), slice_basis(2, 1, 1))


@pytest.mark.parametrize("g", [1, 2])
def test_identity_and_boundary_twist_act_trivially(g):
    cat = mcg.bundled_catalog(g)
    for i in range(5):
        for n in range(4):
            b = slice_basis(g, i, n)
            if len(b):
                assert act(mcg.identity_class(g), b).is_identity()
                assert act(cat["D"], b).is_identity()


def test_transvection_on_degree_one():
    # for g >= 1 the slice (1,(n)) is w^(n-1) H^1, on which T1 acts by its matrix
    cat = mcg.bundled_catalog(1)
    for n in range(1, 5):
        m = act(cat["T1"], slice_basis(1, 1, n))
        assert m.tolist() == [[1, 0], [1, 1]]


def test_witness_acts_nontrivially_only_through_y():
    cat = mcg.bundled_catalog(2)
    p = mcg.product(cat, "B2*E1^-1")
    assert p.is_torelli()
    # degree one and the V-only part of degree two see only the matrix
    assert act(p, slice_basis(2, 1, 2)).is_identity()
    m = act(p, slice_basis(2, 2, 2))
    assert not m.is_identity()
    assert all(m[r, c] == int(r == c) for r in range(9) for c in range(5))


@pytest.mark.parametrize("expr", ["A1", "B2*E1^-1", "C1*A2^-1*B1", "D*E1"])
def test_two_point_slice_matches_reduced_johnson_after_reordering(expr):
    cat = mcg.bundled_catalog(2)
    p = mcg.product(cat, expr)
    a = act(p, slice_basis(2, 2, 2))
    j = johnson_rep(p.phi, inverse=p.inverse, reduced=True)
    # slice order lists the five Lambda^2 classes first, the reduced matrix lists y's first
    perm = list(range(4, 9)) + list(range(4))
    assert all(a[r, c] == j[perm[r], perm[c]] for r in range(9) for c in range(9))
    assert a.trace() == j.trace()


@settings(max_examples=15, deadline=None)
@given(st.lists(st.sampled_from(["A1", "B1", "A2", "B2", "C1", "E1"]), min_size=1, max_size=3), st.sampled_from(["A1", "B2", "C1"]))
def test_character_is_class_function(word, h):
    cat = mcg.bundled_catalog(2)
    p = mcg.product(cat, "*".join(word))
    q = cat[h]
    conj = q * p * q.inv()
    for i, n in [(1, 2), (2, 2), (2, 3), (3, 3)]:
        assert cohomology.character(conj, 2, i, n) == cohomology.character(p, 2, i, n)


def test_v_only_slices_depend_on_matrix():
    cat = mcg.bundled_catalog(2)
    p, q = mcg.product(cat, "B2*E1^-1"), mcg.identity_class(2)
    assert p.matrix == q.matrix
    for i, n in [(1, 3), (2, 3), (3, 4)]:
        b = slice_basis(2, i, n)
        keep = [j for j, m in enumerate(b.monomials) if not any(m.beta)]
        mp, mq = act(p, b), act(q, b)
        assert all(mp[r, c] == mq[r, c] for r in range(len(b)) for c in keep)


def test_regrade():
    assert cohomology.regrade(1, 3, 4) == 3
    assert cohomology.regrade(2, 1, 2) == 5
    with pytest.raises(ValueError):
        cohomology.regrade(0, 1, 1)


@pytest.mark.parametrize("g", [1, 2])
def test_j2_inputs_act_trivially(g):
    for name, mc, certs in j2_inputs(g):
        assert cohomology.j2_trivial_check(mc, 3, 3, certs), name


def test_j2_certificates_required():
    _, mc, certs = j2_inputs(1)[0]
    with pytest.raises(CertificateMissing):
        cohomology.j2_trivial_check(mc, 1, 1, certs[:1])
    with pytest.raises(CertificateMissing):
        cohomology.j2_trivial_check(mc, 1, 1, [Word.identity(2)] * 2)
    # the reduced words alone are not literally double commutators
    with pytest.raises(CertificateMissing):
        cohomology.j2_trivial_check(mc, 1, 1)
