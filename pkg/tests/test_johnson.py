from itertools import product as iproduct
from math import comb

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from confrep import johnson
from confrep.extalg import slice_masks
from confrep.freegroup import Bivector, FreeHom, Word, commutator, compose, parse_word, random_automorphism, random_hom
from confrep.johnson import (
    AElem,
    InvertibilityUnverified,
    NotInvertible,
    generators,
    johnson_endo,
    johnson_rep,
    koszul_differential,
    xi,
)


def inner_by_a1(n):
    a1 = Word.generator(n, 1)
    return FreeHom(n, n, tuple(a1 * Word.generator(n, i) * a1.inverse() for i in range(1, n + 1)))


def test_xi_examples():
    assert all(b == 0 for b in xi(FreeHom.identity(4)))
    vals = xi(inner_by_a1(4))
    assert vals[0] == 0
    for i in range(2, 5):
        assert vals[i - 1] == Bivector(4, {(1, i): 2})
    t = FreeHom(2, 2, (parse_word("a1 a2", 2), parse_word("a2", 2)))
    assert xi(t) == [Bivector(2, {(1, 2): 1}), Bivector(2)]


def test_johnson_endo_identity_and_inner():
    n = 4
    e = johnson_endo(FreeHom.identity(n))
    assert all(e(x) == x for x in generators(n))
    j = johnson_endo(inner_by_a1(n))
    assert str(j(AElem.y(n, 2))) == "y2 + 2*x1x2"


@settings(max_examples=150, deadline=None)
@given(st.randoms(use_true_random=False), st.integers(1, 4), st.integers(1, 4), st.integers(1, 4))
def test_functor_law(rnd, n, m, k):
    phi, psi = random_hom(rnd, n, m, 6), random_hom(rnd, m, k, 6)
    lhs, jpsi, jphi = johnson_endo(compose(psi, phi)), johnson_endo(psi), johnson_endo(phi)
    assert all(lhs(x) == jpsi(jphi(x)) for x in generators(n))
    # the functor law on a random product of generators, not only on generators
    a = AElem.one(n)
    for x in rnd.sample(generators(n), min(3, 2 * n)):
        a = a * x + AElem.one(n)
    assert lhs(a) == jpsi(jphi(a))


@settings(max_examples=150, deadline=None)
@given(st.randoms(use_true_random=False), st.integers(1, 4), st.integers(1, 4), st.integers(1, 4))
def test_crossed_hom_identity(rnd, n, m, k):
    phi, psi = random_hom(rnd, n, m, 6), random_hom(rnd, m, k, 6)
    mphi, mpsi = phi.abelianization(), psi.abelianization()
    for i, lhs in enumerate(xi(compose(psi, phi))):
        rhs = xi(phi)[i].transform(mpsi)
        for j in range(m):
            rhs = rhs + mphi[j][i] * xi(psi)[j]
        assert lhs == rhs


@settings(max_examples=40, deadline=None)
@given(st.randoms(use_true_random=False), st.integers(1, 4))
def test_xi_vanishes_on_double_commutator_twists(rnd, n):
    from confrep.freegroup import random_word

    imgs = []
    for i in range(1, n + 1):
        h = Word.identity(n)
        for _ in range(rnd.randint(0, 2)):
            a, b, c = (random_word(rnd, n, 4) for _ in range(3))
            h = h * commutator(a, commutator(b, c))
        imgs.append(Word.generator(n, i) * h)
    phi = FreeHom(n, n, tuple(imgs))
    assert all(b == 0 for b in xi(phi))


def test_rep_identity_and_sizes():
    assert johnson_rep(FreeHom.identity(4)).is_identity()
    t = FreeHom(2, 2, (parse_word("a1 a2", 2), parse_word("a2", 2)))
    assert johnson_rep(t).rows == 3
    assert johnson_rep(t, reduced=True).rows == 2


@settings(max_examples=30, deadline=None)
@given(st.randoms(use_true_random=False), st.integers(2, 4))
def test_rep_group_law_and_blocks(rnd, n):
    (f, fi), (g, gi) = random_automorphism(rnd, n, 5), random_automorphism(rnd, n, 5)
    rf, rg = johnson_rep(f, inverse=fi), johnson_rep(g, inverse=gi)
    assert johnson_rep(compose(f, g), inverse=compose(gi, fi)) == rf @ rg
    # block structure: top right zero, top left [f], bottom right Lambda^2 [f]
    m = f.abelianization()
    size = n + comb(n, 2)
    assert all(rf[r, c] == 0 for r in range(n) for c in range(n, size))
    assert all(rf[r, c] == m[r][c] for r in range(n) for c in range(n))
    from confrep.extalg import exterior_power_matrix

    l2 = exterior_power_matrix(m, 2)
    assert all(rf[n + r, n + c] == l2[r, c] for r in range(comb(n, 2)) for c in range(comb(n, 2)))


def test_rep_nonlinear_witness():
    phi = inner_by_a1(4)
    assert [list(r) for r in phi.abelianization()] == [[int(i == j) for j in range(4)] for i in range(4)]
    assert not johnson_rep(phi).is_identity()


def test_rep_rejects_non_invertible():
    f = FreeHom(2, 2, (parse_word("a1 a1", 2), parse_word("a2", 2)))
    with pytest.raises(NotInvertible):
        johnson_rep(f)
    g = FreeHom(2, 2, (parse_word("a1 a2", 2), parse_word("a2", 2)))
    with pytest.raises(NotInvertible):
        johnson_rep(g, inverse=FreeHom.identity(2))
    with pytest.raises(InvertibilityUnverified):
        johnson.nielsen_inverse(g, max_steps=0)


def test_koszul_examples():
    n = 2
    x1, x2, y1, y2 = generators(n)
    assert koszul_differential(y1 * x2) == x1 * x2
    assert koszul_differential(y1 * y2) == x1 * y2 + y1 * x2
    assert not koszul_differential(AElem.one(n))


@settings(max_examples=40, deadline=None)
@given(st.randoms(use_true_random=False), st.integers(1, 3))
def test_koszul_square_zero_and_equivariant(rnd, n):
    gens = generators(n)
    a = AElem(n)
    for _ in range(4):
        t = AElem.one(n)
        for x in rnd.sample(gens, rnd.randint(0, len(gens))):
            t = t * x
        a = a + rnd.randint(-3, 3) * t
    assert not koszul_differential(koszul_differential(a))
    f, _ = random_automorphism(rnd, n, 4)
    j = johnson_endo(f)
    assert j(koszul_differential(a)) == koszul_differential(j(a))


def _sympy_koszul_rank(n, k, p):
    # d_K from x-degree k, y-degree p, built by hand from the Leibniz rule
    src = [(m, b) for m in slice_masks(n, k) for b in johnson.y_exponents(n, p)]
    tgt = {(m, b): i for i, (m, b) in enumerate((m, b) for m in slice_masks(n, k + 1) for b in johnson.y_exponents(n, p - 1))}
    if not src or not tgt:
        return 0
    mat = sympy.zeros(len(src), len(tgt))
    for r, (m, b) in enumerate(src):
        for i in range(n):
            if b[i] and not m >> i & 1:
                # x_S y^b -> (-1)^|S| b_i x_S x_i y^(b - e_i); x_S x_i = (-1)^(#S above i) x_{S+i}
                above = bin(m >> (i + 1)).count("1")
                nb = tuple(e - (j == i) for j, e in enumerate(b))
                mat[r, tgt[(m | 1 << i, nb)]] += (-1) ** (k + above) * b[i]
    return mat.rank()


def test_koszul_homology_by_independent_ranks():
    for n in range(1, 4):
        for k, p in iproduct(range(n + 1), range(4)):
            dim = comb(n, k) * comb(n + p - 1, p)
            h = dim - _sympy_koszul_rank(n, k, p) - (_sympy_koszul_rank(n, k - 1, p + 1) if k else 0)
            assert h == johnson.koszul_homology_slices(n, 3)[(k, p)]
            assert h == (1 if (k, p) == (0, 0) else 0)


def test_koszul_homology_dims():
    assert johnson.koszul_homology_dims(1, 6) == [1, 0, 0, 0, 0, 0, 0]
    assert johnson.koszul_homology_dims(3, 4) == [1, 0, 0, 0, 0]


def test_free_maps_dims():
    d = johnson.free_maps_dims(1, 1, 4)
    assert d[(0, 0)] == 1
    assert johnson.kernel_cokernel_dims(1, 1)[0] == 1  # x is a cycle
    for n in range(1, 4):
        hom = johnson.koszul_homology_dims(n, 5)
        for N in range(6):
            ker, cok = johnson.kernel_cokernel_dims(n, N)
            dim = sum(comb(n, N - 2 * p) * comb(n + p - 1, p) for p in range(N // 2 + 1) if N - 2 * p <= n)
            assert ker + cok - dim == hom[N]


def test_em_space_dims():
    g = 2
    odd = johnson.em_space_dims(g, 2, 1, 4)  # generators in degree 1: exterior
    assert [odd[d][0] for d in range(5)] == [comb(4, k) for k in range(5)]
    even = johnson.em_space_dims(g, 3, 1, 6)  # generators in degree 2: polynomial
    assert [even[2 * k][0] for k in range(4)] == [comb(4 + k - 1, k) for k in range(4)]
    assert all(even[d][0] == 0 for d in (1, 3, 5))
