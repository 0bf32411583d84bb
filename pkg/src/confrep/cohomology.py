"""H^i(C_n(Sigma_{g,1}); Q) as the bidegree (i,(n)) part of Q[y, w] (x) H(Lambda[x, v], d v = 2 omega).

Gradings (degree, weight): |x| = (1,1), |y| = (2,2), |w| = (0,1), |v| = (1,2).
The homology of E = Lambda[x, v] is V (x) {1} + K (x) {v}, with V the
cokernel and K the kernel of wedging with omega, so a slice basis element
is w^a y^beta [z] or w^a y^beta [z] v with z a V-class or a K-class.

Basis order inside a slice: w-exponent a ascending, then beta by total
degree and then descending lexicographic order (y_1^p first), then the class
index.  Matrices act on column vectors, columns are images of basis
elements, so act(phi psi) = act(phi) act(psi).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import extalg
from .extalg import ExtElem
from .freegroup import Word, lcs_member_witness, presentation_word
from .johnson import bivector_to_ext, xi, y_exponents
from .linalg import RatMatrix, rank
from .mcg import MappingClass


class GenusMismatch(ValueError):
    pass


class CertificateMissing(ValueError):
    pass


@dataclass(frozen=True, order=True)
class RMonomial:
    a: int  # w exponent
    beta: tuple[int, ...]  # y multidegree
    space: str  # "V" (no v) or "K" (times v)
    k: int  # exterior degree of the class
    index: int  # position in extalg.cokernel_basis / kernel_basis

    @property
    def degree(self) -> int:
        return 2 * sum(self.beta) + self.k + (1 if self.space == "K" else 0)

    @property
    def weight(self) -> int:
        return self.a + 2 * sum(self.beta) + self.k + (2 if self.space == "K" else 0)

    def __str__(self):
        parts = []
        if self.a:
            parts.append("w" if self.a == 1 else f"w^{self.a}")
        for i, e in enumerate(self.beta, start=1):
            if e:
                parts.append(f"y{i}" if e == 1 else f"y{i}^{e}")
        parts.append(f"{self.space}{self.k}[{self.index}]")
        if self.space == "K":
            parts.append("v")
        return "*".join(parts)


@dataclass(frozen=True)
class SliceBasis:
    g: int
    i: int
    n: int
    monomials: tuple[RMonomial, ...]

    def __len__(self):
        return len(self.monomials)

    def index(self, m: RMonomial) -> int:
        return _index_of(self)[m]

    def class_rep(self, m: RMonomial) -> ExtElem:
        if m.space == "V":
            return extalg.cokernel_basis(self.g, m.k)[m.index]
        return extalg.kernel_basis(self.g, m.k)[m.index]


@lru_cache(maxsize=None)
def _index_of(basis: SliceBasis) -> dict[RMonomial, int]:
    return {m: j for j, m in enumerate(basis.monomials)}


@lru_cache(maxsize=None)
def slice_basis(g: int, i: int, n: int) -> SliceBasis:
    if min(g, i, n) < 0:
        raise ValueError("g, i, n must be non-negative")
    rank_ = 2 * g
    out = []
    for space, a, kshift in (("K", n - i - 1, 1), ("V", n - i, 0)):
        if a < 0:
            continue
        for p in range((i - kshift) // 2 + 1):
            k = i - kshift - 2 * p
            if k < 0 or k > rank_:
                continue
            dim = extalg.cokernel_dim(g, k) if space == "V" else extalg.kernel_dim(g, k)
            if not dim:
                continue
            for beta in y_exponents(rank_, p):
                for idx in range(dim):
                    out.append(RMonomial(a, beta, space, k, idx))
    out.sort(key=lambda m: (m.a, sum(m.beta), tuple(-b for b in m.beta), m.space, m.index))
    basis = SliceBasis(g, i, n, tuple(out))
    for m in basis.monomials:
        assert (m.degree, m.weight) == (i, n)
    return basis


def dims_table(g: int, i_max: int, n_max: int) -> list[list[int]]:
    """table[i][n] = dim H^i(C_n(Sigma_{g,1}); Q)."""
    if min(g, i_max, n_max) < 0:
        raise ValueError("bounds must be non-negative")
    return [[len(slice_basis(g, i, n)) for n in range(n_max + 1)] for i in range(i_max + 1)]


# --- brute-force referee -------------------------------------------------------------


def _sorted_sign(seq: list[int]) -> int:
    """Sign of the permutation sorting ``seq`` (distinct entries), by counting inversions."""
    inv = sum(1 for p in range(len(seq)) for q in range(p + 1, len(seq)) if seq[p] > seq[q])
    return -1 if inv % 2 else 1


@lru_cache(maxsize=None)
def _chain_rank(g: int, k: int) -> int:
    """Rank of d: x_S v -> (-1)^|S| x_S (2 omega) from |S| = k, built from index lists."""
    n = 2 * g
    src = [tuple(c) for c in _subsets(n, k)]
    tgt = {s: j for j, s in enumerate(_subsets(n, k + 2))}
    if not src or not tgt:
        return 0
    rows = []
    for s in src:
        row = [Fraction(0)] * len(tgt)
        for h in range(g):
            pair = [2 * h + 1, 2 * h + 2]
            if pair[0] in s or pair[1] in s:
                continue
            seq = list(s) + pair
            row[tgt[tuple(sorted(seq))]] += (-1) ** k * 2 * _sorted_sign(seq)
        rows.append(row)
    return rank(rows, len(tgt))


@lru_cache(maxsize=None)
def _subsets(n: int, k: int) -> tuple[tuple[int, ...], ...]:
    if k < 0 or k > n:
        return ()
    out = [()]
    for _ in range(k):
        out = [s + (j,) for s in out for j in range((s[-1] if s else 0) + 1, n + 1)]
    return tuple(out)


def brute_force_dim(g: int, i: int, n: int) -> int:
    """dim of the homology of the full complex Q[y, w] (x) Lambda[x, v] at (i,(n)).

    The complex splits over the monomials w^a y^beta (d is linear over
    Q[y, w]); for each of them the Lambda[x, v] part in the right bidegree is
    x_S (|S| = k) and x_S v (|S| = k - 1), and
    dim H = #cycles - #boundaries is computed from the ranks of d.
    """
    from math import comb

    total = 0
    n2 = 2 * g
    for p in range(i // 2 + 1):
        ny = comb(n2 + p - 1, p) if n2 else (1 if p == 0 else 0)
        if not ny:
            continue
        e_deg = i - 2 * p
        # without v: x_S, |S| = e_deg, w-exponent n - i
        # with v: x_S v, |S| = e_deg - 1, w-exponent n - i - 1
        dims = 0
        if n - i >= 0 and e_deg <= n2:
            plain = comb(n2, e_deg)
            hit = _chain_rank(g, e_deg - 2) if e_deg >= 2 else 0  # from x_T v, |T| = e_deg - 2
            dims += plain - hit
        if n - i - 1 >= 0 and 0 <= e_deg - 1 <= n2:
            with_v = comb(n2, e_deg - 1)
            dims += with_v - _chain_rank(g, e_deg - 1)
        total += ny * dims
    return total


# --- the action ---------------------------------------------------------------------


class _Action:
    """Cached data of one mapping class: matrix, xi as exterior elements, y-power expansions."""

    def __init__(self, mc: MappingClass):
        self.g = mc.genus
        self.n = 2 * mc.genus
        self.mat = [list(r) for r in mc.matrix] if mc.matrix else mc.phi.abelianization()
        xis = [bivector_to_ext(b) for b in xi(mc.phi)]
        for z in xis:
            assert not z or z.degrees() == {2}, "xi must be even for y to stay central"
        # Y_i = sum_j M[j][i] y_j + xi_i as {beta: ExtElem}
        zero = (0,) * self.n
        self.ys = []
        for i in range(self.n):
            poly = {}
            for j in range(self.n):
                if self.mat[j][i]:
                    beta = list(zero)
                    beta[j] = 1
                    poly[tuple(beta)] = ExtElem(self.n, {0: self.mat[j][i]})
            if xis[i]:
                poly[zero] = xis[i]
            self.ys.append(poly)
        self._pow: dict = {}

    def _mul(self, p, q):
        out: dict = {}
        for b1, c1 in p.items():
            for b2, c2 in q.items():
                prod = c1 ^ c2
                if prod:
                    b = tuple(x + y for x, y in zip(b1, b2))
                    out[b] = out[b] + prod if b in out else prod
        return {b: c for b, c in out.items() if c}

    def y_power(self, beta: tuple[int, ...]) -> dict:
        if beta in self._pow:
            return self._pow[beta]
        out = {(0,) * self.n: ExtElem.one(self.n)}
        for i, e in enumerate(beta):
            for _ in range(e):
                out = self._mul(out, self.ys[i])
        self._pow[beta] = out
        return out


def act(mc: MappingClass, basis: SliceBasis) -> RatMatrix:
    """Matrix of phi on the slice, columns are images of the basis elements."""
    if mc.genus != basis.g:
        raise GenusMismatch(f"mapping class of genus {mc.genus} on a genus {basis.g} slice")
    data = _Action(mc)
    g, _n = basis.g, data.n
    idx = _index_of(basis)
    dim = len(basis)
    columns = []
    for m in basis.monomials:
        col = [Fraction(0)] * dim
        rep = extalg.transform(basis.class_rep(m), data.mat)
        for beta, coeff in data.y_power(m.beta).items():
            prod = coeff ^ rep
            k = m.k + (2 * sum(m.beta) - 2 * sum(beta))
            if k > 2 * g:
                assert not prod
                continue
            if m.space == "V":
                if k > g:
                    continue
                coords = extalg.cokernel_coordinates_in(g, k, prod)
            else:
                coords = extalg.kernel_coordinates(g, k, prod)
            for j, c in enumerate(coords):
                if c:
                    target = RMonomial(m.a, beta, m.space, k, j)
                    # the bigrading is preserved, so the target is in the slice
                    col[idx[target]] += c
        columns.append(col)
    return RatMatrix.from_columns(columns, dim)


def character(mc: MappingClass, g: int, i: int, n: int) -> Fraction:
    return act(mc, slice_basis(g, i, n)).trace()


def regrade(m: int, i: int, n: int) -> int:
    """Degree in R_m of the R_1 bidegree (i,(n)): i + (2m - 2) n."""
    if m < 1:
        raise ValueError("m must be >= 1")
    return i + (2 * m - 2) * n


def j2_trivial_check(mc: MappingClass, i_max: int, n_max: int, certificates=None) -> bool:
    """True iff mc acts as the identity on every slice with i <= i_max, n <= n_max.

    ``certificates`` are presentations of h_i = alpha_i^-1 phi(alpha_i)
    (words, ``Comm`` or products of them) each certified at depth 2 by
    lcs_member_witness; without them the reduced words h_i themselves must
    pass the literal check.
    """
    n = mc.n
    hs = [Word.generator(n, k).inverse() * w for k, w in enumerate(mc.phi.images, start=1)]
    certs = certificates if certificates is not None else hs
    if len(certs) != n:
        raise CertificateMissing(f"need {n} certificates, got {len(certs)}")
    for k, (h, c) in enumerate(zip(hs, certs), start=1):
        if presentation_word(c) != h:
            raise CertificateMissing(f"certificate {k} does not spell alpha_{k}^-1 phi(alpha_{k})")
        if not lcs_member_witness(c, 2):
            raise CertificateMissing(f"h_{k} is not certified as a product of double commutators")
    for i in range(i_max + 1):
        for nn in range(n_max + 1):
            b = slice_basis(mc.genus, i, nn)
            if len(b) and not act(mc, b).is_identity():
                return False
    return True

