"""The crossed homomorphism xi, the Johnson action on A_n = Lambda[x] (x) Q[y], and related computations.

A_n elements are dicts from (x-mask, y-exponent tuple) to rationals; the
monomial (S, beta) means x_S * y^beta with the x part written first.  The
y_i are even and central, so only x-products produce signs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Sequence

from . import extalg
from .extalg import ExtElem, slice_masks, wedge_sign
from .freegroup import Bivector, FreeHom, RankMismatch, Word, compose, content
from .linalg import RatMatrix, determinant


class NotInvertible(ValueError):
    pass


class InvertibilityUnverified(ValueError):
    pass


# --- xi -----------------------------------------------------------------------


def xi(phi: FreeHom) -> list[Bivector]:
    """xi(phi)(e_i) = c(phi(alpha_i)), one Bivector (rank = target rank) per i."""
    return [content(w) for w in phi.images]


def bivector_to_ext(b: Bivector) -> ExtElem:
    return ExtElem(b.rank, {(1 << (i - 1)) | (1 << (j - 1)): c for (i, j), c in b.coeffs.items()})


# --- the algebra A_n ------------------------------------------------------------


class AElem:
    __slots__ = ("rank", "terms")

    def __init__(self, rank: int, terms=None):
        self.rank = rank
        self.terms: dict[tuple[int, tuple[int, ...]], Fraction] = {}
        for key, c in (terms or {}).items():
            if c:
                v = self.terms.get(key, 0) + Fraction(c)
                if v:
                    self.terms[key] = v
                else:
                    self.terms.pop(key, None)

    @classmethod
    def one(cls, n: int) -> "AElem":
        return cls(n, {(0, (0,) * n): 1})

    @classmethod
    def x(cls, n: int, i: int) -> "AElem":
        return cls(n, {(1 << (i - 1), (0,) * n): 1})

    @classmethod
    def y(cls, n: int, i: int) -> "AElem":
        beta = [0] * n
        beta[i - 1] = 1
        return cls(n, {(0, tuple(beta)): 1})

    @classmethod
    def from_ext(cls, z: ExtElem) -> "AElem":
        zero = (0,) * z.rank
        return cls(z.rank, {(m, zero): c for m, c in z.terms.items()})

    def __add__(self, other: "AElem") -> "AElem":
        if self.rank != other.rank:
            raise RankMismatch("A_n elements of different rank")
        t = dict(self.terms)
        for k, c in other.terms.items():
            t[k] = t.get(k, 0) + c
        return AElem(self.rank, t)

    def __neg__(self):
        return AElem(self.rank, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, k):
        return AElem(self.rank, {key: k * c for key, c in self.terms.items()})

    def __mul__(self, other: "AElem") -> "AElem":
        if self.rank != other.rank:
            raise RankMismatch("A_n elements of different rank")
        out: dict = {}
        for (a, ba), ca in self.terms.items():
            for (b, bb), cb in other.terms.items():
                s = wedge_sign(a, b)
                if s:
                    key = (a | b, tuple(p + q for p, q in zip(ba, bb)))
                    out[key] = out.get(key, 0) + s * ca * cb
        return AElem(self.rank, out)

    def __pow__(self, k: int) -> "AElem":
        out = AElem.one(self.rank)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        if not isinstance(other, AElem):
            return NotImplemented
        return self.rank == other.rank and self.terms == other.terms

    def __hash__(self):
        return hash((self.rank, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (m, beta), c in sorted(self.terms.items()):
            xs = "".join(f"x{i + 1}" for i in range(self.rank) if m >> i & 1)
            ys = "".join(f"y{i + 1}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(beta) if e)
            mono = xs + ys or "1"
            parts.append(f"{c}*{mono}" if c != 1 else mono)
        return " + ".join(parts)

    __repr__ = __str__


def generators(n: int) -> list[AElem]:
    return [AElem.x(n, i) for i in range(1, n + 1)] + [AElem.y(n, i) for i in range(1, n + 1)]


# --- the Johnson endomorphism J(phi) ---------------------------------------------


@dataclass(frozen=True)
class JohnsonEndo:
    """J(phi): A_source -> A_target determined by [phi] and xi(phi)."""

    source: int
    target: int
    matrix: tuple[tuple[int, ...], ...]  # target x source
    xi_columns: tuple[Bivector, ...]

    def x_image(self, i: int) -> AElem:
        n = self.target
        return AElem(n, {(1 << r, (0,) * n): self.matrix[r][i - 1] for r in range(n)})

    def y_image(self, i: int) -> AElem:
        n = self.target
        terms = {}
        for r in range(n):
            beta = [0] * n
            beta[r] = 1
            terms[(0, tuple(beta))] = self.matrix[r][i - 1]
        out = AElem(n, terms)
        return out + AElem.from_ext(bivector_to_ext(self.xi_columns[i - 1]))

    def __call__(self, a: AElem) -> AElem:
        if a.rank != self.source:
            raise RankMismatch(f"element of A_{a.rank}, map from A_{self.source}")
        xs = [self.x_image(i) for i in range(1, self.source + 1)]
        ys = [self.y_image(i) for i in range(1, self.source + 1)]
        out = AElem(self.target)
        for (m, beta), c in a.terms.items():
            t = AElem.one(self.target)
            for i in range(self.source):
                if m >> i & 1:
                    t = t * xs[i]
            for i, e in enumerate(beta):
                if e:
                    t = t * ys[i] ** e
            out = out + c * t
        return out


def johnson_endo(phi: FreeHom) -> JohnsonEndo:
    mat = tuple(tuple(r) for r in phi.abelianization())
    return JohnsonEndo(phi.source, phi.target, mat, tuple(xi(phi)))


# --- automorphism certification ---------------------------------------------------


def _signed_permutation(images: Sequence[Word]) -> FreeHom | None:
    n = len(images)
    seen = set()
    for w in images:
        if len(w) != 1 or abs(w.letters[0]) in seen:
            return None
        seen.add(abs(w.letters[0]))
    inv = [None] * n
    for i, w in enumerate(images, start=1):
        a = w.letters[0]
        inv[abs(a) - 1] = Word(n, (i if a > 0 else -i,))
    return FreeHom(n, n, tuple(inv))


def nielsen_inverse(phi: FreeHom, max_steps: int = 10_000) -> FreeHom:
    """Search for phi^-1 by greedy length-reducing Nielsen moves.

    Raises InvertibilityUnverified when the search stalls or hits the bound;
    that does not prove phi is not an automorphism.
    """
    if phi.source != phi.target:
        raise NotInvertible("source and target ranks differ")
    n = phi.source
    if n and abs(determinant(phi.abelianization())) != 1:
        raise NotInvertible("abelianization is not invertible over Z")
    u = list(phi.images)
    acc = FreeHom.identity(n)
    gens = [Word.generator(n, i) for i in range(1, n + 1)]
    for _ in range(max_steps):
        perm_inv = _signed_permutation(u)
        if perm_inv is not None:
            inv = compose(acc, perm_inv)
            if not compose(phi, inv).is_identity():
                raise AssertionError("Nielsen bookkeeping error")
            return inv
        best = None
        total = sum(len(w) for w in u)
        for i in range(n):
            for j in range(n):
                if i == j:
                    continue
                for e in (1, -1):
                    uj = u[j] ** e
                    for right in (True, False):
                        cand = u[i] * uj if right else uj * u[i]
                        gain = len(u[i]) - len(cand)
                        if gain > 0 and (best is None or gain > best[0]):
                            best = (gain, i, j, e, right, cand)
        if best is None:
            raise InvertibilityUnverified(f"Nielsen search stalled at total length {total}")
        _, i, j, e, right, cand = best
        move = list(gens)
        move[i] = gens[i] * gens[j] ** e if right else gens[j] ** e * gens[i]
        acc = compose(acc, FreeHom(n, n, tuple(move)))
        u[i] = cand
    raise InvertibilityUnverified(f"no Nielsen reduction within {max_steps} steps")


def certify_automorphism(phi: FreeHom, inverse: FreeHom | None = None) -> FreeHom:
    """Return a verified inverse of phi (the supplied one, or one found by search)."""
    if inverse is not None:
        if not (compose(phi, inverse).is_identity() and compose(inverse, phi).is_identity()):
            raise NotInvertible("supplied inverse does not invert phi")
        return inverse
    return nielsen_inverse(phi)


# --- the Johnson representation J = H + Lambda^2 H ------------------------------


def johnson_rep(phi: FreeHom, reduced: bool = False, inverse: FreeHom | None = None) -> RatMatrix:
    """Matrix of J(phi) on J = H + Lambda^2 H (or J~ = J / <omega> if ``reduced``).

    Basis: y_1..y_n, then the Lambda^2 part in canonical monomial order
    (for J~, the cokernel representatives of Lambda^2 / <omega>).  The matrix
    is block lower triangular: [phi] on H, Lambda^2 [phi] on Lambda^2 H and
    the xi block below the diagonal.
    """
    certify_automorphism(phi, inverse)
    n = phi.source
    mat = phi.abelianization()
    cols_xi = [bivector_to_ext(b) for b in xi(phi)]
    if not reduced:
        masks = slice_masks(n, 2)
        columns = []
        for i in range(n):
            columns.append([Fraction(mat[r][i]) for r in range(n)] + cols_xi[i].vector(2))
        for m in masks:
            img = extalg.transform(ExtElem(n, {m: 1}), mat)
            columns.append([Fraction(0)] * n + img.vector(2))
        return RatMatrix.from_columns(columns, n + len(masks))
    if n % 2:
        raise ValueError("reduced Johnson representation needs even rank n = 2g")
    g = n // 2
    w = extalg.omega(g)
    wimg = extalg.transform(w, mat)
    if extalg.cokernel_coordinates_in(g, 2, wimg) != [0] * extalg.cokernel_dim(g, 2) or not _proportional(wimg, w):
        raise ValueError("phi does not preserve <omega>; J~ is not defined for it")
    reps = extalg.cokernel_basis(g, 2)
    columns = []
    for i in range(n):
        columns.append([Fraction(mat[r][i]) for r in range(n)] + extalg.cokernel_coordinates_in(g, 2, cols_xi[i]))
    for z in reps:
        img = extalg.transform(z, mat)
        columns.append([Fraction(0)] * n + extalg.cokernel_coordinates_in(g, 2, img))
    return RatMatrix.from_columns(columns, n + len(reps))


def _proportional(a: ExtElem, b: ExtElem) -> bool:
    if not b:
        return not a
    m0 = next(iter(b.terms))
    r = a.terms.get(m0, 0) / b.terms[m0]
    return a == r * b


# --- Koszul differential and free maps --------------------------------------------


def koszul_differential(a: AElem) -> AElem:
    """d_K(x_i) = 0, d_K(y_i) = x_i, extended as an odd derivation."""
    n = a.rank
    out: dict = {}
    for (m, beta), c in a.terms.items():
        lead = -1 if bin(m).count("1") % 2 else 1
        for i, e in enumerate(beta):
            if not e:
                continue
            s = wedge_sign(m, 1 << i)
            if not s:
                continue
            nb = list(beta)
            nb[i] -= 1
            key = (m | 1 << i, tuple(nb))
            out[key] = out.get(key, 0) + lead * s * e * c
    return AElem(n, out)


@lru_cache(maxsize=None)
def y_exponents(n: int, p: int) -> tuple[tuple[int, ...], ...]:
    """Exponent vectors of total degree p in n variables, lexicographically descending."""
    if n == 0:
        return ((),) if p == 0 else ()
    out = []
    for first in range(p, -1, -1):
        for rest in y_exponents(n - 1, p - first):
            out.append((first,) + rest)
    return tuple(out)


def _a_basis(n: int, k: int, p: int) -> list[tuple[int, tuple[int, ...]]]:
    return [(m, b) for m in slice_masks(n, k) for b in y_exponents(n, p)]


def _koszul_rank(n: int, k: int, p: int) -> int:
    # rank of d_K : A^{k,p} -> A^{k+1,p-1}
    if p == 0 or k + 1 > n or k < 0:
        return 0
    target = {key: i for i, key in enumerate(_a_basis(n, k + 1, p - 1))}
    rows = []
    for key in _a_basis(n, k, p):
        img = koszul_differential(AElem(n, {key: 1}))
        v = [0] * len(target)
        for t, c in img.terms.items():
            v[target[t]] = c
        rows.append(v)
    return RatMatrix.from_rows(rows, len(target)).rank() if rows and target else 0


def _a_dim(n: int, k: int, p: int) -> int:
    if k < 0 or k > n or p < 0:
        return 0
    return comb(n, k) * comb(n + p - 1, p) if n else int(k == 0 and p == 0)


def koszul_homology_slices(n: int, max_y: int) -> dict[tuple[int, int], int]:
    """dim H(A_n, d_K) on each slice (x-degree k, y-degree p), p <= max_y."""
    out = {}
    for p in range(max_y + 1):
        for k in range(n + 1):
            out[(k, p)] = _a_dim(n, k, p) - _koszul_rank(n, k, p) - _koszul_rank(n, k - 1, p + 1)
    return out


def koszul_homology_dims(n: int, cap: int) -> list[int]:
    """dim H(A_n, d_K) in weight N = k + 2p (degree N*mu) for N = 0..cap."""
    dims = [0] * (cap + 1)
    for N in range(cap + 1):
        for p in range(N // 2 + 1):
            k = N - 2 * p
            if k <= n:
                dims[N] += _a_dim(n, k, p) - _koszul_rank(n, k, p) - _koszul_rank(n, k - 1, p + 1)
    return dims


def _weight_dim(n: int, N: int) -> int:
    return sum(_a_dim(n, N - 2 * p, p) for p in range(N // 2 + 1))


def _weight_rank(n: int, N: int) -> int:
    # rank of d_K out of weight N (into weight N - 1)
    return sum(_koszul_rank(n, N - 2 * p, p) for p in range(N // 2 + 1))


def kernel_cokernel_dims(n: int, N: int) -> tuple[int, int]:
    """(dim ker d_K, dim coker d_K) in weight N of A_n."""
    dim = _weight_dim(n, N)
    return dim - _weight_rank(n, N), dim - _weight_rank(n, N + 1)


def free_maps_dims(n: int, m: int, cap: int) -> dict[tuple[int, int], int]:
    """Dimensions of ker d_K x| coker d_K[mu+1, (1)] by (degree, weight), source weights N <= cap.

    On A_n the degree of x_S y^beta is mu * N with weight N = |S| + 2|beta|;
    d_K lowers the weight by one.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    mu = 2 * m - 1
    out: dict[tuple[int, int], int] = {}
    for N in range(cap + 1):
        ker, cok = kernel_cokernel_dims(n, N)
        if ker:
            out[(mu * N, N)] = out.get((mu * N, N), 0) + ker
        if cok:
            key = (mu * N + mu + 1, N + 1)
            out[key] = out.get(key, 0) + cok
    return out


def em_space_dims(g: int, m: int, r: int, cap: int) -> dict[int, tuple[int, int]]:
    """Degree -> (dimension, weight) of S[e_1..e_2g] with |e_i| = (m-1, (r)), degrees <= cap."""
    if m < 2:
        raise ValueError("m must be >= 2")
    step = m - 1
    out = {}
    for d in range(cap + 1):
        if d % step:
            out[d] = (0, 0)
            continue
        k = d // step
        if step % 2:
            dim = comb(2 * g, k)
        else:
            dim = comb(2 * g + k - 1, k) if g else int(k == 0)
        out[d] = (dim, k * r if dim else 0)
    return out
