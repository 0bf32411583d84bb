"""The exterior algebra Lambda[x_1..x_n] over Q, wedging with omega, and its kernel and cokernel.

Monomials are bitmasks: bit i-1 stands for x_i, and a monomial is the
product of its generators in increasing index order.  Within a degree the
canonical basis order is the integer order of the masks.

Bases are built eagerly per (g, k) and memoised; the full algebra has 2^(2g)
monomials, which keeps g <= 6 or so practical.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Sequence

from .linalg import Coordinatizer, RatMatrix, Reducer


def _popcount(m: int) -> int:
    return bin(m).count("1")


def wedge_sign(a: int, b: int) -> int:
    """Sign of x_A ^ x_B = sign * x_{A u B}; 0 when A and B overlap."""
    if a & b:
        return 0
    swaps = 0
    bb = b
    while bb:
        low = bb & -bb
        swaps += _popcount(a & ~((low << 1) - 1))
        bb ^= low
    return -1 if swaps & 1 else 1


class ExtElem:
    __slots__ = ("rank", "terms")

    def __init__(self, rank: int, terms=None):
        self.rank = rank
        self.terms: dict[int, Fraction] = {}
        full = (1 << rank) - 1
        for m, c in (terms or {}).items():
            if m & ~full:
                raise IndexError(f"monomial {m:b} outside rank {rank}")
            if c:
                self.terms[m] = self.terms.get(m, 0) + Fraction(c)
                if not self.terms[m]:
                    del self.terms[m]

    @classmethod
    def generator(cls, rank: int, i: int) -> "ExtElem":
        return cls(rank, {1 << (i - 1): 1})

    @classmethod
    def one(cls, rank: int) -> "ExtElem":
        return cls(rank, {0: 1})

    @classmethod
    def monomial(cls, rank: int, indices: Sequence[int]) -> "ExtElem":
        """x_{i1} ^ x_{i2} ^ ... in the given order (sign included)."""
        out = cls.one(rank)
        for i in indices:
            out = out ^ cls.generator(rank, i)
        return out

    @classmethod
    def linear(cls, coeffs: Sequence) -> "ExtElem":
        return cls(len(coeffs), {1 << i: c for i, c in enumerate(coeffs) if c})

    def _check(self, other):
        if self.rank != other.rank:
            raise ValueError(f"rank mismatch {self.rank} vs {other.rank}")

    def __xor__(self, other: "ExtElem") -> "ExtElem":
        return wedge(self, other)

    def __add__(self, other: "ExtElem") -> "ExtElem":
        self._check(other)
        t = dict(self.terms)
        for m, c in other.terms.items():
            t[m] = t.get(m, 0) + c
        return ExtElem(self.rank, t)

    def __neg__(self):
        return ExtElem(self.rank, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, k):
        return ExtElem(self.rank, {m: k * c for m, c in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        if not isinstance(other, ExtElem):
            return NotImplemented
        return self.rank == other.rank and self.terms == other.terms

    def __hash__(self):
        return hash((self.rank, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def degrees(self) -> set[int]:
        return {_popcount(m) for m in self.terms}

    def homogeneous_part(self, k: int) -> "ExtElem":
        return ExtElem(self.rank, {m: c for m, c in self.terms.items() if _popcount(m) == k})

    def degree(self) -> int:
        """Degree of a homogeneous non-zero element."""
        ds = self.degrees()
        if len(ds) != 1:
            raise ValueError("element is zero or not homogeneous")
        return ds.pop()

    def vector(self, k: int) -> list[Fraction]:
        """Coordinates on the canonical basis of Lambda^k."""
        idx = slice_index(self.rank, k)
        v = [Fraction(0)] * len(idx)
        for m, c in self.terms.items():
            if _popcount(m) != k:
                raise ValueError(f"term of degree {_popcount(m)} in a degree {k} vector")
            v[idx[m]] = c
        return v

    @classmethod
    def from_vector(cls, rank: int, k: int, v: Sequence) -> "ExtElem":
        return cls(rank, dict(zip(slice_masks(rank, k), v)))

    def __repr__(self):
        return f"ExtElem({self.rank}, {self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=lambda m: (_popcount(m), m)):
            c = self.terms[m]
            mono = "".join(f"x{i + 1}" for i in range(self.rank) if m >> i & 1) or "1"
            if mono == "1":
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def wedge(u: ExtElem, v: ExtElem) -> ExtElem:
    u._check(v)
    out: dict[int, Fraction] = {}
    for a, ca in u.terms.items():
        for b, cb in v.terms.items():
            s = wedge_sign(a, b)
            if s:
                m = a | b
                out[m] = out.get(m, 0) + s * ca * cb
    return ExtElem(u.rank, out)


@lru_cache(maxsize=None)
def slice_masks(n: int, k: int) -> tuple[int, ...]:
    """Canonical basis of Lambda^k Q^n: masks of popcount k in increasing order."""
    if k < 0 or k > n:
        return ()
    masks = sorted(sum(1 << i for i in c) for c in combinations(range(n), k))
    assert len(masks) == comb(n, k)
    return tuple(masks)


@lru_cache(maxsize=None)
def slice_index(n: int, k: int) -> dict[int, int]:
    return {m: i for i, m in enumerate(slice_masks(n, k))}


def omega(g: int) -> ExtElem:
    """x1x2 + x3x4 + ... + x_{2g-1}x_{2g} (zero when g = 0)."""
    if g < 0:
        raise ValueError("genus must be non-negative")
    return ExtElem(2 * g, {0b11 << (2 * i): 1 for i in range(g)})


def transform(z: ExtElem, matrix) -> ExtElem:
    """Apply the algebra map x_i -> sum_j matrix[j][i] x_j to z."""
    n = len(matrix)
    images = [ExtElem.linear([matrix[r][i] for r in range(n)]) for i in range(z.rank)]
    out = ExtElem(n)
    for m, c in z.terms.items():
        t = ExtElem.one(n)
        for i in range(z.rank):
            if m >> i & 1:
                t = t ^ images[i]
                if not t:
                    break
        out = out + c * t
    return out


def exterior_power_matrix(matrix, k: int) -> RatMatrix:
    """Lambda^k of a square matrix in the canonical monomial basis."""
    n = len(matrix)
    cols = [transform(ExtElem(n, {m: 1}), matrix).vector(k) for m in slice_masks(n, k)]
    return RatMatrix.from_columns(cols, comb(n, k))


def _check_degree(g: int, k: int):
    if not 0 <= k <= 2 * g:
        raise ValueError(f"degree {k} out of range 0..{2 * g}")


@lru_cache(maxsize=None)
def _phi_columns(g: int, k: int) -> tuple[tuple[Fraction, ...], ...]:
    n, w = 2 * g, omega(g)
    if k + 2 > n:
        return tuple(() for _ in slice_masks(n, k))
    return tuple(tuple((ExtElem(n, {m: 1}) ^ w).vector(k + 2)) for m in slice_masks(n, k))


def phi_matrix(g: int, k: int) -> RatMatrix:
    """Matrix of z -> z ^ omega from Lambda^k to Lambda^{k+2}."""
    _check_degree(g, k)
    n = 2 * g
    return RatMatrix.from_columns(_phi_columns(g, k), comb(n, k + 2) if k + 2 <= n else 0)


def phi_rank(g: int, k: int) -> int:
    if k < 0 or k > 2 * g:
        return 0
    return phi_matrix(g, k).rank()


@lru_cache(maxsize=None)
def _kernel(g: int, k: int) -> tuple[ExtElem, ...]:
    n = 2 * g
    mat = phi_matrix(g, k)
    if mat.rows == 0:
        vecs = [[int(i == j) for i in range(comb(n, k))] for j in range(comb(n, k))]
    else:
        vecs = mat.nullspace()
    return tuple(ExtElem.from_vector(n, k, v) for v in vecs)


def kernel_basis(g: int, k: int) -> list[ExtElem]:
    """Basis of K^k = ker(z -> z ^ omega) inside Lambda^k."""
    _check_degree(g, k)
    return list(_kernel(g, k))


@lru_cache(maxsize=None)
def _image_reducer(g: int, k: int) -> Reducer:
    # image of Lambda^{k-2} in Lambda^k, one spanning vector per source monomial
    n = 2 * g
    spanning = list(_phi_columns(g, k - 2)) if k >= 2 else []
    return Reducer([list(v) for v in spanning], comb(n, k))


def cokernel_basis(g: int, k: int) -> list[ExtElem]:
    """Monomial representatives of a basis of V^k = Lambda^k / (omega ^ Lambda^{k-2}).

    The representatives are the monomials at non-pivot positions of the
    reduced echelon form of the image.
    """
    _check_degree(g, k)
    n = 2 * g
    masks = slice_masks(n, k)
    return [ExtElem(n, {masks[i]: 1}) for i in _image_reducer(g, k).free]


def cokernel_coordinates(g: int, z: ExtElem) -> list[Fraction]:
    """Coordinates of the class of homogeneous z in V^k on cokernel_basis(g, k)."""
    k = z.degree() if z else None
    if k is None:
        raise ValueError("zero element has no degree; use cokernel_dim")
    return _image_reducer(g, k).coordinates(z.vector(k))


def cokernel_coordinates_in(g: int, k: int, z: ExtElem) -> list[Fraction]:
    """As cokernel_coordinates, with the degree given (z may be zero)."""
    if not z:
        return [Fraction(0)] * len(_image_reducer(g, k).free)
    return _image_reducer(g, k).coordinates(z.vector(k))


@lru_cache(maxsize=None)
def _kernel_coordinatizer(g: int, k: int) -> Coordinatizer:
    return Coordinatizer([b.vector(k) for b in _kernel(g, k)], comb(2 * g, k))


def kernel_coordinates(g: int, k: int, z: ExtElem) -> list[Fraction]:
    """Coordinates of z on kernel_basis(g, k); raises if z is not in K^k."""
    if not z:
        return [Fraction(0)] * len(_kernel(g, k))
    return _kernel_coordinatizer(g, k).coordinates(z.vector(k))


def cokernel_dim(g: int, k: int) -> int:
    if k < 0 or k > 2 * g:
        return 0
    return len(_image_reducer(g, k).free)


def kernel_dim(g: int, k: int) -> int:
    if k < 0 or k > 2 * g:
        return 0
    return len(_kernel(g, k))


def module_action(z: ExtElem, class_index: int, space: str, g: int, k: int) -> list[Fraction]:
    """Multiply the class_index-th basis class of V^k or K^k by z and return coordinates.

    ``space`` is ``"V"`` or ``"K"``; z must be homogeneous (or zero).
    """
    if z and len(z.degrees()) != 1:
        raise ValueError("z must be homogeneous")
    dz = z.degree() if z else 0
    if space == "V":
        rep = cokernel_basis(g, k)[class_index]
        return cokernel_coordinates_in(g, k + dz, z ^ rep) if k + dz <= 2 * g else []
    if space == "K":
        rep = kernel_basis(g, k)[class_index]
        if k + dz > 2 * g:
            return []
        prod = z ^ rep
        # K is an ideal-like submodule: z^rep^omega = z^(rep^omega) = 0
        return kernel_coordinates(g, k + dz, prod)
    raise ValueError(f"space must be 'V' or 'K', got {space!r}")
