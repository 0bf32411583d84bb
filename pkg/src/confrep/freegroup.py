"""Words in the free group F_n, homomorphisms between free groups and the content.

Letters are signed generator indices: ``+i`` is alpha_i and ``-i`` its inverse,
with generators numbered from 1.  Words are always stored freely reduced.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


class RankMismatch(ValueError):
    pass


def reduce(letters: Iterable[int]) -> tuple[int, ...]:
    """Freely reduce a sequence of signed letters with a single stack pass."""
    out: list[int] = []
    for a in letters:
        if a == 0:
            raise ValueError("letter 0 is not a generator")
        if out and out[-1] == -a:
            out.pop()
        else:
            out.append(a)
    return tuple(out)


@dataclass(frozen=True)
class Word:
    rank: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError("negative rank")
        letters = tuple(int(a) for a in self.letters)
        for a in letters:
            if a == 0 or abs(a) > self.rank:
                raise IndexError(f"letter {a} out of range for F_{self.rank}")
        object.__setattr__(self, "letters", reduce(letters))

    @classmethod
    def from_pairs(cls, rank: int, pairs: Iterable[tuple[int, int]]) -> "Word":
        letters = []
        for i, s in pairs:
            if s not in (1, -1):
                raise ValueError(f"sign must be +1 or -1, got {s}")
            letters.append(i * s)
        return cls(rank, tuple(letters))

    @classmethod
    def generator(cls, rank: int, i: int) -> "Word":
        return cls(rank, (i,))

    @classmethod
    def identity(cls, rank: int) -> "Word":
        return cls(rank, ())

    def pairs(self) -> list[tuple[int, int]]:
        return [(abs(a), 1 if a > 0 else -1) for a in self.letters]

    def __len__(self):
        return len(self.letters)

    def __bool__(self):
        return bool(self.letters)

    def _check(self, other: "Word"):
        if self.rank != other.rank:
            raise RankMismatch(f"F_{self.rank} vs F_{other.rank}")

    def __mul__(self, other: "Word") -> "Word":
        self._check(other)
        return Word(self.rank, self.letters + other.letters)

    def inverse(self) -> "Word":
        return Word(self.rank, tuple(-a for a in reversed(self.letters)))

    def __invert__(self) -> "Word":
        return self.inverse()

    def __pow__(self, k: int) -> "Word":
        base = self if k >= 0 else self.inverse()
        return Word(self.rank, base.letters * abs(k))

    def __str__(self):
        return format_word(self)


def commutator(a: Word, b: Word) -> Word:
    """[a, b] = a b a^-1 b^-1."""
    return a * b * a.inverse() * b.inverse()


def boundary_word(g: int) -> Word:
    """zeta_g = [a1, a2][a3, a4]...[a_{2g-1}, a_{2g}] in F_{2g}."""
    if g < 0:
        raise ValueError("genus must be non-negative")
    letters = []
    for i in range(1, g + 1):
        a, b = 2 * i - 1, 2 * i
        letters += [a, b, -a, -b]
    return Word(2 * g, tuple(letters))


def parse_word(text: str, rank: int) -> Word:
    """Parse ``a1 a2^-1 ...``; ``1`` (or an empty string) is the identity."""
    tokens = text.split()
    if tokens == ["1"] or not tokens:
        return Word(rank)
    letters = []
    for tok in tokens:
        body, _, exp = tok.partition("^")
        if not body.startswith("a") or not body[1:].isdigit():
            raise ValueError(f"bad word token {tok!r}")
        i = int(body[1:])
        if exp == "":
            e = 1
        else:
            try:
                e = int(exp)
            except ValueError:
                raise ValueError(f"bad exponent in token {tok!r}") from None
        letters += [i if e > 0 else -i] * abs(e)
    return Word(rank, tuple(letters))


def format_word(w: Word) -> str:
    if not w.letters:
        return "1"
    return " ".join(f"a{a}" if a > 0 else f"a{-a}^-1" for a in w.letters)


def abelianize(w: Word) -> tuple[int, ...]:
    v = [0] * w.rank
    for a in w.letters:
        v[abs(a) - 1] += 1 if a > 0 else -1
    return tuple(v)


class Bivector:
    """An element of Lambda^2 Q^n, stored on the basis e_i ^ e_j with i < j."""

    __slots__ = ("rank", "coeffs")

    def __init__(self, rank: int, coeffs=None):
        self.rank = rank
        self.coeffs: dict[tuple[int, int], Fraction | int] = {}
        for (i, j), c in (coeffs or {}).items():
            self._add(i, j, c)

    def _add(self, i: int, j: int, c):
        if not (1 <= i <= self.rank and 1 <= j <= self.rank):
            raise IndexError(f"e{i}^e{j} out of range for rank {self.rank}")
        if i == j or c == 0:
            return
        if i > j:
            i, j, c = j, i, -c
        v = self.coeffs.get((i, j), 0) + c
        if v:
            self.coeffs[(i, j)] = v
        else:
            self.coeffs.pop((i, j), None)

    @classmethod
    def wedge(cls, u: Sequence, v: Sequence) -> "Bivector":
        """u ^ v for coordinate vectors u, v of equal length."""
        if len(u) != len(v):
            raise RankMismatch("vectors of different length")
        out = cls(len(u))
        for i, a in enumerate(u):
            if not a:
                continue
            for j, b in enumerate(v):
                if b and i != j:
                    out._add(i + 1, j + 1, a * b)
        return out

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.coeffs
        if not isinstance(other, Bivector):
            return NotImplemented
        return self.rank == other.rank and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.rank, frozenset(self.coeffs.items())))

    def __add__(self, other: "Bivector") -> "Bivector":
        if self.rank != other.rank:
            raise RankMismatch("bivectors of different rank")
        out = Bivector(self.rank, self.coeffs)
        for (i, j), c in other.coeffs.items():
            out._add(i, j, c)
        return out

    def __neg__(self):
        return Bivector(self.rank, {k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other: "Bivector") -> "Bivector":
        return self + (-other)

    def __rmul__(self, k):
        return Bivector(self.rank, {key: k * c for key, c in self.coeffs.items()})

    def __bool__(self):
        return bool(self.coeffs)

    def __getitem__(self, key):
        i, j = key
        if i == j:
            return 0
        if i > j:
            return -self.coeffs.get((j, i), 0)
        return self.coeffs.get((i, j), 0)

    def items(self):
        return sorted(self.coeffs.items())

    def vector(self) -> list:
        """Coordinates on e_i^e_j, pairs ordered lexicographically (i < j)."""
        n = self.rank
        return [self.coeffs.get((i, j), 0) for i in range(1, n + 1) for j in range(i + 1, n + 1)]

    def transform(self, matrix) -> "Bivector":
        """Lambda^2 of a linear map given as a matrix acting on column vectors."""
        rows = len(matrix)
        out = Bivector(rows)
        cols = [[matrix[r][c] for r in range(rows)] for c in range(self.rank)]
        for (i, j), c in self.coeffs.items():
            out = out + c * Bivector.wedge(cols[i - 1], cols[j - 1])
        return out

    def __repr__(self):
        return f"Bivector({self.rank}, {dict(self.items())})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for (i, j), c in self.items():
            mono = f"e{i}^e{j}"
            if c == 1:
                parts.append(("+", mono))
            elif c == -1:
                parts.append(("-", mono))
            elif c > 0:
                parts.append(("+", f"{c}*{mono}"))
            else:
                parts.append(("-", f"{-c}*{mono}"))
        s = parts[0][1] if parts[0][0] == "+" else "-" + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s


def content(w: Word | Sequence[int], rank: int | None = None) -> Bivector:
    """c(w) = sum over letter positions p < q of [w_p] ^ [w_q].

    Accepts an unreduced letter sequence too (with ``rank``); the value does
    not depend on the spelling.
    """
    if isinstance(w, Word):
        letters, rank = w.letters, w.rank
    else:
        letters = tuple(w)
        if rank is None:
            raise ValueError("rank required for a raw letter sequence")
    prefix = [0] * rank
    coeffs: dict[tuple[int, int], int] = {}
    for a in letters:
        g, s = abs(a), (1 if a > 0 else -1)
        for h, p in enumerate(prefix, start=1):
            if p and h != g:
                key, c = ((h, g), p * s) if h < g else ((g, h), -p * s)
                coeffs[key] = coeffs.get(key, 0) + c
        prefix[g - 1] += s
    return Bivector(rank, {k: c for k, c in coeffs.items() if c})


@dataclass(frozen=True)
class FreeHom:
    """A homomorphism F_n -> F_m given by the images of alpha_1..alpha_n."""

    source: int
    target: int
    images: tuple[Word, ...]

    def __post_init__(self):
        images = tuple(self.images)
        if len(images) != self.source:
            raise RankMismatch(f"{len(images)} images for F_{self.source}")
        for w in images:
            if w.rank != self.target:
                raise RankMismatch(f"image in F_{w.rank}, expected F_{self.target}")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, n: int) -> "FreeHom":
        return cls(n, n, tuple(Word.generator(n, i) for i in range(1, n + 1)))

    @classmethod
    def from_letters(cls, target: int, images: Sequence[Sequence[int]]) -> "FreeHom":
        return cls(len(images), target, tuple(Word(target, tuple(w)) for w in images))

    def __call__(self, w: Word) -> Word:
        return apply(self, w)

    def __mul__(self, other: "FreeHom") -> "FreeHom":
        return compose(self, other)

    def abelianization(self) -> list[list[int]]:
        """Integer target x source matrix; column i is [f(alpha_i)]."""
        cols = [abelianize(w) for w in self.images]
        return [[cols[c][r] for c in range(self.source)] for r in range(self.target)]

    def is_identity(self) -> bool:
        return all(w.letters == (i,) for i, w in enumerate(self.images, start=1))

    def __str__(self):
        return "; ".join(f"a{i} -> {w}" for i, w in enumerate(self.images, start=1))


def apply(f: FreeHom, w: Word) -> Word:
    if w.rank != f.source:
        raise RankMismatch(f"word in F_{w.rank}, hom from F_{f.source}")
    out: list[int] = []
    inv = {}
    for a in w.letters:
        img = f.images[abs(a) - 1].letters
        if a < 0:
            if a not in inv:
                inv[a] = tuple(-b for b in reversed(img))
            img = inv[a]
        out.extend(img)
    return Word(f.target, tuple(out))


def compose(f: FreeHom, g: FreeHom) -> FreeHom:
    """f o g (g is applied first)."""
    if g.target != f.source:
        raise RankMismatch(f"cannot compose F_{f.source}->F_{f.target} after F_{g.source}->F_{g.target}")
    return FreeHom(g.source, f.target, tuple(apply(f, w) for w in g.images))


def conjugation(w: Word) -> FreeHom:
    """The inner automorphism alpha_i -> w alpha_i w^-1."""
    n = w.rank
    inv = w.inverse()
    return FreeHom(n, n, tuple(w * Word.generator(n, i) * inv for i in range(1, n + 1)))


# --- lower central series certificates ------------------------------------


@dataclass(frozen=True)
class Comm:
    """A formal commutator [left, right] whose entries are words or presentations."""

    left: object
    right: object

    def word(self) -> Word:
        return commutator(presentation_word(self.left), presentation_word(self.right))


def presentation_word(p) -> Word:
    """Evaluate a Word, a Comm, or a list/tuple (product) of those."""
    if isinstance(p, Word):
        return p
    if isinstance(p, Comm):
        return p.word()
    if isinstance(p, (list, tuple)):
        if not p:
            raise ValueError("empty product has no rank; use Word.identity(n)")
        out = presentation_word(p[0])
        for q in p[1:]:
            out = out * presentation_word(q)
        return out
    raise TypeError(f"not a word presentation: {p!r}")


def _literal_commutator_splits(seg: tuple[int, ...]):
    # yields (u, v) with seg == u + v + u^-1 + v^-1 as a literal concatenation
    n = len(seg)
    if n % 2 or n == 0:
        return
    half = n // 2
    for lu in range(1, half):
        lv = half - lu
        u, v = seg[:lu], seg[lu : lu + lv]
        if seg[lu + lv : 2 * lu + lv] == tuple(-a for a in reversed(u)) and seg[2 * lu + lv :] == tuple(
            -a for a in reversed(v)
        ):
            yield u, v


def _literal_witness(letters: tuple[int, ...], depth: int, memo: dict) -> bool:
    key = (letters, depth)
    if key in memo:
        return memo[key]
    n = len(letters)
    # ok[e]: letters[:e] splits into certified blocks
    ok = [False] * (n + 1)
    ok[0] = True
    for e in range(1, n + 1):
        for s in range(e):
            if not ok[s]:
                continue
            for u, v in _literal_commutator_splits(letters[s:e]):
                if depth == 1 or _literal_witness(u, depth - 1, memo) or _literal_witness(v, depth - 1, memo):
                    ok[e] = True
                    break
            if ok[e]:
                break
    memo[key] = ok[n]
    return ok[n]


def lcs_member_witness(w, depth: int) -> bool:
    """One-sided certificate that ``w`` lies in the depth-th lower central subgroup.

    ``w`` is a Word, a ``Comm``, or a product (list/tuple) of those.  Depth 1
    accepts products of commutators; depth 2 accepts products of commutators
    [x, y] where x or y is itself depth-1 certified.  Plain words are
    certified only when they literally spell such a product.  ``False``
    carries no information about membership.
    """
    if depth not in (1, 2):
        raise ValueError("depth must be 1 or 2")
    if isinstance(w, Word):
        if not w.letters:
            return True
        return _literal_witness(w.letters, depth, {})
    if isinstance(w, Comm):
        if depth == 1:
            return True
        return lcs_member_witness(w.left, 1) or lcs_member_witness(w.right, 1)
    if isinstance(w, (list, tuple)):
        return all(lcs_member_witness(p, depth) for p in w)
    return False


# --- random generation (test and check-suite support) ----------------------


def random_word(rng: random.Random, rank: int, max_len: int) -> Word:
    length = rng.randint(0, max_len)
    return Word(rank, tuple(rng.choice((1, -1)) * rng.randint(1, rank) for _ in range(length)))


def random_hom(rng: random.Random, source: int, target: int, max_len: int) -> FreeHom:
    return FreeHom(source, target, tuple(random_word(rng, target, max_len) for _ in range(source)))


def random_automorphism(rng: random.Random, n: int, steps: int) -> tuple[FreeHom, FreeHom]:
    """A random product of elementary Nielsen moves, returned with its inverse."""
    f = g = FreeHom.identity(n)
    for _ in range(steps):
        move, move_inv = _random_nielsen_move(rng, n)
        f = compose(f, move)
        g = compose(move_inv, g)
    return f, g


def _random_nielsen_move(rng: random.Random, n: int) -> tuple[FreeHom, FreeHom]:
    gens = [Word.generator(n, i) for i in range(1, n + 1)]
    kind = rng.randrange(3) if n > 1 else 0
    if kind == 0:
        i = rng.randrange(n)
        imgs = list(gens)
        imgs[i] = gens[i].inverse()
        m = FreeHom(n, n, tuple(imgs))
        return m, m
    i, j = rng.sample(range(n), 2)
    if kind == 1:
        imgs = list(gens)
        imgs[i], imgs[j] = gens[j], gens[i]
        m = FreeHom(n, n, tuple(imgs))
        return m, m
    e = rng.choice((1, -1))
    left = rng.random() < 0.5
    fwd, back = list(gens), list(gens)
    if left:
        fwd[i] = gens[j] ** e * gens[i]
        back[i] = gens[j] ** -e * gens[i]
    else:
        fwd[i] = gens[i] * gens[j] ** e
        back[i] = gens[i] * gens[j] ** -e
    return FreeHom(n, n, tuple(fwd)), FreeHom(n, n, tuple(back))
