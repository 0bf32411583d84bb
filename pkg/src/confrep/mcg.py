"""Mapping classes of Sigma_{g,1} as automorphisms of F_{2g} fixing the boundary word.

Catalog files hold explicit twist images as data.  Every entry is validated
when loaded (boundary word fixed, symplectic abelianization, and the
transvection of its ``# class:`` annotation when one is given).

Products are written left to right as compositions: ``T1*T2`` is T1 o T2,
so T2 acts first.  This matches ``FreeHom.__mul__`` and makes every
representation in the package a left action.
"""

from __future__ import annotations

import re
from collections import defaultdict
from dataclasses import dataclass, field
from importlib import resources
from math import ceil
from pathlib import Path
from typing import Sequence

from .freegroup import (
    Bivector,
    FreeHom,
    RankMismatch,
    Word,
    abelianize,
    apply,
    boundary_word,
    compose,
    conjugation,
    format_word,
    parse_word,
)
from .johnson import InvertibilityUnverified, certify_automorphism, nielsen_inverse, xi


class BoundaryNotFixed(ValueError):
    def __init__(self, image: Word, entry: str | None = None):
        self.image = image
        self.entry = entry
        where = f"entry {entry}: " if entry else ""
        super().__init__(f"{where}boundary word is sent to {format_word(image)}")


class NotSymplectic(ValueError):
    pass


class CatalogError(ValueError):
    """Malformed catalog text; ``line`` is 1-based (None for whole-file problems)."""

    def __init__(self, message: str, line: int | None = None, entry: str | None = None):
        self.line, self.entry = line, entry
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)


class NotFoundWithinBound(RuntimeError):
    def __init__(self, bound: int):
        self.bound = bound
        super().__init__(f"no witness among products of length <= {bound}")


class TauUndefined(ValueError):
    pass


# --- symplectic bookkeeping -------------------------------------------------------


def symplectic_form(g: int) -> list[list[int]]:
    """Omega: g diagonal blocks [[0, 1], [-1, 0]]."""
    n = 2 * g
    om = [[0] * n for _ in range(n)]
    for i in range(g):
        om[2 * i][2 * i + 1] = 1
        om[2 * i + 1][2 * i] = -1
    return om


def pairing(u: Sequence[int], v: Sequence[int]) -> int:
    """<u, v> = u^T Omega v."""
    return sum(u[2 * i] * v[2 * i + 1] - u[2 * i + 1] * v[2 * i] for i in range(len(u) // 2))


def is_symplectic(mat: Sequence[Sequence[int]]) -> bool:
    n = len(mat)
    cols = [[mat[r][c] for r in range(n)] for c in range(n)]
    om = symplectic_form(n // 2)
    return all(pairing(cols[i], cols[j]) == om[i][j] for i in range(n) for j in range(n))


def transvection(gamma: Sequence[int]) -> list[list[int]]:
    """Matrix of x -> x + <x, gamma> gamma."""
    n = len(gamma)
    out = []
    for r in range(n):
        row = []
        for c in range(n):
            e = [int(k == c) for k in range(n)]
            row.append(e[r] + pairing(e, gamma) * gamma[r])
        out.append(row)
    return out


def identity_matrix(n: int) -> list[list[int]]:
    return [[int(r == c) for c in range(n)] for r in range(n)]


# --- mapping classes ----------------------------------------------------------------


@dataclass(frozen=True)
class MappingClass:
    genus: int
    phi: FreeHom
    inverse: FreeHom | None = field(default=None, compare=False)
    matrix: tuple[tuple[int, ...], ...] = field(default=(), compare=False)
    label: tuple[str, ...] | None = field(default=None, compare=False)

    @property
    def n(self) -> int:
        return 2 * self.genus

    def __mul__(self, other: "MappingClass") -> "MappingClass":
        if other.genus != self.genus:
            raise RankMismatch(f"genus {self.genus} vs {other.genus}")
        inv = None
        if self.inverse is not None and other.inverse is not None:
            inv = compose(other.inverse, self.inverse)
        label = None
        if self.label is not None and other.label is not None:
            label = self.label + other.label
        phi = compose(self.phi, other.phi)
        return MappingClass(self.genus, phi, inv, _matrix(phi), label)

    def inv(self) -> "MappingClass":
        back = certify_automorphism(self.phi, self.inverse)
        label = None if self.label is None else tuple(_invert_letter(s) for s in reversed(self.label))
        return MappingClass(self.genus, back, self.phi, _matrix(back), label)

    def is_torelli(self) -> bool:
        return [list(r) for r in self.matrix] == identity_matrix(self.n)

    def name(self) -> str:
        return "*".join(self.label) if self.label else ("1" if self.label == () else str(self.phi))


def _matrix(phi: FreeHom) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(r) for r in phi.abelianization())


def _invert_letter(s: str) -> str:
    return s[:-3] if s.endswith("^-1") else s + "^-1"


def validate(phi: FreeHom, g: int, inverse: FreeHom | None = None, entry: str | None = None) -> MappingClass:
    """Check phi(zeta_g) = zeta_g and [phi] in Sp_{2g}(Z); returns the mapping class."""
    if phi.source != 2 * g or phi.target != 2 * g:
        raise RankMismatch(f"genus {g} needs an endomorphism of F_{2 * g}, got F_{phi.source} -> F_{phi.target}")
    zeta = boundary_word(g)
    image = apply(phi, zeta)
    if image != zeta:
        raise BoundaryNotFixed(image, entry)
    mat = _matrix(phi)
    if not is_symplectic(mat):
        raise NotSymplectic(f"{'entry ' + entry + ': ' if entry else ''}abelianization is not symplectic")
    if inverse is not None:
        certify_automorphism(phi, inverse)
    return MappingClass(g, phi, inverse, mat)


def conjugation_by(w: Word, g: int) -> FreeHom:
    if w.rank != 2 * g:
        raise RankMismatch(f"word in F_{w.rank}, genus {g}")
    return conjugation(w)


def identity_class(g: int) -> MappingClass:
    e = FreeHom.identity(2 * g)
    return MappingClass(g, e, e, _matrix(e), ())


# --- catalogs -------------------------------------------------------------------


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    mapping_class: MappingClass
    note: str = ""
    homology_class: tuple[int, ...] | None = None
    line: int = 0


@dataclass
class TwistCatalog:
    genus: int
    entries: dict[str, CatalogEntry] = field(default_factory=dict)

    def __getitem__(self, name: str) -> MappingClass:
        return self.entries[name].mapping_class

    def __contains__(self, name: str) -> bool:
        return name in self.entries

    def __len__(self):
        return len(self.entries)

    def names(self) -> list[str]:
        return sorted(self.entries)


_NAME = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)\s*:(.*)$")
_IMAGE = re.compile(r"^a(\d+)\s*->\s*(.*)$")


def parse_catalog(text: str) -> TwistCatalog:
    genus = None
    raw: list[dict] = []
    cur = None
    for lineno, line in enumerate(text.splitlines(), start=1):
        body, hashmark, comment = line.partition("#")
        body = body.strip()
        comment = comment.strip()
        if hashmark and cur is not None and not body:
            key, colon, value = comment.partition(":")
            if colon and key.strip() == "class":
                try:
                    cur["class"] = tuple(int(t) for t in value.split())
                except ValueError:
                    raise CatalogError(f"bad class annotation {value.strip()!r}", lineno, cur["name"]) from None
                continue
            if colon and key.strip() == "note":
                cur["note"] = value.strip()
                continue
        if not body:
            continue
        if genus is None:
            m = re.fullmatch(r"genus\s*:\s*(-?\d+)", body)
            if not m:
                raise CatalogError("expected header 'genus: <int>'", lineno)
            genus = int(m.group(1))
            if genus < 0:
                raise CatalogError("genus must be non-negative", lineno)
            continue
        m = _NAME.match(body)
        if m and "->" not in m.group(1):
            name, rest = m.group(1), m.group(2).strip()
            if any(e["name"] == name for e in raw):
                raise CatalogError(f"duplicate entry {name}", lineno, name)
            cur = {"name": name, "line": lineno, "images": {}, "note": "", "class": None}
            raw.append(cur)
            for part in filter(None, (p.strip() for p in rest.split(";"))):
                _add_image(cur, part, lineno, genus)
            continue
        if cur is None:
            raise CatalogError(f"image line outside an entry: {body!r}", lineno)
        _add_image(cur, body, lineno, genus)
    if genus is None:
        if raw:
            raise CatalogError("missing genus header")
        return TwistCatalog(0)
    cat = TwistCatalog(genus)
    n = 2 * genus
    for e in raw:
        missing = [i for i in range(1, n + 1) if i not in e["images"]]
        if missing:
            raise CatalogError(f"entry {e['name']} has no image for a{missing[0]}", e["line"], e["name"])
        phi = FreeHom(n, n, tuple(e["images"][i] for i in range(1, n + 1)))
        cat.entries[e["name"]] = _validated_entry(e, phi, genus)
    return cat


def _add_image(cur: dict, text: str, lineno: int, genus: int):
    m = _IMAGE.match(text)
    if not m:
        raise CatalogError(f"expected 'a<i> -> <word>', got {text!r}", lineno, cur["name"])
    i, n = int(m.group(1)), 2 * genus
    if not 1 <= i <= n:
        raise CatalogError(f"generator a{i} out of range for genus {genus}", lineno, cur["name"])
    if i in cur["images"]:
        raise CatalogError(f"second image for a{i} in entry {cur['name']}", lineno, cur["name"])
    try:
        cur["images"][i] = parse_word(m.group(2), n)
    except (ValueError, IndexError) as exc:
        raise CatalogError(f"{exc}", lineno, cur["name"]) from None


def _validated_entry(e: dict, phi: FreeHom, genus: int) -> CatalogEntry:
    name = e["name"]
    mc = validate(phi, genus, entry=name)
    try:
        inverse = nielsen_inverse(phi)
    except InvertibilityUnverified:
        # boundary-type entries are inner automorphisms: undo the conjugation
        inverse = _inner_inverse(phi)
        if inverse is None:
            raise
    cls = e["class"]
    if cls is not None:
        if len(cls) != 2 * genus:
            raise CatalogError(f"class annotation of {name} has length {len(cls)}", e["line"], name)
        if [list(r) for r in mc.matrix] != transvection(cls):
            raise NotSymplectic(f"entry {name}: matrix is not the transvection of class {' '.join(map(str, cls))}")
    mc = MappingClass(genus, phi, inverse, mc.matrix, (name,))
    return CatalogEntry(name, mc, e["note"], cls, e["line"])


def _inner_inverse(phi: FreeHom) -> FreeHom | None:
    # phi = conjugation by w with w read off as the common prefix of alpha_1's image
    n = phi.source
    w1 = phi.images[0].letters
    for k in range(len(w1) + 1):
        w = Word(n, w1[:k])
        if conjugation(w) == phi:
            inv = conjugation(w.inverse())
            certify_automorphism(phi, inv)
            return inv
    return None


def load_catalog(path: str | Path) -> TwistCatalog:
    return parse_catalog(Path(path).read_text(encoding="utf-8"))


def bundled_catalog(g: int) -> TwistCatalog:
    """The packaged catalog for genus 1, 2 or 3."""
    ref = resources.files("confrep") / "data" / f"catalog_g{g}.txt"
    if not ref.is_file():
        raise FileNotFoundError(f"no bundled catalog for genus {g}")
    return parse_catalog(ref.read_text(encoding="utf-8"))


_TOKEN = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)(?:\^(-?\d+))?$")


def product(catalog: TwistCatalog, expr: str) -> MappingClass:
    """Evaluate ``T1*T2^-1*...`` (composition, rightmost factor acts first); ``1`` is the identity."""
    out = identity_class(catalog.genus)
    expr = expr.strip()
    if expr in ("", "1"):
        return out
    for tok in expr.split("*"):
        tok = tok.strip()
        m = _TOKEN.match(tok)
        if not m:
            raise KeyError(f"bad factor {tok!r}")
        name, exp = m.group(1), int(m.group(2) or 1)
        if name not in catalog:
            raise KeyError(f"unknown catalog entry {name!r}")
        base = catalog[name] if exp > 0 else catalog[name].inv()
        for _ in range(abs(exp)):
            out = out * base
    return out


# --- Torelli search ----------------------------------------------------------------


def _letters(catalog: TwistCatalog) -> list[tuple[str, MappingClass]]:
    out = []
    for name in catalog.names():
        mc = catalog[name]
        out.append((name, mc))
        out.append((name + "^-1", mc.inv()))
    return out


def _ball(catalog: TwistCatalog, radius: int) -> list[MappingClass]:
    """Distinct elements of word length <= radius in BFS order (first word found kept)."""
    start = identity_class(catalog.genus)
    letters = _letters(catalog)
    seen = {start.phi.images}
    ball, frontier = [start], [start]
    for _ in range(radius):
        nxt = []
        for u in frontier:
            for _, h in letters:
                p = u * h
                if p.phi.images not in seen:
                    seen.add(p.phi.images)
                    nxt.append(p)
        ball += nxt
        frontier = nxt
    return ball


def _sort_key(mc: MappingClass):
    return (len(mc.label), mc.label)


def torelli_search(catalog: TwistCatalog, max_length: int) -> list[MappingClass]:
    """All distinct products of at most ``max_length`` catalog letters with identity matrix.

    Every word of length <= L splits as u * v^-1 with |u|, |v| <= ceil(L/2),
    and it is Torelli exactly when [u] = [v]; so the search enumerates the
    ball of that radius once and pairs elements by matrix.  Each element is
    labelled by the shortest (then lexicographically first) word produced this
    way, and the list is sorted by that label.
    """
    if max_length < 0:
        return []
    ball = _ball(catalog, ceil(max_length / 2))
    by_matrix: dict = defaultdict(list)
    for u in ball:
        by_matrix[u.matrix].append(u)
    best: dict = {}
    for group in by_matrix.values():
        for u in group:
            for v in group:
                if len(u.label) + len(v.label) > max_length:
                    continue
                p = u * v.inv()
                key = p.phi.images
                if key not in best or _sort_key(p) < _sort_key(best[key]):
                    best[key] = p
    return sorted(best.values(), key=_sort_key)


def omega_bivector(g: int) -> Bivector:
    return Bivector(2 * g, {(2 * k - 1, 2 * k): 1 for k in range(1, g + 1)})


def outside_omega_line(b: Bivector, g: int) -> bool:
    """True when b is not a rational multiple of omega, i.e. {b, omega} has rank 2."""
    if g == 0:
        return False
    return b != b[(1, 2)] * omega_bivector(g)


def nonsymplectic_witness(catalog: TwistCatalog, max_length: int) -> tuple[MappingClass, int, Bivector]:
    """First Torelli product (in search order) with some xi(phi)(e_i) outside Q omega.

    Lengths are tried in increasing order so the witness is a shortest one.
    """
    if catalog.genus < 2:
        raise ValueError("a non-symplectic witness needs genus >= 2")
    for L in range(max_length + 1):
        for mc in torelli_search(catalog, L):
            for i, b in enumerate(xi(mc.phi)):
                if outside_omega_line(b, catalog.genus):
                    return mc, i, b
    raise NotFoundWithinBound(max_length)


# --- tau by commutator collection ------------------------------------------------------


def collect_commutators(w: Word) -> Bivector:
    """j(w) in Lambda^2 for w with zero abelianization.

    Sort the letters by generator index with adjacent swaps.  Each swap
    xy -> yx [x^-1, y^-1] emits a commutator whose class is [x] ^ [y]; the
    emitted commutators are central modulo the third lower central term, so
    they are collected on the right.  Once sorted the word is
    alpha_1^0 ... alpha_n^0, so the sum of the emitted classes is j(w).
    """
    if any(abelianize(w)):
        raise TauUndefined(f"{format_word(w)} has non-zero abelianization")
    n = w.rank
    coeffs: dict[tuple[int, int], int] = defaultdict(int)
    # cnt[h] = signed count of letters with index h seen so far; every earlier
    # letter with a larger index is swapped past the current one
    cnt = [0] * (n + 1)
    for a in w.letters:
        i, s = abs(a), (1 if a > 0 else -1)
        for h in range(i + 1, n + 1):
            if cnt[h]:
                # [alpha_h] ^ [alpha_i] = -e_i ^ e_h
                coeffs[(i, h)] -= cnt[h] * s
        cnt[i] += s
    return Bivector(n, {k: c for k, c in coeffs.items() if c})


def tau(phi: FreeHom) -> list[Bivector]:
    """tau(phi)(e_i) = j(phi(alpha_i) alpha_i^-1) for phi acting trivially on homology."""
    n = phi.source
    if [list(r) for r in phi.abelianization()] != identity_matrix(n):
        raise TauUndefined("tau undefined for this presentation: phi is not Torelli")
    return [collect_commutators(w * Word.generator(n, i).inverse()) for i, w in enumerate(phi.images, start=1)]


def xi_equals_twice_tau(phi: FreeHom) -> bool:
    return all(a == 2 * b for a, b in zip(xi(phi), tau(phi)))


def j2_certificate(phi: FreeHom) -> list[Word]:
    """h_i = alpha_i^-1 phi(alpha_i), the data a J(2) certificate is about."""
    n = phi.source
    return [Word.generator(n, i).inverse() * w for i, w in enumerate(phi.images, start=1)]


__all__ = [
    "BoundaryNotFixed",
    "CatalogEntry",
    "CatalogError",
    "MappingClass",
    "NotFoundWithinBound",
    "NotSymplectic",
    "TauUndefined",
    "TwistCatalog",
    "bundled_catalog",
    "collect_commutators",
    "conjugation_by",
    "identity_class",
    "is_symplectic",
    "j2_certificate",
    "load_catalog",
    "nonsymplectic_witness",
    "omega_bivector",
    "outside_omega_line",
    "pairing",
    "parse_catalog",
    "product",
    "symplectic_form",
    "tau",
    "torelli_search",
    "transvection",
    "validate",
    "xi_equals_twice_tau",
]
