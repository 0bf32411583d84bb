"""Seeded verification suites behind ``confrep check``.

Each suite returns a SuiteResult; ``ok`` is exact (no tolerances anywhere).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product as iproduct
from math import comb

from . import cohomology, extalg, johnson, mcg
from .freegroup import (
    Bivector,
    Comm,
    FreeHom,
    Word,
    abelianize,
    boundary_word,
    commutator,
    compose,
    content,
    random_hom,
    random_word,
)
from .johnson import AElem, generators, johnson_endo, xi


@dataclass
class SuiteResult:
    name: str
    ok: bool
    cases: int
    details: list[str] = field(default_factory=list)

    def line(self) -> str:
        extra = "; ".join(self.details)
        return f"{'PASS' if self.ok else 'FAIL'} {self.name} cases={self.cases}" + (f" {extra}" if extra else "")


def _insert_cancelling(rng: random.Random, letters: tuple[int, ...], rank: int, k: int) -> list[int]:
    out = list(letters)
    for _ in range(k):
        pos = rng.randint(0, len(out))
        a = rng.choice((1, -1)) * rng.randint(1, rank)
        out[pos:pos] = [a, -a]
    return out


def content_properties(seed: int, cases: int = 10_000, max_rank: int = 6, max_len: int = 40) -> SuiteResult:
    rng = random.Random(seed)
    failures = []
    for t in range(cases):
        n = rng.randint(1, max_rank)
        a, b, c = (random_word(rng, n, max_len) for _ in range(3))
        kind = t % 5
        if kind == 0:
            ok = content(_insert_cancelling(rng, a.letters, n, rng.randint(1, 5)), n) == content(a)
        elif kind == 1:
            ok = content(a.inverse()) == -content(a)
        elif kind == 2:
            ok = content(a * b) == content(a) + content(b) + Bivector.wedge(abelianize(a), abelianize(b))
        elif kind == 3:
            ok = content(commutator(a, b)) == 2 * Bivector.wedge(abelianize(a), abelianize(b))
        else:
            ok = content(commutator(a, commutator(b, c))) == 0
        if not ok:
            failures.append(f"case {t} kind {kind}")
    return SuiteResult("content-properties", not failures, cases, failures[:3])


def boundary_content(seed: int, g_max: int = 6) -> SuiteResult:
    bad = [g for g in range(1, g_max + 1) if content(boundary_word(g)) != 2 * mcg.omega_bivector(g)]
    return SuiteResult("boundary-content", not bad, g_max, [f"g={g}" for g in bad])


def functor_law(seed: int, cases: int = 1000, max_rank: int = 4, max_len: int = 8) -> SuiteResult:
    rng = random.Random(seed)
    failures = []
    for t in range(cases):
        n, m, k = (rng.randint(1, max_rank) for _ in range(3))
        phi = random_hom(rng, n, m, max_len)
        psi = random_hom(rng, m, k, max_len)
        lhs = johnson_endo(compose(psi, phi))
        jpsi, jphi = johnson_endo(psi), johnson_endo(phi)
        if not all(lhs(x) == jpsi(jphi(x)) for x in generators(n)):
            failures.append(f"functor case {t}")
        # xi(psi phi)(e) = xi(psi)([phi] e) + Lambda^2[psi] xi(phi)(e), on e = e_i
        mphi, mpsi = phi.abelianization(), psi.abelianization()
        xpsi, xphi = xi(psi), xi(phi)
        for i, lhs_i in enumerate(xi(compose(psi, phi))):
            first = Bivector(k)
            for j in range(m):
                if mphi[j][i]:
                    first = first + mphi[j][i] * xpsi[j]
            if lhs_i != first + xphi[i].transform(mpsi):
                failures.append(f"crossed-hom case {t}")
                break
    return SuiteResult("functor-law", not failures, cases, failures[:3])


def inner_automorphism(seed: int, n_max: int = 6) -> SuiteResult:
    bad = []
    for n in range(2, n_max + 1):
        a1 = Word.generator(n, 1)
        phi = FreeHom(n, n, tuple(a1 * Word.generator(n, i) * a1.inverse() for i in range(1, n + 1)))
        j = johnson_endo(phi)
        for i in range(2, n + 1):
            expect = AElem.y(n, i) + 2 * (AElem.x(n, 1) * AElem.x(n, i))
            if j(AElem.y(n, i)) != expect:
                bad.append(f"n={n} i={i}")
    return SuiteResult("inner-automorphism", not bad, n_max - 1, bad)


def koszul(seed: int, n_max: int = 4, max_y: int = 4) -> SuiteResult:
    bad = []
    cases = 0
    for n in range(1, n_max + 1):
        for (k, p), d in johnson.koszul_homology_slices(n, max_y).items():
            cases += 1
            if d != (1 if (k, p) == (0, 0) else 0):
                bad.append(f"n={n} (k,p)=({k},{p}) dim {d}")
    return SuiteResult("koszul", not bad, cases, bad[:3])


def lefschetz(seed: int, g_max: int = 5) -> SuiteResult:
    bad = []
    for g in range(0, g_max + 1):
        for k in range(2 * g + 1):
            v, kk = extalg.cokernel_dim(g, k), extalg.kernel_dim(g, 2 * g - k)
            if v != kk or (k > g and v) or (extalg.kernel_dim(g, k) and k < g):
                bad.append(f"g={g} k={k}")
    return SuiteResult("lefschetz", not bad, g_max + 1, bad[:3])


def oracle(seed: int, g_max: int = 3, i_max: int = 8, n_max: int = 6) -> SuiteResult:
    bad = []
    cases = 0
    for g, i, n in iproduct(range(g_max + 1), range(i_max + 1), range(n_max + 1)):
        cases += 1
        a, b = len(cohomology.slice_basis(g, i, n)), cohomology.brute_force_dim(g, i, n)
        if a != b:
            bad.append(f"(g,i,n)=({g},{i},{n}) {a} vs {b}")
    return SuiteResult("oracle", not bad, cases, bad[:3])


def known_tables(seed: int) -> SuiteResult:
    bad = []
    t0 = cohomology.dims_table(0, 6, 6)
    for i in range(7):
        for n in range(7):
            expect = 1 if i == 0 else (1 if i == 1 and n >= 2 else 0)
            if t0[i][n] != expect:
                bad.append(f"g=0 ({i},{n})")
    if [row[1] for row in cohomology.dims_table(1, 4, 1)] != [1, 2, 0, 0, 0]:
        bad.append("g=1 n=1")
    for g in range(1, 5):
        if len(cohomology.slice_basis(g, 2, 2)) != 2 * g + comb(2 * g, 2) - 1:
            bad.append(f"H2(C2) g={g}")
    return SuiteResult("known-tables", not bad, 49 + 1 + 4, bad[:3])


def nonsymplectic(seed: int, g: int = 2, bound: int = 12, catalog: mcg.TwistCatalog | None = None) -> SuiteResult:
    cat = catalog or mcg.bundled_catalog(g)
    try:
        mc, i, value = mcg.nonsymplectic_witness(cat, bound)
    except mcg.NotFoundWithinBound as exc:
        return SuiteResult("nonsymplectic", False, 0, [str(exc)])
    nontrivial = not cohomology.act(mc, cohomology.slice_basis(cat.genus, 2, 2)).is_identity()
    ok = mc.is_torelli() and mcg.outside_omega_line(value, cat.genus) and nontrivial
    return SuiteResult("nonsymplectic", ok, 1, [f"witness={mc.name()}", f"i={i + 1}", f"xi={value}"])


def tau_identity(seed: int, g: int = 2, bound: int = 4, catalog: mcg.TwistCatalog | None = None) -> SuiteResult:
    cat = catalog or mcg.bundled_catalog(g)
    found = mcg.torelli_search(cat, bound)
    bad = [mc.name() for mc in found if not mcg.xi_equals_twice_tau(mc.phi)]
    return SuiteResult("tau", not bad, len(found), bad[:3])


def j2_inputs(g: int) -> list[tuple[str, mcg.MappingClass, list]]:
    """J(2)-certified mapping classes with their certificates.

    For handles s..t the generators of those handles are conjugated by
    z = [a_{2s-1}, a_{2s}]...[a_{2t-1}, a_{2t}] (or by z^-1) and the rest are
    fixed; s = 1, t = g is the boundary twist.  The certificate of alpha_i
    is the presentation [alpha_i^-1, z] with z a product of commutators.
    """
    out = []
    n = 2 * g
    for s, t, e in iproduct(range(1, g + 1), range(1, g + 1), (1, -1)):
        if t < s:
            continue
        pres = [Comm(Word.generator(n, 2 * h - 1), Word.generator(n, 2 * h)) for h in range(s, t + 1)]
        if e < 0:
            pres = [Comm(c.right, c.left) for c in reversed(pres)]
        z = Word(n, ())
        for c in pres:
            z = z * c.word()
        imgs, certs = [], []
        for i in range(1, n + 1):
            a = Word.generator(n, i)
            if 2 * s - 1 <= i <= 2 * t:
                imgs.append(z * a * z.inverse())
                certs.append(Comm(a.inverse(), pres))
            else:
                imgs.append(a)
                certs.append(Word.identity(n))
        mc = mcg.validate(FreeHom(n, n, tuple(imgs)), g)
        out.append((f"handles{s}-{t}{'^-1' if e < 0 else ''}", mc, certs))
    return out


def j2(seed: int, g_max: int = 2, i_max: int = 4, n_max: int = 4) -> SuiteResult:
    bad = []
    cases = 0
    for g in range(1, g_max + 1):
        for name, mc, certs in j2_inputs(g):
            cases += 1
            if not cohomology.j2_trivial_check(mc, i_max, n_max, certs):
                bad.append(f"g={g} {name}")
    return SuiteResult("j2", not bad, cases, bad)


def homomorphism(seed: int, g: int = 2, cases: int = 100, max_factors: int = 3, max_dim: int = 50) -> SuiteResult:
    rng = random.Random(seed)
    cat = mcg.bundled_catalog(g)
    names = cat.names()
    slices = [(i, n) for i in range(5) for n in range(5) if 0 < len(cohomology.slice_basis(g, i, n)) <= max_dim]
    bad = []

    def rand_expr():
        k = rng.randint(1, max_factors)
        return "*".join(rng.choice(names) + rng.choice(("", "^-1")) for _ in range(k))

    for t in range(cases):
        e1, e2 = rand_expr(), rand_expr()
        p, q = mcg.product(cat, e1), mcg.product(cat, e2)
        i, n = slices[t % len(slices)]
        b = cohomology.slice_basis(g, i, n)
        if cohomology.act(p * q, b) != cohomology.act(p, b) @ cohomology.act(q, b):
            bad.append(f"{e1} | {e2} on ({i},{n})")
    return SuiteResult("homomorphism", not bad, cases, bad[:3])


SUITES = {
    "content-properties": content_properties,
    "boundary-content": boundary_content,
    "functor-law": functor_law,
    "inner-automorphism": inner_automorphism,
    "koszul": koszul,
    "lefschetz": lefschetz,
    "oracle": oracle,
    "known-tables": known_tables,
    "nonsymplectic": nonsymplectic,
    "tau": tau_identity,
    "j2": j2,
    "homomorphism": homomorphism,
}
