import json
from pathlib import Path

import pytest

from confrep import mcg
from confrep.freegroup import FreeHom, Word, boundary_word, format_word, parse_word
from confrep.johnson import johnson_endo, johnson_rep, xi
from confrep.mcg import (
    BoundaryNotFixed,
    CatalogError,
    NotFoundWithinBound,
    NotSymplectic,
    TauUndefined,
    bundled_catalog,
    conjugation_by,
    parse_catalog,
    validate,
)

FIXTURES = Path(__file__).parent / "fixtures"


def hom(g, *images):
    return FreeHom(2 * g, 2 * g, tuple(parse_word(w, 2 * g) for w in images))


def test_validate_identity():
    mc = validate(FreeHom.identity(4), 2)
    assert [list(r) for r in mc.matrix] == mcg.identity_matrix(4)


def test_validate_transvection():
    mc = validate(hom(1, "a1 a2", "a2"), 1)
    assert [list(r) for r in mc.matrix] == [[1, 0], [1, 1]]


def test_validate_rejects_swap():
    with pytest.raises(BoundaryNotFixed) as info:
        validate(hom(1, "a2", "a1"), 1)
    assert format_word(info.value.image) == "a2 a1 a2^-1 a1^-1"


def test_validate_rank_mismatch():
    with pytest.raises(mcg.RankMismatch):
        validate(FreeHom.identity(3), 1)


def test_not_symplectic_detected():
    # a matrix check on its own: swapping the handles' roles inside one pair is anti-symplectic
    assert not mcg.is_symplectic([[0, 1], [1, 0]])
    assert mcg.is_symplectic([[1, 0], [1, 1]])


@pytest.mark.parametrize("g", [1, 2, 3])
def test_conjugation_by_boundary(g):
    z = boundary_word(g)
    phi = conjugation_by(z, g)
    validate(phi, g)
    assert all(b == 0 for b in xi(phi))
    j = johnson_endo(phi)
    from confrep.johnson import generators

    assert all(j(x) == x for x in generators(2 * g))


def test_conjugation_by_generator_fails():
    with pytest.raises(BoundaryNotFixed):
        validate(conjugation_by(Word.generator(2, 1), 1), 1)


def test_inline_entry_loads():
    cat = parse_catalog("genus: 1\nT1: a1 -> a1 a2; a2 -> a2\n")
    assert cat.names() == ["T1"]
    assert [list(r) for r in cat["T1"].matrix] == [[1, 0], [1, 1]]


def test_typo_names_entry():
    text = "genus: 1\nGOOD: a1 -> a1 a2; a2 -> a2\nBAD:\na1 -> a2 a1\na2 -> a2\n"
    with pytest.raises(BoundaryNotFixed) as info:
        parse_catalog(text)
    assert info.value.entry == "BAD"


def test_parse_errors_carry_line_numbers():
    with pytest.raises(CatalogError) as info:
        parse_catalog("genus: 1\nT:\na1 -> a1 b2\na2 -> a2\n")
    assert info.value.line == 3
    with pytest.raises(CatalogError) as info:
        parse_catalog("genus: 1\nT:\na1 -> a1\n")
    assert "a2" in str(info.value)
    with pytest.raises(CatalogError) as info:
        parse_catalog("T: a1 -> a1\n")
    assert info.value.line == 1


def test_class_annotation_checked():
    with pytest.raises(NotSymplectic):
        parse_catalog("genus: 1\nT:\n# class: 1 0\na1 -> a1 a2\na2 -> a2\n")


def test_empty_catalog():
    assert len(parse_catalog("")) == 0
    assert len(parse_catalog("# nothing\ngenus: 2\n")) == 0


@pytest.mark.parametrize("g", [1, 2, 3])
def test_bundled_catalogs(g):
    cat = bundled_catalog(g)
    for name in cat.names():
        e = cat.entries[name]
        assert e.note, name
        if e.homology_class is not None:
            assert [list(r) for r in e.mapping_class.matrix] == mcg.transvection(e.homology_class)
    expected = {f"{x}{i}" for x in "AB" for i in range(1, g + 1)} | {f"C{i}" for i in range(1, g)} | {"D"}
    assert expected <= set(cat.names())


def test_transvection_convention():
    assert mcg.transvection([0, 1]) == [[1, 0], [1, 1]]


def test_group_closure():
    cat = bundled_catalog(2)
    p = mcg.product(cat, "A1*C1^-1*B2*E1")
    validate(p.phi, 2)
    validate(p.inv().phi, 2)
    assert (p * p.inv()).phi.is_identity()


def test_product_order():
    cat = bundled_catalog(2)
    p = mcg.product(cat, "A1*B1")
    assert p.phi == (cat["A1"] * cat["B1"]).phi
    # A1*B1 applies B1 first
    assert p.phi(Word.generator(4, 1)) == cat["A1"].phi(cat["B1"].phi(Word.generator(4, 1)))


def test_torelli_search_basics():
    cat = bundled_catalog(1)
    found = mcg.torelli_search(cat, 4)
    assert found[0].label == ()
    assert all(mc.is_torelli() for mc in found)
    assert len({mc.phi for mc in found}) == len(found)
    assert [mc.label for mc in found] == sorted((mc.label for mc in found), key=lambda w: (len(w), w))


def test_torelli_search_is_exhaustive_g1():
    # brute force over all words of length <= 4 as an oracle
    from itertools import product as iproduct

    cat = bundled_catalog(1)
    letters = [(n, cat[n]) for n in cat.names()] + [(n + "^-1", cat[n].inv()) for n in cat.names()]
    seen = set()
    for L in range(5):
        for word in iproduct(letters, repeat=L):
            mc = mcg.identity_class(1)
            for _, h in word:
                mc = mc * h
            if mc.is_torelli():
                seen.add(mc.phi)
    assert seen == {mc.phi for mc in mcg.torelli_search(cat, 4)}


def test_witness_pinned():
    pin = json.loads((FIXTURES / "witness_g2.json").read_text())
    mc, i, value = mcg.nonsymplectic_witness(bundled_catalog(2), pin["bound"])
    assert list(mc.label) == pin["word"]
    assert i + 1 == pin["index"]
    assert str(value) == pin["xi"]
    assert [format_word(w) for w in mc.phi.images] == pin["images"]
    assert mc.is_torelli()
    assert not johnson_rep(mc.phi, inverse=mc.inverse).is_identity()


def test_witness_errors():
    with pytest.raises(ValueError):
        mcg.nonsymplectic_witness(bundled_catalog(1), 4)
    # without the bounding pair partner the short search finds nothing
    text = (Path(mcg.__file__).parent / "data" / "catalog_g2.txt").read_text()
    cut = parse_catalog(text[: text.index("\nE1:")])
    with pytest.raises(NotFoundWithinBound):
        mcg.nonsymplectic_witness(cut, 4)


def test_tau_collection_examples():
    a1, a2 = Word.generator(2, 1), Word.generator(2, 2)
    from confrep.freegroup import Bivector, commutator

    assert mcg.collect_commutators(commutator(a1, a2)) == Bivector(2, {(1, 2): 1})
    assert mcg.collect_commutators(commutator(a2, a1)) == Bivector(2, {(1, 2): -1})
    with pytest.raises(TauUndefined):
        mcg.collect_commutators(a1)
    with pytest.raises(TauUndefined):
        mcg.tau(hom(1, "a1 a2", "a2"))


def test_xi_twice_tau_on_torelli():
    for mc in mcg.torelli_search(bundled_catalog(2), 4):
        assert mcg.xi_equals_twice_tau(mc.phi)
