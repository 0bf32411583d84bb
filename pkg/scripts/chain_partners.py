"""Append bounding-pair partner twists E_i to a catalog via the 3-chain relation.

The chain b_i, a_i, c_i has a genus-1 neighbourhood with two boundary curves:
b_{i+1} and a curve d_i homologous to it.  The chain relation
(T_b T_a T_c)^4 = T_{b_{i+1}} T_{d_i} gives T_{d_i} = (B_i A_i C_i)^4 B_{i+1}^-1.
The result is printed as a catalog entry; the loader validates it like any
other entry, and this script also checks that it commutes with the chain.

    python scripts/chain_partners.py src/confrep/data/catalog_g2.txt >> src/confrep/data/catalog_g2.txt
"""

from __future__ import annotations

import sys

from confrep.freegroup import format_word
from confrep.mcg import load_catalog


def main(path):
    cat = load_catalog(path)
    g = cat.genus
    for i in range(1, g):
        b, a, c, b_next = (cat[f"{x}"] for x in (f"B{i}", f"A{i}", f"C{i}", f"B{i + 1}"))
        x = b * a * c
        e = x * x * x * x * b_next.inv()
        for other in (a, b, c, b_next):
            assert (e * other).phi == (other * e).phi, "partner does not commute with the chain"
        cls = [0] * (2 * g)
        cls[2 * i + 1] = 1
        print()
        print(f"E{i}:")
        print(f"# note: twist about the curve cobounding with b{i + 1} the neighbourhood of the chain b{i}, a{i}, c{i} "
              f"(from the chain relation)")
        print(f"# class: {' '.join(map(str, cls))}")
        for k, w in enumerate(e.phi.images, start=1):
            print(f"a{k} -> {format_word(w)}")


if __name__ == "__main__":
    main(sys.argv[1])
