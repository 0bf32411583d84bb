"""Derive Dehn twist images on pi_1(Sigma_{g,1}) in a disk-with-bands model.

Sigma_{g,1} is a disk D with 2g untwisted bands attached along its boundary.
Reading counterclockwise from the basepoint the band ends are laid out as

    a1.start, b1.end, a1.end, b1.start, a2.start, b2.end, ...

which makes the boundary word [a1, b1][a2, b2]... (checked below).  A curve
is a cyclic list of signed band traversals; its pieces inside D are straight
chords.  A twist about the curve inserts a copy of it at every crossing of a
generator loop with one of those chords, with exponent the local
intersection sign.

The output is catalog text; the package validates it independently
(boundary word fixed, expected transvection).  Usage:

    python scripts/derive_twists.py 2 > src/confrep/data/catalog_g2.txt
"""

from __future__ import annotations

import math
import sys

EPS = 0.004


def layout(g):
    """Angle of each band end: (band, end) -> angle; bands are 1..2g (a_i = 2i-1, b_i = 2i)."""
    order = []
    for i in range(1, g + 1):
        a, b = 2 * i - 1, 2 * i
        order += [(a, "start"), (b, "end"), (a, "end"), (b, "start")]
    step = 2 * math.pi / (len(order) + 1)
    return {key: step * (j + 1) for j, key in enumerate(order)}


def point(angle):
    return (math.cos(angle), math.sin(angle))


def band_exit(ang, band, direction, offset):
    # strand at ``offset`` entering band at one end leaves at -offset on the other
    src, dst = ("start", "end") if direction > 0 else ("end", "start")
    return ang[(band, src)] + offset, ang[(band, dst)] - offset


def chords_of_loop(ang, traversals, offsets, based):
    """Chords (p, q) in D and the band letters between them.

    ``traversals`` is a list of signed band numbers.  For a based loop the
    first chord starts at the basepoint (angle 0) and the last one ends there.
    """
    chords, letters = [], []
    ends = []
    for t, off in zip(traversals, offsets):
        band, d = abs(t), (1 if t > 0 else -1)
        ends.append(band_exit(ang, band, d, off))
        letters.append(t)
    if based:
        prev = 0.0
        for a_in, a_out in ends:
            chords.append((prev, a_in))
            prev = a_out
        chords.append((prev, 0.0))
    else:
        n = len(ends)
        for j in range(n):
            chords.append((ends[j - 1][1], ends[j][0]))
    return chords, letters


def crossing(c1, c2):
    """Parameter along c1 and sign of the crossing of c1 with c2, or None."""
    p, q = point(c1[0]), point(c1[1])
    r, s = point(c2[0]), point(c2[1])
    dx, dy = q[0] - p[0], q[1] - p[1]
    ex, ey = s[0] - r[0], s[1] - r[1]
    den = dx * ey - dy * ex
    if abs(den) < 1e-12:
        return None
    t = ((r[0] - p[0]) * ey - (r[1] - p[1]) * ex) / den
    u = ((r[0] - p[0]) * dy - (r[1] - p[1]) * dx) / den
    if 1e-9 < t < 1 - 1e-9 and 1e-9 < u < 1 - 1e-9:
        return t, (1 if den > 0 else -1)
    return None


def free_reduce(word):
    out = []
    for a in word:
        if out and out[-1] == -a:
            out.pop()
        else:
            out.append(a)
    return out


def twist_images(g, curve, curve_offsets, power=1):
    ang = layout(g)
    c_chords, c_letters = chords_of_loop(ang, curve, curve_offsets, based=False)
    n = len(c_letters)
    # forward word of the curve read from chord j: bands j, j+1, ..., j-1
    forward = [[c_letters[(j + k) % n] for k in range(n)] for j in range(n)]
    images = []
    for gen in range(1, 2 * g + 1):
        x_chords, x_letters = chords_of_loop(ang, [gen], [0.0], based=True)
        word = []
        for idx, ch in enumerate(x_chords):
            hits = []
            for j, cc in enumerate(c_chords):
                hit = crossing(ch, cc)
                if hit:
                    hits.append((hit[0], hit[1], j))
            for _, sign, j in sorted(hits):
                ins = forward[j] if sign * power > 0 else [-a for a in reversed(forward[j])]
                word += ins
            if idx < len(x_letters):
                word.append(x_letters[idx])
        images.append(free_reduce(word))
    return images


def boundary_word(g):
    """Read the boundary of D + bands starting at the basepoint."""
    ang = layout(g)
    ends = sorted((a, key) for key, a in ang.items())
    word = []
    pos = 0.0
    while True:
        # next attachment interval counterclockwise from pos
        nxt = [(a - EPS, key) for a, key in ends if a - EPS > pos + 1e-12]
        if not nxt:
            break
        a, (band, end) = min(nxt)
        other = "start" if end == "end" else "end"
        word.append(band if end == "start" else -band)
        pos = ang[(band, other)] + EPS
    return free_reduce(word)


def fmt(word):
    if not word:
        return "1"
    return " ".join(f"a{a}" if a > 0 else f"a{-a}^-1" for a in word)


def main(g):
    zeta = []
    for i in range(1, g + 1):
        a, b = 2 * i - 1, 2 * i
        zeta += [a, b, -a, -b]
    assert boundary_word(g) == zeta, boundary_word(g)
    curves = []
    for i in range(1, g + 1):
        a, b = 2 * i - 1, 2 * i
        curves.append((f"A{i}", [a], f"twist about the a{i} curve (core of band a{i})"))
        curves.append((f"B{i}", [b], f"twist about the b{i} curve (core of band b{i})"))
    for i in range(1, g):
        b, b2 = 2 * i, 2 * i + 2
        curves.append((f"C{i}", [b, b2], f"twist about the chain curve through bands b{i} and b{i + 1}"))
    print(f"genus: {g}")
    print("# Generated by scripts/derive_twists.py (disk-with-bands crossing model).")
    print("# Each entry is validated on load: boundary word fixed and the stated class.")
    for name, curve, note in curves:
        imgs = twist_images(g, curve, [EPS * 2] * len(curve), power=-1)
        cls = [0] * (2 * g)
        for t in curve:
            cls[abs(t) - 1] += 1 if t > 0 else -1
        print()
        print(f"{name}:")
        print(f"# note: {note}")
        print(f"# class: {' '.join(map(str, cls))}")
        for i, w in enumerate(imgs, start=1):
            print(f"a{i} -> {fmt(w)}")


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 2)
