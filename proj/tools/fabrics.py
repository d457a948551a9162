#!/usr/bin/env python3
"""Fabric geometries for the corpus, written out through cellgen."""

import math
import sys
from fractions import Fraction as F
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent))

from cellgen import Fabric, Strand, compile_fabric, flip_z, ring, scale, translate  # noqa: E402

# One knitted loop of a course at height 0, one stitch wide, travelling in +x.
# Legs lie toward the face, the head in the middle layer, the feet and
# sinkers toward the back; the head reaches into the course above.
KNIT = [
    (0.0, 0.0, 0),
    (0.25, 0.15, -1),
    (0.27, 0.22, 1),
    (0.3, 0.5, 1),
    (0.2, 1.2, 0),
    (0.5, 1.45, 0),
    (0.8, 1.2, 0),
    (0.7, 0.5, 1),
    (0.73, 0.22, 1),
    (0.75, 0.15, -1),
]
PURL = flip_z(KNIT)


def course(stitches, name, yarn):
    """A course built from a sequence of KNIT/PURL loops, one per unit width."""
    pts = []
    for k, st in enumerate(stitches):
        pts += translate(st, k, 0)
    return Strand(name, yarn, pts, (len(stitches), 0))


def jersey(title="single jersey, face", stitch=KNIT, u=(1, 0), v=(0, 1), yarn="t"):
    return Fabric(title, [course([stitch], "a", yarn)], u=u, v=v)


def woven(title, over, warps, wefts, u, v, step=F(1, 2), yarns=("e", "p"), halves=None, down=False):
    """A weave with warps along y and wefts along x, one thread per `step`.

    `warps` lists (name, i, n): the warp at x = (i + 1/2) step, drawn across
    wefts i.. up to n of them before it repeats; `wefts` likewise (name, j, n).
    `over(i, j)` says whether warp i lies over weft j. With `down` the warps
    run in the -y direction.
    """
    d = step * F(3, 10)
    strands = []
    for name, i, n in warps:
        x = (i + F(1, 2)) * step
        pts = []
        for j in range(n):
            z = 1 if over(i, j) else -1
            y = (j + F(1, 2)) * step
            pts += [(x, y - d, z), (x, y + d, z)]
        if down:
            strands.append(Strand(name, yarns[0], pts[::-1], (0, -n * step)))
        else:
            strands.append(Strand(name, yarns[0], pts, (0, n * step)))
    for name, j, n in wefts:
        y = (j + F(1, 2)) * step
        pts = []
        for i in range(n):
            z = -1 if over(i, j) else 1
            x = (i + F(1, 2)) * step
            pts += [(x - d, y, z), (x + d, y, z)]
        strands.append(Strand(name, yarns[1], pts, (n * step, 0)))
    return Fabric(title, strands, u=u, v=v, halves=halves or {})


def plain_weave(minimal=False):
    over = lambda i, j: (i + j) % 2 == 1
    halves = {"e": "a", "p": "b"}
    if minimal:
        return woven("plain weave, minimal cell", over, [("e", 0, 2)], [("p", 0, 2)],
                     (1, 0), (F(1, 2), F(1, 2)), halves=halves)
    return woven("plain weave", over, [("e", 0, 2), ("f", 1, 2)], [("p", 0, 2), ("q", 1, 2)],
                 (1, 0), (0, 1), halves=halves)


def twill(minimal=False):
    # 1/2 twill: each warp passes over one weft and under the next two, the
    # pattern stepping by one thread per row. Warps run downward.
    over = lambda i, j: (i - j) % 3 == 0
    if minimal:
        return woven("1/2 twill, minimal cell", over, [("e", 0, 3)], [("p", 0, 3)],
                     (3, 0), (1, 1), step=1, halves={"e": "a", "p": "b"}, down=True)
    return woven("1/2 twill", over, [(f"e{i}", i, 3) for i in range(3)], [(f"p{j}", j, 3) for j in range(3)],
                 (3, 0), (0, 3), step=1, halves={"e": "a", "p": "b"}, down=True)


def leno():
    # A pair of warp ends: the ground end g runs straight over both picks, the
    # doup end d runs under them and crosses over g between picks, from one
    # side to the other and back.
    picks = [Strand(n, "p", [(0.1, y, 0), (0.9, y, 0)], (1, 0)) for n, y in (("w", 0.25), ("v", 0.75))]
    ground = Strand("g", "e", [(0.4, 0.1, 1), (0.4, 0.9, 1)], (0, 1))
    doup = Strand("d", "e", [
        (0.2, 0.1, -1), (0.2, 0.4, -1), (0.3, 0.45, 2), (0.5, 0.55, 2), (0.6, 0.6, -1),
        (0.6, 0.9, -1), (0.5, 0.95, 2), (0.3, 1.05, 2),
    ], (0, 1))
    return Fabric("leno weave", picks + [ground, doup], halves={"e": "a", "p": "b"})


def triaxial(cyclic=1):
    # Three families of threads in the directions u, v and -u-v, drawn on the
    # lattice coordinates; the lines never meet three at a time. Each thread
    # alternates over and under, so that u lies over v, v over w and w over u.
    z = lambda over: cyclic if over else -cyclic
    tu = Strand("u", "e", [(0.4, 0.5, z(1)), (0.6, 0.5, z(1)), (0.9, 0.5, z(0)), (1.1, 0.5, z(0))], (1, 0))
    tv = Strand("v", "f", [(0.5, 0.4, z(0)), (0.5, 0.6, z(0)), (0.5, 0.9, z(1)), (0.5, 1.1, z(1))], (0, 1))
    tw = Strand("w", "g", [(1.1, 0.6, z(1)), (0.9, 0.4, z(1)), (0.6, 0.1, z(0)), (0.4, -0.1, z(0))], (-1, -1))
    return Fabric("triaxial weave", [tu, tv, tw], halves={"e": "a", "f": "b", "g": "c"})


def straight(name, yarn, start, direction, events, d=F(1, 50)):
    """A straight thread through `start` with period `direction`; `events`
    lists (t, z): the thread has height z around start + t * direction."""
    (x0, y0), (dx, dy) = start, direction
    pts = []
    for t, z in sorted(events):
        for s in (t - d, t + d):
            s = F(s)
            pts.append((x0 + s * dx, y0 + s * dy, z))
    return Strand(name, yarn, pts, direction)


def multiaxial():
    # Threads in the directions u, v, u+v and u-v, one of each per cell.
    # The u and v threads cross once; each bias thread lies over one of them
    # and under the other, and the two bias threads cross alternately.
    t = F
    threads = [
        straight("h", "p", (0, t(1, 2)), (1, 0), [(t(1, 2), 1), (t(3, 4), -1), (t(17, 20), 1)]),
        straight("v", "e", (t(1, 2), 0), (0, 1), [(t(1, 2), -1), (t(1, 4), 1), (t(17, 20), -1)]),
        straight("d", "r", (t(1, 4), 0), (1, 1), [(t(1, 2), 1), (t(1, 4), -1), (t(1, 20), 1), (t(11, 20), -1)]),
        straight("n", "s", (t(7, 20), 0), (1, -1), [(t(1, 2), -1), (t(3, 20), 1), (t(19, 20), -1), (t(9, 20), 1)]),
    ]
    return Fabric("multiaxial weave", threads)


def chain_mail():
    # Saddle-shaped rings, each linked with its four neighbours.
    r = ring(0.5, 0.5, 0.6, 16, lambda dx, dy: dx * dy)
    return Fabric("chain mail", [Strand("c", "t", r, (0, 0))])


def jersey_closed_loop():
    loop = ring(0.29, 0.4, 0.04, 8, lambda dx, dy: 1 + 25 * dy)
    return Fabric("single jersey with a closed thread around a leg",
                  [course([KNIT], "a", "t"), Strand("c", "t", loop, (0, 0))])


def jersey_inlays(warp_z=0.1):
    weft = Strand("p", "p", [(0.1, 0.6, 0.5), (0.6, 0.6, 0.5)], (1, 0))
    warp = Strand("e", "e", [(0.52, 0.1, warp_z), (0.52, 0.9, warp_z)], (0, 1))
    return Fabric("single jersey with warp and weft inlays", [course([KNIT], "a", "t"), warp, weft])


def trefoil_arc(cx, cy, size, z0, n=36):
    """Open trefoil entering and leaving at its lowest point, then wrapped
    round its left side to finish above it."""
    pts = []
    for k in range(n + 1):
        th = math.pi + 0.15 + (2 * math.pi - 0.3) * k / n
        x = math.sin(th) + 2 * math.sin(2 * th)
        y = math.cos(th) - 2 * math.cos(2 * th)
        z = -math.sin(3 * th)
        pts.append((x, y, z))
    pts += [(-2.5, -3.6, 0), (-4.2, -1.0, 0), (-4.2, 3.0, 0), (0.0, 4.4, 0)]
    q = lambda v: F(round(v * 10000), 10000)
    return [(q(cx + size * x), q(cy + size * y), q(z0 + 0.5 * z)) for x, y, z in pts]


def jersey_trefoil():
    knit = KNIT[:4] + trefoil_arc(0.29, 0.65, 0.01, 1) + KNIT[4:]
    return Fabric("single jersey with a trefoil tied into the yarn", [Strand("a", "t", knit, (1, 0))])


def rib(m, n):
    st = [KNIT] * m + [PURL] * n
    return Fabric(f"{m}x{n} rib", [course(st, "a", "t")], u=(m + n, 0))


def two_rows(first, second, title):
    rows = [course([first], "a", "t1"), course([second], "b", "t2")]
    rows[1].points = translate(rows[1].points, 0, 1)
    return Fabric(title, rows, v=(0, 2))


def two_layer_jersey():
    top = course([KNIT], "a", "t")
    bottom = course([KNIT], "b", "w")
    top.points = translate(top.points, 0, 0, 10)
    bottom.points = translate(bottom.points, 0.37, 0.41, -10)
    return Fabric("two separate layers of single jersey", [top, bottom])


def warp_chain():
    # Loops stacked in one wale, seen from the side where the underlaps lie;
    # each underlap runs across its own leg to the base of the next loop.
    pts = PURL + [(0.6, 0.32, 1), (0.2, 0.78, 1)]
    return Fabric("warp-knitted chain", [Strand("a", "t", pts, (0, 1))])


def fishing_net():
    # Diamond mesh; knots sit on the lattice spanned by u = (1,-1) and
    # v = (1,1) and each twine zigzags in the direction u + v. At every knot
    # the lower twine forms a bight and the upper twine ties a sheet bend
    # round it: up through the bight, behind both legs, then back across the
    # front of the bight and under itself.
    upper = [
        (-0.35, 0.35, 0), (-0.02, 0.35, -1), (-0.02, 0.1, 2), (0.2, 0.05, 0.5),
        (0.2, -0.12, -1), (-0.2, -0.12, -1), (-0.2, 0.15, 0.5), (0.2, 0.15, 0.5),
    ]
    bight = [(-0.35, -0.35, 0), (-0.08, -0.05, 0), (-0.08, 0.2, 0), (0.0, 0.28, 1), (0.08, 0.2, 0), (0.08, -0.05, 0)]
    pts = upper + translate(bight, 1, 1)
    return Fabric("fishing net", [Strand("a", "t", pts, (2, 0))], u=(1, -1), v=(1, 1))


FABRICS = {
    "jersey_face": lambda: jersey(),
    "jersey_back": lambda: jersey("single jersey, back", PURL),
    "jersey_skew": lambda: jersey("single jersey, cell u, u+v", KNIT, v=(1, 1)),
    "plainweave": plain_weave,
    "plainweave_min": lambda: plain_weave(True),
    "leno": leno,
    "triaxial": triaxial,
    "twill": twill,
    "multiaxial": multiaxial,
    "twill_min": lambda: twill(True),
    "chainmail": chain_mail,
    "jersey_loop": jersey_closed_loop,
    "jersey_inlays": jersey_inlays,
    "jersey_trefoil": jersey_trefoil,
    "rib_1x1": lambda: rib(1, 1),
    "rib_2x0": lambda: rib(2, 0),
    "rib_0x2": lambda: rib(0, 2),
    "rib_2x1": lambda: rib(2, 1),
    "rib_2x2": lambda: rib(2, 2),
    "garter": lambda: two_rows(KNIT, PURL, "garter stitch, alternate knit and purl rows"),
    "jersey_face_rows": lambda: two_rows(KNIT, KNIT, "single jersey, two face rows with separate variables"),
    "jersey_back_rows": lambda: two_rows(PURL, PURL, "single jersey, two back rows with separate variables"),
    "jersey_two_layer": two_layer_jersey,
    "warpchain": warp_chain,
    "fishnet": fishing_net,
}


def main():
    out = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).resolve().parent.parent / "corpus"
    names = sys.argv[2:] or list(FABRICS)
    out.mkdir(parents=True, exist_ok=True)
    for name in names:
        (out / f"{name}.cell").write_text(compile_fabric(FABRICS[name]()))


if __name__ == "__main__":
    main()
