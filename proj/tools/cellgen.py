#!/usr/bin/env python3
"""Compile periodic 3D yarn paths into fabcell files.

A fabric is described in design coordinates by strands. Each strand is a
polyline p_0..p_{n-1} of (x, y, z) points that closes up after a translation
`shift` (p_n = p_0 + shift). Larger z lies toward the face. The repeating
cell is given by two lattice vectors u, v in design coordinates. The
compiler maps everything to lattice coordinates, cuts the strands along the
cell edges, finds the crossings of the projection onto the cell, and writes
the arcs, crossings and edge ports. All arithmetic is exact.
"""

import argparse
import math
import sys
from fractions import Fraction as F
from pathlib import Path

# Generic offset keeping design vertices off the cell edges.
OFFSET = (F(1, 97), F(2, 89))
TRACE = False


class DesignError(Exception):
    pass


def frac(v):
    if isinstance(v, F):
        return v
    if isinstance(v, int):
        return F(v)
    return F(str(v))


class Strand:
    def __init__(self, name, yarn, points, shift):
        self.name = name
        self.yarn = yarn
        self.points = [tuple(frac(c) for c in p) for p in points]
        self.shift = tuple(frac(c) for c in shift)


class Fabric:
    def __init__(self, title, strands, u=(1, 0), v=(0, 1), halves=None):
        self.title = title
        self.strands = strands
        self.u = tuple(frac(c) for c in u)
        self.v = tuple(frac(c) for c in v)
        self.halves = halves or {}


def to_lattice(fab):
    (ux, uy), (vx, vy) = fab.u, fab.v
    det = ux * vy - uy * vx
    if det <= 0:
        raise DesignError("cell vectors must be positively oriented")

    def conv(x, y):
        return ((x * vy - y * vx) / det, (ux * y - uy * x) / det)

    out = []
    for s in fab.strands:
        pts = []
        for x, y, z in s.points:
            a, b = conv(x, y)
            pts.append((a + OFFSET[0], b + OFFSET[1], z))
        sa, sb = conv(s.shift[0], s.shift[1])
        if sa.denominator != 1 or sb.denominator != 1:
            raise DesignError(f"strand {s.name}: shift is not a lattice vector")
        out.append((s, pts, (sa, sb)))
    return out


def floor(q):
    return q.numerator // q.denominator


class Piece:
    """A straight piece of one strand inside the unit square."""

    def __init__(self, strand, order, segment, a, b, exits):
        self.strand = strand
        self.order = order
        self.segment = segment  # index of the design segment it came from
        self.a = a  # (x, y, z)
        self.b = b
        self.exits = exits  # the piece ends on a cell edge


def cut(strands):
    pieces = {}
    for si, (s, pts, shift) in enumerate(strands):
        n = len(pts)
        full = pts + [(pts[0][0] + shift[0], pts[0][1] + shift[1], pts[0][2])]
        seq = []
        for k in range(n):
            p, q = full[k], full[k + 1]
            ts = {F(0), F(1)}
            for axis in (0, 1):
                lo, hi = sorted((p[axis], q[axis]))
                for g in range(floor(lo) + 1, floor(hi) + 1):
                    if g == hi or g == lo:
                        raise DesignError(f"strand {s.name}: vertex on a cell edge")
                    ts.add((g - p[axis]) / (q[axis] - p[axis]))
            ts = sorted(ts)
            pts3 = [tuple(p[i] + t * (q[i] - p[i]) for i in range(3)) for t in ts]
            for j in range(len(ts) - 1):
                a, b = pts3[j], pts3[j + 1]
                if a[:2] == b[:2]:
                    raise DesignError(f"strand {s.name}: repeated point")
                mx, my = (a[0] + b[0]) / 2, (a[1] + b[1]) / 2
                i0, j0 = floor(mx), floor(my)
                a = (a[0] - i0, a[1] - j0, a[2])
                b = (b[0] - i0, b[1] - j0, b[2])
                ends = [c for c in b[:2] if c in (0, 1)]
                if len(ends) > 1:
                    raise DesignError(f"strand {s.name}: passes through a cell corner")
                seq.append([k, a, b, bool(ends)])
        pieces[si] = [Piece(si, j, k, a, b, e) for j, (k, a, b, e) in enumerate(seq)]
    return pieces


def cross2(ax, ay, bx, by):
    return ax * by - ay * bx


def intersect(p, q):
    """Parameters (s, t) where pieces p and q meet in projection, or None."""
    (x1, y1, _), (x2, y2, _) = p.a, p.b
    (x3, y3, _), (x4, y4, _) = q.a, q.b
    dx1, dy1, dx2, dy2 = x2 - x1, y2 - y1, x4 - x3, y4 - y3
    den = cross2(dx1, dy1, dx2, dy2)
    if den == 0:
        if cross2(x3 - x1, y3 - y1, dx1, dy1) == 0:
            # collinear: overlapping is degenerate, disjoint is fine
            def proj(x, y):
                return (x - x1) * dx1 + (y - y1) * dy1

            l = dx1 * dx1 + dy1 * dy1
            lo, hi = sorted((proj(x3, y3), proj(x4, y4)))
            if hi > 0 and lo < l:
                raise DesignError("overlapping collinear pieces")
            if hi == 0 or lo == l:
                return "touch"
        return None
    s = cross2(x3 - x1, y3 - y1, dx2, dy2) / den
    t = cross2(x3 - x1, y3 - y1, dx1, dy1) / den
    if s < 0 or s > 1 or t < 0 or t > 1:
        return None
    if s in (0, 1) or t in (0, 1):
        return "touch"
    return s, t


def consecutive(pieces, p, q):
    if p.strand != q.strand:
        return False
    n = len(pieces[p.strand])
    return (p.order + 1) % n == q.order or (q.order + 1) % n == p.order


def compile_fabric(fab):
    strands = to_lattice(fab)
    pieces = cut(strands)
    allp = [p for si in sorted(pieces) for p in pieces[si]]
    events = {id(p): [] for p in allp}  # id -> [(param, crossing, role)]
    crossings = []
    for i in range(len(allp)):
        for j in range(i + 1, len(allp)):
            p, q = allp[i], allp[j]
            r = intersect(p, q)
            if r is None:
                continue
            if r == "touch":
                if consecutive(pieces, p, q):
                    continue
                raise DesignError(f"pieces of {strands[p.strand][0].name} and {strands[q.strand][0].name} touch")
            s, t = r
            zp = p.a[2] + s * (p.b[2] - p.a[2])
            zq = q.a[2] + t * (q.b[2] - q.a[2])
            if zp == zq:
                raise DesignError(f"crossing of {strands[p.strand][0].name} and {strands[q.strand][0].name} at equal height")
            over, under, so, su = (p, q, s, t) if zp > zq else (q, p, t, s)
            c = len(crossings)
            crossings.append({"over": over, "under": under})
            if TRACE:
                print(f"crossing {c}: over {strands[over.strand][0].name}:{over.segment}"
                      f" under {strands[under.strand][0].name}:{under.segment}", file=sys.stderr)
            events[id(over)].append((so, c, "over"))
            events[id(under)].append((su, c, "under"))

    arc_names = []
    arc_yarn = []
    ends = [dict() for _ in crossings]  # role -> (in_arc, out_arc)
    ports = []  # (side, coord, arc, out)
    for si in sorted(pieces):
        s = strands[si][0]
        seq = pieces[si]
        # Each event closes the current arc and opens the next.
        evs = []
        for p in seq:
            for prm, c, role in sorted(events[id(p)], key=lambda e: e[0]):
                evs.append(("x", c, role))
            if p.exits:
                evs.append(("e", p))
        if not evs:
            raise DesignError(f"strand {s.name} has no crossings and never meets the cell edge")
        first = len(arc_names)
        for k in range(len(evs)):
            arc_names.append(f"{s.name}{k + 1}")
            arc_yarn.append(s.yarn)
        m = len(evs)
        for k, ev in enumerate(evs):
            arc_in = first + k  # arc running into the event
            arc_out = first + (k + 1) % m
            if ev[0] == "x":
                ends[ev[1]][ev[2]] = (arc_in, arc_out)
            else:
                p = ev[1]
                x, y = p.b[0], p.b[1]
                if x == 1:
                    ports.append(("R", y, arc_in, True))
                    ports.append(("L", y, arc_out, False))
                elif x == 0:
                    ports.append(("L", y, arc_in, True))
                    ports.append(("R", y, arc_out, False))
                elif y == 1:
                    ports.append(("T", x, arc_in, True))
                    ports.append(("B", x, arc_out, False))
                else:
                    ports.append(("B", x, arc_in, True))
                    ports.append(("T", x, arc_out, False))
    # A single-event strand makes one arc that is both in and out: the arc
    # is its own successor, which is fine for the format.
    index = {}
    for side_pair in (("L", "R"), ("B", "T")):
        coords = sorted({c for sd, c, _, _ in ports if sd in side_pair})
        for k, c in enumerate(coords):
            index[(side_pair[0], c)] = k
            index[(side_pair[1], c)] = k

    lines = []
    for k, cr in enumerate(crossings):
        o, u = cr["over"], cr["under"]
        od = (o.b[0] - o.a[0], o.b[1] - o.a[1])
        ud = (u.b[0] - u.a[0], u.b[1] - u.a[1])
        sign = 1 if cross2(od[0], od[1], ud[0], ud[1]) > 0 else -1
        ui, uo = ends[k]["under"]
        oi, oo = ends[k]["over"]
        slots = (ui, oo, uo, oi) if sign > 0 else (ui, oi, uo, oo)
        lines.append((sign, slots))

    out = [f"# {fab.title}", "# generated by tools/cellgen.py", "fabcell 1"]
    yarns = []
    for y in arc_yarn:
        if y not in yarns:
            yarns.append(y)
    for y in yarns:
        out.append("yarn " + y + " " + " ".join(n for n, yy in zip(arc_names, arc_yarn) if yy == y))
    for y in yarns:
        if y in fab.halves:
            out.append(f"half {y} {fab.halves[y]}")
    for sign, slots in lines:
        out.append(f"cross {'+1' if sign > 0 else '-1'} " + " ".join(arc_names[a] for a in slots))
    order = {"L": 0, "R": 1, "B": 2, "T": 3}
    for sd, c, arc, is_out in sorted(ports, key=lambda p: (order[p[0]], index[(p[0], p[1])])):
        out.append(f"edge {sd} {index[(sd, c)]} {arc_names[arc]} {'out' if is_out else 'in'}")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# Geometry helpers

def translate(points, dx, dy, dz=0):
    return [(frac(x) + frac(dx), frac(y) + frac(dy), frac(z) + frac(dz)) for x, y, z in points]


def scale(points, sx, sy, sz=1):
    return [(frac(x) * frac(sx), frac(y) * frac(sy), frac(z) * frac(sz)) for x, y, z in points]


def flip_z(points):
    return [(x, y, -z) for x, y, z in points]


def ring(cx, cy, r, n, zfun, phase=0.1):
    """Polygon approximating a circle; rational vertices, generic phase."""
    pts = []
    for k in range(n):
        th = 2 * math.pi * (k + phase) / n
        x = F(round(r * math.cos(th) * 1000), 1000)
        y = F(round(r * math.sin(th) * 1000), 1000)
        pts.append((frac(cx) + x, frac(cy) + y, zfun(x, y)))
    return pts
