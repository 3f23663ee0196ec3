"""Straight-line flow on the square tiling: walks, crossings, raw cylinders.

A *walk* is a closed path through square centers, stored as a list of moves
``(d, s)`` with ``d`` in ``{"R", "U", "L", "D"}`` and ``s`` the square the
move leaves.  ``R`` enters ``h(s)``, ``U`` enters ``v(s)``, ``L`` enters
``h^-1(s)``, ``D`` enters ``v^-1(s)``.

Intersection numbers are counted geometrically: every curve is realized as
a closed polyline of axis-parallel segments with exact rational coordinates
inside the unit squares, two curves are realized at different offsets, and
transversal crossings are counted with signs square by square.

Cylinder decompositions in a rational direction ``(p, q)``, ``p >= 1``, use
the vertical edges as a transversal.  A trajectory state is ``(s, i)``:
it crosses the left edge of square ``s`` with height in the open interval
``(i/p, (i+1)/p)``.  The first-return map is

    (s, i)  |->  (h(v^k(s)), (i+q) mod p),   k = (i + q - ((i+q) mod p)) / p,

whose orbits are the one-square-layer subcylinders; stacked subcylinders
are merged across every boundary circle that carries no cone point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .perms import Origami, Permutation

Move = tuple[str, int]


def walk_end(o: Origami, start: int, moves) -> int:
    s = start
    hi, vi = o.h.inverse(), o.v.inverse()
    step = {"R": o.h, "U": o.v, "L": hi, "D": vi}
    for d, sq in moves:
        if sq != s:
            raise ValueError("walk is not connected")
        s = step[d](s)
    return s


def walk_holonomy(moves) -> tuple[int, int]:
    x = sum(1 for d, _ in moves if d == "R") - sum(1 for d, _ in moves if d == "L")
    y = sum(1 for d, _ in moves if d == "U") - sum(1 for d, _ in moves if d == "D")
    return x, y


def walk_edge_vector(o: Origami, moves) -> list[int]:
    """Edge-chain representative: x_s has index s-1, y_s index n+s-1."""
    n = o.n
    vec = [0] * (2 * n)
    hi, vi = o.h.inverse(), o.v.inverse()
    for d, s in moves:
        if d == "R":
            vec[s - 1] += 1
        elif d == "L":
            vec[hi(s) - 1] -= 1
        elif d == "U":
            vec[n + s - 1] += 1
        else:
            vec[n + vi(s) - 1] -= 1
    return vec


# ---------------------------------------------------------------------------
# polylines and crossings

class Segments:
    """Axis-parallel directed segments bucketed by square."""

    def __init__(self):
        self.horiz = {}  # square -> list of (y, x0, x1)
        self.vert = {}   # square -> list of (x, y0, y1)

    def add_h(self, sq, y, x0, x1):
        if x0 != x1:
            self.horiz.setdefault(sq, []).append((y, x0, x1))

    def add_v(self, sq, x, y0, y1):
        if y0 != y1:
            self.vert.setdefault(sq, []).append((x, y0, y1))


def walk_segments(o: Origami, moves, offset: Fraction) -> Segments:
    """Closed polyline through the points (offset, offset) of the visited squares."""
    e = Fraction(offset)
    one = Fraction(1)
    segs = Segments()
    hi, vi = o.h.inverse(), o.v.inverse()
    for d, s in moves:
        if d == "R":
            segs.add_h(s, e, e, one)
            segs.add_h(o.h(s), e, Fraction(0), e)
        elif d == "L":
            segs.add_h(s, e, e, Fraction(0))
            segs.add_h(hi(s), e, one, e)
        elif d == "U":
            segs.add_v(s, e, e, one)
            segs.add_v(o.v(s), e, Fraction(0), e)
        else:
            segs.add_v(s, e, e, Fraction(0))
            segs.add_v(vi(s), e, one, e)
    return segs


def crossing_number(a: Segments, b: Segments) -> int:
    """Signed crossings of two transversal closed polylines (a first)."""
    total = 0
    for sq, hsegs in a.horiz.items():
        vsegs = b.vert.get(sq)
        if not vsegs:
            continue
        for y, x0, x1 in hsegs:
            sx = 1 if x1 > x0 else -1
            lo, hi_ = (x0, x1) if x0 < x1 else (x1, x0)
            for x, y0, y1 in vsegs:
                if lo < x < hi_:
                    sy = 1 if y1 > y0 else -1
                    vlo, vhi = (y0, y1) if y0 < y1 else (y1, y0)
                    if vlo < y < vhi:
                        total += sx * sy
    for sq, vsegs in a.vert.items():
        hsegs = b.horiz.get(sq)
        if not hsegs:
            continue
        for x, y0, y1 in vsegs:
            sy = 1 if y1 > y0 else -1
            vlo, vhi = (y0, y1) if y0 < y1 else (y1, y0)
            for y, x0, x1 in hsegs:
                if vlo < y < vhi:
                    sx = 1 if x1 > x0 else -1
                    lo, hi_ = (x0, x1) if x0 < x1 else (x1, x0)
                    if lo < x < hi_:
                        total -= sy * sx
    return total


# ---------------------------------------------------------------------------
# edge cycles -> closed polylines (used by the generic homology model)

def _edge_endpoints(o: Origami, edge: int, forward: bool):
    """Tail and head of a directed edge as (square-with-corner-at-BL) occurrences."""
    n = o.n
    if edge < n:  # x_{edge+1}
        s = edge + 1
        tail, head = s, o.h(s)
    else:  # y_{edge-n+1}
        s = edge - n + 1
        tail, head = s, o.v(s)
    return (tail, head) if forward else (head, tail)


def _pushed_edge_segments(o: Origami, edge: int, forward: bool, e: Fraction, segs: Segments):
    n = o.n
    one = Fraction(1)
    if edge < n:
        s = edge + 1
        t = o.h(s)
        if forward:
            segs.add_h(s, e, e, one)
            segs.add_h(t, e, Fraction(0), e)
        else:
            segs.add_h(t, e, e, Fraction(0))
            segs.add_h(s, e, one, e)
    else:
        s = edge - n + 1
        t = o.v(s)
        if forward:
            segs.add_v(s, e, e, one)
            segs.add_v(t, e, Fraction(0), e)
        else:
            segs.add_v(t, e, e, Fraction(0))
            segs.add_v(s, e, one, e)


def _corner_quadrants(o: Origami, s: int):
    """Quadrant occurrences around the vertex at the BL corner of s, CCW.

    Yields (square, kind) with kind in {"BL", "BR", "TR", "TL"}, starting at
    (s, "BL"), until the cycle closes.
    """
    hi, vi = o.h.inverse(), o.v.inverse()
    cur, kind = s, "BL"
    while True:
        yield cur, kind
        if kind == "BL":
            cur, kind = hi(cur), "BR"
        elif kind == "BR":
            cur, kind = vi(cur), "TR"
        elif kind == "TR":
            cur, kind = o.h(cur), "TL"
        else:
            cur, kind = o.v(cur), "BL"
            if cur == s:
                return


def _connector_segments(o: Origami, occ_from: int, occ_to: int, e: Fraction, segs: Segments):
    """Polyline around a vertex from the BL-pushed point of occ_from to occ_to."""
    if occ_from == occ_to:
        return
    hi, vi = o.h.inverse(), o.v.inverse()
    one = Fraction(1)
    cur, kind = occ_from, "BL"
    for _ in range(4 * o.n + 4):
        if kind == "BL":
            nxt = hi(cur)
            segs.add_h(cur, e, e, Fraction(0))
            segs.add_h(nxt, e, one, one - e)
            cur, kind = nxt, "BR"
        elif kind == "BR":
            nxt = vi(cur)
            segs.add_v(cur, one - e, e, Fraction(0))
            segs.add_v(nxt, one - e, one, one - e)
            cur, kind = nxt, "TR"
        elif kind == "TR":
            nxt = o.h(cur)
            segs.add_h(cur, one - e, one - e, one)
            segs.add_h(nxt, one - e, Fraction(0), e)
            cur, kind = nxt, "TL"
        else:
            nxt = o.v(cur)
            segs.add_v(cur, e, one - e, one)
            segs.add_v(nxt, e, Fraction(0), e)
            cur, kind = nxt, "BL"
            if cur == occ_to:
                return
    raise AssertionError("connector did not close around the vertex")


def edge_cycle_segments(o: Origami, vec, e: Fraction) -> Segments:
    """Closed polyline realizing an integer edge cycle, pushed into the squares.

    The cycle is decomposed into closed edge walks; each walk is pushed off
    the 1-skeleton by (e, e) and consecutive pushed edges are joined by a
    connector circling their common vertex.
    """
    # directed edge instances grouped by the vertex class of their tail
    vclass = {}
    for idx, c in enumerate(o.commutator.cycles()):
        for s in c:
            vclass[s] = idx
    out_edges = {}
    for edge, coeff in enumerate(vec):
        if coeff == 0:
            continue
        forward = coeff > 0
        for _ in range(abs(coeff)):
            tail, _head = _edge_endpoints(o, edge, forward)
            out_edges.setdefault(vclass[tail], []).append((edge, forward))
    segs = Segments()
    # in/out degrees balance at every vertex, so following available edges
    # from any vertex closes up there; repeat until all instances are used
    while any(out_edges.values()):
        start_v = next(v for v, lst in out_edges.items() if lst)
        cur = start_v
        trail = []
        while out_edges.get(cur):
            edge, fwd = out_edges[cur].pop()
            tail, head = _edge_endpoints(o, edge, fwd)
            trail.append((edge, fwd, tail, head))
            cur = vclass[head]
        assert trail and cur == start_v, "edge chain is not a cycle"
        for i, (edge, fwd, _tail, head) in enumerate(trail):
            _pushed_edge_segments(o, edge, fwd, e, segs)
            nxt_tail = trail[(i + 1) % len(trail)][2]
            _connector_segments(o, head, nxt_tail, e, segs)
    return segs


# ---------------------------------------------------------------------------
# raw cylinder decomposition

@dataclass
class RawCylinder:
    """One maximal cylinder: combinatorial length, height, core walk."""

    length: int
    height: int
    walk: list[Move]
    squares: list[int]  # squares met by the core walk, in order


def normalize_direction(p: int, q: int) -> tuple[int, int]:
    if p == 0 and q == 0:
        raise ValueError("direction (0, 0)")
    g = gcd(abs(p), abs(q))
    p, q = p // g, q // g
    if p < 0 or (p == 0 and q < 0):
        p, q = -p, -q
    return p, q


def _rotate_walk(moves) -> list[Move]:
    # rotate by +90 degrees: the traced origami (v, h^-1) maps back via
    # R' -> U, U' -> L, L' -> D, D' -> R
    table = {"R": "U", "U": "L", "L": "D", "D": "R"}
    return [(table[d], s) for d, s in moves]


def raw_decompose(o: Origami, p: int, q: int) -> list[RawCylinder]:
    """Maximal cylinders in the primitive direction (p, q), p > 0 or (0, 1)."""
    if p == 0:
        rot = Origami(o.v, o.h.inverse())
        cyls = raw_decompose(rot, 1, 0)
        out = []
        for c in cyls:
            moves = _rotate_walk(c.walk)
            out.append(RawCylinder(c.length, c.height, moves, c.squares))
        return out

    n = o.n
    states = [(s, i) for s in range(1, n + 1) for i in range(p)]

    def ret(state):
        s, i = state
        r = (i + q) % p
        k = (i + q - r) // p
        t = s
        if k >= 0:
            for _ in range(k):
                t = o.v(t)
        else:
            vi = o.v.inverse()
            for _ in range(-k):
                t = vi(t)
        return (o.h(t), r)

    orbit_id = {}
    orbits = []
    for st in states:
        if st in orbit_id:
            continue
        orb = [st]
        orbit_id[st] = len(orbits)
        cur = ret(st)
        while cur != st:
            orbit_id[cur] = len(orbits)
            orb.append(cur)
            cur = ret(cur)
        orbits.append(orb)

    def above(state):
        s, i = state
        return (s, i + 1) if i + 1 < p else (o.v(s), 0)

    # boundary circles that carry a cone point cannot be merged across
    blocked = set()
    for cyc in o.commutator.cycles():
        if len(cyc) == 1:
            continue
        for u in cyc:
            blocked.add(orbit_id[_state_below_corner(o, u, p, q)])

    above_orbit = {}
    for oid, orb in enumerate(orbits):
        if oid in blocked:
            continue
        targets = {orbit_id[above(st)] for st in orb}
        assert len(targets) == 1, "regular circle should glue orbit to orbit"
        tgt = targets.pop()
        assert len(orbits[tgt]) == len(orb)
        above_orbit[oid] = tgt

    # merge chains of orbits into maximal cylinders; the above-map has
    # in- and out-degree <= 1, so components are paths (ending at a blocked
    # orbit) or pure cycles (directions without cone points on any circle)
    has_pred = set(above_orbit.values())
    used = set()
    chains = []
    for oid in range(len(orbits)):
        if oid in used or oid in has_pred:
            continue
        chain = []
        cur = oid
        while True:
            chain.append(cur)
            used.add(cur)
            if cur not in above_orbit:
                break
            cur = above_orbit[cur]
            assert cur not in used, "orbit chain is not simple"
        chains.append(chain)
    for oid in range(len(orbits)):
        if oid in used:
            continue
        chain = []
        cur = oid
        while cur not in used:
            chain.append(cur)
            used.add(cur)
            cur = above_orbit[cur]
        chains.append(chain)
    cylinders = []
    for chain in chains:
        base = chain[0]
        length = len(orbits[base]) // p
        walk, squares = _trace_core(o, p, q, min(orbits[base]))
        cylinders.append(RawCylinder(length, len(chain), walk, squares))
    cylinders.sort(key=lambda c: (c.length, c.height, c.squares[0]))
    total = sum(c.length * c.height for c in cylinders)
    assert total == n, "area conservation failed"
    return cylinders


def _trace_core(o: Origami, p: int, q: int, state) -> tuple[list[Move], list[int]]:
    """Move word of the closed core trajectory through the given state."""
    moves: list[Move] = []
    squares = []
    vi = o.v.inverse()
    s, i = state
    cur = (s, i)
    while True:
        s, i = cur
        squares.append(s)
        r = (i + q) % p
        k = (i + q - r) // p
        t = s
        if k >= 0:
            for _ in range(k):
                moves.append(("U", t))
                t = o.v(t)
        else:
            for _ in range(-k):
                moves.append(("D", t))
                t = vi(t)
        moves.append(("R", t))
        cur = (o.h(t), r)
        if cur == state:
            return moves, squares


def _state_below_corner(o: Origami, u: int, p: int, q: int):
    """Return-map state of the trajectory just below the BL corner of u.

    "Below" is against the left normal (-q, p) of the direction.  The point
    is traced forward to its next crossing of a vertical edge.
    """
    d = Fraction(1, 4 * (p * p + q * q) * (p + abs(q) + 2))
    x = Fraction(q) * d
    y = -Fraction(p) * d
    s = u
    hi, vi = o.h.inverse(), o.v.inverse()
    while x < 0:
        x += 1
        s = hi(s)
    while x >= 1:
        x -= 1
        s = o.h(s)
    while y < 0:
        y += 1
        s = vi(s)
    while y >= 1:
        y -= 1
        s = o.v(s)
    if x == 0:
        return (s, int(y * p))
    # advance to x = 1
    y_exit = y + Fraction(q, p) * (1 - x)
    while y_exit < 0:
        y_exit += 1
        s = vi(s)
    while y_exit >= 1:
        y_exit -= 1
        s = o.v(s)
    s = o.h(s)
    return (s, int(y_exit * p))
