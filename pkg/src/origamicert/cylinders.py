"""Cylinder decompositions, moduli and affine multitwist matrices.

A direction is a primitive integer vector ``(p, q)`` with ``p > 0``, or
``(0, 1)``.  Cylinders carry a combinatorial length (squares traversed by
the core curve, equivalently its winding degree over the torus geodesic),
a height (number of unit layers), and the flat modulus
``height / (length * (p^2 + q^2))``.

``moduli`` returns the length-to-height ratios; these are the quantities
that one divides a common scale by to get integral twist counts, and the
form in which the family tables state them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm

from . import tracing
from .errors import BadScale, NotTwoCylinders
from .homology import HomologyClass, HomologyModel, build_homology
from .perms import Origami


@dataclass(frozen=True)
class Direction:
    p: int
    q: int

    def __post_init__(self):
        p, q = tracing.normalize_direction(self.p, self.q)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)

    @staticmethod
    def parse(text: str) -> "Direction":
        parts = text.replace("(", "").replace(")", "").split(",")
        if len(parts) != 2:
            raise ValueError("direction must be given as 'p,q'")
        return Direction(int(parts[0].strip()), int(parts[1].strip()))

    def __str__(self):
        return "(%d,%d)" % (self.p, self.q)


@dataclass(frozen=True)
class Cylinder:
    waist: HomologyClass
    length: int
    height: int
    modulus: Fraction          # flat modulus: height / (length * (p^2+q^2))
    direction: Direction
    squares: tuple = field(repr=False, default=())


def _model_for(o: Origami, model: HomologyModel | None) -> HomologyModel:
    if model is not None:
        if model.origami is not o:
            raise ValueError("model belongs to a different origami")
        return model
    return build_homology(o)


def _raw(o: Origami, d: Direction, model: HomologyModel | None):
    cache = getattr(model, "raw_cylinders", None) if model is not None else None
    key = (d.p, d.q)
    if cache is not None and key in cache:
        return cache[key]
    raw = tracing.raw_decompose(o, d.p, d.q)
    if cache is not None:
        cache[key] = raw
    return raw


def decompose(o: Origami, d: Direction, model: HomologyModel | None = None) -> list[Cylinder]:
    """Maximal cylinders in direction d, sorted by (length, height)."""
    o.require_connected()
    model = _model_for(o, model)
    norm = d.p * d.p + d.q * d.q
    out = []
    for raw in _raw(o, d, model):
        waist = model.class_from_walk(raw.walk)
        assert waist.holonomy() == (raw.length * d.p, raw.length * d.q)
        out.append(Cylinder(waist, raw.length, raw.height,
                            Fraction(raw.height, raw.length * norm), d,
                            tuple(raw.squares)))
    return out


def moduli(o: Origami, d: Direction, model: HomologyModel | None = None) -> list[Fraction]:
    """Length-to-height ratio of each cylinder (the twist-count denominators)."""
    o.require_connected()
    return [Fraction(raw.length, raw.height) for raw in _raw(o, d, model)]


@dataclass(frozen=True)
class MultitwistMatrix:
    matrix: list            # action on the H_1^(0) basis, integral
    scale: Fraction
    twist_counts: tuple     # k_i per cylinder, positive integers
    direction: Direction
    full_matrix: list = field(repr=False, default=None)  # action on H_1


def _default_scale(ratios) -> Fraction:
    nums = 1
    dens = 0
    for r in ratios:
        nums = lcm(nums, r.numerator)
        dens = gcd(dens, r.denominator)
    return Fraction(nums, dens)


def multitwist(o: Origami, d: Direction, scale=None,
               model: HomologyModel | None = None) -> MultitwistMatrix:
    """Simultaneous Dehn twist in all cylinders of direction d, on H_1^(0).

    The twist count in cylinder i is scale / (length_i / height_i); the
    default scale is the least positive rational making all counts integral.
    """
    o.require_connected()
    model = _model_for(o, model)
    cyls = decompose(o, d, model)
    ratios = [Fraction(c.length, c.height) for c in cyls]
    if scale is None:
        scale = _default_scale(ratios)
    scale = Fraction(scale)
    counts = []
    for r in ratios:
        k = scale / r
        if k.denominator != 1 or k <= 0:
            raise BadScale("scale %s gives non-integral twist count for ratio %s" % (scale, r))
        counts.append(int(k))
    rank = model.rank
    full = [[1 if i == j else 0 for j in range(rank)] for i in range(rank)]
    waists = [c.waist for c in cyls]
    for k, w in zip(counts, waists):
        wrow = [sum(w.coords[i] * model.omega[i][j] for i in range(rank))
                for j in range(rank)]
        for i in range(rank):
            wi = w.coords[i]
            if wi:
                for j in range(rank):
                    full[i][j] += k * wrow[j] * wi
    restricted = _restrict_to_h0(model, full)
    return MultitwistMatrix(restricted, scale, tuple(counts), d, full)


def _restrict_to_h0(model: HomologyModel, full):
    from .exact_algebra import solve_exact
    S = model._h0_matrix
    rank = model.rank
    cols = []
    for vec in model.h0_basis:
        img = [sum(full[i][j] * vec[j] for j in range(rank)) for i in range(rank)]
        x = solve_exact(S, img)
        assert all(v.denominator == 1 for v in x), "twist does not preserve H_1^(0)"
        cols.append([int(v) for v in x])
    return [list(row) for row in zip(*cols)]


def transvection_vector(o: Origami, d: Direction,
                        model: HomologyModel | None = None) -> HomologyClass:
    """Holonomy-free cross-weighted combination of a two-cylinder direction:
    length_2 * waist_1 - length_1 * waist_2."""
    o.require_connected()
    model = _model_for(o, model)
    cyls = decompose(o, d, model)
    if len(cyls) != 2:
        raise NotTwoCylinders("direction %s has %d cylinders" % (d, len(cyls)))
    c1, c2 = cyls
    w = c2.length * c1.waist - c1.length * c2.waist
    assert w.holonomy() == (0, 0)
    return w
