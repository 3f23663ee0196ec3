"""Permutations, origamis and the three stairs families.

Conventions
===========

Permutations act on ``{1, ..., n}`` and are stored as a tuple ``images``
with ``images[i-1] = p(i)``.  Composition is right-to-left:
``compose(p, q)(i) = p(q(i))``.

An origami is a pair ``(h, v)`` of permutations of equal degree: ``h(i)``
is the square glued to the right of square ``i`` and ``v(i)`` the square
glued on top of it.  The text form of a permutation is a disjoint-cycle
string such as ``"(1 2 3)(4 5)"``; the parser accepts commas or spaces
inside cycles and ignores singleton cycles.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property

from .errors import BadParameters, DisconnectedOrigami

CycleType = tuple[int, ...]


@dataclass(frozen=True)
class Permutation:
    """A permutation of {1, ..., n}, stored by its image tuple."""

    images: tuple[int, ...]

    def __post_init__(self):
        n = len(self.images)
        if sorted(self.images) != list(range(1, n + 1)):
            raise ValueError("images must be a bijection of {1, ..., %d}" % n)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    @staticmethod
    def identity(n: int) -> "Permutation":
        return Permutation(tuple(range(1, n + 1)))

    @staticmethod
    def from_cycles(cycles, n: int) -> "Permutation":
        images = list(range(1, n + 1))
        for cycle in cycles:
            for a, b in zip(cycle, cycle[1:] + cycle[:1]):
                if not 1 <= a <= n:
                    raise ValueError("cycle entry %r out of range 1..%d" % (a, n))
                images[a - 1] = b
        p = Permutation(tuple(images))
        # catch repeated entries across cycles, which from_cycles would silently merge
        seen = [x for cycle in cycles for x in cycle]
        if len(seen) != len(set(seen)):
            raise ValueError("cycles are not disjoint")
        return p

    @staticmethod
    def parse(text: str, n: int | None = None) -> "Permutation":
        """Parse a disjoint-cycle string like ``"(1 2 3)(4,5)"``."""
        text = text.strip()
        if text in ("", "()"):
            if n is None:
                raise ValueError("cannot infer degree of an identity permutation")
            return Permutation.identity(n)
        if not re.fullmatch(r"(\(\s*\d+(\s*[, ]\s*\d+)*\s*\))+", text):
            raise ValueError("not a disjoint-cycle string: %r" % text)
        cycles = []
        degree = 0
        for body in re.findall(r"\(([^()]*)\)", text):
            entries = [int(tok) for tok in re.split(r"[,\s]+", body.strip()) if tok]
            degree = max(degree, max(entries, default=0))
            if len(entries) > 1:
                cycles.append(entries)
        if n is not None:
            if degree > n:
                raise ValueError("cycle entry exceeds requested degree %d" % n)
            degree = n
        if degree == 0:
            raise ValueError("cannot infer degree of an identity permutation")
        return Permutation.from_cycles(cycles, degree)

    def inverse(self) -> "Permutation":
        images = [0] * self.degree
        for i, j in enumerate(self.images, start=1):
            images[j - 1] = i
        return Permutation(tuple(images))

    def cycles(self, singletons: bool = True) -> list[tuple[int, ...]]:
        """Disjoint cycles, each starting at its least element, ordered by it."""
        seen = [False] * self.degree
        out = []
        for start in range(1, self.degree + 1):
            if seen[start - 1]:
                continue
            cycle = [start]
            seen[start - 1] = True
            j = self(start)
            while j != start:
                cycle.append(j)
                seen[j - 1] = True
                j = self(j)
            if singletons or len(cycle) > 1:
                out.append(tuple(cycle))
        return out

    def __str__(self) -> str:
        cycles = self.cycles(singletons=False)
        if not cycles:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cycles)


def compose(*perms: Permutation) -> Permutation:
    """Right-to-left composition: ``compose(p, q)(i) = p(q(i))``."""
    if not perms:
        raise ValueError("compose needs at least one permutation")
    n = perms[0].degree
    if any(p.degree != n for p in perms):
        raise ValueError("degrees differ")
    images = []
    for i in range(1, n + 1):
        j = i
        for p in reversed(perms):
            j = p(j)
        images.append(j)
    return Permutation(tuple(images))


def cycle_type(p: Permutation) -> CycleType:
    """Multiset of cycle lengths (fixed points included), sorted descending."""
    return tuple(sorted((len(c) for c in p.cycles()), reverse=True))


@dataclass(frozen=True)
class Origami:
    """A square-tiled surface given by its pair of gluing permutations."""

    h: Permutation
    v: Permutation

    def __post_init__(self):
        if self.h.degree != self.v.degree:
            raise ValueError("h and v must have equal degree")
        if self.h.degree < 1:
            raise ValueError("need at least one square")

    @property
    def n(self) -> int:
        return self.h.degree

    @cached_property
    def connected(self) -> bool:
        n = self.n
        seen = [False] * (n + 1)
        stack = [1]
        seen[1] = True
        count = 1
        while stack:
            s = stack.pop()
            for t in (self.h(s), self.v(s), self.h.inverse()(s), self.v.inverse()(s)):
                if not seen[t]:
                    seen[t] = True
                    count += 1
                    stack.append(t)
        return count == n

    def require_connected(self):
        if not self.connected:
            raise DisconnectedOrigami("h, v do not act transitively on the squares")

    @cached_property
    def commutator(self) -> Permutation:
        """h v h^-1 v^-1; its cycles give the cone points."""
        return compose(self.h, self.v, self.h.inverse(), self.v.inverse())

    def vertex_cycle_of(self, s: int) -> tuple[int, ...]:
        """Commutator cycle through square s (the vertex at its lower-left corner)."""
        for c in self.commutator.cycles():
            if s in c:
                return c
        raise AssertionError("unreachable")

    def stratum(self) -> tuple[int, ...]:
        """Zero orders, sorted descending; regular points are dropped."""
        self.require_connected()
        orders = [len(c) - 1 for c in self.commutator.cycles() if len(c) > 1]
        return tuple(sorted(orders, reverse=True))

    def genus(self) -> int:
        self.require_connected()
        total = sum(self.stratum())
        if total % 2:
            raise AssertionError("odd total cone angle excess on a closed surface")
        return total // 2 + 1

    def __str__(self) -> str:
        return "h=%s v=%s" % (self.h, self.v)


# The stairs families.  Row widths are N, g-1, g-2, ..., 2 from the bottom
# up, followed by a width-1 tower of M-g+1 squares; squares are numbered
# row by row, tower last.

_FAMILY_LOCKS = {
    4: (lambda m: 3 * m + 4, lambda m: 2 * m + 4),
    5: (lambda m: 4 * m + 1, lambda m: 4 * m + 6),
    6: (lambda m: 2 * m + 3, lambda m: 4 * m + 6),
}


def _stairs(N: int, M: int, genus: int) -> Origami:
    widths = [N] + list(range(genus - 1, 1, -1))
    tower = M - genus + 1
    starts = []
    pos = 1
    for w in widths:
        starts.append(pos)
        pos += w
    tower_squares = list(range(pos, pos + tower))
    n = pos + tower - 1

    h_cycles = [list(range(s, s + w)) for s, w in zip(starts, widths)]
    v_cycles = [[s + 0 for s in starts] + tower_squares]
    for j in range(1, N):
        col = [j + 1] + [s + j for s, w in zip(starts[1:], widths[1:]) if w > j]
        if len(col) > 1:
            v_cycles.append(col)
    h = Permutation.from_cycles([c for c in h_cycles if len(c) > 1], n)
    v = Permutation.from_cycles([c for c in v_cycles if len(c) > 1], n)
    return Origami(h, v)


def make_family(genus: int, m: int, overrides: tuple[int, int] | None = None) -> Origami:
    """Stairs origami of the given genus; N, M default to the c = 0 lock."""
    if genus not in _FAMILY_LOCKS:
        raise BadParameters("genus must be 4, 5 or 6, got %r" % (genus,))
    if m < 1:
        raise BadParameters("m must be >= 1")
    if overrides is None:
        N, M = _FAMILY_LOCKS[genus][0](m), _FAMILY_LOCKS[genus][1](m)
    else:
        N, M = overrides
    if N < genus or M < genus:
        # below this, consecutive stairs steps merge and the surface drops out
        # of the minimal stratum (the genus-6 lock needs m >= 2)
        raise BadParameters("stairs of genus %d need N >= %d and M >= %d"
                            % (genus, genus, genus))
    o = _stairs(N, M, genus)
    assert o.connected
    return o
