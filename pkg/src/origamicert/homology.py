"""Integral first homology of an origami, with holonomy and intersection form.

The model fixes an integral basis of H_1 once and represents every class by
its integer coordinate vector in that basis; the intersection form is then a
single 2g x 2g integer matrix and all pairings are coordinate arithmetic.

Two construction paths share the same interface:

* waist basis: when the horizontal and vertical cylinder waist curves form
  a basis (2g of them with unimodular intersection matrix), they are used
  directly.  This covers the stairs families and keeps the basis aligned
  with the cylinder geometry.
* chain complex: otherwise H_1 is computed as cycles modulo boundaries of
  the square CW complex by integral Smith reduction.

Basis intersection numbers are counted geometrically; see tracing.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import tracing
from .errors import ModelMismatch, NotInKernel
from .exact_algebra import (kernel_basis, mat_identity, mat_mul, mat_transpose, det,
                            smith_normal_form, solve_exact)
from .perms import Origami

_OFFSET_A = Fraction(1, 5)
_OFFSET_B = Fraction(1, 7)


@dataclass(frozen=True)
class HomologyClass:
    """A homology class stored by H_1 coordinates plus an edge representative."""

    model: "HomologyModel"
    coords: tuple
    edge_vec: tuple

    def __add__(self, other):
        self._check(other)
        return HomologyClass(self.model,
                             tuple(a + b for a, b in zip(self.coords, other.coords)),
                             tuple(a + b for a, b in zip(self.edge_vec, other.edge_vec)))

    def __sub__(self, other):
        self._check(other)
        return HomologyClass(self.model,
                             tuple(a - b for a, b in zip(self.coords, other.coords)),
                             tuple(a - b for a, b in zip(self.edge_vec, other.edge_vec)))

    def __rmul__(self, c):
        return HomologyClass(self.model, tuple(c * a for a in self.coords),
                             tuple(c * a for a in self.edge_vec))

    def __neg__(self):
        return (-1) * self

    def _check(self, other):
        if self.model is not other.model:
            raise ModelMismatch("classes live in different homology models")

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def holonomy(self) -> tuple:
        m = self.model
        hx = sum(h * c for h, c in zip(m.hol[0], self.coords))
        hy = sum(h * c for h, c in zip(m.hol[1], self.coords))
        return hx, hy

    def to_dict(self) -> dict:
        return {"basis": "H1", "coords": [int(c) for c in self.coords]}


class HomologyModel:
    """Fixed H_1(Z) basis of an origami with form, holonomy and splitting."""

    def __init__(self, origami, basis_edge_vecs, omega, hol, labels):
        self.origami = origami
        self.basis_edge_vecs = basis_edge_vecs
        self.omega = omega              # Omega[i][j] = <b_i, b_j>
        self.hol = hol                  # 2 x 2g: holonomy of basis classes
        self.labels = labels
        self.rank = len(omega)
        d = det([row[:] for row in omega])
        assert abs(d) == 1, "intersection form must be unimodular on H_1"
        self._omega_inv = _integer_inverse(omega)
        self.h0_basis = self._holonomy_kernel_basis()
        s_cols = mat_transpose(self.h0_basis)  # 2g x (2g-2)
        self._h0_matrix = s_cols
        if self.h0_basis:
            self.omega0 = mat_mul(mat_transpose(s_cols), mat_mul(self.omega, s_cols))
            assert det([row[:] for row in self.omega0]) != 0, "restricted form degenerate"
        else:
            self.omega0 = []

    # -- construction helpers ------------------------------------------------

    def _holonomy_kernel_basis(self):
        """Saturated integer kernel of the holonomy functionals.

        When the basis consists of cylinder waists with a length-1 pivot in
        each direction, the basis is the pivot-weighted differences, which
        keeps coordinates aligned with the waist ordering.
        """
        hol = self.hol
        rank = self.rank
        pivot_h = next((j for j in range(rank) if hol[0][j] == 1 and hol[1][j] == 0), None)
        pivot_v = next((j for j in range(rank) if hol[0][j] == 0 and hol[1][j] == 1), None)
        pure = all((hol[0][j] == 0) != (hol[1][j] == 0) for j in range(rank))
        if pivot_h is not None and pivot_v is not None and pure:
            out = []
            for j in range(rank):
                if j in (pivot_h, pivot_v):
                    continue
                vec = [0] * rank
                vec[j] = 1
                if hol[0][j]:
                    vec[pivot_h] = -hol[0][j]
                else:
                    vec[pivot_v] = -hol[1][j]
                out.append(vec)
            return out
        return kernel_basis([row[:] for row in hol])

    # -- class constructors --------------------------------------------------

    def class_from_coords(self, coords) -> HomologyClass:
        coords = tuple(coords)
        edge = [0] * len(self.basis_edge_vecs[0])
        for c, vec in zip(coords, self.basis_edge_vecs):
            if c:
                edge = [a + c * b for a, b in zip(edge, vec)]
        return HomologyClass(self, coords, tuple(edge))

    def class_from_walk(self, moves) -> HomologyClass:
        coords = self._walk_coords(moves)
        return HomologyClass(self, tuple(coords),
                             tuple(tracing.walk_edge_vector(self.origami, moves)))

    def _walk_coords(self, moves):
        raise NotImplementedError

    # -- queries ---------------------------------------------------------------

    def intersection(self, a: HomologyClass, b: HomologyClass) -> int:
        if a.model is not self or b.model is not self:
            raise ModelMismatch("classes live in different homology models")
        total = 0
        for i, ai in enumerate(a.coords):
            if ai:
                row = self.omega[i]
                total += ai * sum(r * bj for r, bj in zip(row, b.coords))
        if isinstance(total, Fraction):
            assert total.denominator == 1
            total = int(total)
        return total

    def project_to_H0(self, c: HomologyClass):
        """Coordinates of a holonomy-free class in the H_1^(0) basis."""
        if c.model is not self:
            raise ModelMismatch("class from another model")
        if c.holonomy() != (0, 0):
            raise NotInKernel("class has nonzero holonomy")
        x = solve_exact(self._h0_matrix, list(c.coords))
        return [int(v) if v.denominator == 1 else v for v in x]

    def h0_class(self, h0_coords) -> HomologyClass:
        coords = [0] * self.rank
        for c, vec in zip(h0_coords, self.h0_basis):
            for i, v in enumerate(vec):
                coords[i] += c * v
        return self.class_from_coords(coords)


class _WaistModel(HomologyModel):
    def __init__(self, origami, hcyls, vcyls):
        self._walks = [c.walk for c in hcyls] + [c.walk for c in vcyls]
        labels = ["h%d" % i for i in range(len(hcyls))] + ["v%d" % i for i in range(len(vcyls))]
        segs_a = [tracing.walk_segments(origami, w, _OFFSET_A) for w in self._walks]
        segs_b = [tracing.walk_segments(origami, w, _OFFSET_B) for w in self._walks]
        rank = len(self._walks)
        omega = [[tracing.crossing_number(segs_a[i], segs_b[j]) for j in range(rank)]
                 for i in range(rank)]
        for i in range(rank):
            for j in range(rank):
                assert omega[i][j] == -omega[j][i], "intersection form not antisymmetric"
        hol_pairs = [tracing.walk_holonomy(w) for w in self._walks]
        hol = [[hp[0] for hp in hol_pairs], [hp[1] for hp in hol_pairs]]
        edge_vecs = [tuple(tracing.walk_edge_vector(origami, w)) for w in self._walks]
        self._segs_a = segs_a
        super().__init__(origami, edge_vecs, omega, hol, labels)

    def _walk_coords(self, moves):
        segs = tracing.walk_segments(self.origami, moves, _OFFSET_B)
        pair = [tracing.crossing_number(sa, segs) for sa in self._segs_a]
        coords = [sum(r * p for r, p in zip(row, pair)) for row in self._omega_inv]
        return [int(c) for c in coords]


class _ChainModel(HomologyModel):
    def __init__(self, origami):
        cc = ChainComplex(origami)
        self._cc = cc
        z_cols = kernel_basis(cc.d1)            # list of 2n-vectors
        Z = mat_transpose(z_cols)               # 2n x z
        # image of d2 in kernel coordinates
        bcols = []
        for j in range(origami.n):
            col = [cc.d2[i][j] for i in range(2 * origami.n)]
            x = solve_exact(Z, col)
            assert all(v.denominator == 1 for v in x)
            bcols.append([int(v) for v in x])
        B = mat_transpose(bcols)                # z x n
        S, U, _V = smith_normal_form(B)
        r = sum(1 for i in range(min(len(S), len(S[0]))) if S[i][i] != 0)
        for i in range(r):
            assert S[i][i] == 1, "torsion in H_1 of a closed orientable surface"
        z = len(U)
        u_inv = _integer_inverse(U)
        basis_in_z = [[u_inv[i][j] for i in range(z)] for j in range(r, z)]
        edge_vecs = []
        for coeffs in basis_in_z:
            vec = [0] * (2 * origami.n)
            for c, zc in zip(coeffs, z_cols):
                if c:
                    vec = [a + c * b for a, b in zip(vec, zc)]
            edge_vecs.append(tuple(vec))
        self._Z = Z
        self._U = U
        self._r = r
        segs_a = [tracing.edge_cycle_segments(origami, v, _OFFSET_A) for v in edge_vecs]
        segs_b = [tracing.edge_cycle_segments(origami, v, _OFFSET_B) for v in edge_vecs]
        rank = len(edge_vecs)
        omega = [[tracing.crossing_number(segs_a[i], segs_b[j]) for j in range(rank)]
                 for i in range(rank)]
        for i in range(rank):
            for j in range(rank):
                assert omega[i][j] == -omega[j][i], "intersection form not antisymmetric"
        n = origami.n
        hol = [[sum(v[:n]) for v in edge_vecs], [sum(v[n:]) for v in edge_vecs]]
        labels = ["b%d" % i for i in range(rank)]
        super().__init__(origami, edge_vecs, omega, hol, labels)

    def _walk_coords(self, moves):
        vec = tracing.walk_edge_vector(self.origami, moves)
        return self.coords_of_edge_cycle(vec)

    def coords_of_edge_cycle(self, vec):
        y = solve_exact(self._Z, list(vec))
        assert all(v.denominator == 1 for v in y)
        full = [sum(self._U[i][j] * int(y[j]) for j in range(len(y)))
                for i in range(len(self._U))]
        return full[self._r:]


class ChainComplex:
    """Square CW complex of an origami: edges x_i, y_i, faces F_i."""

    def __init__(self, origami: Origami):
        self.origami = origami
        n = origami.n
        vclass = {}
        cycles = origami.commutator.cycles()
        for idx, c in enumerate(cycles):
            for s in c:
                vclass[s] = idx
        self.vertex_count = len(cycles)
        self.vertex_of_square = vclass
        d1 = [[0] * (2 * n) for _ in range(len(cycles))]
        for s in range(1, n + 1):
            # x_s runs BL(s) -> BL(h(s)), y_s runs BL(s) -> BL(v(s))
            d1[vclass[origami.h(s)]][s - 1] += 1
            d1[vclass[s]][s - 1] -= 1
            d1[vclass[origami.v(s)]][n + s - 1] += 1
            d1[vclass[s]][n + s - 1] -= 1
        d2 = [[0] * n for _ in range(2 * n)]
        for s in range(1, n + 1):
            d2[s - 1][s - 1] += 1                        # +x_s
            d2[n + origami.h(s) - 1][s - 1] += 1         # +y_{h(s)}
            d2[origami.v(s) - 1][s - 1] -= 1             # -x_{v(s)}
            d2[n + s - 1][s - 1] -= 1                    # -y_s
        self.d1 = d1
        self.d2 = d2

    def boundary_of_boundary_is_zero(self) -> bool:
        prod = mat_mul(self.d1, self.d2)
        return all(all(x == 0 for x in row) for row in prod)


def _integer_inverse(M):
    n = len(M)
    cols = []
    for j in range(n):
        e = [1 if i == j else 0 for i in range(n)]
        x = solve_exact(M, e)
        assert all(v.denominator == 1 for v in x)
        cols.append([int(v) for v in x])
    return mat_transpose(cols)


def build_homology(o: Origami) -> HomologyModel:
    """Homology model; waist basis when available, chain complex otherwise."""
    o.require_connected()
    g = o.genus()
    hcyls = tracing.raw_decompose(o, 1, 0)
    vcyls = tracing.raw_decompose(o, 0, 1)
    model = None
    if len(hcyls) + len(vcyls) == 2 * g:
        try:
            model = _WaistModel(o, hcyls, vcyls)
        except AssertionError:  # waist curves do not form a unimodular basis
            model = None
    if model is None:
        model = _ChainModel(o)
    model.raw_cylinders = {(1, 0): hcyls, (0, 1): vcyls}
    return model
