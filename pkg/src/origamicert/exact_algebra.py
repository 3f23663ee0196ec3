"""Exact integer and rational linear algebra, and real-root counting.

Matrices are dense lists of rows over Python ints (arbitrary precision).
Polynomials are coefficient lists low-to-high degree over ints, with a
nonzero leading coefficient unless the polynomial is zero (empty list).
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .errors import NotSquare, NotSquarefree

IntMatrix = list[list[int]]
IntPoly = list[int]


# ---------------------------------------------------------------------------
# matrices

def mat_identity(n: int) -> IntMatrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(A, B):
    rows, inner, cols = len(A), len(B), len(B[0])
    assert len(A[0]) == inner
    Bt = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def mat_vec(A, x):
    return [sum(a * b for a, b in zip(row, x)) for row in A]


def mat_sub(A, B):
    return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_transpose(A):
    return [list(r) for r in zip(*A)]


def mat_pow(A, k):
    n = len(A)
    if k < 0:
        raise ValueError("negative power of an integer matrix")
    out = mat_identity(n)
    base = [row[:] for row in A]
    while k:
        if k & 1:
            out = mat_mul(out, base)
        base = mat_mul(base, base)
        k >>= 1
    return out


def mat_is_identity(A) -> bool:
    return A == mat_identity(len(A))


def det(A: IntMatrix) -> int:
    """Determinant by fraction-free Bareiss elimination."""
    n = len(A)
    if any(len(r) != n for r in A):
        raise NotSquare("determinant of a non-square matrix")
    M = [row[:] for row in A]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
            M[i][k] = 0
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def charpoly(A: IntMatrix) -> IntPoly:
    """Characteristic polynomial of det(XI - A), low-to-high, by the
    division-free Samuelson-Berkowitz recursion."""
    n = len(A)
    if any(len(r) != n for r in A):
        raise NotSquare("characteristic polynomial of a non-square matrix")
    # vector of coefficients high-to-low, starts with charpoly of the empty matrix
    poly = [1]
    for k in range(n):
        # Toeplitz column for the leading (k+1)x(k+1) principal submatrix
        a = A[k][k]
        row = A[k][:k]
        col = [A[i][k] for i in range(k)]
        sub = [r[:k] for r in A[:k]]
        # entries c_0 = 1? we build T column: [-1? ] use standard recursion
        c = [1, -a]
        w = col[:]
        for _ in range(k):
            c.append(-sum(r * x for r, x in zip(row, w)))
            w = mat_vec(sub, w)
        # convolve (poly has length k+1, c length k+2)
        new = [0] * (k + 2)
        for i, ci in enumerate(c):
            if ci == 0:
                continue
            for j, pj in enumerate(poly):
                if i + j < k + 2:
                    new[i + j] += ci * pj
        poly = new
    return poly[::-1]


def charpoly_minor_expansion(A: IntMatrix) -> IntPoly:
    """Independent oracle: expand det(XI - A) by cofactors over Z[X]."""
    n = len(A)
    rows = list(range(n))

    def poly_mul(p, q):
        out = [0] * (len(p) + len(q) - 1)
        for i, a in enumerate(p):
            if a:
                for j, b in enumerate(q):
                    out[i + j] += a * b
        return out

    def entry(i, j):
        # X*delta_ij - A[i][j] as a poly
        return [-A[i][j], 1] if i == j else [-A[i][j]]

    def rec(rws, cols):
        if not rws:
            return [1]
        i = rws[0]
        out = [0]
        for idx, j in enumerate(cols):
            e = entry(i, j)
            if e == [0]:
                continue
            minor = rec(rws[1:], cols[:idx] + cols[idx + 1:])
            term = poly_mul(e, minor)
            if idx % 2:
                term = [-t for t in term]
            out = [a + b for a, b in zip(out + [0] * (len(term) - len(out)),
                                         term + [0] * (len(out) - len(term)))]
        return out

    p = rec(rows, rows)
    return p + [0] * (n + 1 - len(p))


def smith_normal_form(A: IntMatrix):
    """Return (S, U, V) with U*A*V = S, S diagonal with d1 | d2 | ..., U, V unimodular."""
    rows, cols = len(A), len(A[0]) if A else 0
    S = [row[:] for row in A]
    U = mat_identity(rows)
    V = mat_identity(cols)

    def swap_rows(i, j):
        S[i], S[j] = S[j], S[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in S:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    def add_row(src, dst, c):
        S[dst] = [a + c * b for a, b in zip(S[dst], S[src])]
        U[dst] = [a + c * b for a, b in zip(U[dst], U[src])]

    def add_col(src, dst, c):
        for r in S:
            r[dst] += c * r[src]
        for r in V:
            r[dst] += c * r[src]

    t = 0
    while t < min(rows, cols):
        # find a pivot of least absolute value in the remaining block
        pivot = None
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                if S[i][j] != 0 and (best is None or abs(S[i][j]) < best):
                    best = abs(S[i][j])
                    pivot = (i, j)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])
        dirty = False
        for i in range(t + 1, rows):
            if S[i][t]:
                q = S[i][t] // S[t][t]
                add_row(t, i, -q)
                if S[i][t]:
                    dirty = True
        for j in range(t + 1, cols):
            if S[t][j]:
                q = S[t][j] // S[t][t]
                add_col(t, j, -q)
                if S[t][j]:
                    dirty = True
        if dirty:
            continue
        # enforce divisibility d_t | everything below-right
        culprit = None
        for i in range(t + 1, rows):
            for j in range(t + 1, cols):
                if S[i][j] % S[t][t]:
                    culprit = i
                    break
            if culprit is not None:
                break
        if culprit is not None:
            add_row(culprit, t, 1)
            continue
        t += 1
    for i in range(min(rows, cols)):
        if S[i][i] < 0:
            S[i] = [-x for x in S[i]]
            U[i] = [-x for x in U[i]]
    return S, U, V


def kernel_basis(A: IntMatrix) -> list[list[int]]:
    """Primitive integral basis of the rational kernel (saturated lattice)."""
    if not A or not A[0]:
        cols = len(A[0]) if A else 0
        return [list(row) for row in mat_identity(cols)]
    S, _U, V = smith_normal_form(A)
    rows, cols = len(A), len(A[0])
    out = []
    for j in range(cols):
        if j >= rows or S[j][j] == 0:
            out.append([V[i][j] for i in range(cols)])
    return out


def solve_exact(A, b):
    """Solve A x = b exactly over the rationals; raise ValueError if inconsistent.

    A has full column rank in all internal uses; among solutions the unique
    one is returned.
    """
    rows, cols = len(A), len(A[0])
    M = [[Fraction(A[i][j]) for j in range(cols)] + [Fraction(b[i])] for i in range(rows)]
    pivots = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if M[i][c]), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(rows):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    for i in range(r, rows):
        if M[i][cols]:
            raise ValueError("inconsistent linear system")
    x = [Fraction(0)] * cols
    for i, c in enumerate(pivots):
        x[c] = M[i][cols]
    # free columns (rank-deficient A) keep 0; callers use full-column-rank systems
    return x


# ---------------------------------------------------------------------------
# polynomials (low-to-high coefficient lists)

def poly_trim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def poly_degree(p) -> int:
    return len(p) - 1


def poly_add(p, q):
    n = max(len(p), len(q))
    out = [(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)]
    return poly_trim(out)


def poly_sub(p, q):
    return poly_add(p, [-x for x in q])


def poly_mul(p, q):
    if not p or not q:
        return []
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return poly_trim(out)


def poly_scale(p, c):
    return poly_trim([c * x for x in p])


def poly_eval(p, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def poly_derivative(p):
    return poly_trim([i * c for i, c in enumerate(p)][1:])


def poly_shift_compose(p, a, b):
    """p(a*Y + b) as a polynomial in Y, exact over ints/Fractions."""
    out = []
    for c in reversed(p):
        out = poly_add(poly_mul(out, [b, a]), [c])
    return out


def is_monic(p) -> bool:
    return bool(p) and p[-1] == 1


def is_reciprocal(p) -> bool:
    """Monic, even degree, palindromic coefficients, constant term 1."""
    d = poly_degree(p)
    if d < 2 or d % 2 or not is_monic(p):
        return False
    return all(p[i] == p[d - i] for i in range(d + 1))


def sylvester_matrix(p, q) -> IntMatrix:
    m, n = poly_degree(p), poly_degree(q)
    size = m + n
    M = [[0] * size for _ in range(size)]
    for i in range(n):
        for j, c in enumerate(reversed(p)):
            M[i][i + j] = c
    for i in range(m):
        for j, c in enumerate(reversed(q)):
            M[n + i][i + j] = c
    return M


def resultant(p, q) -> int:
    if not p or not q:
        return 0
    if poly_degree(p) == 0:
        return p[0] ** poly_degree(q)
    if poly_degree(q) == 0:
        return q[0] ** poly_degree(p)
    return det(sylvester_matrix(p, q))


def discriminant(p) -> int:
    """Standard discriminant via the resultant with the derivative."""
    d = poly_degree(p)
    if d < 1:
        raise ValueError("discriminant needs degree >= 1")
    if d == 1:
        return 1
    r = resultant(p, poly_derivative(p))
    sign = -1 if (d * (d - 1) // 2) % 2 else 1
    q, rem = divmod(sign * r, p[-1])
    assert rem == 0
    return q


# ---------------------------------------------------------------------------
# Sturm sequences

def _frac_poly(p):
    return [Fraction(c) for c in p]


def _poly_rem(p, q):
    """Remainder of p by q over the rationals (both low-to-high Fraction lists)."""
    p = p[:]
    dq = len(q) - 1
    inv = 1 / q[-1]
    while len(p) - 1 >= dq and any(p):
        while p and p[-1] == 0:
            p.pop()
        if len(p) - 1 < dq:
            break
        f = p[-1] * inv
        shift = len(p) - 1 - dq
        for i, c in enumerate(q):
            p[shift + i] -= f * c
        p.pop()
    while p and p[-1] == 0:
        p.pop()
    return p


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def _sign_changes(vals) -> int:
    signs = [s for s in map(_sign, vals) if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def sturm_chain(p):
    chain = [_frac_poly(p), _frac_poly(poly_derivative(p))]
    while poly_degree(chain[-1]) > 0:
        r = _poly_rem(chain[-2], chain[-1])
        if not r:
            break
        chain.append([-c for c in r])
    return chain


def sturm_real_roots(q, interval=None) -> int:
    """Count distinct real roots of a squarefree q, in an open interval or all of R.

    Interval bounds must be exact rationals and non-roots of q.
    """
    q = poly_trim(list(q))
    if poly_degree(q) < 1:
        raise ValueError("need a nonconstant polynomial")
    g = resultant(q, poly_derivative(q)) if poly_degree(q) >= 1 else 1
    if g == 0:
        raise NotSquarefree("polynomial has a repeated root")
    chain = sturm_chain(q)

    def var_at(x):
        return _sign_changes([poly_eval(c, x) for c in chain])

    def var_at_inf(sign):
        vals = []
        for c in chain:
            lead = c[-1]
            d = poly_degree(c)
            vals.append(lead if sign > 0 else lead * (-1) ** d)
        return _sign_changes(vals)

    if interval is None:
        return var_at_inf(-1) - var_at_inf(+1)
    lo, hi = Fraction(interval[0]), Fraction(interval[1])
    if lo >= hi:
        raise ValueError("empty interval")
    if poly_eval(q, lo) == 0 or poly_eval(q, hi) == 0:
        raise ValueError("interval endpoints must not be roots")
    return var_at(lo) - var_at(hi)


def integer_roots(p) -> list[int]:
    """All integer roots of an integer polynomial, via Sturm isolation."""
    p = poly_trim(list(p))
    if not p:
        raise ValueError("zero polynomial")
    if p[0] == 0:
        # factor out X^k
        k = next(i for i, c in enumerate(p) if c)
        return sorted(set([0] + integer_roots(p[k:])))
    # squarefree part for isolation
    sf = p
    if resultant(p, poly_derivative(p)) == 0:
        sf = _squarefree_part(p)
    bound = 1 + max(abs(c) for c in sf) // abs(sf[-1]) + 1
    roots = _integer_roots_in(sf, -bound, bound)
    return sorted(r for r in set(roots) if poly_eval(p, r) == 0)


def _squarefree_part(p):
    """p / gcd(p, p') over Q, rescaled to a primitive integer polynomial."""
    fp = _frac_poly(p)
    a, b = fp, _frac_poly(poly_derivative(p))
    while b:
        a, b = b, _poly_rem(a, b)
    # a = gcd; divide
    q, r = _poly_divmod(fp, a)
    assert not r
    return _primitive(q)


def _poly_divmod(p, q):
    p = p[:]
    out = [Fraction(0)] * max(len(p) - len(q) + 1, 0)
    dq = len(q) - 1
    inv = 1 / q[-1]
    while len(p) - 1 >= dq and any(p):
        while p and p[-1] == 0:
            p.pop()
        if len(p) - 1 < dq:
            break
        f = p[-1] * inv
        shift = len(p) - 1 - dq
        out[shift] = f
        for i, c in enumerate(q):
            p[shift + i] -= f * c
        p.pop()
    while p and p[-1] == 0:
        p.pop()
    return out, p


def _primitive(fp):
    from math import lcm
    den = 1
    for c in fp:
        den = lcm(den, Fraction(c).denominator)
    ints = [int(c * den) for c in fp]
    g = 0
    for c in ints:
        g = gcd(g, c)
    g = g or 1
    if ints and ints[-1] < 0:
        g = -g
    return [c // g for c in ints]


def _integer_roots_in(sf, lo, hi):
    """Integer roots of squarefree sf inside [lo, hi], by Sturm bisection."""
    chain = sturm_chain(sf)

    def var_at(x):
        return _sign_changes([poly_eval(c, Fraction(x)) for c in chain])

    found = []

    def rec(a, b, va, vb):
        if va == vb:
            return
        if b - a <= 1:
            for x in (a, b):
                if poly_eval(sf, x) == 0:
                    found.append(x)
            return
        mid = (a + b) // 2
        if poly_eval(sf, mid) == 0:
            found.append(mid)
        vm = var_at(mid)
        rec(a, mid, va, vm)
        rec(mid, b, vm, vb)

    rec(lo, hi, var_at(lo), var_at(hi))
    return found
