"""Dense univariate polynomial arithmetic over GF(p).

Polynomials are coefficient lists low-to-high with entries in {0, ..., p-1}
and no trailing zeros ([] is the zero polynomial).  Factorization is
squarefree decomposition + distinct-degree + Cantor-Zassenhaus equal-degree
splitting, seeded for reproducibility.
"""

from __future__ import annotations

import random


def trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def add(a, b, p):
    n = max(len(a), len(b))
    return trim([((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % p
                 for i in range(n)])


def sub(a, b, p):
    n = max(len(a), len(b))
    return trim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p
                 for i in range(n)])


def mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return trim(out)


def divmod_(a, b, p):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = a[:]
    q = [0] * max(len(a) - len(b) + 1, 0)
    inv = pow(b[-1], p - 2, p)
    while len(a) >= len(b):
        f = a[-1] * inv % p
        if f:
            shift = len(a) - len(b)
            q[shift] = f
            for i, c in enumerate(b):
                a[shift + i] = (a[shift + i] - f * c) % p
        a.pop()
    return trim(q), trim(a)


def mod(a, b, p):
    return divmod_(a, b, p)[1]


def monic(a, p):
    if not a:
        return a
    inv = pow(a[-1], p - 2, p)
    return [c * inv % p for c in a]


def gcd(a, b, p):
    while b:
        a, b = b, mod(a, b, p)
    return monic(a, p)


def powmod(a, e, m, p):
    result = [1]
    a = mod(a, m, p)
    while e:
        if e & 1:
            result = mod(mul(result, a, p), m, p)
        a = mod(mul(a, a, p), m, p)
        e >>= 1
    return result


def derivative(a, p):
    return trim([i * c % p for i, c in enumerate(a)][1:])


def _pth_root(a, p):
    # a(x) = g(x^p) over GF(p) implies g has the same coefficients (c^p = c)
    return trim([a[i] for i in range(0, len(a), p)])


def squarefree_decomposition(a, p):
    """List of (factor, multiplicity) with factors squarefree and coprime."""
    out = []
    a = monic(a, p)

    def rec(f, mult):
        if len(f) <= 1:
            return
        d = derivative(f, p)
        if not d:
            rec(_pth_root(f, p), mult * p)
            return
        g = gcd(f, d, p)
        w = divmod_(f, g, p)[0]
        i = 1
        while len(w) > 1:
            y = gcd(w, g, p)
            z = divmod_(w, y, p)[0]
            if len(z) > 1:
                out.append((monic(z, p), mult * i))
            g = divmod_(g, y, p)[0]
            w = y
            i += 1
        if len(g) > 1:
            rec(g, mult * p)

    rec(a, 1)
    return out


def distinct_degree(f, p):
    """List of (product-of-irreducibles-of-degree-d, d) for squarefree monic f."""
    out = []
    x = [0, 1]
    h = x[:]
    v = f[:]
    d = 0
    while len(v) - 1 >= 2 * (d + 1):
        d += 1
        h = powmod(h, p, v, p)
        g = gcd(sub(h, x, p), v, p)
        if len(g) > 1:
            out.append((g, d))
            v = divmod_(v, g, p)[0]
            h = mod(h, v, p)
    if len(v) > 1:
        out.append((v, len(v) - 1))
    return out


def _random_poly(deg, p, rng):
    return trim([rng.randrange(p) for _ in range(deg)] + [1])


def equal_degree_split(f, d, p, rng):
    """Split a monic squarefree product of degree-d irreducibles, len > d+1."""
    n = len(f) - 1
    while True:
        r = _random_poly(rng.randrange(1, n), p, rng)
        g = gcd(r, f, p)
        if 1 < len(g) < len(f):
            return g
        if p == 2:
            t = r[:]
            acc = r[:]
            for _ in range(d - 1):
                acc = mod(mul(acc, acc, p), f, p)
                t = add(t, acc, p)
        else:
            t = sub(powmod(r, (p ** d - 1) // 2, f, p), [1], p)
        g = gcd(t, f, p)
        if 1 < len(g) < len(f):
            return g


def equal_degree_factor(f, d, p, rng):
    if len(f) - 1 == d:
        return [monic(f, p)]
    g = equal_degree_split(f, d, p, rng)
    h = divmod_(f, g, p)[0]
    return equal_degree_factor(g, d, p, rng) + equal_degree_factor(h, d, p, rng)


def factor(f, p, seed=0x0F1A7):
    """Full monic factorization over GF(p): sorted list of (factor, multiplicity)."""
    rng = random.Random(seed)
    out = {}
    for sqf, mult in squarefree_decomposition(f, p):
        for prod, d in distinct_degree(sqf, p):
            for irr in equal_degree_factor(prod, d, p, rng):
                key = tuple(irr)
                out[key] = out.get(key, 0) + mult
    items = [(list(k), m) for k, m in out.items()]
    items.sort(key=lambda t: (len(t[0]), t[0][::-1]))
    return items


def irreducible(f, p):
    """Irreducibility over GF(p) via distinct-degree structure."""
    f = monic(trim(f[:]), p)
    n = len(f) - 1
    if n <= 0:
        return False
    if n == 1:
        return True
    d = derivative(f, p)
    if not d or len(gcd(f, d, p)) > 1:
        return False
    dd = distinct_degree(f, p)
    return len(dd) == 1 and dd[0][1] == n and dd[0][0] == f
