"""Independent oracles used by the tests.

Everything here recomputes expected values by brute force or by a
different algorithm than the library uses, so the two routes check each
other.
"""

from fractions import Fraction
from itertools import combinations


def assoc_holds_everywhere(g):
    """Full O(n^3) associativity check (the library only checks generators)."""
    t = g.mul_table
    n = g.order
    return all(t[t[a][b]][c] == t[a][t[b][c]]
               for a in range(n) for b in range(n) for c in range(n))


def subgroups_by_powerset(g):
    """All subgroups by filtering the full powerset; only for tiny groups."""
    n = g.order
    assert n <= 10, "powerset oracle is exponential"
    elems = list(range(n))
    out = set()
    for size in range(1, n + 1):
        if n % size != 0:
            continue
        for cand in combinations(elems, size):
            s = set(cand)
            if g.identity not in s:
                continue
            if all(g.mul_table[a][b] in s for a in s for b in s):
                out.add(tuple(sorted(s)))
    return out


def moebius_by_zeta_inverse(lat):
    """Moebius values via inversion of the zeta matrix of the subgroup poset."""
    subs = lat.subgroups
    n = len(subs)
    zeta = [[Fraction(1) if subs[i].mask & subs[j].mask == subs[i].mask else Fraction(0)
             for j in range(n)] for i in range(n)]
    # invert by Gauss-Jordan; zeta is unitriangular in the (order, members) sort
    inv = [[Fraction(1) if i == j else Fraction(0) for j in range(n)]
           for i in range(n)]
    m = [row[:] for row in zeta]
    for col in range(n):
        piv = next(i for i in range(col, n) if m[i][col] != 0)
        m[col], m[piv] = m[piv], m[col]
        inv[col], inv[piv] = inv[piv], inv[col]
        f = m[col][col]
        m[col] = [x / f for x in m[col]]
        inv[col] = [x / f for x in inv[col]]
        for i in range(n):
            if i != col and m[i][col] != 0:
                f = m[i][col]
                m[i] = [x - f * y for x, y in zip(m[i], m[col])]
                inv[i] = [x - f * y for x, y in zip(inv[i], inv[col])]
    return inv  # inv[k][h] = moebius(K, H) for K <= H


def bareiss_det(a):
    """Exact integer determinant by fraction-free elimination."""
    m = [row[:] for row in a]
    n = len(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def mat_mul(a, b):
    return [[sum(x * y for x, y in zip(row, col)) for col in zip(*b)] for row in a]


def enumerate_modular_solutions(a, b, m):
    """All x with A x = b (mod m) by exhausting the residue vectors."""
    rows = len(a)
    cols = len(a[0]) if rows else 0
    sols = []
    stack = [()]
    for _ in range(cols):
        stack = [t + (v,) for t in stack for v in range(m)]
    for x in stack:
        if all(sum(aij * xj for aij, xj in zip(row, x)) % m == bb % m
               for row, bb in zip(a, b)):
            sols.append(x)
    return set(sols)


def span_closure_mod(kernel, m, cols):
    """All elements of the subgroup of (Z/m)^cols generated by the kernel."""
    span = {tuple([0] * cols)}
    frontier = [tuple([0] * cols)]
    while frontier:
        base = frontier.pop()
        for k in kernel:
            nxt = tuple((x + y) % m for x, y in zip(base, k))
            if nxt not in span:
                span.add(nxt)
                frontier.append(nxt)
    return span
