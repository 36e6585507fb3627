"""Independent reference computations used by the tests.

Nothing here imports the package's own algorithms for the quantity being
checked: group tables are enumerated from scratch, invariant factors come
from determinantal divisors, Fox derivatives from the prefix-sum formula.
"""
from __future__ import annotations

import itertools
import math
from fractions import Fraction


# ---------------------------------------------------------------------------
# all groups of a small order


def group_tables(n: int) -> list[list[list[int]]]:
    """Every group table of order n up to a normalizing relabelling.

    Element 1 generates a cyclic subgroup of order k (tried for every divisor
    k > 1), and elements c..c+k-1 are the coset c * <g>.  Remaining cells are
    filled as a Latin square with an associativity check on each placement.
    """
    if n == 1:
        return [[[0]]]
    out = []
    for k in range(n, 1, -1):
        if n % k:
            continue
        T = [[-1] * n for _ in range(n)]
        for i in range(n):
            T[0][i] = i
            T[i][0] = i
        for c in range(0, n, k):
            for i in range(k):
                for j in range(k):
                    T[c + i][j] = c + (i + j) % k
        rowused = [set(v for v in T[i] if v >= 0) for i in range(n)]
        colused = [set(T[i][j] for i in range(n) if T[i][j] >= 0) for j in range(n)]
        cells = [(i, j) for i in range(1, n) for j in range(1, n) if T[i][j] < 0]

        def ok(a, b):
            c = T[a][b]
            for x in range(n):
                bx, cx = T[b][x], T[c][x]
                if bx >= 0 and cx >= 0:
                    abx = T[a][bx]
                    if abx >= 0 and abx != cx:
                        return False
                xa, xc = T[x][a], T[x][c]
                if xa >= 0 and xc >= 0:
                    xab = T[xa][b]
                    if xab >= 0 and xab != xc:
                        return False
            return True

        def rec(idx):
            if idx == len(cells):
                if _associative(T):
                    out.append([row[:] for row in T])
                return
            i, j = cells[idx]
            for v in range(n):
                if v in rowused[i] or v in colused[j]:
                    continue
                T[i][j] = v
                rowused[i].add(v)
                colused[j].add(v)
                if ok(i, j):
                    rec(idx + 1)
                T[i][j] = -1
                rowused[i].discard(v)
                colused[j].discard(v)

        rec(0)
    return out


def _associative(T) -> bool:
    n = len(T)
    return all(T[T[a][b]][c] == T[a][T[b][c]] for a in range(n) for b in range(n) for c in range(n))


def tables_isomorphic(T1, T2) -> bool:
    """Backtracking search for a bijection respecting the tables."""
    n = len(T1)
    if n != len(T2):
        return False
    id1 = next(e for e in range(n) if all(T1[e][x] == x for x in range(n)))
    id2 = next(e for e in range(n) if all(T2[e][x] == x for x in range(n)))
    f = {id1: id2}
    used = {id2}
    order = [x for x in range(n) if x != id1]

    def consistent():
        for a, fa in f.items():
            for b, fb in f.items():
                ab = T1[a][b]
                if ab in f and f[ab] != T2[fa][fb]:
                    return False
        return True

    def rec(i):
        if i == len(order):
            return True
        a = order[i]
        for v in range(n):
            if v in used:
                continue
            f[a] = v
            used.add(v)
            if consistent() and rec(i + 1):
                return True
            del f[a]
            used.discard(v)
        return False

    return rec(0)


def groups_of_order(n: int) -> list[list[list[int]]]:
    reps: list = []
    for T in group_tables(n):
        if not any(tables_isomorphic(T, R) for R in reps):
            reps.append(T)
    return reps


def has_normal_subgroup(T, K_table, quotient_order: int) -> bool:
    """Does the group T have a normal subgroup isomorphic to K with quotient of the given order?"""
    n = len(T)
    k = len(K_table)
    if k * quotient_order != n:
        return False
    e = next(x for x in range(n) if all(T[x][y] == y for y in range(n)))
    inv = [next(y for y in range(n) if T[x][y] == e) for x in range(n)]
    for subset in itertools.combinations([x for x in range(n) if x != e], k - 1):
        S = set(subset) | {e}
        if any(T[a][b] not in S for a in S for b in S):
            continue
        if any(T[T[inv[g]][s]][g] not in S for g in range(n) for s in S):
            continue
        elems = sorted(S)
        idx = {x: i for i, x in enumerate(elems)}
        sub = [[idx[T[a][b]] for b in elems] for a in elems]
        if tables_isomorphic(sub, K_table):
            return True
    return False


# ---------------------------------------------------------------------------
# invariant factors by determinantal divisors


def _det(M) -> int:
    A = [[Fraction(v) for v in row] for row in M]
    n = len(A)
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if A[r][c] != 0), None)
        if p is None:
            return 0
        if p != c:
            A[c], A[p] = A[p], A[c]
            det = -det
        det *= A[c][c]
        for r in range(c + 1, n):
            f = A[r][c] / A[c][c]
            if f:
                for j in range(c, n):
                    A[r][j] -= f * A[c][j]
    return int(det)


def determinantal_invariants(M) -> list[int]:
    """Non-zero Smith diagonal via d_k = gcd of k x k minors."""
    rows = len(M)
    cols = len(M[0]) if rows else 0
    ds = [1]
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for rs in itertools.combinations(range(rows), k):
            for cs in itertools.combinations(range(cols), k):
                g = math.gcd(g, _det([[M[r][c] for c in cs] for r in rs]))
                if g == ds[-1]:
                    break
            if g == ds[-1]:
                break
        if g == 0:
            break
        ds.append(g)
    return [ds[i] // ds[i - 1] for i in range(1, len(ds))]


def homology_from_matrices(rank: int, d_out, d_in) -> list[int]:
    """H = ker(d_out) / im(d_in) for integer matrices, torsion then zeros."""
    r_out = len(determinantal_invariants(d_out)) if d_out and d_out[0] else 0
    inv = determinantal_invariants(d_in) if d_in and d_in[0] else []
    return sorted(x for x in inv if x > 1) + [0] * (rank - r_out - len(inv))


# ---------------------------------------------------------------------------
# Fox derivatives by prefix sums


def naive_fox(letters, x, phi, mul, inv, identity) -> dict:
    """Left derivative: sum of prefixes before each x, minus prefixes through each x^-1."""
    out: dict = {}
    prefix = identity
    for g, e in letters:
        val = phi[g] if e == 1 else inv(phi[g])
        if g == x and e == 1:
            out[prefix] = out.get(prefix, 0) + 1
        prefix = mul(prefix, val)
        if g == x and e == -1:
            out[prefix] = out.get(prefix, 0) - 1
    return {k: v for k, v in out.items() if v}


# ---------------------------------------------------------------------------
# graph product rewriting


def reachable_words(word, adjacent, mul, identity_of):
    """All syllable words reachable by commuting swaps, adjacent merges and identity deletion."""
    start = tuple(word)
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for w in frontier:
            for i in range(len(w)):
                v, g = w[i]
                if g == identity_of(v):
                    cand = w[:i] + w[i + 1:]
                    if cand not in seen:
                        seen.add(cand)
                        nxt.append(cand)
            for i in range(len(w) - 1):
                (u, g), (v, h) = w[i], w[i + 1]
                if u == v:
                    cand = w[:i] + ((u, mul(u, g, h)),) + w[i + 2:]
                elif adjacent(u, v):
                    cand = w[:i] + ((v, h), (u, g)) + w[i + 2:]
                else:
                    continue
                if cand not in seen:
                    seen.add(cand)
                    nxt.append(cand)
        frontier = nxt
    return seen
