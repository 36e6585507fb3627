"""The chain complex of right Z[G]-modules derived from a free crossed complex.

C_0 = Z[G] on the single basis element ``*``; C_1 free on X1 with
d(x) = * (phi(x) - 1); C_2 free on X2 with d(r) = sum_x x * D_x(w r), D the
right free derivative; C_n (n >= 3) free on X_n with the abelianized
boundaries.  For finite G everything flattens to integer matrices along the
group basis.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .crossed import ComplexError, CrossedComplex, ModuleElem, abelianize2
from .groups import GroupRingElem
from .words import right_fox_derivative

BASEPOINT = "*"


@dataclass
class ChainComplex:
    group: object
    bases: dict[int, list[str]]
    # boundaries[n][x] is a ModuleElem over bases[n - 1]
    boundaries: dict[int, dict[str, ModuleElem]]
    maxdim: int
    elements: list = field(default_factory=list)

    def __post_init__(self):
        self._eindex = {g: i for i, g in enumerate(self.elements)}

    def rank(self, n: int) -> int:
        """Z-rank of the dimension-n module."""
        return len(self.bases.get(n, [])) * len(self.elements)

    def matrix(self, n: int) -> list[list[int]]:
        """d_n flattened to integers: columns (x, g) in C_n, rows (y, h) in C_{n-1}."""
        G, E, idx = self.group, self.elements, self._eindex
        src, dst = self.bases.get(n, []), self.bases.get(n - 1, [])
        row_of = {y: i for i, y in enumerate(dst)}
        k = len(E)
        M = [[0] * (len(src) * k) for _ in range(len(dst) * k)]
        for j, x in enumerate(src):
            for y, r in self.boundaries[n][x].terms.items():
                base = row_of[y] * k
                for gi, g in enumerate(E):
                    col = j * k + gi
                    for h, c in r.terms.items():
                        M[base + idx[G.mul(h, g)]][col] += c
        return M

    def augmented_matrix(self, n: int) -> list[list[int]]:
        """d_n tensored down to Z (coefficients replaced by their augmentation)."""
        src, dst = self.bases.get(n, []), self.bases.get(n - 1, [])
        row_of = {y: i for i, y in enumerate(dst)}
        M = [[0] * len(src) for _ in range(len(dst))]
        for j, x in enumerate(src):
            for y, r in self.boundaries[n][x].terms.items():
                M[row_of[y]][j] += r.augmentation()
        return M

    def check_dd(self) -> list[int]:
        """Dimensions n where d_{n-1} d_n is not zero as an integer matrix."""
        bad = []
        for n in range(2, self.maxdim + 1):
            a = np.array(self.matrix(n - 1), dtype=np.int64).reshape(self.rank(n - 2), self.rank(n - 1))
            b = np.array(self.matrix(n), dtype=np.int64).reshape(self.rank(n - 1), self.rank(n))
            if np.any(a @ b):
                bad.append(n)
        return bad


def to_chain_complex(C: CrossedComplex, maxdim: int | None = None) -> ChainComplex:
    G = C.group
    if not G.is_finite:
        raise ComplexError("chain complexes are only flattened for finite groups")
    top = C.maxdim if maxdim is None else min(maxdim, C.maxdim)
    bases = {0: [BASEPOINT]}
    boundaries: dict[int, dict[str, ModuleElem]] = {}
    one = GroupRingElem.one(G)
    bases[1] = list(C.alphabet)
    boundaries[1] = {x: ModuleElem(G, {BASEPOINT: GroupRingElem.of(G, C.phi[x]) - one})
                     for x in C.alphabet}
    if top >= 2:
        bases[2] = list(C.relators)
        bd = {}
        for r, w in C.relators.items():
            bd[r] = ModuleElem(G, {x: right_fox_derivative(w, x, C.phi_hom) for x in C.alphabet})
        boundaries[2] = bd
    if top >= 3:
        bases[3] = C.basis(3)
        boundaries[3] = {x: abelianize2(C.boundaries[3][x], C) for x in C.basis(3)}
    for n in range(4, top + 1):
        bases[n] = C.basis(n)
        boundaries[n] = dict(C.boundaries[n])
    chain = ChainComplex(G, bases, boundaries, top, G.elements())
    bad = chain.check_dd()
    if bad:
        raise ComplexError(f"dd != 0 in derived chain complex at dimensions {bad}")
    return chain


# ---------------------------------------------------------------------------
# integer linear algebra


def _eliminate_units(M: list[list[int]]) -> tuple[int, list[list[int]]]:
    """Strip unit pivots with sparse row operations.

    Clearing the column of a +-1 pivot by row operations leaves the pivot
    alone in its column, so its row can then be cleared by column operations
    touching nothing else.  Returns the number of pivots removed and the
    remaining block as a dense matrix.
    """
    rows = [{j: v for j, v in enumerate(r) if v} for r in M]
    cols: dict[int, set[int]] = {}
    for i, r in enumerate(rows):
        for j in r:
            cols.setdefault(j, set()).add(i)
    alive = set(i for i, r in enumerate(rows) if r)
    units = 0
    while True:
        pivot = None
        for i in sorted(alive, key=lambda i: len(rows[i])):
            for j, v in rows[i].items():
                if v in (1, -1):
                    pivot = (i, j, v)
                    break
            if pivot:
                break
        if pivot is None:
            break
        i, j, v = pivot
        prow = rows[i]
        for k in list(cols[j]):
            if k == i:
                continue
            q = rows[k][j] * v
            rk = rows[k]
            for jj, vv in prow.items():
                nv = rk.get(jj, 0) - q * vv
                if nv:
                    if jj not in rk:
                        cols.setdefault(jj, set()).add(k)
                    rk[jj] = nv
                else:
                    if jj in rk:
                        del rk[jj]
                        cols[jj].discard(k)
            if not rk:
                alive.discard(k)
        for jj in prow:
            cols[jj].discard(i)
        rows[i] = {}
        alive.discard(i)
        units += 1
    left_cols = sorted({j for i in alive for j in rows[i]})
    pos = {j: n for n, j in enumerate(left_cols)}
    rest = []
    for i in sorted(alive):
        r = [0] * len(left_cols)
        for j, v in rows[i].items():
            r[pos[j]] = v
        rest.append(r)
    return units, rest


def smith_diagonal(M: list[list[int]]) -> list[int]:
    """Non-zero diagonal entries of the Smith normal form (d1 | d2 | ...)."""
    units, A = _eliminate_units(M)
    return [1] * units + _dense_smith(A)


def _dense_smith(A: list[list[int]]) -> list[int]:
    rows = len(A)
    cols = len(A[0]) if rows else 0
    diag = []
    t = 0
    while t < rows and t < cols:
        # pivot: smallest non-zero absolute value in the remaining block
        best = None
        for i in range(t, rows):
            Ai = A[i]
            for j in range(t, cols):
                v = Ai[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        A[t], A[i] = A[i], A[t]
        for row in A:
            row[t], row[j] = row[j], row[t]
        while True:
            p = A[t][t]
            done = True
            for i in range(t + 1, rows):
                if A[i][t]:
                    q = A[i][t] // p
                    if q:
                        Ai, At = A[i], A[t]
                        for j in range(t, cols):
                            Ai[j] -= q * At[j]
                    if A[i][t]:
                        done = False
            for j in range(t + 1, cols):
                if A[t][j]:
                    q = A[t][j] // p
                    if q:
                        for row in A:
                            row[j] -= q * row[t]
                    if A[t][j]:
                        done = False
            if done:
                # divisibility: every remaining entry must be a multiple of p
                bad = None
                for i in range(t + 1, rows):
                    for j in range(t + 1, cols):
                        if A[i][j] % p:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                At, Ab = A[t], A[bad]
                for j in range(t, cols):
                    At[j] += Ab[j]
                continue
            # bring the smallest entry of row/column t to the pivot
            best = (abs(A[t][t]), t, t)
            for i in range(t + 1, rows):
                if A[i][t] and abs(A[i][t]) < best[0]:
                    best = (abs(A[i][t]), i, t)
            for j in range(t + 1, cols):
                if A[t][j] and abs(A[t][j]) < best[0]:
                    best = (abs(A[t][j]), t, j)
            _, i, j = best
            if i != t:
                A[t], A[i] = A[i], A[t]
            if j != t:
                for row in A:
                    row[t], row[j] = row[j], row[t]
        diag.append(abs(A[t][t]))
        t += 1
    return diag


def invariant_factors(rank: int, incoming: list[list[int]], outgoing_rank: int) -> list[int]:
    """Invariant factors of ker(out)/im(in) where C has Z-rank ``rank``.

    Torsion factors (> 1) come first in increasing order, then one 0 per free
    summand.
    """
    d = smith_diagonal(incoming) if incoming and incoming[0] else []
    free = rank - outgoing_rank - len(d)
    return sorted(x for x in d if x > 1) + [0] * free


def matrix_rank(M: list[list[int]]) -> int:
    if not M or not M[0]:
        return 0
    return len(smith_diagonal(M))


def homology_over_Z(chain: ChainComplex, n: int) -> list[int]:
    """H_n of the complex tensored with Z over Z[G] (group homology for resolutions)."""
    if n < 0 or n > chain.maxdim - 1:
        raise ComplexError(f"homology in dimension {n} needs boundaries up to {n + 1}")
    rank = len(chain.bases.get(n, []))
    out_rank = 0 if n == 0 else matrix_rank(chain.augmented_matrix(n))
    return invariant_factors(rank, chain.augmented_matrix(n + 1), out_rank)


@dataclass
class ExactnessResult:
    dim: int
    exact: bool
    homology: list[int]
    kernel_rank: int
    image_rank: int
    identities_rank: int | None = None
    identities_torsion: list[int] | None = None

    def to_json(self) -> dict:
        d = {"check": "exact", "dim": self.dim, "exact": self.exact, "homology": self.homology,
             "kernel_rank": self.kernel_rank, "image_rank": self.image_rank}
        if self.identities_rank is not None:
            d["identities"] = {"rank": self.identities_rank, "torsion": self.identities_torsion}
        return d


def exactness_check(C: CrossedComplex | ChainComplex, n: int) -> ExactnessResult:
    """Is ker d_n = im d_{n+1} in the flattened, un-augmented chain complex?

    A missing d_{n+1} (n = top dimension) counts as the zero map.  At n = 2
    the kernel is the module of identities among relations; its Z-rank is
    reported (it is a subgroup of a free abelian group, so torsion-free).
    """
    chain = C if isinstance(C, ChainComplex) else to_chain_complex(C)
    if n < 1 or n > chain.maxdim:
        raise ComplexError(f"dimension {n} out of range 1..{chain.maxdim}")
    rank = chain.rank(n)
    out_rank = matrix_rank(chain.matrix(n))
    incoming = chain.matrix(n + 1) if n + 1 <= chain.maxdim else []
    h = invariant_factors(rank, incoming, out_rank)
    image_rank = matrix_rank(incoming) if incoming else 0
    res = ExactnessResult(n, not h, h, rank - out_rank, image_rank)
    if n == 2:
        res.identities_rank = rank - out_rank
        res.identities_torsion = []
    return res
