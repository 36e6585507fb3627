"""Nonabelian 2-cocycles with values in K -> Aut(K), and extensions of C_p by K.

Automorphisms of K are permutation tuples ``alpha[m]``; they act on K on the
right (``m^alpha = alpha[m]``) and compose left to right, so ``alpha beta``
applies alpha first.  Conjugation ``m -> k^-1 m k`` is the boundary
``K -> Aut(K)``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

from .crossed import Dim2Elem
from .groups import FiniteGroup, named_group
from .report import Report
from .resolutions import standard_resolution
from .words import Word

Perm = tuple[int, ...]

MAX_K = 8
MAX_P = 5


class ExtensionError(ValueError):
    """Invalid cocycle data or out-of-range enumeration request."""


# ---------------------------------------------------------------------------
# automorphisms


def compose(alpha: Perm, beta: Perm) -> Perm:
    """alpha then beta."""
    return tuple(beta[alpha[m]] for m in range(len(alpha)))


def perm_inverse(alpha: Perm) -> Perm:
    out = [0] * len(alpha)
    for m, v in enumerate(alpha):
        out[v] = m
    return tuple(out)


def perm_power(alpha: Perm, k: int) -> Perm:
    acc = tuple(range(len(alpha)))
    base = alpha if k >= 0 else perm_inverse(alpha)
    for _ in range(abs(k)):
        acc = compose(acc, base)
    return acc


def conjugation(K: FiniteGroup, k: int) -> Perm:
    """The inner automorphism m -> k^-1 m k."""
    ki = K.inv(k)
    return tuple(K.mul(K.mul(ki, m), k) for m in K.elements())


def _generating_set(K: FiniteGroup) -> list[int]:
    gens: list[int] = []
    span = {K.identity}
    for g in sorted(K.elements(), key=lambda g: -K.element_order(g)):
        if g not in span:
            gens.append(g)
            span = _closure(K, gens)
        if len(span) == K.order:
            break
    return gens


def _closure(K: FiniteGroup, gens: Sequence[int]) -> set[int]:
    seen = {K.identity}
    frontier = [K.identity]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = K.mul(a, g)
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
        frontier = nxt
    return seen


def _extend_hom(G: FiniteGroup, H: FiniteGroup, gens: Sequence[int], images: Sequence[int]):
    """The homomorphism G -> H sending gens to images, or None if there is none."""
    f = {G.identity: H.identity}
    frontier = [G.identity]
    while frontier:
        nxt = []
        for a in frontier:
            for g, h in zip(gens, images):
                b = G.mul(a, g)
                img = H.mul(f[a], h)
                if b in f:
                    if f[b] != img:
                        return None
                else:
                    f[b] = img
                    nxt.append(b)
        frontier = nxt
    # the BFS only checks consistency along generator edges; verify fully
    for a in G.elements():
        for b in G.elements():
            if f[G.mul(a, b)] != H.mul(f[a], f[b]):
                return None
    return f


def automorphisms(K: FiniteGroup) -> list[Perm]:
    """All automorphisms of K, sorted, identity first."""
    if K.order > MAX_K:
        raise ExtensionError(f"|K| = {K.order} exceeds the limit {MAX_K}")
    gens = _generating_set(K)
    out = set()
    by_order: dict[int, list[int]] = {}
    for m in K.elements():
        by_order.setdefault(K.element_order(m), []).append(m)
    pools = [by_order.get(K.element_order(g), []) for g in gens]
    for images in itertools.product(*pools):
        f = _extend_hom(K, K, gens, images)
        if f is not None and len(set(f.values())) == K.order:
            out.add(tuple(f[m] for m in K.elements()))
    ident = tuple(K.elements())
    return sorted(out, key=lambda a: (a != ident, a))


def is_automorphism(K: FiniteGroup, alpha: Perm) -> bool:
    n = K.order
    if sorted(alpha) != list(range(n)):
        return False
    return all(alpha[K.mul(a, b)] == K.mul(alpha[a], alpha[b]) for a in range(n) for b in range(n))


# ---------------------------------------------------------------------------
# cocycles on the standard resolution


def _eval_word(u: Word, k1: Mapping, n: int) -> Perm:
    acc = tuple(range(n))
    for x, e in u.letters:
        alpha = k1[x]
        acc = compose(acc, alpha if e == 1 else perm_inverse(alpha))
    return acc


def evaluate_dim2(c: Dim2Elem, K: FiniteGroup, f1: Mapping[str, Perm],
                  f2: Mapping[str, int]) -> int:
    """Image of a dimension-2 element under (f1, f2) into K -> Aut(K)."""
    acc = K.identity
    for x, e, u in c.factors:
        m = f2[x] if e == 1 else K.inv(f2[x])
        alpha = _eval_word(u, f1, K.order)
        acc = K.mul(acc, alpha[m])
    return acc


def check_cocycle(G: FiniteGroup, K: FiniteGroup, k1: Callable | Mapping,
                  k2: Callable | Mapping) -> Report:
    """Check that (k1, k2) defines a morphism from the standard resolution of G
    into K -> Aut(K).

    k1 maps elements of G to automorphisms of K, k2 maps pairs to K.  Both
    conditions are exhaustive: the relator condition over G^2 and the
    triviality on dimension-3 boundaries over G^3.
    """
    get1 = k1 if callable(k1) else k1.__getitem__
    get2 = (lambda a, b: k2(a, b)) if callable(k2) else (lambda a, b: k2[(a, b)])
    F = standard_resolution(G, 3)
    elems = G.elements()
    f1 = {F.alphabet[i]: tuple(get1(a)) for i, a in enumerate(elems)}
    for a, alpha in zip(elems, f1.values()):
        if not is_automorphism(K, alpha):
            raise ExtensionError(f"k1({G.format(a)}) is not an automorphism of K")
    f2 = {}
    for (a, b), name in zip(itertools.product(elems, repeat=2), F.basis(2)):
        f2[name] = get2(a, b)
    report = Report()
    fails = []
    for (a, b), name in zip(itertools.product(elems, repeat=2), F.basis(2)):
        lhs = conjugation(K, f2[name])
        rhs = _eval_word(F.relators[name], f1, K.order)
        if lhs != rhs:
            fails.append({"pair": [G.format(a), G.format(b)]})
    report.add("cocycle_relator", 2, fails, len(elems) ** 2)
    fails = []
    for (a, b, c), name in zip(itertools.product(elems, repeat=3), F.basis(3)):
        if evaluate_dim2(F.boundaries[3][name], K, f1, f2) != K.identity:
            fails.append({"triple": [G.format(a), G.format(b), G.format(c)]})
    report.add("cocycle_boundary", 3, fails, len(elems) ** 3)
    return report


def cyclic_cocycle_check(p: int, K: FiniteGroup, k: int, a: Perm) -> bool:
    """Data for an extension of C_p by K: conjugation by k is a^p and a fixes k."""
    if not is_automorphism(K, tuple(a)):
        return False
    return conjugation(K, k) == perm_power(tuple(a), p) and a[k] == k


# ---------------------------------------------------------------------------
# extensions


def extension_from_cocycle(p: int, K: FiniteGroup, k: int, a: Perm) -> FiniteGroup:
    """The quotient of C_inf x| K by (t^p, k^-1), on the transversal (i, m), 0 <= i < p.

    (i, m)(j, n) = (i + j mod p, k^c a^j(m) n) with carry c = (i + j) // p.
    """
    a = tuple(a)
    if not cyclic_cocycle_check(p, K, k, a):
        raise ExtensionError("data does not satisfy conj(k) = a^p and a(k) = k")
    pairs = [(i, m) for i in range(p) for m in K.elements()]
    index = {pm: n for n, pm in enumerate(pairs)}
    powers = [perm_power(a, j) for j in range(p)]
    table = []
    for i, m in pairs:
        row = []
        for j, n in pairs:
            carry = (i + j) // p
            v = K.mul(powers[j][m], n)
            if carry:
                v = K.mul(k, v)
            row.append(index[((i + j) % p, v)])
        table.append(row)
    labels = ["1" if (i, m) == (0, K.identity) else f"{i}_{K.format(m)}" for i, m in pairs]
    E = FiniteGroup(table, labels)
    _check_extension(E, p, K)
    return E


def _check_extension(E: FiniteGroup, p: int, K: FiniteGroup) -> None:
    n = K.order
    if E.order != p * n:
        raise ExtensionError("extension has the wrong order")
    sub = set(range(n))  # pairs (0, m) come first
    for g in E.elements():
        gi = E.inv(g)
        for m in sub:
            if E.mul(E.mul(gi, m), g) not in sub:
                raise ExtensionError("K is not normal in the extension")
    # quotient by K is cyclic of order p generated by the coset of (1, 1)
    t = n + K.identity
    for j in range(1, p):
        if E.power(t, j) in sub:
            raise ExtensionError("quotient is not cyclic of order p")
    if E.power(t, p) not in sub:
        raise ExtensionError("quotient is not cyclic of order p")


# ---------------------------------------------------------------------------
# isomorphism and naming


def _order_profile(G: FiniteGroup) -> tuple:
    counts: dict[int, int] = {}
    for g in G.elements():
        o = G.element_order(g)
        counts[o] = counts.get(o, 0) + 1
    return tuple(sorted(counts.items()))


def is_isomorphic(G: FiniteGroup, H: FiniteGroup) -> bool:
    return find_isomorphism(G, H) is not None


def find_isomorphism(G: FiniteGroup, H: FiniteGroup) -> dict | None:
    if G.order != H.order or _order_profile(G) != _order_profile(H):
        return None
    if G.is_abelian() != H.is_abelian():
        return None
    gens = _generating_set(G)
    by_order: dict[int, list[int]] = {}
    for h in H.elements():
        by_order.setdefault(H.element_order(h), []).append(h)
    pools = [by_order.get(G.element_order(g), []) for g in gens]
    for images in itertools.product(*pools):
        f = _extend_hom(G, H, gens, images)
        if f is not None and len(set(f.values())) == G.order:
            return f
    return None


def _abelian_invariants(G: FiniteGroup) -> list[int]:
    """Invariant factors d1 | d2 | ... of a finite abelian group."""
    n = G.order
    primes = [q for q in range(2, n + 1) if n % q == 0 and all(q % r for r in range(2, q))]
    by_prime = {}
    for q in primes:
        # number of elements of order dividing q^e determines the partition
        sizes = []
        e = 1
        while n % q ** e == 0:
            sizes.append(sum(1 for g in G.elements() if q ** e % G.element_order(g) == 0))
            e += 1
        # sizes[e-1] = prod q^min(e, lambda_i); recover parts by successive ratios
        logs = [0]
        for s in sizes:
            c, v = 0, s
            while v % q == 0 and v > 1:
                v //= q
                c += 1
            logs.append(c)
        counts_ge = [logs[e] - logs[e - 1] for e in range(1, len(logs))]
        parts = []
        for e in range(len(counts_ge)):
            nxt = counts_ge[e + 1] if e + 1 < len(counts_ge) else 0
            parts.extend([q ** (e + 1)] * (counts_ge[e] - nxt))
        by_prime[q] = sorted(parts, reverse=True)
    length = max((len(v) for v in by_prime.values()), default=0)
    factors = [1] * length
    for parts in by_prime.values():
        for i, v in enumerate(parts):
            factors[i] *= v
    return sorted(f for f in factors if f > 1)


def group_name(G: FiniteGroup) -> str:
    """A short conventional name: C4, C2xC2, S3, D4, Q8, ... or ``order n``."""
    if G.order == 1:
        return "C1"
    if G.is_abelian():
        return "x".join(f"C{d}" for d in _abelian_invariants(G))
    n = G.order
    catalog = []
    if n == 6:
        catalog.append(("S3", FiniteGroup.symmetric3()))
    if n % 2 == 0 and n >= 8:
        catalog.append((f"D{n // 2}", FiniteGroup.dihedral(n // 2)))
    if n == 8:
        catalog.append(("Q8", FiniteGroup.quaternion()))
    for name, H in catalog:
        if is_isomorphic(G, H):
            return name
    return f"nonabelian order {n}"


# ---------------------------------------------------------------------------
# enumeration


@dataclass
class ExtensionRecord:
    k: int
    a: Perm
    group: FiniteGroup
    class_id: int = -1
    class_name: str = ""

    def to_json(self, K: FiniteGroup) -> dict:
        return {"k": K.format(self.k), "a": [K.format(m) for m in self.a],
                "class": self.class_id, "name": self.class_name}


@dataclass
class Classification:
    p: int
    K: FiniteGroup
    records: list[ExtensionRecord] = field(default_factory=list)
    representatives: list[FiniteGroup] = field(default_factory=list)
    names: list[str] = field(default_factory=list)

    @property
    def class_names(self) -> list[str]:
        return list(self.names)

    def members(self, class_id: int) -> list[ExtensionRecord]:
        return [r for r in self.records if r.class_id == class_id]


def enumerate_extensions(p: int, K: FiniteGroup | str) -> Classification:
    """All (k, a) passing the cyclic cocycle check, grouped by isomorphism type of E."""
    if isinstance(K, str):
        K = named_group(K)
        if not isinstance(K, FiniteGroup):
            raise ExtensionError("K must be finite")
    if p < 2 or p > MAX_P:
        raise ExtensionError(f"p must lie in 2..{MAX_P}")
    if K.order > MAX_K:
        raise ExtensionError(f"|K| = {K.order} exceeds the limit {MAX_K}")
    out = Classification(p, K)
    for a in automorphisms(K):
        for k in K.elements():
            if not cyclic_cocycle_check(p, K, k, a):
                continue
            E = extension_from_cocycle(p, K, k, a)
            rec = ExtensionRecord(k, a, E)
            for cid, rep in enumerate(out.representatives):
                if is_isomorphic(E, rep):
                    rec.class_id = cid
                    break
            else:
                rec.class_id = len(out.representatives)
                out.representatives.append(E)
                out.names.append(group_name(E))
            rec.class_name = out.names[rec.class_id]
            out.records.append(rec)
    return out
