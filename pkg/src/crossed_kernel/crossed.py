"""Free reduced crossed complexes.

Dimension 1 is the free group F(X1); dimension 2 the free crossed
F(X1)-module on the relators; dimensions n >= 3 free right Z[G]-modules,
where G is the coefficient group and phi: F(X1) -> G.

Elements of the free crossed module are stored as flat lists of factors
``(x, eps, u)`` meaning ``(x^eps)^u``.  There is no normal form for them;
equality is decided by the pair (boundary word, abelianization), which is a
complete invariant of a free crossed module.
"""
from __future__ import annotations

import os
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .groups import Group, GroupRingElem, GraphProduct
from .report import Report
from .words import EMPTY, AlphabetError, FreeHom, Word, apply_hom, conj, inv, mul, reduce

Factor = tuple[str, int, Word]


class ComplexError(ValueError):
    """Malformed complex data or dimension mismatch."""


# ---------------------------------------------------------------------------
# dimension 2


@dataclass(frozen=True)
class Dim2Elem:
    factors: tuple[Factor, ...] = ()

    @classmethod
    def gen(cls, x: str, eps: int = 1, u: Word = EMPTY) -> "Dim2Elem":
        return cls(((x, eps, u),))

    def __mul__(self, other: "Dim2Elem") -> "Dim2Elem":
        return Dim2Elem(self.factors + other.factors)

    def __pow__(self, k: int) -> "Dim2Elem":
        base = self if k >= 0 else self.inverse()
        return Dim2Elem(base.factors * abs(k))

    def inverse(self) -> "Dim2Elem":
        return Dim2Elem(tuple((x, -e, u) for x, e, u in reversed(self.factors)))

    def act(self, v: Word) -> "Dim2Elem":
        return Dim2Elem(tuple((x, e, mul(u, v)) for x, e, u in self.factors))

    def generators(self) -> set[str]:
        return {x for x, _, _ in self.factors}

    def rename(self, mapping: Mapping[str, str]) -> "Dim2Elem":
        return Dim2Elem(tuple((mapping[x], e, u.rename(mapping)) for x, e, u in self.factors))

    def __len__(self) -> int:
        return len(self.factors)

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        parts = []
        for x, e, u in self.factors:
            s = x if e == 1 else f"{x}^-1"
            parts.append(f"{s}^({u})" if u else s)
        return " . ".join(parts)

    def to_json(self) -> list:
        return [[x, e, str(u)] for x, e, u in self.factors]

    @classmethod
    def from_json(cls, data: Sequence) -> "Dim2Elem":
        out = []
        for x, e, u in data:
            if e not in (1, -1):
                raise ComplexError(f"bad exponent {e} in dimension-2 element")
            out.append((x, e, Word.parse(u)))
        return cls(tuple(out))


IDENTITY2 = Dim2Elem()


def act2(c: Dim2Elem, u: Word) -> Dim2Elem:
    return c.act(u)


def mul2(c: Dim2Elem, d: Dim2Elem) -> Dim2Elem:
    return c * d


def inv2(c: Dim2Elem) -> Dim2Elem:
    return c.inverse()


# ---------------------------------------------------------------------------
# modules in dimension >= 2 (also used for abelianizations)


class ModuleElem:
    """Element of a free right Z[G]-module: basis name -> Z[G] coefficient."""

    __slots__ = ("group", "terms")

    def __init__(self, group: Group, terms: Mapping[str, GroupRingElem] | None = None):
        self.group = group
        self.terms = {x: r for x, r in (terms or {}).items() if r.terms}

    @classmethod
    def gen(cls, group: Group, x: str, g=None, coeff: int = 1) -> "ModuleElem":
        g = group.identity if g is None else g
        return cls(group, {x: GroupRingElem(group, {g: coeff})})

    @classmethod
    def zero(cls, group: Group) -> "ModuleElem":
        return cls(group)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, int) and other == 0:
            return not self.terms
        return isinstance(other, ModuleElem) and self.terms == other.terms

    def __add__(self, other: "ModuleElem") -> "ModuleElem":
        t = dict(self.terms)
        for x, r in other.terms.items():
            t[x] = t[x] + r if x in t else r
        return ModuleElem(self.group, t)

    def __neg__(self) -> "ModuleElem":
        return ModuleElem(self.group, {x: -r for x, r in self.terms.items()})

    def __sub__(self, other: "ModuleElem") -> "ModuleElem":
        return self + (-other)

    def scale(self, k: int) -> "ModuleElem":
        return ModuleElem(self.group, {x: r * k for x, r in self.terms.items()})

    def act(self, g) -> "ModuleElem":
        return ModuleElem(self.group, {x: r.act(g) for x, r in self.terms.items()})

    def rmul(self, s: GroupRingElem) -> "ModuleElem":
        return ModuleElem(self.group, {x: r * s for x, r in self.terms.items()})

    def map_coefficients(self, f, target: Group) -> "ModuleElem":
        return ModuleElem(target, {x: r.map(f, target) for x, r in self.terms.items()})

    def rename(self, mapping: Mapping[str, str]) -> "ModuleElem":
        return ModuleElem(self.group, {mapping[x]: r for x, r in self.terms.items()})

    def generators(self) -> set[str]:
        return set(self.terms)

    def __repr__(self) -> str:
        return f"ModuleElem({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        G = self.group
        return " + ".join(
            f"{x} * (" + " + ".join(f"{c} {G.format(g)}" for g, c in r.terms.items()) + ")"
            for x, r in self.terms.items())

    @classmethod
    def parse(cls, group: Group, text: str) -> "ModuleElem":
        """Parse ``"x * (1 1 + -1 t) + y * (2 t^2)"``; ``"0"`` is zero."""
        text = text.strip()
        acc = cls.zero(group)
        if text in ("", "0"):
            return acc
        pos = 0
        while pos < len(text):
            star = text.index("*", pos)
            name = text[pos:star].strip().lstrip("+").strip()
            open_ = text.index("(", star)
            close = text.index(")", open_)
            terms: dict = {}
            for chunk in text[open_ + 1:close].split("+"):
                chunk = chunk.strip()
                if not chunk:
                    continue
                c, _, lab = chunk.partition(" ")
                g = group.parse(lab)
                terms[g] = terms.get(g, 0) + int(c)
            if not name:
                raise ComplexError(f"missing generator name in {text!r}")
            acc = acc + cls(group, {name: GroupRingElem(group, terms)})
            pos = close + 1
            while pos < len(text) and text[pos] in " +":
                pos += 1
        return acc


# ---------------------------------------------------------------------------
# deterministic lifts G -> F(X1)


class Lift:
    def __call__(self, g) -> Word:
        raise NotImplementedError

    def rename(self, mapping: Mapping[str, str]) -> "Lift":
        raise NotImplementedError

    def to_json(self, group: Group) -> dict:
        raise NotImplementedError


@dataclass
class TableLift(Lift):
    """Fixed transversal words, one per element of a finite group."""

    words: dict

    def __call__(self, g) -> Word:
        try:
            return self.words[g]
        except KeyError:
            raise ComplexError(f"no lift for group element {g!r}") from None

    def rename(self, mapping):
        return TableLift({g: w.rename(mapping) for g, w in self.words.items()})

    def to_json(self, group):
        return {"kind": "table", "words": {group.format(g): str(w) for g, w in self.words.items()}}


@dataclass
class PowerLift(Lift):
    """Cyclic groups: t^k -> x^k (k reduced into [0, p) when finite)."""

    generator: str

    def __call__(self, g) -> Word:
        return Word.gen(self.generator, g) if g else EMPTY

    def rename(self, mapping):
        return PowerLift(mapping[self.generator])

    def to_json(self, group):
        return {"kind": "power", "generator": self.generator}


@dataclass
class SyllableLift(Lift):
    """Graph products: lift each syllable with its vertex's lift."""

    parts: dict

    def __call__(self, g) -> Word:
        acc = EMPTY
        for v, h in g:
            acc = mul(acc, self.parts[v](h))
        return acc

    def rename(self, mapping):
        return SyllableLift({v: lift.rename(mapping) for v, lift in self.parts.items()})

    def to_json(self, group):
        return {"kind": "syllables",
                "parts": {v: lift.to_json(group.vertex_groups[v]) for v, lift in self.parts.items()}}


def lift_from_json(data: Mapping, group: Group) -> Lift:
    kind = data["kind"]
    if kind == "table":
        return TableLift({group.parse(k): Word.parse(v) for k, v in data["words"].items()})
    if kind == "power":
        return PowerLift(data["generator"])
    if kind == "syllables":
        return SyllableLift({v: lift_from_json(d, group.vertex_groups[v])
                             for v, d in data["parts"].items()})
    raise ComplexError(f"unknown lift kind {kind!r}")


def bfs_lift(group: Group, alphabet: Sequence[str], phi: Mapping[str, object]) -> TableLift:
    """Shortlex-least words reaching every element of a finite group."""
    words = {group.identity: EMPTY}
    frontier = [group.identity]
    steps = [(x, e) for x in alphabet for e in (1, -1)]
    while frontier:
        nxt = []
        for g in frontier:
            for x, e in steps:
                h = group.mul(g, phi[x] if e == 1 else group.inv(phi[x]))
                if h not in words:
                    words[h] = mul(words[g], Word(((x, e),)))
                    nxt.append(h)
        frontier = nxt
    if len(words) != group.order:
        raise ComplexError("phi is not surjective onto the coefficient group")
    return TableLift(words)


# ---------------------------------------------------------------------------
# complexes


class CrossedComplex:
    """A free reduced crossed complex ``<X1 | w: X2>`` with free bases above.

    ``boundaries[3]`` holds :class:`Dim2Elem` values, ``boundaries[n]`` for
    n >= 4 holds :class:`ModuleElem` values over the basis of dimension n-1.
    """

    def __init__(self, group: Group, alphabet: Sequence[str], phi: Mapping[str, object],
                 relators: Mapping[str, Word], bases: Mapping[int, Sequence[str]] | None = None,
                 boundaries: Mapping[int, Mapping[str, object]] | None = None,
                 maxdim: int | None = None, lift: Lift | None = None, name: str = "",
                 meta: dict | None = None):
        self.group = group
        self.alphabet = list(alphabet)
        self.phi = dict(phi)
        self.relators = dict(relators)
        self.bases: dict[int, list[str]] = {1: self.alphabet, 2: list(self.relators)}
        self.boundaries: dict[int, dict[str, object]] = {}
        for n, gens in (bases or {}).items():
            if n < 3:
                raise ComplexError("bases dict only holds dimensions >= 3")
            self.bases[n] = list(gens)
        for n, bd in (boundaries or {}).items():
            self.boundaries[n] = dict(bd)
        top = max([n for n, b in self.bases.items() if b] + [2])
        self.maxdim = top if maxdim is None else maxdim
        if self.maxdim < top:
            raise ComplexError(f"maxdim {self.maxdim} below highest basis dimension {top}")
        for n in range(3, self.maxdim + 1):
            self.bases.setdefault(n, [])
            self.boundaries.setdefault(n, {})
        self.name = name
        self.meta = dict(meta or {})
        self._dim: dict[str, int] = {}
        for n, gens in self.bases.items():
            for g in gens:
                if g in self._dim:
                    raise ComplexError(f"generator name {g!r} used twice")
                self._dim[g] = n
        self._check_structure()
        self.lift = lift if lift is not None else (
            bfs_lift(group, self.alphabet, self.phi) if group.is_finite else None)
        self.phi_hom = FreeHom(self.phi, group)

    def __repr__(self) -> str:
        counts = ", ".join(str(len(self.basis(n))) for n in range(1, self.maxdim + 1))
        return f"CrossedComplex({self.name or '?'}: [{counts}])"

    def _check_structure(self) -> None:
        X1 = set(self.alphabet)
        for x in self.alphabet:
            if x not in self.phi:
                raise ComplexError(f"phi has no value on {x!r}")
            self.group.check(self.phi[x])
        for r, w in self.relators.items():
            if not w.generators() <= X1:
                raise AlphabetError(f"relator {r!r} uses letters outside X1")
        for n in range(3, self.maxdim + 1):
            below = set(self.basis(n - 1))
            bd = self.boundaries.get(n, {})
            for x in self.basis(n):
                if x not in bd:
                    raise ComplexError(f"no boundary for {x!r} in dimension {n}")
                val = bd[x]
                if n == 3:
                    if not isinstance(val, Dim2Elem):
                        raise ComplexError(f"boundary of {x!r} must be a Dim2Elem")
                    for y, _, u in val.factors:
                        if y not in below or not u.generators() <= X1:
                            raise ComplexError(f"boundary of {x!r} leaves the complex")
                else:
                    if not isinstance(val, ModuleElem):
                        raise ComplexError(f"boundary of {x!r} must be a ModuleElem")
                    if not val.generators() <= below:
                        raise ComplexError(f"boundary of {x!r} leaves the complex")

    def basis(self, n: int) -> list[str]:
        return self.bases.get(n, [])

    def dim_of(self, gen: str) -> int:
        try:
            return self._dim[gen]
        except KeyError:
            raise ComplexError(f"unknown generator {gen!r}") from None

    def evaluate(self, u: Word):
        """phi(u) in the coefficient group."""
        return apply_hom(self.phi_hom, u)

    def lift_word(self, g) -> Word:
        if self.lift is None:
            raise ComplexError("complex has no lift for its coefficient group")
        return self.lift(g)

    def boundary(self, gen: str):
        n = self.dim_of(gen)
        if n == 1:
            return None
        if n == 2:
            return self.relators[gen]
        return self.boundaries[n][gen]

    def counts(self) -> list[int]:
        return [len(self.basis(n)) for n in range(1, self.maxdim + 1)]


# ---------------------------------------------------------------------------
# operations


def delta2(c: Dim2Elem, C: CrossedComplex) -> Word:
    letters: list = []
    for x, e, u in c.factors:
        w = C.relators.get(x)
        if w is None:
            raise ComplexError(f"{x!r} is not a dimension-2 generator")
        if e == -1:
            w = inv(w)
        letters.extend(inv(u).letters)
        letters.extend(w.letters)
        letters.extend(u.letters)
    return reduce(letters)


def peiffer(h: Dim2Elem, k: Dim2Elem, C: CrossedComplex) -> Dim2Elem:
    """``h^-1 k^-1 h k^(delta2 h)``."""
    return h.inverse() * k.inverse() * h * k.act(delta2(h, C))


def abelianize2(c: Dim2Elem, C: CrossedComplex) -> ModuleElem:
    G = C.group
    terms: dict[str, dict] = {}
    for x, e, u in c.factors:
        if x not in C.relators:
            raise ComplexError(f"{x!r} is not a dimension-2 generator")
        g = C.evaluate(u)
        t = terms.setdefault(x, {})
        t[g] = t.get(g, 0) + e
    return ModuleElem(G, {x: GroupRingElem(G, t) for x, t in terms.items()})


def eq2(c: Dim2Elem, d: Dim2Elem, C: CrossedComplex) -> bool:
    return delta2(c, C) == delta2(d, C) and abelianize2(c, C) == abelianize2(d, C)


def expand_dim2(m: ModuleElem, C: CrossedComplex) -> Dim2Elem:
    """Realize ``sum x * (sum c g)`` over X2 as the product of ``(x^lift g)^c``."""
    out: list[Factor] = []
    for x, r in m.terms.items():
        for g, c in r.terms.items():
            u = C.lift_word(g)
            e = 1 if c > 0 else -1
            out.extend([(x, e, u)] * abs(c))
    return Dim2Elem(tuple(out))


def delta_n(m, C: CrossedComplex, n: int):
    """Boundary of an element of dimension n.

    n = 2 takes a Dim2Elem and returns a word; n = 3 takes a ModuleElem over
    X3 and returns a Dim2Elem (each ``x * g`` becomes ``delta3(x)^lift(g)``);
    n >= 4 is the Z[G]-linear extension and returns a ModuleElem.
    """
    if n == 2:
        return delta2(m, C)
    if not isinstance(m, ModuleElem):
        raise ComplexError(f"dimension-{n} element must be a ModuleElem")
    if n < 2 or n > C.maxdim:
        raise ComplexError(f"dimension {n} out of range")
    basis = set(C.basis(n))
    if not m.generators() <= basis:
        raise ComplexError(f"element is not graded in dimension {n}")
    bd = C.boundaries[n]
    if n == 3:
        out: list[Factor] = []
        for x, r in m.terms.items():
            base = bd[x]
            for g, c in r.terms.items():
                piece = base.act(C.lift_word(g)) ** c
                out.extend(piece.factors)
        return Dim2Elem(tuple(out))
    acc = ModuleElem.zero(C.group)
    for x, r in m.terms.items():
        acc = acc + bd[x].rmul(r)
    return acc


def boundary_of(element, C: CrossedComplex, n: int):
    if n == 1:
        return None
    return delta_n(element, C, n)


# ---------------------------------------------------------------------------
# validation


def random_word(alphabet: Sequence[str], maxlen: int, rng: random.Random) -> Word:
    if not alphabet:
        return EMPTY
    n = rng.randint(0, maxlen)
    return reduce((rng.choice(alphabet), rng.choice((1, -1))) for _ in range(n))


def random_dim2(C: CrossedComplex, rng: random.Random, max_factors: int = 4,
                max_operator: int = 6) -> Dim2Elem:
    X2 = C.basis(2)
    k = rng.randint(0, max_factors)
    return Dim2Elem(tuple((rng.choice(X2), rng.choice((1, -1)),
                           random_word(C.alphabet, max_operator, rng)) for _ in range(k)))


def _workers() -> int:
    try:
        return max(1, int(os.environ.get("CROSSED_KERNEL_THREADS", "1")))
    except ValueError:
        return 1


def _ddzero_witness(C: CrossedComplex, n: int, x: str):
    if n == 3:
        w = delta2(C.boundaries[3][x], C)
        return None if not w else {"generator": x, "image": str(w)}
    if n == 4:
        c = delta_n(C.boundaries[4][x], C, 3)
        if eq2(c, IDENTITY2, C):
            return None
        return {"generator": x, "image": str(c)}
    m = delta_n(C.boundaries[n][x], C, n - 1)
    return None if not m else {"generator": x, "image": str(m)}


def validate_axioms(C: CrossedComplex, samples: int = 1000, seed: int = 0) -> Report:
    """Check the crossed complex axioms that are not automatic by construction.

    ddzero is exhaustive over generators; CM1 and CM2 are sampled; phi_delta2
    checks that relators die in G.  Sampling is deterministic in ``seed``.
    """
    report = Report()
    G = C.group
    fails = [{"generator": r, "image": G.format(C.evaluate(w))}
             for r, w in C.relators.items() if C.evaluate(w) != G.identity]
    report.add("phi_delta2", 2, fails, len(C.relators))

    workers = _workers()
    for n in range(3, C.maxdim + 1):
        gens = C.basis(n)
        if workers > 1 and len(gens) > 64:
            with ThreadPoolExecutor(workers) as pool:
                results = list(pool.map(lambda x: _ddzero_witness(C, n, x), gens))
        else:
            results = [_ddzero_witness(C, n, x) for x in gens]
        report.add("ddzero", n, [r for r in results if r is not None], len(gens))

    rng = random.Random(seed)
    cm1, cm2 = [], []
    if C.basis(2):
        for _ in range(samples):
            c = random_dim2(C, rng)
            u = random_word(C.alphabet, 6, rng)
            if delta2(c.act(u), C) != conj(delta2(c, C), u):
                cm1.append({"element": str(c), "operator": str(u)})
            d = random_dim2(C, rng)
            if not eq2(c * d, d * c.act(delta2(d, C)), C):
                cm2.append({"c": str(c), "d": str(d)})
    report.add("cm1", 2, cm1, samples if C.basis(2) else 0)
    report.add("cm2", 2, cm2, samples if C.basis(2) else 0)
    return report


# ---------------------------------------------------------------------------
# morphisms


@dataclass
class CrsMorphism:
    source: CrossedComplex
    target: CrossedComplex
    f1: dict[str, Word]
    f2: dict[str, Dim2Elem] = field(default_factory=dict)
    fn: dict[int, dict[str, ModuleElem]] = field(default_factory=dict)

    def group_map(self, g):
        """Induced homomorphism on coefficient groups."""
        return self.target.evaluate(apply_morphism(self, self.source.lift_word(g), 1))


def apply_morphism(f: CrsMorphism, element, dim: int):
    if dim == 1:
        letters: list = []
        for x, e in element.letters:
            if x not in f.f1:
                raise ComplexError(f"morphism has no value on {x!r}")
            img = f.f1[x]
            letters.extend(img.letters if e == 1 else inv(img).letters)
        return reduce(letters)
    if dim == 2:
        out: list[Factor] = []
        for x, e, u in element.factors:
            if x not in f.f2:
                raise ComplexError(f"morphism has no value on {x!r}")
            img = f.f2[x] if e == 1 else f.f2[x].inverse()
            out.extend(img.act(apply_morphism(f, u, 1)).factors)
        return Dim2Elem(tuple(out))
    T = f.target.group
    images = f.fn.get(dim, {})
    acc = ModuleElem.zero(T)
    for x, r in element.terms.items():
        if x not in images:
            raise ComplexError(f"morphism has no value on {x!r}")
        acc = acc + images[x].rmul(r.map(f.group_map, T))
    return acc


def check_morphism(f: CrsMorphism) -> Report:
    S, T = f.source, f.target
    report = Report()
    fails = []
    for x in S.alphabet:
        if x not in f.f1:
            fails.append({"generator": x, "reason": "unassigned"})
        elif T.evaluate(f.f1[x]) != f.group_map(S.evaluate(Word.gen(x))):
            fails.append({"generator": x})
    report.add("morphism", 1, fails, len(S.alphabet))
    fails = []
    for r, w in S.relators.items():
        if r not in f.f2:
            fails.append({"generator": r, "reason": "unassigned"})
        elif apply_morphism(f, w, 1) != delta2(f.f2[r], T):
            fails.append({"generator": r})
    report.add("morphism", 2, fails, len(S.relators))
    for n in range(3, S.maxdim + 1):
        fails = []
        for x in S.basis(n):
            if x not in f.fn.get(n, {}):
                fails.append({"generator": x, "reason": "unassigned"})
                continue
            lhs = apply_morphism(f, S.boundaries[n][x], n - 1)
            rhs = delta_n(f.fn[n][x], T, n)
            ok = eq2(lhs, rhs, T) if n == 3 else lhs == rhs
            if not ok:
                fails.append({"generator": x})
        report.add("morphism", n, fails, len(S.basis(n)))
    return report


def identity_morphism(C: CrossedComplex) -> CrsMorphism:
    return CrsMorphism(
        C, C, {x: Word.gen(x) for x in C.alphabet},
        {r: Dim2Elem.gen(r) for r in C.relators},
        {n: {x: ModuleElem.gen(C.group, x) for x in C.basis(n)} for n in range(3, C.maxdim + 1)})


def is_graph_product(G: Group) -> bool:
    return isinstance(G, GraphProduct)
