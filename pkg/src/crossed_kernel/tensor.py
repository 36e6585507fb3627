"""Tensor products of free reduced crossed complexes, and graph tensor products.

A generator of a tensor product is a flat tuple of factors, one per source
complex it involves; base-point factors are left out.  Its name joins the
factor names with ``(tensor)``, e.g. ``x(tensor)y``.

Everything is driven by a binary builder ``A (x) B`` over a common target
group T, with group embeddings G -> T and H -> T.  In total dimension 2 the
values of theta are products in the free crossed module; from dimension 3 up
both arguments are linearized and theta is bilinear.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

from .crossed import (ComplexError, CrossedComplex, Dim2Elem, Lift, ModuleElem, SyllableLift,
                      abelianize2)
from .groups import GraphProduct, GraphSpec, Group, GroupRingElem, direct_product
from .words import Word, right_fox_derivative

SEP = "(tensor)"


@dataclass(frozen=True)
class TensorGen:
    """Factors ``(source, generator, dimension)`` in vertex order."""

    factors: tuple[tuple[str, str, int], ...]

    @property
    def dim(self) -> int:
        return sum(d for _, _, d in self.factors)

    @property
    def sources(self) -> set[str]:
        return {s for s, _, _ in self.factors}

    def __mul__(self, other: "TensorGen") -> "TensorGen":
        return TensorGen(self.factors + other.factors)

    def label(self) -> str:
        return " (tensor) ".join(f"{g}@{s}" for s, g, _ in self.factors)

    def to_json(self) -> list:
        return [[s, g, d] for s, g, d in self.factors]

    @classmethod
    def from_json(cls, data) -> "TensorGen":
        return cls(tuple((s, g, int(d)) for s, g, d in data))


def tensor_name(*names: str) -> str:
    return SEP.join(names)


def _factors_of(C: CrossedComplex, source: str) -> dict[str, TensorGen]:
    """TensorGen of each generator; plain complexes count as a single source."""
    stored = C.meta.get("tensor_factors")
    out = {}
    for n in range(1, C.maxdim + 1):
        for x in C.basis(n):
            if stored and x in stored:
                out[x] = TensorGen.from_json(stored[x])
            else:
                out[x] = TensorGen(((source, x, n),))
    return out


# ---------------------------------------------------------------------------
# the binary builder


class _Side:
    def __init__(self, C: CrossedComplex, rename: Mapping[str, str], embed: Callable, target: Group):
        self.C = C
        self.rename = dict(rename)
        self.embed = embed
        self.target = target

    def word(self, u: Word) -> Word:
        return u.rename(self.rename)

    def dim2(self, c: Dim2Elem) -> Dim2Elem:
        return c.rename(self.rename)

    def module(self, m: ModuleElem) -> ModuleElem:
        return m.map_coefficients(self.embed, self.target).rename(self.rename)

    def phi(self, x: str):
        return self.embed(self.C.phi[x])

    def linear(self, element, dim: int) -> dict[str, GroupRingElem]:
        """Linearized form: dim 1 by the right free derivative, dim 2 by abelianizing."""
        C = self.C
        if dim == 1:
            out = {}
            for x in sorted(element.generators()):
                d = right_fox_derivative(element, x, C.phi_hom)
                if d.terms:
                    out[x] = d
            return out
        if dim == 2:
            return dict(abelianize2(element, C).terms)
        return dict(element.terms)


class TensorBuilder:
    """Assemble ``A (x) B`` over the target group ``T``.

    ``allowed(a, b)`` restricts which mixed generators exist (graph tensor
    products); any boundary term that needs a missing generator is a hard
    error.
    """

    def __init__(self, A: CrossedComplex, B: CrossedComplex, T: Group,
                 embed_a: Callable, embed_b: Callable,
                 rename_a: Mapping[str, str] | None = None, rename_b: Mapping[str, str] | None = None,
                 allowed: Callable[[str, str], bool] | None = None,
                 maxdim: int | None = None, source_a: str = "A", source_b: str = "B"):
        self.A = _Side(A, rename_a or {x: x for x in _all_gens(A)}, embed_a, T)
        self.B = _Side(B, rename_b or {x: x for x in _all_gens(B)}, embed_b, T)
        self.T = T
        self.allowed = allowed or (lambda a, b: True)
        self.maxdim = maxdim if maxdim is not None else A.maxdim + B.maxdim
        fa, fb = _factors_of(A, source_a), _factors_of(B, source_b)
        self.factors: dict[str, TensorGen] = {}
        for x, f in fa.items():
            self.factors[self.A.rename[x]] = f
        for y, f in fb.items():
            self.factors[self.B.rename[y]] = f
        self.pairs: dict[tuple[str, str], str] = {}
        self.pair_dims: dict[str, tuple[int, int]] = {}
        for m in range(1, A.maxdim + 1):
            for n in range(1, B.maxdim + 1):
                if m + n > self.maxdim:
                    continue
                for a in A.basis(m):
                    for b in B.basis(n):
                        if self.allowed(a, b):
                            name = tensor_name(self.A.rename[a], self.B.rename[b])
                            self.pairs[(a, b)] = name
                            self.pair_dims[name] = (m, n)
                            self.factors[name] = fa[a] * fb[b]
        self.raw: dict[str, str] = {}

    def pair(self, a: str, b: str) -> str:
        try:
            return self.pairs[(a, b)]
        except KeyError:
            raise ComplexError(f"boundary term {a} (tensor) {b} escapes the subcomplex") from None

    # -- theta ------------------------------------------------------------
    def theta11(self, u: Word, v: Word) -> Dim2Elem:
        """theta(u, v) for words u in A, v in B."""
        out: list = []
        letters = u.letters
        for i in range(len(letters) - 1, -1, -1):
            x, e = letters[i]
            piece = self._theta_x(x, v)
            if e == -1:
                piece = piece.act(Word(((self.A.rename[x], -1),))).inverse()
            tail = self.A.word(Word(letters[i + 1:]))
            out.extend(piece.act(tail).factors)
        return Dim2Elem(tuple(out))

    def _theta_x(self, x: str, v: Word) -> Dim2Elem:
        out: list = []
        letters = v.letters
        for j, (y, e) in enumerate(letters):
            piece = Dim2Elem.gen(self.pair(x, y))
            if e == -1:
                piece = piece.act(Word(((self.B.rename[y], -1),))).inverse()
            tail = self.B.word(Word(letters[j + 1:]))
            out.extend(piece.act(tail).factors)
        return Dim2Elem(tuple(out))

    def theta_module(self, a, m: int, b, n: int) -> ModuleElem:
        """theta(a, b) for total dimension >= 3 (bilinear)."""
        T = self.T
        la, lb = self.A.linear(a, m), self.B.linear(b, n)
        terms: dict[str, dict] = {}
        for x, r in la.items():
            for y, s in lb.items():
                name = self.pair(x, y)
                acc = terms.setdefault(name, {})
                for g, c in r.terms.items():
                    eg = self.A.embed(g)
                    for h, d in s.terms.items():
                        k = T.mul(eg, self.B.embed(h))
                        acc[k] = acc.get(k, 0) + c * d
        return ModuleElem(T, {x: GroupRingElem(T, t) for x, t in terms.items()})

    def theta(self, a, m: int, b, n: int):
        if m == 0:
            return self._lift_b(b, n)
        if n == 0:
            return self._lift_a(a, m)
        if m == 1 and n == 1:
            return self.theta11(a, b)
        return self.theta_module(a, m, b, n)

    def _lift_a(self, a, m):
        return self.A.word(a) if m == 1 else self.A.dim2(a) if m == 2 else self.A.module(a)

    def _lift_b(self, b, n):
        return self.B.word(b) if n == 1 else self.B.dim2(b) if n == 2 else self.B.module(b)

    # -- boundaries -------------------------------------------------------
    def boundary(self, a: str, b: str):
        A, B, T = self.A.C, self.B.C, self.T
        m, n = A.dim_of(a), B.dim_of(b)
        ra, rb = self.A.rename[a], self.B.rename[b]
        name = self.pairs[(a, b)]
        if m == 1 and n == 1:
            x, y = Word.gen(ra), Word.gen(rb)
            self.raw[name] = f"{rb}^-1 {ra}^-1 {rb} {ra}"
            return y.inverse() * x.inverse() * y * x
        if m == 2 and n == 1:
            r = Dim2Elem.gen(ra)
            self.raw[name] = f"{ra}^-1 . {ra}^({rb}) . (delta({ra}) (tensor) {rb})"
            return r.inverse() * r.act(Word.gen(rb)) * self.theta11(A.relators[a], Word.gen(b))
        if m == 1 and n == 2:
            s = Dim2Elem.gen(rb)
            self.raw[name] = f"({ra} (tensor) delta({rb}))^-1 . {rb}^-1 . {rb}^({ra})"
            return (self.theta11(Word.gen(a), B.relators[b]).inverse() * s.inverse()
                    * s.act(Word.gen(ra)))
        da = A.boundary(a)
        db = B.boundary(b)
        if n == 1:
            sign = (-1) ** (m + 1)
            self.raw[name] = (f"{_signed(sign)}{ra} {_signed(-sign)}{ra} * {rb} "
                              f"+ (delta({ra}) (tensor) {rb})")
            own = ModuleElem.gen(T, ra, coeff=sign) + ModuleElem.gen(T, ra, self.B.phi(b), -sign)
            return own + self.theta_module(da, m - 1, Word.gen(b), 1)
        if m == 1:
            self.raw[name] = f"-({ra} (tensor) delta({rb})) - {rb} + {rb} * {ra}"
            own = ModuleElem.gen(T, rb, coeff=-1) + ModuleElem.gen(T, rb, self.A.phi(a))
            return own - self.theta_module(Word.gen(a), 1, db, n - 1)
        sign = (-1) ** m
        self.raw[name] = (f"(delta({ra}) (tensor) {rb}) {'+' if sign > 0 else '-'} "
                          f"({ra} (tensor) delta({rb}))")
        return (self.theta_module(da, m - 1, _basis_elem(B, b, n), n)
                + self.theta_module(_basis_elem(A, a, m), m, db, n - 1).scale(sign))

    def build(self, lift: Lift | None, name: str = "") -> CrossedComplex:
        A, B = self.A.C, self.B.C
        alphabet = [self.A.rename[x] for x in A.alphabet] + [self.B.rename[y] for y in B.alphabet]
        phi = {self.A.rename[x]: self.A.phi(x) for x in A.alphabet}
        phi.update({self.B.rename[y]: self.B.phi(y) for y in B.alphabet})
        relators = {self.A.rename[r]: self.A.word(w) for r, w in A.relators.items()}
        relators.update({self.B.rename[s]: self.B.word(w) for s, w in B.relators.items()})
        bases: dict[int, list[str]] = {}
        boundaries: dict[int, dict] = {}
        for n in range(3, self.maxdim + 1):
            bases[n], boundaries[n] = [], {}
            for side in (self.A, self.B):
                if n <= side.C.maxdim:
                    for x in side.C.basis(n):
                        val = side.C.boundaries[n][x]
                        bases[n].append(side.rename[x])
                        boundaries[n][side.rename[x]] = side.dim2(val) if n == 3 else side.module(val)
        for (a, b), pname in self.pairs.items():
            m, n = self.pair_dims[pname]
            val = self.boundary(a, b)
            if m + n == 2:
                relators[pname] = val
            else:
                bases[m + n].append(pname)
                boundaries[m + n][pname] = val
        raw = dict(self.raw)
        for side in (self.A, self.B):
            for x, form in side.C.meta.get("raw_boundaries", {}).items():
                raw[side.rename[x]] = form
        meta = {"tensor_factors": {x: f.to_json() for x, f in self.factors.items()},
                "raw_boundaries": raw}
        C = CrossedComplex(self.T, alphabet, phi, relators, bases, boundaries, self.maxdim,
                           lift, name=name, meta=meta)
        C.tensor_builder = self
        return C


def _signed(sign: int) -> str:
    return "" if sign > 0 else "-"


def _basis_elem(C: CrossedComplex, x: str, n: int):
    if n == 1:
        return Word.gen(x)
    if n == 2:
        return Dim2Elem.gen(x)
    return ModuleElem.gen(C.group, x)


def _all_gens(C: CrossedComplex) -> list[str]:
    return [x for n in range(1, C.maxdim + 1) for x in C.basis(n)]


# ---------------------------------------------------------------------------
# public constructors


def _disjoint_renames(named: Sequence[tuple[str, CrossedComplex]]) -> dict[str, dict[str, str]]:
    """Keep generator names unless they clash across complexes; clashes get ``@source``."""
    seen: dict[str, int] = {}
    for _, C in named:
        for x in set(_all_gens(C)):
            seen[x] = seen.get(x, 0) + 1
    out = {}
    for src, C in named:
        out[src] = {x: (f"{x}@{src}" if seen[x] > 1 else x) for x in _all_gens(C)}
    return out


def _embedding(T: GraphProduct, vertex: str, inner: Group) -> Callable:
    ident = inner.identity

    def embed(g):
        return () if g == ident else T.syllable(vertex, g)
    return embed


def tensor_complex(A: CrossedComplex, B: CrossedComplex, maxdim: int | None = None,
                   names: tuple[str, str] = ("A", "B")) -> CrossedComplex:
    """``A (x) B`` over ``G x H`` (a graph product on the complete graph with two vertices)."""
    top = A.maxdim + B.maxdim if maxdim is None else maxdim
    if top < 2:
        raise ComplexError("maxdim must be at least 2")
    sa, sb = names
    T = direct_product({sa: A.group, sb: B.group})
    ren = _disjoint_renames([(sa, A), (sb, B)])
    builder = TensorBuilder(A, B, T, _embedding(T, sa, A.group), _embedding(T, sb, B.group),
                            ren[sa], ren[sb], maxdim=top, source_a=sa, source_b=sb)
    lift = None
    if A.lift is not None and B.lift is not None:
        lift = SyllableLift({sa: A.lift.rename(ren[sa]), sb: B.lift.rename(ren[sb])})
    return builder.build(lift, name=f"{A.name or sa} (tensor) {B.name or sb}")


def _dim_in(C: CrossedComplex, element) -> int:
    if element is None:
        return 0
    if isinstance(element, Word):
        return 1
    if isinstance(element, Dim2Elem):
        return 2
    if isinstance(element, ModuleElem):
        gens = element.generators()
        if not gens:
            raise ComplexError("cannot infer the dimension of a zero module element")
        dims = {C.dim_of(x) for x in gens}
        if len(dims) != 1:
            raise ComplexError("module element mixes dimensions")
        return dims.pop()
    raise ComplexError(f"not a complex element: {element!r}")


def bim_eval(C: CrossedComplex, x, y):
    """theta(x, y) in a tensor complex built by :func:`tensor_complex`.

    x and y are elements of the two factors in their own generator names:
    None for the base point, a Word in dimension 1, a Dim2Elem in dimension
    2, a ModuleElem above.
    """
    builder = getattr(C, "tensor_builder", None)
    if builder is None:
        raise ComplexError("complex was not built as a binary tensor product")
    m, n = _dim_in(builder.A.C, x), _dim_in(builder.B.C, y)
    if m + n > builder.maxdim:
        raise ComplexError(f"total dimension {m + n} exceeds maxdim {builder.maxdim}")
    return builder.theta(x, m, y, n)


def tensor_boundary(C: CrossedComplex, gen: str):
    """Boundary of a tensor generator, as stored after expansion."""
    return C.boundary(gen)


def raw_boundary(C: CrossedComplex, gen: str) -> str | None:
    return C.meta.get("raw_boundaries", {}).get(gen)


# ---------------------------------------------------------------------------
# graph tensor products


def nerve_cliques(graph: GraphSpec) -> list[tuple[str, ...]]:
    """Non-empty complete subgraphs, each in vertex order, listed by size then order."""
    vs = graph.vertices
    out = []
    for k in range(1, len(vs) + 1):
        for combo in itertools.combinations(vs, k):
            if all(graph.adjacent(u, v) for u, v in itertools.combinations(combo, 2)):
                out.append(combo)
    return out


def _transport(C: CrossedComplex, T: Group, embed: Callable, rename: Mapping[str, str],
               source: str) -> CrossedComplex:
    """Copy of C with renamed generators and coefficients pushed into T."""
    side = _Side(C, rename, embed, T)
    bases, boundaries = {}, {}
    for n in range(3, C.maxdim + 1):
        bases[n] = [rename[x] for x in C.basis(n)]
        boundaries[n] = {rename[x]: (side.dim2(v) if n == 3 else side.module(v))
                         for x, v in C.boundaries[n].items()}
    factors = {rename[x]: [[source, x, n]] for n in range(1, C.maxdim + 1) for x in C.basis(n)}
    return CrossedComplex(T, [rename[x] for x in C.alphabet],
                          {rename[x]: embed(C.phi[x]) for x in C.alphabet},
                          {rename[r]: side.word(w) for r, w in C.relators.items()},
                          bases, boundaries, C.maxdim, lift=_NoLift(),
                          name=C.name, meta={"tensor_factors": factors})


class _NoLift(Lift):
    """Placeholder for intermediate complexes whose lift is never used."""

    def __call__(self, g):
        raise ComplexError("intermediate complex has no lift")


def graph_tensor(graph: GraphSpec, complexes: Mapping[str, CrossedComplex],
                 maxdim: int | None = None) -> CrossedComplex:
    """Subcomplex of the tensor product of the C_p spanned by clique-supported tuples.

    The coefficient group is the graph product of the vertex groups.  Built as
    ``C_p0 (x) (rest)`` recursively; a mixed generator a (x) b exists only
    when every vertex of b is adjacent to p0.
    """
    vs = graph.vertices
    if not vs:
        raise ComplexError("graph has no vertices")
    missing = set(vs) - set(complexes)
    if missing:
        raise ComplexError(f"no complex for vertices {sorted(missing)}")
    top = maxdim if maxdim is not None else sum(complexes[v].maxdim for v in vs)
    if top < 2:
        raise ComplexError("maxdim must be at least 2")
    T = GraphProduct(graph, {v: complexes[v].group for v in vs})
    ren = _disjoint_renames([(v, complexes[v]) for v in vs])
    pieces = {v: _transport(complexes[v], T, _embedding(T, v, complexes[v].group), ren[v], v)
              for v in vs}
    # dimensions above top never feed into lower boundaries, so truncate early
    for v in vs:
        if pieces[v].maxdim > top:
            pieces[v] = _truncate(pieces[v], top)

    def ident(g):
        return g

    acc = pieces[vs[-1]]
    for i in range(len(vs) - 2, -1, -1):
        v = vs[i]
        nbrs = graph.neighbours(v)
        factors = _factors_of(acc, "")

        def allowed(a, b, factors=factors, nbrs=nbrs):
            return factors[b].sources <= nbrs

        builder = TensorBuilder(pieces[v], acc, T, ident, ident, allowed=allowed, maxdim=top)
        acc = builder.build(_NoLift())
    lift = None
    if all(complexes[v].lift is not None for v in vs):
        lift = SyllableLift({v: complexes[v].lift.rename(ren[v]) for v in vs})
    return CrossedComplex(T, acc.alphabet, acc.phi, acc.relators,
                          {n: acc.basis(n) for n in range(3, acc.maxdim + 1)},
                          {n: acc.boundaries[n] for n in range(3, acc.maxdim + 1)},
                          acc.maxdim, lift, name="graph_tensor(" + ",".join(vs) + ")",
                          meta=acc.meta)


def _truncate(C: CrossedComplex, top: int) -> CrossedComplex:
    return CrossedComplex(C.group, C.alphabet, C.phi, C.relators,
                          {n: C.basis(n) for n in range(3, top + 1)},
                          {n: C.boundaries[n] for n in range(3, top + 1)},
                          top, C.lift, name=C.name, meta=C.meta)
