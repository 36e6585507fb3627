"""Coefficient groups with a solvable word problem, and the group ring Z[G].

Every group exposes the same small duck-typed surface: ``identity``,
``mul``, ``inv``, ``contains``, ``format``/``parse`` for element labels,
``descriptor()`` for JSON, and ``elements()`` when finite.  Elements are
hashable normal forms, so equality of elements is ``==``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Mapping, Sequence


class GroupError(ValueError):
    """Element not in group, or operands from different groups."""


class Group:
    identity: Hashable
    is_finite: bool = True

    def mul(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def contains(self, a) -> bool:
        raise NotImplementedError

    def elements(self) -> list:
        raise GroupError(f"{self!r} is infinite")

    @property
    def order(self) -> int | None:
        return len(self.elements()) if self.is_finite else None

    def eq(self, a, b) -> bool:
        return a == b

    def power(self, a, k: int):
        base = a if k >= 0 else self.inv(a)
        acc = self.identity
        for _ in range(abs(k)):
            acc = self.mul(acc, base)
        return acc

    def element_order(self, a) -> int:
        if not self.is_finite:
            raise GroupError("element orders only computed in finite groups")
        k, x = 1, a
        while x != self.identity:
            x = self.mul(x, a)
            k += 1
        return k

    def prod(self, items: Iterable):
        acc = self.identity
        for g in items:
            acc = self.mul(acc, g)
        return acc

    def check(self, *elems) -> None:
        for a in elems:
            if not self.contains(a):
                raise GroupError(f"{a!r} is not an element of {self!r}")

    def format(self, a) -> str:
        raise NotImplementedError

    def parse(self, text: str):
        raise NotImplementedError

    def descriptor(self) -> dict:
        raise NotImplementedError


class CyclicGroup(Group):
    """C_p for p >= 1, or the infinite cyclic group when ``modulus == 0``.

    Elements are integers (reduced into [0, p) when finite); ``t`` names
    the generator in labels.
    """

    def __init__(self, modulus: int, symbol: str = "t"):
        if modulus < 0:
            raise ValueError("modulus must be non-negative")
        self.modulus = modulus
        self.symbol = symbol
        self.identity = 0
        self.is_finite = modulus > 0

    def __repr__(self) -> str:
        return f"CyclicGroup({self.modulus})"

    def __eq__(self, other) -> bool:
        return isinstance(other, CyclicGroup) and other.modulus == self.modulus

    def __hash__(self) -> int:
        return hash(("cyclic", self.modulus))

    def _norm(self, a: int) -> int:
        return a % self.modulus if self.modulus else a

    def mul(self, a, b):
        return self._norm(a + b)

    def inv(self, a):
        return self._norm(-a)

    def power(self, a, k):
        return self._norm(a * k)

    def contains(self, a) -> bool:
        if not isinstance(a, int) or isinstance(a, bool):
            return False
        return 0 <= a < self.modulus if self.modulus else True

    def elements(self) -> list:
        if not self.modulus:
            raise GroupError("infinite cyclic group has no element list")
        return list(range(self.modulus))

    def generator(self) -> int:
        return self._norm(1)

    def format(self, a) -> str:
        if a == 0:
            return "1"
        return self.symbol if a == 1 else f"{self.symbol}^{a}"

    def parse(self, text: str):
        text = text.strip()
        if text == "1":
            return 0
        name, sep, exp = text.partition("^")
        if name != self.symbol:
            raise GroupError(f"cannot parse {text!r} in {self!r}")
        a = self._norm(int(exp) if sep else 1)
        return a

    def descriptor(self) -> dict:
        return {"kind": "cyclic", "modulus": self.modulus}


class FiniteGroup(Group):
    """A finite group given by its multiplication table on indices 0..n-1."""

    def __init__(self, table: Sequence[Sequence[int]], labels: Sequence[str] | None = None,
                 validate: bool = True):
        self.table = tuple(tuple(int(v) for v in row) for row in table)
        n = len(self.table)
        if n == 0 or any(len(row) != n for row in self.table):
            raise GroupError("table must be square and non-empty")
        ident = [e for e in range(n) if self.table[e] == tuple(range(n))
                 and all(self.table[i][e] == i for i in range(n))]
        if len(ident) != 1:
            raise GroupError("table has no two-sided identity")
        self.identity = ident[0]
        inverse = []
        for a in range(n):
            row = self.table[a]
            if self.identity not in row:
                raise GroupError(f"element {a} has no inverse")
            b = row.index(self.identity)
            if self.table[b][a] != self.identity:
                raise GroupError(f"element {a} has no two-sided inverse")
            inverse.append(b)
        self.inverse = tuple(inverse)
        if validate:
            for row in self.table:
                if sorted(row) != list(range(n)):
                    raise GroupError("table rows must be permutations")
            T = self.table
            for a in range(n):
                Ta = T[a]
                for b in range(n):
                    ab = Ta[b]
                    Tab, Tb = T[ab], T[b]
                    for c in range(n):
                        if Tab[c] != Ta[Tb[c]]:
                            raise GroupError(f"not associative at ({a},{b},{c})")
        if labels is None:
            labels = ["1" if i == self.identity else f"g{i}" for i in range(n)]
        self.labels = tuple(labels)
        if len(self.labels) != n or len(set(self.labels)) != n:
            raise GroupError("labels must be distinct, one per element")
        for lab in self.labels:
            if not lab or any(ch in lab for ch in " \t+*(),[]{}@."):
                raise GroupError(f"label {lab!r} contains a reserved character")
        self._index = {lab: i for i, lab in enumerate(self.labels)}

    def __repr__(self) -> str:
        return f"FiniteGroup(order={len(self.table)})"

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteGroup) and other.table == self.table

    def __hash__(self) -> int:
        return hash(self.table)

    def mul(self, a, b):
        return self.table[a][b]

    def inv(self, a):
        return self.inverse[a]

    def contains(self, a) -> bool:
        return isinstance(a, int) and 0 <= a < len(self.table)

    def elements(self) -> list:
        return list(range(len(self.table)))

    @property
    def order(self) -> int:
        return len(self.table)

    def format(self, a) -> str:
        return self.labels[a]

    def parse(self, text: str):
        try:
            return self._index[text.strip()]
        except KeyError:
            raise GroupError(f"unknown element label {text!r}") from None

    def is_abelian(self) -> bool:
        T = self.table
        n = len(T)
        return all(T[a][b] == T[b][a] for a in range(n) for b in range(a))

    def descriptor(self) -> dict:
        return {"kind": "table", "table": [list(r) for r in self.table],
                "labels": list(self.labels)}

    # -- constructors -----------------------------------------------------
    @classmethod
    def cyclic(cls, n: int, symbol: str = "t") -> "FiniteGroup":
        labels = [CyclicGroup(n, symbol).format(i) for i in range(n)]
        return cls([[(i + j) % n for j in range(n)] for i in range(n)], labels)

    @classmethod
    def from_group(cls, G: Group) -> "FiniteGroup":
        """Materialize any finite group into a table (labels carried over when legal)."""
        elems = G.elements()
        index = {g: i for i, g in enumerate(elems)}
        table = [[index[G.mul(a, b)] for b in elems] for a in elems]
        labels = [G.format(g) or "1" for g in elems]
        if any(ch in lab for lab in labels for ch in " \t+*(),[]{}@."):
            labels = None
        return cls(table, labels, validate=False)

    @classmethod
    def direct_product(cls, G: "FiniteGroup", H: "FiniteGroup") -> "FiniteGroup":
        pairs = list(itertools.product(G.elements(), H.elements()))
        index = {p: i for i, p in enumerate(pairs)}
        table = [[index[(G.mul(a, c), H.mul(b, d))] for (c, d) in pairs] for (a, b) in pairs]
        labels = []
        for a, b in pairs:
            if a == G.identity and b == H.identity:
                labels.append("1")
            else:
                labels.append(f"{G.format(a)}_{H.format(b)}")
        return cls(table, labels, validate=False)

    @classmethod
    def from_permutations(cls, perms: Sequence[Sequence[int]], labels=None) -> "FiniteGroup":
        """Group table of a closed list of permutations (composition: p then q)."""
        perms = [tuple(p) for p in perms]
        index = {p: i for i, p in enumerate(perms)}
        table = [[index[tuple(q[p[k]] for k in range(len(p)))] for q in perms] for p in perms]
        return cls(table, labels)

    @classmethod
    def symmetric3(cls) -> "FiniteGroup":
        perms = [(0, 1, 2), (1, 2, 0), (2, 0, 1), (1, 0, 2), (0, 2, 1), (2, 1, 0)]
        return cls.from_permutations(perms, ["1", "r", "r2", "s", "sr", "sr2"])

    @classmethod
    def dihedral(cls, n: int) -> "FiniteGroup":
        """Symmetries of the n-gon, order 2n."""
        rots = [tuple((k + i) % n for k in range(n)) for i in range(n)]
        refl = [tuple((i - k) % n for k in range(n)) for i in range(n)]
        return cls.from_permutations(rots + refl)

    @classmethod
    def quaternion(cls) -> "FiniteGroup":
        # elements (sign, unit) with unit in 1,i,j,k
        mult = {("1", u): (1, u) for u in "1ijk"}
        mult.update({(u, "1"): (1, u) for u in "1ijk"})
        mult.update({("i", "i"): (-1, "1"), ("j", "j"): (-1, "1"), ("k", "k"): (-1, "1"),
                     ("i", "j"): (1, "k"), ("j", "k"): (1, "i"), ("k", "i"): (1, "j"),
                     ("j", "i"): (-1, "k"), ("k", "j"): (-1, "i"), ("i", "k"): (-1, "j")})
        elems = [(s, u) for s in (1, -1) for u in "1ijk"]
        index = {e: i for i, e in enumerate(elems)}
        table = []
        for s1, u1 in elems:
            row = []
            for s2, u2 in elems:
                s, u = mult[(u1, u2)]
                row.append(index[(s1 * s2 * s, u)])
            table.append(row)
        labels = ["1", "i", "j", "k", "-1", "-i", "-j", "-k"]
        return cls(table, labels)


# ---------------------------------------------------------------------------
# graph products


@dataclass(frozen=True)
class GraphSpec:
    vertices: tuple[str, ...]
    edges: frozenset[frozenset[str]] = field(default_factory=frozenset)

    def __post_init__(self):
        vs = tuple(self.vertices)
        object.__setattr__(self, "vertices", vs)
        if len(set(vs)) != len(vs):
            raise ValueError("duplicate vertices")
        es = set()
        for e in self.edges:
            pair = frozenset(e)
            if len(pair) != 2:
                raise ValueError(f"loops are not allowed: {sorted(e)}")
            if not pair <= set(vs):
                raise ValueError(f"edge {sorted(pair)} uses an undeclared vertex")
            es.add(pair)
        object.__setattr__(self, "edges", frozenset(es))

    @classmethod
    def build(cls, vertices: Iterable[str], edges: Iterable[Sequence[str]] = ()) -> "GraphSpec":
        return cls(tuple(vertices), frozenset(frozenset(e) for e in edges))

    @classmethod
    def complete(cls, vertices: Iterable[str]) -> "GraphSpec":
        vs = tuple(vertices)
        return cls.build(vs, itertools.combinations(vs, 2))

    def adjacent(self, u: str, v: str) -> bool:
        return frozenset((u, v)) in self.edges

    def neighbours(self, v: str) -> set[str]:
        return {u for u in self.vertices if u != v and self.adjacent(u, v)}

    def rank(self, v: str) -> int:
        return self.vertices.index(v)

    def is_complete(self) -> bool:
        return all(self.adjacent(u, v) for u, v in itertools.combinations(self.vertices, 2))

    def induced(self, vertices: Iterable[str]) -> "GraphSpec":
        keep = [v for v in self.vertices if v in set(vertices)]
        return GraphSpec.build(keep, [tuple(e) for e in self.edges if e <= set(keep)])

    def to_json(self) -> dict:
        es = sorted(sorted(e, key=self.rank) for e in self.edges)
        return {"vertices": list(self.vertices), "edges": es}


class GraphProduct(Group):
    """Free product of vertex groups modulo commuting adjacent vertex groups.

    Elements are tuples of syllables ``(vertex, element)``, kept reduced and
    in the lexicographically least order among commuting shuffles.
    """

    def __init__(self, graph: GraphSpec, vertex_groups: Mapping[str, Group]):
        self.graph = graph
        missing = set(graph.vertices) - set(vertex_groups)
        if missing:
            raise ValueError(f"no group for vertices {sorted(missing)}")
        self.vertex_groups = {v: vertex_groups[v] for v in graph.vertices}
        self.identity = ()
        self._rank = {v: i for i, v in enumerate(graph.vertices)}
        nontrivial = [v for v in graph.vertices
                      if not (self.vertex_groups[v].is_finite and self.vertex_groups[v].order == 1)]
        self.is_finite = all(self.vertex_groups[v].is_finite for v in graph.vertices) and all(
            graph.adjacent(u, v) for u, v in itertools.combinations(nontrivial, 2))

    def __repr__(self) -> str:
        return f"GraphProduct({list(self.graph.vertices)})"

    def __eq__(self, other) -> bool:
        return (isinstance(other, GraphProduct) and other.graph == self.graph
                and other.vertex_groups == self.vertex_groups)

    def __hash__(self) -> int:
        return hash((self.graph, tuple(self.vertex_groups.items())))

    def syllable(self, vertex: str, g) -> tuple:
        return gp_normalize([(vertex, g)], self)

    def mul(self, a, b):
        return gp_normalize(a + b, self)

    def inv(self, a):
        return gp_normalize([(v, self.vertex_groups[v].inv(g)) for v, g in reversed(a)], self)

    def contains(self, a) -> bool:
        if not isinstance(a, tuple):
            return False
        try:
            return gp_normalize(a, self) == a
        except (GroupError, ValueError, TypeError):
            return False

    def elements(self) -> list:
        if not self.is_finite:
            raise GroupError("graph product is infinite")
        per_vertex = [[(v, g) for g in self.vertex_groups[v].elements()] for v in self.graph.vertices]
        return [gp_normalize(list(combo), self) for combo in itertools.product(*per_vertex)]

    def format(self, a) -> str:
        if not a:
            return "1"
        parts = []
        for v, g in a:
            lab = self.vertex_groups[v].format(g)
            if isinstance(self.vertex_groups[v], GraphProduct):
                lab = "{" + lab + "}"
            parts.append(f"{lab}@{v}")
        return ".".join(parts)

    def parse(self, text: str):
        text = text.strip()
        if text == "1":
            return ()
        raw = []
        for part in _split_top(text, "."):
            lab, at, v = part.rpartition("@")
            if not at or v not in self.vertex_groups:
                raise GroupError(f"bad syllable {part!r}")
            if lab.startswith("{") and lab.endswith("}"):
                lab = lab[1:-1]
            raw.append((v, self.vertex_groups[v].parse(lab)))
        return gp_normalize(raw, self)

    def descriptor(self) -> dict:
        g = self.graph.to_json()
        g["vertex_group"] = {v: G.descriptor() for v, G in self.vertex_groups.items()}
        return {"kind": "graph_product", "graph": g}


def _split_top(text: str, sep: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "{":
            depth += 1
        elif ch == "}":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts


def direct_product(groups: Mapping[str, Group]) -> GraphProduct:
    """G x H x ... as the graph product over the complete graph."""
    return GraphProduct(GraphSpec.complete(groups), groups)


def gp_normalize(syllables: Iterable[tuple], gp: GraphProduct) -> tuple:
    """Normal form of a syllable sequence in a graph product.

    First reduce: each incoming syllable travels left across syllables whose
    vertex commutes with its own and merges with a same-vertex syllable if it
    reaches one (identity results are dropped).  Then order: repeatedly emit
    the smallest-vertex syllable among those that commute past everything
    before them.
    """
    graph = gp.graph
    out: list[list] = []
    for v, g in syllables:
        if v not in gp.vertex_groups:
            raise GroupError(f"vertex {v!r} not in graph")
        G = gp.vertex_groups[v]
        if not G.contains(g):
            raise GroupError(f"{g!r} is not in the group at vertex {v!r}")
        if g == G.identity:
            continue
        i = len(out) - 1
        while i >= 0 and out[i][0] != v and graph.adjacent(out[i][0], v):
            i -= 1
        if i >= 0 and out[i][0] == v:
            h = G.mul(out[i][1], g)
            if h == G.identity:
                del out[i]
            else:
                out[i][1] = h
        else:
            out.append([v, g])
    rank = gp._rank
    pending = out
    result = []
    while pending:
        best = None
        for j, (v, _) in enumerate(pending):
            if all(graph.adjacent(pending[k][0], v) for k in range(j)):
                if best is None or rank[v] < rank[pending[best][0]]:
                    best = j
        result.append(tuple(pending.pop(best)))
    return tuple(result)


# ---------------------------------------------------------------------------
# group ring


class GroupRingElem:
    """Finite integer combination of group elements; no zero coefficients."""

    __slots__ = ("group", "terms")

    def __init__(self, group: Group, terms: Mapping | None = None):
        self.group = group
        self.terms = {g: c for g, c in (terms or {}).items() if c}

    @classmethod
    def of(cls, group: Group, g, coeff: int = 1) -> "GroupRingElem":
        return cls(group, {g: coeff})

    @classmethod
    def one(cls, group: Group) -> "GroupRingElem":
        return cls(group, {group.identity: 1})

    @classmethod
    def zero(cls, group: Group) -> "GroupRingElem":
        return cls(group, {})

    def _same(self, other: "GroupRingElem") -> None:
        if other.group is not self.group and other.group != self.group:
            raise GroupError("group ring elements over different groups")

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, int) and other == 0:
            return not self.terms
        return isinstance(other, GroupRingElem) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "GroupRingElem") -> "GroupRingElem":
        self._same(other)
        t = dict(self.terms)
        for g, c in other.terms.items():
            t[g] = t.get(g, 0) + c
        return GroupRingElem(self.group, t)

    def __neg__(self) -> "GroupRingElem":
        return GroupRingElem(self.group, {g: -c for g, c in self.terms.items()})

    def __sub__(self, other: "GroupRingElem") -> "GroupRingElem":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return GroupRingElem(self.group, {g: c * other for g, c in self.terms.items()})
        self._same(other)
        G = self.group
        t: dict = {}
        for g, c in self.terms.items():
            for h, d in other.terms.items():
                k = G.mul(g, h)
                t[k] = t.get(k, 0) + c * d
        return GroupRingElem(G, t)

    def __rmul__(self, k: int) -> "GroupRingElem":
        return self * k

    def act(self, g) -> "GroupRingElem":
        """Right multiplication by a group element."""
        G = self.group
        return GroupRingElem(G, {G.mul(h, g): c for h, c in self.terms.items()})

    def left_act(self, g) -> "GroupRingElem":
        G = self.group
        return GroupRingElem(G, {G.mul(g, h): c for h, c in self.terms.items()})

    def map(self, f, target: Group) -> "GroupRingElem":
        """Push forward along a group homomorphism f."""
        t: dict = {}
        for g, c in self.terms.items():
            k = f(g)
            t[k] = t.get(k, 0) + c
        return GroupRingElem(target, t)

    def augmentation(self) -> int:
        return sum(self.terms.values())

    def __repr__(self) -> str:
        return f"GroupRingElem({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{c} {self.group.format(g)}" for g, c in self.terms.items())


def ring_add(a: GroupRingElem, b: GroupRingElem) -> GroupRingElem:
    return a + b


def ring_scalar_mul(k: int, a: GroupRingElem) -> GroupRingElem:
    return a * k


def ring_act(m: GroupRingElem, g) -> GroupRingElem:
    return m.act(g)


def augmentation(m: GroupRingElem) -> int:
    return m.augmentation()


def norm_element(G: CyclicGroup | FiniteGroup, t, p: int) -> GroupRingElem:
    """1 + t + ... + t^(p-1)."""
    return GroupRingElem(G, {G.power(t, i): 1 for i in range(p)})


# ---------------------------------------------------------------------------
# JSON descriptors


def group_from_descriptor(d: Mapping) -> Group:
    kind = d.get("kind")
    if kind == "cyclic":
        return CyclicGroup(int(d["modulus"]), d.get("symbol", "t"))
    if kind == "table":
        return FiniteGroup(d["table"], d.get("labels"))
    if kind == "graph_product":
        g = d["graph"]
        spec = GraphSpec.build(g["vertices"], [tuple(e) for e in g.get("edges", [])])
        vg = {v: group_from_descriptor(desc) for v, desc in g["vertex_group"].items()}
        return GraphProduct(spec, vg)
    raise ValueError(f"unknown group kind {kind!r}")


def named_group(name: str) -> Group:
    """Shorthand: ``C5`` (table), ``Cinf``, ``S3``, ``Q8``, ``D4``, ``C2xC3``."""
    name = name.strip()
    if "x" in name:
        parts = [named_group(p) for p in name.split("x")]
        acc = parts[0]
        for p in parts[1:]:
            acc = FiniteGroup.direct_product(acc, p)
        return acc
    if name == "Cinf":
        return CyclicGroup(0)
    if name == "S3":
        return FiniteGroup.symmetric3()
    if name == "Q8":
        return FiniteGroup.quaternion()
    if name.startswith("D") and name[1:].isdigit():
        return FiniteGroup.dihedral(int(name[1:]))
    if name.startswith("C") and name[1:].isdigit():
        return FiniteGroup.cyclic(int(name[1:]))
    raise ValueError(f"unknown group name {name!r}")
