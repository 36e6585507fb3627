"""Explicit free crossed resolutions: the standard one and the cyclic ones."""
from __future__ import annotations

import itertools

from .crossed import (ComplexError, CrossedComplex, Dim2Elem, ModuleElem, PowerLift, TableLift,
                      expand_dim2)
from .groups import CyclicGroup, FiniteGroup, Group, GroupRingElem, norm_element
from .words import EMPTY, Word


def tuple_name(G: Group, elems) -> str:
    return "[" + ",".join(G.format(a) for a in elems) + "]"


def standard_resolution(G: Group, maxdim: int = 3) -> CrossedComplex:
    """Standard free crossed resolution: bases G^n, degenerate tuples kept."""
    if maxdim < 2:
        raise ComplexError("maxdim must be at least 2")
    if not G.is_finite:
        raise ComplexError("the standard resolution is only built for finite groups")
    elems = G.elements()
    name = {}
    for n in range(1, maxdim + 1):
        for t in itertools.product(elems, repeat=n):
            name[t] = tuple_name(G, t)
    X1 = [name[(a,)] for a in elems]
    phi = {name[(a,)]: a for a in elems}

    def gen(a) -> Word:
        return Word.gen(name[(a,)])

    relators = {}
    for a, b in itertools.product(elems, repeat=2):
        relators[name[(a, b)]] = gen(a) * gen(b) * gen(G.mul(a, b)).inverse()

    bases: dict[int, list[str]] = {}
    boundaries: dict[int, dict] = {}
    if maxdim >= 3:
        bd3 = {}
        for a, b, c in itertools.product(elems, repeat=3):
            ab, bc = G.mul(a, b), G.mul(b, c)
            bd3[name[(a, b, c)]] = Dim2Elem((
                (name[(a, bc)], 1, EMPTY),
                (name[(ab, c)], -1, EMPTY),
                (name[(a, b)], -1, EMPTY),
                (name[(b, c)], 1, gen(a).inverse()),
            ))
        bases[3] = list(bd3)
        boundaries[3] = bd3
    for n in range(4, maxdim + 1):
        bdn = {}
        for t in itertools.product(elems, repeat=n):
            acc = ModuleElem.gen(G, name[t[1:]], G.inv(t[0]))
            for i in range(1, n):
                merged = t[:i - 1] + (G.mul(t[i - 1], t[i]),) + t[i + 1:]
                acc = acc + ModuleElem.gen(G, name[merged], coeff=(-1) ** i)
            acc = acc + ModuleElem.gen(G, name[t[:-1]], coeff=(-1) ** n)
            bdn[name[t]] = acc
        bases[n] = list(bdn)
        boundaries[n] = bdn
    lift = TableLift({a: (gen(a) if a != G.identity else EMPTY) for a in elems})
    return CrossedComplex(G, X1, phi, relators, bases, boundaries, maxdim, lift,
                          name=f"standard({_group_name(G)})")


def _group_name(G: Group) -> str:
    if isinstance(G, CyclicGroup):
        return f"C{G.modulus}" if G.modulus else "Cinf"
    return f"order {G.order}"


def cyclic_resolution(p: int, maxdim: int = 4, prefix: str = "x") -> CrossedComplex:
    """Periodic free crossed resolution of C_p with one generator per dimension.

    delta x2 = x1^p; in odd dimensions delta x_n = x_{n-1}(1 - t), in even
    dimensions >= 4 delta x_n = x_{n-1}(1 + t + ... + t^(p-1)).
    """
    if p < 2:
        raise ComplexError("p must be at least 2")
    if maxdim < 2:
        raise ComplexError("maxdim must be at least 2")
    G = CyclicGroup(p)
    t = G.generator()
    x = [None] + [f"{prefix}{n}" for n in range(1, maxdim + 1)]
    one = GroupRingElem.one(G)
    one_minus_t = one - GroupRingElem.of(G, t)
    N = norm_element(G, t, p)
    lift = PowerLift(x[1])
    base = CrossedComplex(G, [x[1]], {x[1]: t}, {x[2]: Word.gen(x[1], p)}, maxdim=2, lift=lift)
    bases, boundaries = {}, {}
    for n in range(3, maxdim + 1):
        coeff = one_minus_t if n % 2 else N
        val = ModuleElem(G, {x[n - 1]: coeff})
        bases[n] = [x[n]]
        boundaries[n] = {x[n]: expand_dim2(val, base) if n == 3 else val}
    return CrossedComplex(G, [x[1]], {x[1]: t}, {x[2]: Word.gen(x[1], p)}, bases, boundaries,
                          maxdim, lift, name=f"cyclic({p})")


def infinite_cyclic_resolution(generator: str = "x", maxdim: int = 2) -> CrossedComplex:
    """The infinite cyclic group: one free generator in dimension 1, nothing above."""
    G = CyclicGroup(0)
    return CrossedComplex(G, [generator], {generator: 1}, {}, maxdim=maxdim,
                          lift=PowerLift(generator), name=f"infinite_cyclic({generator})")


def resolution_for_group(G: Group, maxdim: int, generator: str = "x") -> CrossedComplex:
    """A small resolution for a vertex group: cyclic ones when possible."""
    if isinstance(G, CyclicGroup):
        if G.modulus == 0:
            return infinite_cyclic_resolution(generator, maxdim)
        if G.modulus >= 2:
            return cyclic_resolution(G.modulus, maxdim, prefix=generator)
    if isinstance(G, FiniteGroup) or G.is_finite:
        return standard_resolution(G, maxdim)
    raise ComplexError(f"no resolution available for {G!r}")
