"""Free groups on named generators.

Words are immutable tuples of ``(name, exponent)`` letters with exponent
``+1`` or ``-1``; powers are always expanded so free reduction is a single
stack pass.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

Letter = tuple[str, int]


class AlphabetError(ValueError):
    """A letter or generator is not in the declared alphabet."""


@dataclass(frozen=True)
class Word:
    letters: tuple[Letter, ...] = ()

    @classmethod
    def gen(cls, name: str, power: int = 1) -> "Word":
        e = 1 if power > 0 else -1
        return cls(((name, e),) * abs(power))

    @classmethod
    def parse(cls, text: str) -> "Word":
        """Parse ``"x y^-1 x"``; ``x^n`` with any integer n is also accepted.

        Only a trailing integer after the last ``^`` is an exponent, so names
        such as ``[t^2]`` survive a round trip.
        """
        letters: list[Letter] = []
        for tok in text.split():
            name, sep, exp = tok.rpartition("^")
            if sep and exp.lstrip("-").isdigit():
                k = int(exp)
            else:
                name, k = tok, 1
            if not name:
                raise ValueError(f"bad word token {tok!r}")
            letters.extend(cls.gen(name, k).letters)
        return reduce(letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        return mul(self, other)

    def __pow__(self, k: int) -> "Word":
        base = self if k >= 0 else self.inverse()
        return reduce(base.letters * abs(k))

    def inverse(self) -> "Word":
        return inv(self)

    def conj(self, v: "Word") -> "Word":
        return conj(self, v)

    def generators(self) -> set[str]:
        return {g for g, _ in self.letters}

    def rename(self, mapping: Mapping[str, str]) -> "Word":
        return Word(tuple((mapping[g], e) for g, e in self.letters))

    def __str__(self) -> str:
        return " ".join(g if e == 1 else f"{g}^-1" for g, e in self.letters)

    def __repr__(self) -> str:
        return f"Word({str(self)!r})"


EMPTY = Word()


def reduce(letters: Iterable[Letter], alphabet: Iterable[str] | None = None) -> Word:
    allowed = set(alphabet) if alphabet is not None else None
    out: list[Letter] = []
    for g, e in letters:
        if e not in (1, -1):
            raise ValueError(f"exponent must be +1 or -1, got {e}")
        if allowed is not None and g not in allowed:
            raise AlphabetError(f"generator {g!r} not in alphabet")
        if out and out[-1][0] == g and out[-1][1] == -e:
            out.pop()
        else:
            out.append((g, e))
    return Word(tuple(out))


def mul(u: Word, v: Word) -> Word:
    # both inputs are reduced, so cancellation only happens at the seam
    a, b = u.letters, v.letters
    i = 0
    n = min(len(a), len(b))
    while i < n and a[-1 - i][0] == b[i][0] and a[-1 - i][1] == -b[i][1]:
        i += 1
    return Word(a[: len(a) - i] + b[i:])


def inv(u: Word) -> Word:
    return Word(tuple((g, -e) for g, e in reversed(u.letters)))


def conj(u: Word, v: Word) -> Word:
    """Return ``v^-1 u v``."""
    return mul(mul(inv(v), u), v)


class FreeGroup:
    """F(X) on a fixed, ordered alphabet; checks membership on every call."""

    def __init__(self, alphabet: Iterable[str]):
        self.alphabet = tuple(alphabet)
        if len(set(self.alphabet)) != len(self.alphabet):
            raise ValueError("duplicate generator names")
        self._set = frozenset(self.alphabet)

    def __repr__(self) -> str:
        return f"FreeGroup({list(self.alphabet)})"

    def check(self, *words: Word) -> None:
        for w in words:
            for g, _ in w.letters:
                if g not in self._set:
                    raise AlphabetError(f"generator {g!r} not in {self!r}")

    def word(self, letters: Iterable[Letter]) -> Word:
        return reduce(letters, self._set)

    def parse(self, text: str) -> Word:
        w = Word.parse(text)
        self.check(w)
        return w

    def identity(self) -> Word:
        return EMPTY

    def gens(self) -> list[Word]:
        return [Word.gen(x) for x in self.alphabet]

    def mul(self, u: Word, v: Word) -> Word:
        self.check(u, v)
        return mul(u, v)

    def inv(self, u: Word) -> Word:
        self.check(u)
        return inv(u)

    def conj(self, u: Word, v: Word) -> Word:
        self.check(u, v)
        return conj(u, v)


@dataclass(frozen=True)
class FreeHom:
    """Homomorphism out of a free group, given on generators.

    ``target`` is either a :class:`FreeGroup` (values are words) or a group
    from :mod:`crossed_kernel.groups` (values are group elements).
    """

    assignment: Mapping[str, object]
    target: object

    def __call__(self, u: Word):
        return apply_hom(self, u)


def apply_hom(f: FreeHom, u: Word):
    if isinstance(f.target, FreeGroup):
        out: list[Letter] = []
        for g, e in u.letters:
            if g not in f.assignment:
                raise AlphabetError(f"homomorphism has no value on {g!r}")
            img = f.assignment[g]
            out.extend(img.letters if e == 1 else inv(img).letters)
        return reduce(out)
    G = f.target
    acc = G.identity
    for g, e in u.letters:
        if g not in f.assignment:
            raise AlphabetError(f"homomorphism has no value on {g!r}")
        img = f.assignment[g]
        acc = G.mul(acc, img if e == 1 else G.inv(img))
    return acc


def fox_derivative(u: Word, x: str, phi: FreeHom):
    """Left free derivative of u with respect to x, as an element of Z[G].

    Satisfies ``d(uv) = du + phi(u) dv``.
    """
    from .groups import GroupRingElem

    G = phi.target
    terms: dict = {}
    prefix = G.identity
    for g, e in u.letters:
        img = phi.assignment.get(g)
        if img is None:
            raise AlphabetError(f"homomorphism has no value on {g!r}")
        step = img if e == 1 else G.inv(img)
        if g == x:
            if e == 1:
                _bump(terms, prefix, 1)
            else:
                _bump(terms, G.mul(prefix, step), -1)
        prefix = G.mul(prefix, step)
    return GroupRingElem(G, terms)


def right_fox_derivative(u: Word, x: str, phi: FreeHom):
    """Right-handed free derivative: ``d(uv) = du . phi(v) + dv``.

    This is the derivative that matches right actions ``c^u``; it satisfies
    ``sum_x (phi(x) - 1) d_x(u) = phi(u) - 1``.
    """
    from .groups import GroupRingElem

    G = phi.target
    terms: dict = {}
    suffix = G.identity
    for g, e in reversed(u.letters):
        img = phi.assignment.get(g)
        if img is None:
            raise AlphabetError(f"homomorphism has no value on {g!r}")
        step = img if e == 1 else G.inv(img)
        if g == x:
            if e == 1:
                _bump(terms, suffix, 1)
            else:
                _bump(terms, G.mul(step, suffix), -1)
        suffix = G.mul(step, suffix)
    return GroupRingElem(G, terms)


def _bump(terms: dict, key, c: int) -> None:
    v = terms.get(key, 0) + c
    if v:
        terms[key] = v
    else:
        terms.pop(key, None)
