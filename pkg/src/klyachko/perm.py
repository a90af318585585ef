"""Permutations in one-line notation, words, and descent statistics.

Everything is 1-indexed: ``Permutation((2, 3, 1))`` sends 1 to 2, 2 to 3
and 3 to 1.  Composition is right to left, ``(s * t)(i) = s(t(i))``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import FrozenSet, Iterator, Sequence, Tuple


class Permutation(tuple):
    """A bijection of ``{1..n}`` stored as its one-line notation."""

    __slots__ = ()

    def __new__(cls, image: Sequence[int] = ()):
        image = tuple(int(x) for x in image)
        if sorted(image) != list(range(1, len(image) + 1)):
            raise ValueError(f"{image} is not a permutation of 1..{len(image)}")
        return tuple.__new__(cls, image)

    @classmethod
    def _unchecked(cls, image) -> "Permutation":
        return tuple.__new__(cls, image)

    @classmethod
    def parse(cls, text: str) -> "Permutation":
        text = text.strip()
        if "," in text:
            return cls(int(x) for x in text.split(","))
        return cls(int(ch) for ch in text)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls._unchecked(range(1, n + 1))

    @property
    def n(self) -> int:
        return len(self)

    def __call__(self, i: int) -> int:
        return self[i - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def __pow__(self, k: int) -> "Permutation":
        base = self if k >= 0 else self.inverse()
        out = Permutation.identity(len(self))
        for _ in range(abs(k)):
            out = compose(out, base)
        return out

    def inverse(self) -> "Permutation":
        inv = [0] * len(self)
        for i, x in enumerate(self, start=1):
            inv[x - 1] = i
        return Permutation._unchecked(inv)

    def is_identity(self) -> bool:
        return all(x == i for i, x in enumerate(self, start=1))

    def __str__(self):
        return render_word(self)

    def __repr__(self):
        return f"Permutation({render_word(self)!r})"


def render_word(w: Sequence[int]) -> str:
    """Letters run together when every letter is a digit, else comma separated."""
    if not w:
        return "()"
    if len(w) <= 9 and all(0 < x <= 9 for x in w):
        return "".join(str(x) for x in w)
    return ",".join(str(x) for x in w)


def permutations(n: int) -> Iterator[Permutation]:
    """All of S_n in lexicographic order."""
    for p in itertools.permutations(range(1, n + 1)):
        yield Permutation._unchecked(p)


def compose(sigma: Sequence[int], tau: Sequence[int]) -> Permutation:
    """``(sigma tau)(i) = sigma(tau(i))``."""
    if len(sigma) != len(tau):
        raise ValueError(f"cannot compose permutations of degree {len(sigma)} and {len(tau)}")
    return Permutation._unchecked([sigma[t - 1] for t in tau])


def cycle_power(n: int, i: int) -> Permutation:
    """``gamma**i`` where gamma is the n-cycle ``k -> k+1`` (one-line ``23...n1``)."""
    if n < 1:
        raise ValueError("n must be positive")
    i %= n
    return Permutation._unchecked([(k + i - 1) % n + 1 for k in range(1, n + 1)])


@dataclass(frozen=True)
class DescentStats:
    D: FrozenSet[int]
    maj: int
    Dbar: FrozenSet[int]
    dbar: int

    @property
    def d(self) -> int:
        return len(self.D)


def descent_set(w: Sequence[int]) -> Tuple[int, ...]:
    return tuple(i for i in range(1, len(w)) if w[i - 1] > w[i])


def major_index(w: Sequence[int]) -> int:
    return sum(descent_set(w))


def descent_stats(w: Sequence[int]) -> DescentStats:
    if not w:
        raise ValueError("descent statistics of the empty word")
    D = frozenset(descent_set(w))
    n = len(w)
    Dbar = D if w[-1] < w[0] else D | {n}
    return DescentStats(D=D, maj=sum(D), Dbar=Dbar, dbar=len(Dbar))


def standardize(w: Sequence[int]) -> Permutation:
    """The permutation order-isomorphic to ``w``; ``standardize(5716) == 2413``."""
    if len(set(w)) != len(w):
        raise ValueError(f"word {tuple(w)} has repeated letters")
    rank = {x: r for r, x in enumerate(sorted(w), start=1)}
    return Permutation._unchecked([rank[x] for x in w])


def is_subsequence(u: Sequence[int], w: Sequence[int]) -> bool:
    it = iter(w)
    return all(x in it for x in u)
