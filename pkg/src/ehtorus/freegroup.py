"""Free groups of surfaces with boundary and the torus twist automorphisms.

A free word is a tuple of nonzero ints: ``i`` is the generator g_i and ``-i``
its inverse.  Generators are dual to the basis arcs: a loop picks up g_i each
time it leaves the cut polygon through the side labelled a_i.
"""

from __future__ import annotations

from typing import Mapping, Sequence

FreeWord = tuple[int, ...]


def reduce_word(w: Sequence[int]) -> FreeWord:
    out: list[int] = []
    for x in w:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def inverse(w: Sequence[int]) -> FreeWord:
    return tuple(-x for x in reversed(w))


def mul(*ws: Sequence[int]) -> FreeWord:
    out: list[int] = []
    for w in ws:
        out.extend(w)
    return reduce_word(out)


def power(w: Sequence[int], n: int) -> FreeWord:
    if n < 0:
        return power(inverse(w), -n)
    return reduce_word(tuple(w) * n)


def fmt(w: Sequence[int]) -> str:
    if not w:
        return "1"
    return " ".join(f"g{x}" if x > 0 else f"g{-x}^-1" for x in w)


class Automorphism:
    """An endomorphism of a free group given by the images of generators."""

    def __init__(self, images: Mapping[int, Sequence[int]]):
        self.images = {k: reduce_word(v) for k, v in images.items()}

    def __call__(self, w: Sequence[int]) -> FreeWord:
        out: list[int] = []
        for x in w:
            img = self.images.get(abs(x), (abs(x),))
            out.extend(img if x > 0 else inverse(img))
        return reduce_word(out)

    def then(self, other: "Automorphism") -> "Automorphism":
        """The composite ``other o self``."""
        return Automorphism({k: other(v) for k, v in self.images.items()})

    def __eq__(self, other):
        if not isinstance(other, Automorphism):
            return NotImplemented
        keys = set(self.images) | set(other.images)
        return all(self((k,)) == other((k,)) for k in keys)


# Right-handed twists on the once-punctured torus, acting on pi_1 based at a
# boundary point.  Each fixes the boundary word g1 g2^-1 g1^-1 g2 exactly.
TORUS_TWIST = {
    "a": Automorphism({1: (1, -2), 2: (2,)}),
    "A": Automorphism({1: (1, 2), 2: (2,)}),
    "b": Automorphism({1: (1,), 2: (1, 2)}),
    "B": Automorphism({1: (1,), 2: (-1, 2)}),
}
TORUS_BOUNDARY: FreeWord = (1, -2, -1, 2)


def torus_action(letters: Sequence[str]) -> Automorphism:
    """pi_1 action of a mapping-class word; the rightmost letter acts first."""
    out = Automorphism({1: (1,), 2: (2,)})
    for ch in reversed(letters):
        if ch == "d":
            step = torus_action("ab" * 6)
        elif ch == "D":
            step = torus_action("BA" * 6)
        else:
            step = TORUS_TWIST[ch]
        out = out.then(step)
    return out


def abelianize(w: Sequence[int], rank: int) -> list[int]:
    v = [0] * rank
    for x in w:
        v[abs(x) - 1] += 1 if x > 0 else -1
    return v
