"""Words in the Dehn-twist generators of the once-punctured torus.

Letters are single characters: ``a``/``A`` are the positive/negative twists
along the (1,0)-curve, ``b``/``B`` along the (0,1)-curve and ``d``/``D`` the
positive/negative twists along the boundary.  The text syntax allows
``^n`` powers (n may be negative) and parentheses, with whitespace ignored,
e.g. ``(aba)^2 B^3``.
"""

from __future__ import annotations

from dataclasses import dataclass

LETTERS = "aAbBdD"
INVERSE = {"a": "A", "A": "a", "b": "B", "B": "b", "d": "D", "D": "d"}
LONG_NAMES = {"a": "A1+", "A": "A1-", "b": "A2+", "B": "A2-", "d": "D+", "D": "D-"}

# exponent-sum homomorphism to Z; the boundary twist equals (ab)^6
EXPONENT = {"a": 1, "A": -1, "b": 1, "B": -1, "d": 12, "D": -12}


class WordParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


def free_reduce(letters) -> tuple[str, ...]:
    out: list[str] = []
    for ch in letters:
        if out and out[-1] == INVERSE[ch]:
            out.pop()
        else:
            out.append(ch)
    return tuple(out)


@dataclass(frozen=True)
class MapClassWord:
    """A mapping class of the once-punctured torus written as a word.

    ``letters`` is applied like a matrix product: the rightmost letter acts
    first.  Construction freely reduces the word.
    """

    letters: tuple[str, ...] = ()

    def __post_init__(self):
        for ch in self.letters:
            if ch not in INVERSE:
                raise ValueError(f"unknown letter {ch!r}")
        object.__setattr__(self, "letters", free_reduce(self.letters))

    @classmethod
    def parse(cls, text: str) -> "MapClassWord":
        return cls(tuple(_Parser(text).parse()))

    def __str__(self) -> str:
        return "".join(self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __mul__(self, other: "MapClassWord") -> "MapClassWord":
        return MapClassWord(self.letters + other.letters)

    def __pow__(self, n: int) -> "MapClassWord":
        if n < 0:
            return self.inverse() ** (-n)
        return MapClassWord(self.letters * n)

    def inverse(self) -> "MapClassWord":
        return MapClassWord(tuple(INVERSE[ch] for ch in reversed(self.letters)))

    def conjugate(self, u: "MapClassWord") -> "MapClassWord":
        """Return ``u * self * u^-1``."""
        return u * self * u.inverse()

    def exponent_sum(self) -> int:
        return sum(EXPONENT[ch] for ch in self.letters)

    def long_form(self) -> list[str]:
        return [LONG_NAMES[ch] for ch in self.letters]


def word(text: str | MapClassWord) -> MapClassWord:
    if isinstance(text, MapClassWord):
        return text
    return MapClassWord.parse(text)


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def _skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def parse(self) -> list[str]:
        out = self._sequence()
        self._skip()
        if self.pos != len(self.text):
            raise WordParseError(f"unexpected {self.text[self.pos]!r}", self.pos)
        return out

    def _sequence(self) -> list[str]:
        out: list[str] = []
        while True:
            self._skip()
            if self.pos >= len(self.text) or self.text[self.pos] == ")":
                return out
            out.extend(self._factor())

    def _factor(self) -> list[str]:
        ch = self.text[self.pos]
        if ch == "(":
            start = self.pos
            self.pos += 1
            inner = self._sequence()
            self._skip()
            if self.pos >= len(self.text):
                raise WordParseError("unclosed parenthesis", start)
            self.pos += 1
            base = inner
        elif ch in INVERSE:
            self.pos += 1
            base = [ch]
        else:
            raise WordParseError(f"unexpected {ch!r}", self.pos)
        self._skip()
        if self.pos < len(self.text) and self.text[self.pos] == "^":
            self.pos += 1
            self._skip()
            start = self.pos
            if self.pos < len(self.text) and self.text[self.pos] in "+-":
                self.pos += 1
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            digits = self.text[start:self.pos]
            if digits in ("", "+", "-"):
                raise WordParseError("expected integer exponent", start)
            n = int(digits)
            if n < 0:
                base = [INVERSE[c] for c in reversed(base)]
                n = -n
            return base * n
        return base
