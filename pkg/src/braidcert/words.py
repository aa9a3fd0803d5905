"""Free groups of finite rank: reduced words, endomorphisms, abelianisation.

A word in the free group F_n on generators x_1, ..., x_n is stored as a flat
tuple of nonzero signed integers: +i stands for x_i and -i for x_i^-1, with
1 <= i <= n.  Words are kept freely reduced at all times (no adjacent pair
l, -l), so two FreeWord objects are equal iff they represent the same group
element.

An endomorphism of F_n is determined by its images of the generators and acts
by substitution.  Composition is written in function order: compose(f, g)
sends w to f(g(w)).  The induced matrix on the abelianisation H = Z^n has
column j equal to the exponent-sum vector of the image of x_j, so induced
matrices multiply in the same order as the maps.

The text grammar for words is whitespace-separated tokens ``x<k>`` and
``x<k>^-1``, e.g. ``x1 x2^-1 x1``.  The empty string is the identity.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

IntMatrix = tuple[tuple[int, ...], ...]


class GrammarError(ValueError):
    """Raised on malformed word or braid input; carries the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


def _reduced_concat(a: Sequence[int], b: Iterable[int]) -> tuple[int, ...]:
    # a must already be reduced; cancellation can only happen at the seam.
    out = list(a)
    for letter in b:
        if out and out[-1] == -letter:
            out.pop()
        else:
            out.append(letter)
    return tuple(out)


@dataclass(frozen=True)
class FreeWord:
    """A freely reduced word in F_n."""

    n: int
    letters: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "letters", tuple(self.letters))
        if self.n < 1:
            raise ValueError(f"rank must be positive, got {self.n}")
        for letter in self.letters:
            if letter == 0 or abs(letter) > self.n:
                raise ValueError(f"letter {letter} out of range for rank {self.n}")
        for a, b in zip(self.letters, self.letters[1:]):
            if a == -b:
                raise ValueError("word is not freely reduced; use FreeWord.reduce")

    @classmethod
    def identity(cls, n: int) -> FreeWord:
        return cls(n, ())

    @classmethod
    def generator(cls, n: int, i: int, power: int = 1) -> FreeWord:
        if not 1 <= i <= n:
            raise ValueError(f"generator index {i} out of range for rank {n}")
        sign = 1 if power >= 0 else -1
        return cls(n, (sign * i,) * abs(power))

    @classmethod
    def reduce(cls, n: int, letters: Iterable[int]) -> FreeWord:
        return cls(n, _reduced_concat((), letters))

    @property
    def is_identity(self) -> bool:
        return not self.letters

    def __mul__(self, other: FreeWord) -> FreeWord:
        if self.n != other.n:
            raise ValueError("rank mismatch")
        return FreeWord(self.n, _reduced_concat(self.letters, other.letters))

    def inverse(self) -> FreeWord:
        return FreeWord(self.n, tuple(-l for l in reversed(self.letters)))

    def __pow__(self, k: int) -> FreeWord:
        base = self if k >= 0 else self.inverse()
        result = FreeWord.identity(self.n)
        for _ in range(abs(k)):
            result = result * base
        return result

    def abelianize(self) -> HVector:
        coords = [0] * self.n
        for letter in self.letters:
            coords[abs(letter) - 1] += 1 if letter > 0 else -1
        return HVector(self.n, tuple(coords))

    def __str__(self) -> str:
        return format_word(self)


@dataclass(frozen=True)
class HVector:
    """An integer vector in the abelianisation H = Z^n."""

    n: int
    coords: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coords", tuple(self.coords))
        if len(self.coords) != self.n:
            raise ValueError("coordinate count does not match rank")

    @classmethod
    def zero(cls, n: int) -> HVector:
        return cls(n, (0,) * n)

    @classmethod
    def basis(cls, n: int, i: int) -> HVector:
        if not 1 <= i <= n:
            raise ValueError(f"basis index {i} out of range for rank {n}")
        return cls(n, tuple(1 if j == i - 1 else 0 for j in range(n)))

    def __add__(self, other: HVector) -> HVector:
        if self.n != other.n:
            raise ValueError("rank mismatch")
        return HVector(self.n, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: HVector) -> HVector:
        return self + (-other)

    def __neg__(self) -> HVector:
        return HVector(self.n, tuple(-a for a in self.coords))

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.coords)


@dataclass(frozen=True)
class EndoMap:
    """An endomorphism of F_n given by generator images."""

    n: int
    images: tuple[FreeWord, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "images", tuple(self.images))
        if len(self.images) != self.n:
            raise ValueError(f"expected {self.n} generator images, got {len(self.images)}")
        for w in self.images:
            if w.n != self.n:
                raise ValueError("generator image has wrong rank")

    @classmethod
    def identity(cls, n: int) -> EndoMap:
        return cls(n, tuple(FreeWord.generator(n, i) for i in range(1, n + 1)))

    def __call__(self, w: FreeWord) -> FreeWord:
        out: list[int] = []
        for letter in w.letters:
            image = self.images[abs(letter) - 1].letters
            if letter < 0:
                image = tuple(-l for l in reversed(image))
            for m in image:
                if out and out[-1] == -m:
                    out.pop()
                else:
                    out.append(m)
        return FreeWord(self.n, tuple(out))

    def compose(self, other: EndoMap) -> EndoMap:
        """Return self after other: (self.compose(other))(w) = self(other(w))."""
        if self.n != other.n:
            raise ValueError("rank mismatch")
        return EndoMap(self.n, tuple(self(w) for w in other.images))

    def is_identity(self) -> bool:
        return all(
            w.letters == (i,) for i, w in enumerate(self.images, start=1)
        )

    def induced_matrix(self) -> IntMatrix:
        """Matrix on Z^n with column j the exponent-sum vector of images[j]."""
        cols = [w.abelianize().coords for w in self.images]
        return tuple(
            tuple(cols[j][r] for j in range(self.n)) for r in range(self.n)
        )


@dataclass(frozen=True)
class AutPair:
    """An automorphism of F_n stored together with its inverse.

    Both compositions are checked at construction, so an AutPair is a
    certified automorphism; no inversion algorithm is ever run later.
    """

    fwd: EndoMap
    inv: EndoMap

    def __post_init__(self) -> None:
        if self.fwd.n != self.inv.n:
            raise ValueError("rank mismatch")
        if not self.fwd.compose(self.inv).is_identity():
            raise ValueError("fwd o inv is not the identity")
        if not self.inv.compose(self.fwd).is_identity():
            raise ValueError("inv o fwd is not the identity")

    @property
    def n(self) -> int:
        return self.fwd.n

    @classmethod
    def identity(cls, n: int) -> AutPair:
        e = EndoMap.identity(n)
        return cls(e, e)

    def compose(self, other: AutPair) -> AutPair:
        return AutPair(self.fwd.compose(other.fwd), other.inv.compose(self.inv))

    def inverse(self) -> AutPair:
        return AutPair(self.inv, self.fwd)


def shift_word(w: FreeWord, offset: int, ambient: int) -> FreeWord:
    """Reinterpret w on generators x_{offset+1}, ..., x_{offset+w.n} inside F_ambient."""
    if offset < 0 or offset + w.n > ambient:
        raise ValueError(f"block [{offset + 1}, {offset + w.n}] does not fit in rank {ambient}")
    shifted = tuple(l + offset if l > 0 else l - offset for l in w.letters)
    return FreeWord(ambient, shifted)


def embed_endo(phi: EndoMap, offset: int, ambient: int) -> EndoMap:
    """Extend phi by the identity outside the generator block starting at offset."""
    if offset < 0 or offset + phi.n > ambient:
        raise ValueError(f"block [{offset + 1}, {offset + phi.n}] does not fit in rank {ambient}")
    images = [FreeWord.generator(ambient, i) for i in range(1, ambient + 1)]
    for i, w in enumerate(phi.images):
        images[offset + i] = shift_word(w, offset, ambient)
    return EndoMap(ambient, tuple(images))


_WORD_TOKEN = re.compile(r"x([1-9][0-9]*)(\^-1)?\Z")


def parse_word(text: str, n: int) -> FreeWord:
    """Parse the word grammar: whitespace-separated ``x<k>`` / ``x<k>^-1`` tokens."""
    letters: list[int] = []
    for match in re.finditer(r"\S+", text):
        token = match.group(0)
        m = _WORD_TOKEN.match(token)
        if m is None:
            raise GrammarError(f"bad word token {token!r}", match.start())
        k = int(m.group(1))
        if k > n:
            raise GrammarError(f"generator x{k} out of range for rank {n}", match.start())
        letters.append(-k if m.group(2) else k)
    return FreeWord.reduce(n, letters)


def format_word(w: FreeWord) -> str:
    return " ".join(f"x{l}" if l > 0 else f"x{-l}^-1" for l in w.letters)


def identity_matrix(n: int) -> IntMatrix:
    return tuple(tuple(1 if r == c else 0 for c in range(n)) for r in range(n))


def mat_mul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    rows, inner, cols = len(a), len(b), len(b[0]) if b else 0
    if a and len(a[0]) != inner:
        raise ValueError("matrix shape mismatch")
    return tuple(
        tuple(sum(a[r][k] * b[k][c] for k in range(inner)) for c in range(cols))
        for r in range(rows)
    )
