"""Magnus expansions of a free group into the truncated tensor algebra.

An expansion is a homomorphism theta from F_n into the group of units
1 + (higher terms) of T(H)/T_{>cap} with theta(x_i) = 1 + X_i + (degree >= 2).
It is determined by the generator values; the value of the inverse letter is
the truncated geometric series, computed once at construction and checked to
be a genuine two-sided inverse.

The standard expansion takes theta(x_i) = 1 + X_i exactly, so that
theta(x_i^-1) = 1 - X_i + X_i^2 - ...  Custom expansions add an arbitrary
tail of degree >= 2 to each generator; the first two graded pieces (the unit
and the abelianisation) are forced and validated.

Word values are memoised per expansion instance: letters multiply on the
right, so the running state never grows beyond the dimension of the truncated
algebra regardless of word length.
"""

from __future__ import annotations

from typing import Sequence

from .tensors import TruncatedTensor
from .words import FreeWord


def series_inverse(v: TruncatedTensor) -> TruncatedTensor:
    """Inverse of v = 1 + u with u of degree >= 1, as a truncated geometric series."""
    one = TruncatedTensor.one(v.n, v.cap)
    u = v - one
    if not u.component(0).is_zero():
        raise ValueError("series inverse needs constant term exactly 1")
    inv = one
    power = one
    for _ in range(v.cap):
        power = power * (-u)
        if power.is_zero():
            break
        inv = inv + power
    return inv


class MagnusExpansion:
    """A group homomorphism F_n -> 1 + T_1, cached on reduced words."""

    def __init__(self, n: int, cap: int, gen_values: Sequence[TruncatedTensor]):
        if cap < 2:
            raise ValueError("cap must be at least 2 to carry degree-2 data")
        if len(gen_values) != n:
            raise ValueError(f"expected {n} generator values, got {len(gen_values)}")
        one = TruncatedTensor.one(n, cap)
        for i, v in enumerate(gen_values, start=1):
            if v.n != n or v.cap != cap:
                raise ValueError("generator value has wrong rank or cap")
            if v.component(0) != one.component(0):
                raise ValueError(f"value of x{i} must have constant term 1")
            if v.component(1) != TruncatedTensor.basis(n, cap, i):
                raise ValueError(f"value of x{i} must have linear term X{i}")
        self.n = n
        self.cap = cap
        self.gen_values = tuple(gen_values)
        self.gen_inverses = tuple(series_inverse(v) for v in self.gen_values)
        for v, w in zip(self.gen_values, self.gen_inverses):
            if v * w != one or w * v != one:
                raise ValueError("generator value is not invertible at this cap")
        self._cache: dict[tuple[int, ...], TruncatedTensor] = {}

    @classmethod
    def standard(cls, n: int, cap: int) -> MagnusExpansion:
        values = [
            TruncatedTensor.one(n, cap) + TruncatedTensor.basis(n, cap, i)
            for i in range(1, n + 1)
        ]
        return cls(n, cap, values)

    @classmethod
    def custom(cls, n: int, cap: int, tails: Sequence[TruncatedTensor]) -> MagnusExpansion:
        """Standard values plus a degree >= 2 tail on each generator."""
        if len(tails) != n:
            raise ValueError(f"expected {n} tails, got {len(tails)}")
        values = []
        for i, tail in enumerate(tails, start=1):
            if tail.n != n or tail.cap != cap:
                raise ValueError("tail has wrong rank or cap")
            if any(len(idx) < 2 for idx in tail.terms):
                raise ValueError("tail must contain only terms of degree >= 2")
            values.append(
                TruncatedTensor.one(n, cap) + TruncatedTensor.basis(n, cap, i) + tail
            )
        return cls(n, cap, values)

    def value(self, word: FreeWord) -> TruncatedTensor:
        if word.n != self.n:
            raise ValueError("word rank does not match expansion rank")
        cached = self._cache.get(word.letters)
        if cached is not None:
            return cached
        result = TruncatedTensor.one(self.n, self.cap)
        for letter in word.letters:
            factor = (
                self.gen_values[letter - 1]
                if letter > 0
                else self.gen_inverses[-letter - 1]
            )
            result = result * factor
        self._cache[word.letters] = result
        return result

    def __repr__(self) -> str:
        return f"MagnusExpansion(n={self.n}, cap={self.cap})"
