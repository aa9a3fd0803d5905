"""Bar-complex chains of automorphism groups, and the cochain pairing.

A BarChain of degree p is a finite rational combination of p-tuples of
group elements; tuples containing the identity are degenerate and are
dropped on construction.  The boundary is the usual inhomogeneous one
(drop first, merge neighbours with alternating signs, drop last), matching
the coboundary in cochains when every element in sight acts trivially on
the coefficients; the pairing therefore refuses elements that act
nontrivially on H.

Cycles come from two constructors, both of which check commutativity of
the ingredients and verify that the boundary vanishes before returning:

* torus_cycle: the signed sum over all orderings of p pairwise commuting
  elements, the image of the fundamental class of a p-torus;
* shuffle / cross: the Eilenberg-Zilber shuffle product of two cycles
  whose supports commute elementwise, cross first embedding each factor
  into disjoint strand blocks.

Cycle grammar (used by the command line):

    torus: <braid> | <braid> | ...
    cross: {<size>: <cycle>} {<size>: <cycle>} ...

where each <braid> uses the braid grammar of the ambient block and cross
blocks are placed on consecutive strands starting at strand 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from typing import Any, Iterable, Mapping, Sequence

from .braids import parse_braid
from .cochains import BlockEmbedding, Cochain, GroupElement
from .words import GrammarError

Element = Any  # GroupElement | ProductElement
Tuple_ = tuple

_ZERO = Fraction(0)


def _perm_sign(perm: Sequence[int]) -> int:
    sign = 1
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                sign = -sign
    return sign


@dataclass(frozen=True)
class BarChain:
    """A formal combination of p-tuples, degenerate tuples already dropped."""

    degree: int
    terms: Mapping[tuple, Fraction] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.degree < 0:
            raise ValueError("degree must be nonnegative")
        clean: dict[tuple, Fraction] = {}
        for tup, c in self.terms.items():
            tup = tuple(tup)
            if len(tup) != self.degree:
                raise ValueError(f"tuple {tup} has wrong length for degree {self.degree}")
            c = Fraction(c)
            if not c or any(g.is_identity for g in tup):
                continue
            clean[tup] = c
        object.__setattr__(self, "terms", clean)

    @classmethod
    def zero(cls, degree: int) -> BarChain:
        return cls(degree, {})

    @classmethod
    def unit(cls) -> BarChain:
        return cls(0, {(): Fraction(1)})

    def is_zero(self) -> bool:
        return not self.terms

    def support(self) -> set:
        return {g for tup in self.terms for g in tup}

    def __add__(self, other: BarChain) -> BarChain:
        if self.degree != other.degree:
            raise ValueError("degree mismatch")
        out = dict(self.terms)
        for tup, c in other.terms.items():
            out[tup] = out.get(tup, _ZERO) + c
        return BarChain(self.degree, out)

    def __sub__(self, other: BarChain) -> BarChain:
        return self + (-other)

    def __neg__(self) -> BarChain:
        return BarChain(self.degree, {t: -c for t, c in self.terms.items()})

    def __rmul__(self, scalar) -> BarChain:
        c = Fraction(scalar)
        return BarChain(self.degree, {t: c * v for t, v in self.terms.items()})

    def boundary(self) -> BarChain:
        if self.degree == 0:
            return BarChain.zero(0)
        out: dict[tuple, Fraction] = {}

        def put(tup: tuple, c: Fraction) -> None:
            out[tup] = out.get(tup, _ZERO) + c

        for tup, c in self.terms.items():
            put(tup[1:], c)
            sign = -1
            for i in range(self.degree - 1):
                merged = tup[:i] + (tup[i] * tup[i + 1],) + tup[i + 2:]
                put(merged, sign * c)
                sign = -sign
            put(tup[:-1], sign * c)
        return BarChain(self.degree - 1, out)

    def is_cycle(self) -> bool:
        return self.boundary().is_zero()


def _check_commuting(elems: Sequence[Element]) -> None:
    for i in range(len(elems)):
        for j in range(i + 1, len(elems)):
            if elems[i] * elems[j] != elems[j] * elems[i]:
                raise ValueError(
                    f"elements at positions {i} and {j} do not commute"
                )


def torus_cycle(elems: Sequence[Element]) -> BarChain:
    """The signed sum over all orderings of pairwise commuting elements."""
    elems = tuple(elems)
    _check_commuting(elems)
    p = len(elems)
    terms: dict[tuple, Fraction] = {}
    for perm in permutations(range(p)):
        tup = tuple(elems[k] for k in perm)
        sign = _perm_sign(perm)
        terms[tup] = terms.get(tup, _ZERO) + sign
    cycle = BarChain(p, terms)
    if not cycle.is_cycle():
        raise ValueError("torus construction failed to produce a cycle")
    return cycle


def _shuffles(p: int, q: int):
    """All interleavings of 0..p-1 with p..p+q-1 preserving both orders, signed."""
    def go(a: int, b: int):
        if a == p and b == q:
            yield (), 0
            return
        if a < p:
            for rest, inv in go(a + 1, b):
                yield (a,) + rest, inv
        if b < q:
            for rest, inv in go(a, b + 1):
                # p + b jumps ahead of the p - a remaining left entries
                yield (p + b,) + rest, inv + (p - a)
    yield from go(0, 0)


def shuffle(z1: BarChain, z2: BarChain) -> BarChain:
    """Eilenberg-Zilber product of chains whose supports commute elementwise."""
    s1, s2 = z1.support(), z2.support()
    for a in s1:
        for b in s2:
            if a * b != b * a:
                raise ValueError("supports do not commute; shuffle is not a cycle")
    p, q = z1.degree, z2.degree
    out: dict[tuple, Fraction] = {}
    for t1, c1 in z1.terms.items():
        for t2, c2 in z2.terms.items():
            pool = t1 + t2
            for order, inversions in _shuffles(p, q):
                tup = tuple(pool[k] for k in order)
                sign = -1 if inversions % 2 else 1
                out[tup] = out.get(tup, _ZERO) + sign * c1 * c2
    result = BarChain(p + q, out)
    if z1.is_cycle() and z2.is_cycle() and not result.is_cycle():
        raise ValueError("shuffle of cycles failed to produce a cycle")
    return result


def embed_chain(z: BarChain, e: BlockEmbedding) -> BarChain:
    mapped: dict[tuple, Fraction] = {}
    for tup, c in z.terms.items():
        key = tuple(e.apply(g) for g in tup)
        mapped[key] = mapped.get(key, _ZERO) + c
    return BarChain(z.degree, mapped)


def cross(z1: BarChain, z2: BarChain, e1: BlockEmbedding, e2: BlockEmbedding) -> BarChain:
    """Shuffle product of two cycles embedded into disjoint strand blocks."""
    if e1.ambient != e2.ambient:
        raise ValueError("embeddings target different ambient ranks")
    lo1, hi1 = e1.offset, e1.offset + e1.size
    lo2, hi2 = e2.offset, e2.offset + e2.size
    if lo1 < hi2 and lo2 < hi1:
        raise ValueError("blocks overlap")
    return shuffle(embed_chain(z1, e1), embed_chain(z2, e2))


def pair(u: Cochain, z: BarChain):
    """Evaluate a cochain on a chain whose elements act trivially on H."""
    if u.degree != z.degree:
        raise ValueError(f"cochain degree {u.degree} vs chain degree {z.degree}")
    for g in z.support():
        if not g.acts_trivially():
            raise ValueError("chain support acts nontrivially on homology")
    total = u.zero_value()
    for tup, c in z.terms.items():
        total = total + c * u(*tup)
    return total


# cycle grammar


def parse_cycle(text: str, n: int, offset: int = 0) -> BarChain:
    """Parse the cycle grammar over braids on n strands."""
    stripped = text.strip()
    base = offset + (len(text) - len(text.lstrip()))
    if stripped.startswith("torus:"):
        body = stripped[len("torus:"):]
        cursor = base + len("torus:")
        elems = []
        for piece in body.split("|"):
            beta = _parse_braid_at(piece, n, cursor)
            elems.append(GroupElement.from_braid(beta))
            cursor += len(piece) + 1
        try:
            return torus_cycle(elems)
        except ValueError as exc:
            raise GrammarError(str(exc), base) from None
    if stripped.startswith("cross:"):
        return _parse_cross(stripped[len("cross:"):], n, base + len("cross:"))
    raise GrammarError("cycle must start with 'torus:' or 'cross:'", base)


def _parse_braid_at(piece: str, n: int, offset: int) -> Any:
    try:
        return parse_braid(piece, n)
    except GrammarError as exc:
        raise GrammarError(str(exc).rsplit(" (at position", 1)[0], offset + exc.position) from None


def _parse_cross(body: str, n: int, offset: int) -> BarChain:
    blocks: list[tuple[int, str, int]] = []
    i = 0
    while i < len(body):
        if body[i].isspace():
            i += 1
            continue
        if body[i] != "{":
            raise GrammarError("expected '{' in cross expression", offset + i)
        depth = 1
        j = i + 1
        while j < len(body) and depth:
            if body[j] == "{":
                depth += 1
            elif body[j] == "}":
                depth -= 1
            j += 1
        if depth:
            raise GrammarError("unbalanced '{' in cross expression", offset + i)
        inner = body[i + 1:j - 1]
        if ":" not in inner:
            raise GrammarError("cross block needs '<size>:<cycle>'", offset + i + 1)
        size_text, cycle_text = inner.split(":", 1)
        try:
            size = int(size_text.strip())
        except ValueError:
            raise GrammarError(f"bad block size {size_text.strip()!r}", offset + i + 1) from None
        blocks.append((size, cycle_text, offset + i + 1 + len(size_text) + 1))
        i = j
    if not blocks:
        raise GrammarError("cross expression has no blocks", offset)
    if sum(size for size, _, _ in blocks) > n:
        raise GrammarError(f"cross blocks exceed {n} strands", offset)
    result: BarChain | None = None
    at = 0
    for size, cycle_text, pos in blocks:
        local = parse_cycle(cycle_text, size, pos)
        embedded = embed_chain(local, BlockEmbedding(at, size, n))
        at += size
        result = embedded if result is None else shuffle(result, embedded)
    return result
