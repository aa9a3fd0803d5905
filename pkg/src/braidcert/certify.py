"""Linear-independence certificates for the contracted cochains.

For an ambient rank n and exterior degree q, the candidates are the
cochains hbar_lambda indexed by partitions lambda of q with n - q parts
(zeros allowed, weakly decreasing).  Each partition also determines a
layout of consecutive strand blocks of sizes lambda_k + 1, and a catalog
of commuting pure braid tuples inside each block.  Crossing the block tori
gives candidate q-cycles; pairing every hbar_mu against every candidate
cycle and coordinate of Lambda^q H yields an exact rational matrix whose
row rank is computed fraction-free.

The verdict is "pass" exactly when the rank equals the number of
partitions: the rows are then linearly independent as cochains, hence as
cohomology classes, since every candidate cycle is verified to be a cycle.
A rank deficit only means this catalog of cycles cannot separate the rows,
so the verdict degrades to "inconclusive-catalog", never to a refutation.

The certificate also records a triangularity table: pairings of hbar_mu
against cycles of a strictly later partition in the enumeration order are
expected to vanish identically, which makes the pass criterion a matter of
nonzero diagonal blocks.

scalar_factor_check compares, against random torus cycles in an embedded
block product, the restriction of hbar_lambda with the product of its
single-block factors scaled by the repetition factor prod_p (count of parts
equal to p)!.  The comparison is a pairing of cycles because the two sides
agree only up to a coboundary, not pointwise.

All exterior coordinates use the projection without 1/q! normalisation;
certificates say so in their JSON output.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Sequence

from .braids import BraidWord, braids_equal, full_twist, pure_gen_braid
from .chains import BarChain, embed_chain, pair, shuffle, torus_cycle
from .cochains import (
    BlockEmbedding,
    Cochain,
    GroupElement,
    ProductElement,
    block_layout,
    block_restrict,
    cup,
    hbar_cochain,
    hbar_partition_cochain,
    projection_pullback,
    unit_cochain,
)
from .magnus import MagnusExpansion
from .tensors import exterior_basis

EXTERIOR_CONVENTION = "exterior projection is the signed coefficient sum, no 1/q! factor"


def partitions(total: int, slots: int) -> list[tuple[int, ...]]:
    """Weakly decreasing tuples of the given length summing to total, largest first."""
    if slots < 0:
        raise ValueError("slots must be nonnegative")
    if slots == 0:
        return [()] if total == 0 else []
    out: list[tuple[int, ...]] = []

    def go(remaining: int, bound: int, prefix: tuple[int, ...]) -> None:
        if len(prefix) == slots:
            if remaining == 0:
                out.append(prefix)
            return
        slots_left = slots - len(prefix)
        for part in range(min(remaining, bound), -1, -1):
            if part * slots_left < remaining:
                break
            go(remaining - part, part, prefix + (part,))

    go(total, total, ())
    return out


def dual_partition(parts: Sequence[int]) -> tuple[int, ...]:
    """Entry p counts the parts that are at least p."""
    top = max(parts, default=0)
    return tuple(sum(1 for a in parts if a >= p) for p in range(1, top + 1))


def multiplicity_factor(parts: Sequence[int]) -> int:
    """Product of factorials of the multiplicities of the nonzero parts."""
    result = 1
    for p in set(parts):
        if p > 0:
            result *= math.factorial(sum(1 for a in parts if a == p))
    return result


def partition_layout(parts: Sequence[int], n: int) -> tuple[BlockEmbedding, ...]:
    """Consecutive blocks of sizes part + 1; they tile the n strands exactly."""
    return block_layout([p + 1 for p in parts], n)


# block catalogs


def _block_elements(size: int) -> list[tuple[str, BraidWord]]:
    """Commuting-tuple ingredients for one block, adjacent bands first."""
    out: list[tuple[str, BraidWord]] = []
    for span in range(1, size):
        for i in range(1, size - span + 1):
            j = i + span
            out.append((f"A({i},{j})", pure_gen_braid(size, i, j)))
    for k in range(3, size + 1):
        out.append((f"twist({k})", full_twist(size, k)))
    return out


def _commuting_tuples(size: int, p: int, depth: int) -> list[list[tuple[str, BraidWord]]]:
    """The first depth p-element pairwise commuting tuples from the block catalog."""
    from itertools import combinations

    elements = _block_elements(size)
    found: list[list[tuple[str, BraidWord]]] = []
    for combo in combinations(elements, p):
        ok = True
        for (_, a), (_, b) in combinations(combo, 2):
            if not braids_equal(a * b, b * a):
                ok = False
                break
        if ok:
            found.append(list(combo))
            if len(found) == depth:
                break
    return found


@dataclass(frozen=True)
class CandidateCycle:
    """A catalogued cycle together with its grammar descriptor."""

    descriptor: str
    chain: BarChain


def partition_cycles(
    parts: Sequence[int], n: int, depth: int
) -> list[CandidateCycle]:
    """Cross the block torus catalogs along the layout of the partition."""
    from itertools import product as iter_product

    layout = partition_layout(parts, n)
    per_block: list[list[tuple[BlockEmbedding, list[tuple[str, BraidWord]]]]] = []
    for part, embedding in zip(parts, layout):
        if part == 0:
            continue
        tuples = _commuting_tuples(part + 1, part, depth)
        if not tuples:
            raise ValueError(
                f"catalog exhausted: no commuting {part}-tuple in a block of size {part + 1}"
            )
        per_block.append([(embedding, combo) for combo in tuples])
    out: list[CandidateCycle] = []
    for choice in iter_product(*per_block):
        chain: BarChain | None = None
        pieces = []
        for embedding, combo in choice:
            local = torus_cycle(
                [GroupElement.from_braid(beta) for _, beta in combo]
            )
            embedded = embed_chain(local, embedding)
            chain = embedded if chain is None else shuffle(chain, embedded)
            body = "|".join(name for name, _ in combo)
            pieces.append(f"{{{embedding.size}:torus:{body}}}")
        assert chain is not None
        out.append(CandidateCycle("cross:" + "".join(pieces), chain))
    return out


# exact rank


def exact_rank(rows: Sequence[Sequence[Fraction]]) -> int:
    """Row rank over Q by fraction-free (Bareiss) elimination on cleared rows."""
    matrix: list[list[int]] = []
    for row in rows:
        lcm = 1
        for x in row:
            lcm = lcm * x.denominator // math.gcd(lcm, x.denominator)
        matrix.append([int(x * lcm) for x in row])
    if not matrix or not matrix[0]:
        return 0
    n_rows, n_cols = len(matrix), len(matrix[0])
    rank = 0
    prev = 1
    for col in range(n_cols):
        pivot = next(
            (r for r in range(rank, n_rows) if matrix[r][col] != 0), None
        )
        if pivot is None:
            continue
        matrix[rank], matrix[pivot] = matrix[pivot], matrix[rank]
        for r in range(rank + 1, n_rows):
            for c in range(col + 1, n_cols):
                matrix[r][c] = (
                    matrix[r][c] * matrix[rank][col] - matrix[r][col] * matrix[rank][c]
                ) // prev
            matrix[r][col] = 0
        prev = matrix[rank][col]
        rank += 1
        if rank == n_rows:
            break
    return rank


# certificates


@dataclass
class Certificate:
    n: int
    q: int
    catalog_depth: int
    seed: int
    partitions: list[tuple[int, ...]]
    cycles: dict[tuple[int, ...], list[CandidateCycle]]
    matrix: list[list[Fraction]]
    rank: int
    expected_rank: int
    verdict: str
    triangular_violations: list[dict[str, Any]]

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def to_json_dict(self) -> dict[str, Any]:
        def fmt(parts: tuple[int, ...]) -> str:
            return ",".join(str(p) for p in parts)

        return {
            "n": self.n,
            "q": self.q,
            "catalog_depth": self.catalog_depth,
            "seed": self.seed,
            "convention": EXTERIOR_CONVENTION,
            "partitions": [list(p) for p in self.partitions],
            "cycles": {
                fmt(parts): [c.descriptor for c in cycles]
                for parts, cycles in self.cycles.items()
            },
            "exterior_basis": [list(idx) for idx in exterior_basis(self.n, self.q)],
            "matrix": [
                [f"{x.numerator}/{x.denominator}" for x in row] for row in self.matrix
            ],
            "rank": self.rank,
            "expected_rank": self.expected_rank,
            "verdict": self.verdict,
            "triangular_ok": not self.triangular_violations,
            "triangular_violations": self.triangular_violations,
        }


def certificate(
    n: int,
    q: int,
    theta: MagnusExpansion | None = None,
    catalog_depth: int = 3,
    seed: int = 0,
) -> Certificate:
    """Build the independence certificate for rank n and exterior degree q."""
    if not 0 <= q <= n:
        raise ValueError(f"need 0 <= q <= n, got q={q}, n={n}")
    if theta is None:
        theta = MagnusExpansion.standard(n, 2)
    if theta.n != n:
        raise ValueError("expansion rank does not match n")
    parts_list = partitions(q, n - q) if q else []
    basis = exterior_basis(n, q)
    cycles: dict[tuple[int, ...], list[CandidateCycle]] = {}
    for parts in parts_list:
        cycles[parts] = partition_cycles(parts, n, catalog_depth)
    cochains = {parts: hbar_partition_cochain(theta, parts) for parts in parts_list}

    pairings: dict[tuple[tuple[int, ...], tuple[int, ...]], list] = {}
    for mu in parts_list:
        for lam in parts_list:
            pairings[(mu, lam)] = [
                pair(cochains[mu], c.chain) for c in cycles[lam]
            ]

    matrix: list[list[Fraction]] = []
    for mu in parts_list:
        row: list[Fraction] = []
        for lam in parts_list:
            for value in pairings[(mu, lam)]:
                row.extend(value.coefficient(idx) for idx in basis)
        matrix.append(row)

    rank = exact_rank(matrix)
    expected = len(parts_list)
    verdict = "pass" if rank == expected else "inconclusive-catalog"

    violations: list[dict[str, Any]] = []
    for i, mu in enumerate(parts_list):
        for j, lam in enumerate(parts_list):
            if i >= j:
                continue
            # strictly earlier partitions must pair to zero with later cycles
            for c, value in zip(cycles[lam], pairings[(mu, lam)]):
                if not value.is_zero():
                    violations.append(
                        {
                            "row": list(mu),
                            "cycle_partition": list(lam),
                            "cycle": c.descriptor,
                        }
                    )

    return Certificate(
        n=n,
        q=q,
        catalog_depth=catalog_depth,
        seed=seed,
        partitions=parts_list,
        cycles=cycles,
        matrix=matrix,
        rank=rank,
        expected_rank=expected,
        verdict=verdict,
        triangular_violations=violations,
    )


# the scalar factor of restricted cup powers


def _random_block_tuple(
    rng: random.Random, p: int
) -> list[BraidWord]:
    """A commuting p-tuple of pure braids in a block of size p + 1, random powers."""
    size = p + 1

    def power() -> int:
        return rng.choice([-2, -1, 1, 2])

    if p == 1:
        return [pure_gen_braid(size, 1, 2) ** power()]
    i = rng.randint(1, size - 1)
    j = rng.randint(i + 1, size)
    elems = [pure_gen_braid(size, i, j) ** power()]
    for k in range(3, size + 1):
        elems.append(full_twist(size, k) ** power())
    return elems


def scalar_factor_check(
    theta: MagnusExpansion,
    parts: Sequence[int],
    n: int,
    rng: random.Random,
    trials: int = 3,
) -> tuple[bool, list[tuple[Any, Any]]]:
    """Pair both sides of the restriction identity against random block tori.

    The left side is hbar over the partition, restricted to the block
    product; the right side is the cup of the blockwise pullbacks scaled by
    the repetition factor.  Returns overall success and the list of paired
    (left, right) values.
    """
    parts = tuple(parts)
    layout = partition_layout(parts, n)
    lhs = block_restrict(hbar_partition_cochain(theta, parts), layout)
    rhs: Cochain = unit_cochain(n)
    for k, p in enumerate(parts):
        if p:
            rhs = cup(
                rhs, projection_pullback(hbar_cochain(theta, p, exterior=True), k, layout)
            )
    factor = multiplicity_factor(parts)

    witnesses: list[tuple[Any, Any]] = []
    ok = True
    for _ in range(trials):
        elements: list[ProductElement] = []
        for k, p in enumerate(parts):
            if not p:
                continue
            for beta in _random_block_tuple(rng, p):
                blocks = [GroupElement.identity(e.size) for e in layout]
                blocks[k] = GroupElement.from_braid(beta)
                elements.append(ProductElement(blocks, layout))
        z = torus_cycle(elements)
        left = pair(lhs, z)
        right = factor * pair(rhs, z)
        witnesses.append((left, right))
        if left != right:
            ok = False
    return ok, witnesses
