"""Bar chains, torus cycles, shuffles, and the pairing with cochains.

The load-bearing consistency facts: the shuffle of torus cycles is the
torus cycle of the combined family, and the pairing turns coboundaries
into zero on cycles and cocycles into zero on boundaries.
"""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from braidcert.braids import BraidWord, full_twist, pure_gen_braid
from braidcert.chains import (
    BarChain,
    cross,
    embed_chain,
    pair,
    parse_cycle,
    shuffle,
    torus_cycle,
)
from braidcert.cochains import (
    BlockEmbedding,
    Cochain,
    GroupElement,
    hbar_cochain,
    hp_cochain,
    tau1_cochain,
    coboundary,
)
from braidcert.magnus import MagnusExpansion
from braidcert.tensors import TruncatedTensor
from braidcert.words import GrammarError

F = Fraction


def band(n: int, i: int, j: int) -> GroupElement:
    return GroupElement.from_braid(pure_gen_braid(n, i, j))


def twist(n: int, k: int) -> GroupElement:
    return GroupElement.from_braid(full_twist(n, k))


def random_pure(rng: random.Random, n: int, max_gens: int = 3) -> GroupElement:
    beta = BraidWord.identity(n)
    for _ in range(rng.randrange(max_gens + 1)):
        i = rng.randint(1, n - 1)
        j = rng.randint(i + 1, n)
        beta = beta * pure_gen_braid(n, i, j) ** rng.choice([-1, 1])
    return GroupElement.from_braid(beta)


# chain basics


def test_boundary_of_a_pair():
    g, h = band(3, 1, 2), band(3, 1, 3)
    z = BarChain(2, {(g, h): F(1)})
    got = z.boundary()
    want = BarChain(1, {(h,): F(1), (g * h,): F(-1), (g,): F(1)})
    assert got == want


def test_degenerate_tuples_are_dropped():
    g = band(3, 1, 2)
    e = GroupElement.identity(3)
    assert BarChain(2, {(g, e): F(1)}).is_zero()
    assert BarChain(2, {(g, g.inverse()): F(1)}).boundary() == BarChain(
        1, {(g,): F(1), (g.inverse(),): F(1)}
    )  # the merged middle term g g^-1 = identity drops out


def test_boundary_squares_to_zero():
    rng = random.Random(61)
    for _ in range(15):
        n = rng.randint(2, 4)
        p = rng.randint(2, 3)
        terms = {
            tuple(random_pure(rng, n) for _ in range(p)): F(rng.randint(-2, 2))
            for _ in range(3)
        }
        z = BarChain(p, terms)
        assert z.boundary().boundary().is_zero()


# torus cycles


def test_torus_of_two_elements():
    a, b = band(3, 1, 2), twist(3, 3)
    z = torus_cycle([a, b])
    assert z == BarChain(2, {(a, b): F(1), (b, a): F(-1)})
    assert z.is_cycle()


def test_torus_rejects_noncommuting_elements():
    with pytest.raises(ValueError):
        torus_cycle([band(3, 1, 2), band(3, 1, 3)])


def test_torus_with_repeated_element_vanishes():
    a = band(3, 1, 2)
    assert torus_cycle([a, a]).is_zero()


def test_torus_of_three_has_six_signed_terms():
    a, b, c = band(4, 1, 2), twist(4, 3), twist(4, 4)
    z = torus_cycle([a, b, c])
    assert len(z.terms) == 6
    assert z.terms[(a, b, c)] == 1
    assert z.terms[(b, a, c)] == -1
    assert z.is_cycle()


# shuffles


def test_shuffle_with_unit_is_neutral():
    a = band(3, 1, 2)
    z = torus_cycle([a])
    assert shuffle(BarChain.unit(), z) == z
    assert shuffle(z, BarChain.unit()) == z


def test_shuffle_of_tori_is_torus_of_union():
    a, b, c = band(4, 1, 2), twist(4, 3), twist(4, 4)
    assert shuffle(torus_cycle([a]), torus_cycle([b])) == torus_cycle([a, b])
    assert shuffle(torus_cycle([a, b]), torus_cycle([c])) == torus_cycle([a, b, c])
    assert shuffle(torus_cycle([a]), torus_cycle([b, c])) == torus_cycle([a, b, c])


def test_shuffle_is_associative():
    a, b, c = band(4, 1, 2), twist(4, 3), twist(4, 4)
    z1, z2, z3 = (torus_cycle([g]) for g in (a, b, c))
    assert shuffle(shuffle(z1, z2), z3) == shuffle(z1, shuffle(z2, z3))


def test_shuffle_rejects_noncommuting_supports():
    with pytest.raises(ValueError):
        shuffle(torus_cycle([band(3, 1, 2)]), torus_cycle([band(3, 1, 3)]))


# embeddings and cross products


def test_cross_places_factors_on_disjoint_blocks():
    local = torus_cycle([band(2, 1, 2)])
    e1 = BlockEmbedding(0, 2, 4)
    e2 = BlockEmbedding(2, 2, 4)
    got = cross(local, local, e1, e2)
    assert got == torus_cycle([band(4, 1, 2), band(4, 3, 4)])


def test_cross_rejects_overlapping_blocks():
    local = torus_cycle([band(2, 1, 2)])
    with pytest.raises(ValueError):
        cross(local, local, BlockEmbedding(0, 2, 3), BlockEmbedding(1, 2, 3))


def test_embed_chain_maps_elements():
    z = torus_cycle([band(2, 1, 2)])
    got = embed_chain(z, BlockEmbedding(1, 2, 4))
    assert got == torus_cycle([band(4, 2, 3)])


# pairing


def test_pairing_of_hbar1_with_band_torus():
    theta = MagnusExpansion.standard(2, 2)
    z = torus_cycle([band(2, 1, 2)])
    got = pair(hbar_cochain(theta, 1), z)
    assert got == TruncatedTensor(2, 1, {(1,): 1, (2,): 1})


def test_pairing_kills_coboundaries_on_cycles():
    rng = random.Random(62)
    theta = MagnusExpansion.standard(4, 2)
    # an arbitrary 1-cochain with the right value type, not a cocycle
    v = Cochain(
        1, 4,
        lambda: TruncatedTensor.zero(4, 2),
        lambda g: hbar_cochain(theta, 1)(g).recap(2) * hbar_cochain(theta, 1)(g).recap(2)
        + hbar_cochain(theta, 2)(g, g),
    )
    a, b, c = band(4, 1, 2), twist(4, 3), twist(4, 4)
    for za in ([a, b], [a, c], [b, c]):
        assert pair(coboundary(v), torus_cycle(za)).is_zero()


def test_pairing_kills_cocycles_on_boundaries():
    rng = random.Random(63)
    theta = MagnusExpansion.standard(3, 2)
    u = hbar_cochain(theta, 1)
    for _ in range(10):
        w = BarChain(2, {
            (random_pure(rng, 3), random_pure(rng, 3)): F(rng.randint(-2, 2))
            for _ in range(2)
        })
        assert pair(u, w.boundary()).is_zero()


def test_pairing_refuses_nontrivial_action():
    theta = MagnusExpansion.standard(2, 2)
    z = BarChain(1, {(GroupElement.from_braid(BraidWord.gen(2, 1)),): F(1)})
    with pytest.raises(ValueError):
        pair(hbar_cochain(theta, 1), z)


def test_pairing_degree_guard():
    theta = MagnusExpansion.standard(2, 2)
    with pytest.raises(ValueError):
        pair(hbar_cochain(theta, 2), torus_cycle([band(2, 1, 2)]))


# grammar


def test_parse_torus_single():
    z = parse_cycle("torus:A(1,2)", 2)
    assert z == torus_cycle([band(2, 1, 2)])


def test_parse_torus_two_factors():
    z = parse_cycle("torus: A(1,2) | twist(3)", 3)
    assert z == torus_cycle([band(3, 1, 2), twist(3, 3)])


def test_parse_cross_of_tori():
    z = parse_cycle("cross:{2:torus:A(1,2)}{2:torus:A(1,2)}", 4)
    assert z == torus_cycle([band(4, 1, 2), band(4, 3, 4)])


def test_parse_cross_nested_sizes_must_fit():
    with pytest.raises(GrammarError):
        parse_cycle("cross:{3:torus:twist(3)}{2:torus:A(1,2)}", 4)


def test_parse_cycle_bad_prefix():
    with pytest.raises(GrammarError):
        parse_cycle("loop:A(1,2)", 2)


def test_parse_torus_noncommuting_is_grammar_error():
    with pytest.raises(GrammarError):
        parse_cycle("torus:A(1,2)|A(1,3)", 3)


def test_parse_cycle_reports_inner_braid_position():
    with pytest.raises(GrammarError) as exc:
        parse_cycle("torus:A(1,2)|zzz", 3)
    assert exc.value.position == len("torus:A(1,2)|")
