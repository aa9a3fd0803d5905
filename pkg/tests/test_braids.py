"""Braid action conventions and pure braid machinery.

The action is pinned on generators by frozen substitution values; everything
else is cross-checked between independent code paths (permutations against
induced matrices, embeddings against free group embeddings).
"""

from __future__ import annotations

import random

import pytest

from braidcert.braids import (
    BraidWord,
    PureBraidGen,
    artin_action,
    braids_equal,
    format_braid,
    full_twist,
    is_pure,
    last_strand_linking,
    parse_braid,
    permutation,
    pure_gen_braid,
    pure_gen_word,
)
from braidcert.words import FreeWord, GrammarError, HVector, embed_endo


def random_braid(rng: random.Random, n: int, max_len: int) -> BraidWord:
    length = rng.randrange(max_len + 1)
    return BraidWord(
        n, tuple(rng.choice([1, -1]) * rng.randint(1, n - 1) for _ in range(length))
    )


# frozen action values


def test_action_of_elementary_generator():
    phi = artin_action(BraidWord(2, (1,))).fwd
    assert phi.images[0] == FreeWord(2, (2,))
    assert phi.images[1] == FreeWord(2, (-2, 1, 2))


def test_action_of_inverse_generator():
    phi = artin_action(BraidWord(2, (-1,))).fwd
    assert phi.images[0] == FreeWord(2, (1, 2, -1))
    assert phi.images[1] == FreeWord(2, (1,))


def test_action_fixes_far_generators():
    phi = artin_action(BraidWord(4, (1,))).fwd
    assert phi.images[2] == FreeWord.generator(4, 3)
    assert phi.images[3] == FreeWord.generator(4, 4)


def test_action_preserves_product_of_generators():
    # the product x_1 ... x_n is fixed by every braid
    rng = random.Random(31)
    for _ in range(30):
        n = rng.randint(2, 5)
        beta = random_braid(rng, n, 10)
        w = FreeWord(n, tuple(range(1, n + 1)))
        assert artin_action(beta).fwd(w) == w


# relations


def test_braid_relation():
    for n in range(3, 7):
        for i in range(1, n - 1):
            lhs = BraidWord(n, (i, i + 1, i))
            rhs = BraidWord(n, (i + 1, i, i + 1))
            assert braids_equal(lhs, rhs)


def test_far_commutation():
    for n in range(4, 7):
        for i in range(1, n):
            for j in range(i + 2, n):
                ab = BraidWord(n, (i, j))
                ba = BraidWord(n, (j, i))
                assert braids_equal(ab, ba)


def test_generator_cancels_its_inverse():
    assert braids_equal(BraidWord(3, (1, -1)), BraidWord.identity(3))
    assert not braids_equal(BraidWord(3, (1,)), BraidWord.identity(3))


def test_action_is_a_homomorphism():
    rng = random.Random(32)
    for _ in range(30):
        n = rng.randint(2, 5)
        a, b = random_braid(rng, n, 6), random_braid(rng, n, 6)
        assert artin_action(a * b).fwd == artin_action(a).compose(artin_action(b)).fwd


# permutations


def test_permutation_matches_induced_matrix():
    # two independent code paths: entry swaps vs abelianised substitution
    rng = random.Random(33)
    for _ in range(40):
        n = rng.randint(2, 5)
        beta = random_braid(rng, n, 8)
        perm = permutation(beta)
        matrix = artin_action(beta).fwd.induced_matrix()
        want = tuple(
            tuple(1 if perm[c] == r + 1 else 0 for c in range(n)) for r in range(n)
        )
        assert matrix == want


def test_permutation_of_single_generator_is_transposition():
    assert permutation(BraidWord(3, (1,))) == (2, 1, 3)
    assert permutation(BraidWord(3, (-2,))) == (1, 3, 2)


def test_purity_is_stable_under_conjugation():
    rng = random.Random(34)
    for _ in range(30):
        n = rng.randint(2, 5)
        pure = pure_gen_braid(n, 1, rng.randint(2, n))
        beta = random_braid(rng, n, 6)
        assert is_pure(beta * pure * beta.inverse())


# distinguished pure braids


def test_band_generator_adjacent_case():
    assert pure_gen_braid(4, 2, 3) == BraidWord(4, (2, 2))


def test_band_generator_spelling():
    assert pure_gen_braid(4, 1, 3).letters == (2, 1, 1, -2)
    assert pure_gen_braid(4, 1, 4).letters == (3, 2, 1, 1, -2, -3)


def test_band_generators_are_pure():
    for n in range(2, 7):
        for i in range(1, n):
            for j in range(i + 1, n + 1):
                assert is_pure(pure_gen_braid(n, i, j))


def test_full_twist_is_pure_and_central_on_its_block():
    for n in range(2, 6):
        for k in range(2, n + 1):
            tw = full_twist(n, k)
            assert is_pure(tw)
            for i in range(1, k):
                s = BraidWord.gen(n, i)
                assert braids_equal(tw * s, s * tw)


def test_full_twist_of_two_strands_is_band_generator():
    assert braids_equal(full_twist(3, 2), pure_gen_braid(3, 1, 2))


def test_disjoint_and_nested_band_generators_commute():
    a, b = pure_gen_braid(4, 1, 2), pure_gen_braid(4, 3, 4)
    assert braids_equal(a * b, b * a)
    outer, inner = pure_gen_braid(4, 1, 4), pure_gen_braid(4, 2, 3)
    assert braids_equal(outer * inner, inner * outer)


def test_linked_band_generators_do_not_commute():
    a, b = pure_gen_braid(3, 1, 2), pure_gen_braid(3, 1, 3)
    assert not braids_equal(a * b, b * a)


# embeddings


def test_embed_matches_free_group_embedding():
    rng = random.Random(35)
    for _ in range(30):
        m = rng.randint(2, 4)
        ambient = m + rng.randint(0, 2)
        offset = rng.randint(0, ambient - m)
        beta = random_braid(rng, m, 6)
        lhs = artin_action(beta.embed(offset, ambient)).fwd
        rhs = embed_endo(artin_action(beta).fwd, offset, ambient)
        assert lhs == rhs


# linking numbers


def test_linking_reads_off_last_strand_generators():
    # at rank 3 the generators A_{i,4} map to the basis, the rest to zero
    for i in range(1, 4):
        got = last_strand_linking(3, [(PureBraidGen(i, 4), 1)])
        assert got == HVector.basis(3, i)
    for i, j in [(1, 2), (1, 3), (2, 3)]:
        assert last_strand_linking(3, [(PureBraidGen(i, j), 1)]).is_zero()


def test_linking_is_additive():
    word = [(PureBraidGen(1, 4), 2), (PureBraidGen(2, 3), 5), (PureBraidGen(2, 4), -1)]
    assert last_strand_linking(3, word) == HVector(3, (2, -1, 0))


def test_linking_rejects_overflow_generator():
    with pytest.raises(ValueError):
        last_strand_linking(2, [(PureBraidGen(1, 4), 1)])


def test_pure_gen_word_multiplies_out():
    word = [(PureBraidGen(1, 2), 1), (PureBraidGen(1, 3), -1)]
    got = pure_gen_word(word, 3)
    want = pure_gen_braid(3, 1, 2) * pure_gen_braid(3, 1, 3).inverse()
    assert got == want and is_pure(got)


# grammar


def test_parse_elementary_tokens():
    assert parse_braid("s1 s2^-1", 3).letters == (1, -2)
    assert parse_braid("", 3).is_trivial_word


def test_parse_band_and_twist_tokens():
    assert parse_braid("A(1,3)", 4).letters == (2, 1, 1, -2)
    assert parse_braid("twist(3)", 4).letters == (1, 2) * 3
    assert parse_braid("A(1,2)^-1", 3).letters == (-1, -1)


def test_parse_inverse_of_composite_token():
    beta = parse_braid("twist(3)^-1", 3)
    assert braids_equal(parse_braid("twist(3)", 3) * beta, BraidWord.identity(3))


def test_parse_rejects_bad_tokens_with_position():
    with pytest.raises(GrammarError) as exc:
        parse_braid("s1 q7", 3)
    assert exc.value.position == 3
    with pytest.raises(GrammarError):
        parse_braid("s3", 3)  # only two generators on three strands
    with pytest.raises(GrammarError):
        parse_braid("A(2,2)", 3)
    with pytest.raises(GrammarError):
        parse_braid("twist(5)", 3)


def test_format_round_trips():
    rng = random.Random(36)
    for _ in range(20):
        beta = random_braid(rng, 4, 8)
        assert parse_braid(format_braid(beta), 4) == beta
